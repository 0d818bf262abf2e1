#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "poissonbm/angle.hpp"

namespace poissonbm {

//---------------------------------------------------------------------------//
/*!
 * The angle vector driving one approximant.
 *
 * Components are numbered cosine block first, then sine block. Component c
 * (0-based) is z^{θ_c} for c < n and y^{θ_c} otherwise.
 */
struct ThetaConfig
{
    std::vector<Angle> cos_block;
    std::vector<Angle> sin_block;
    // Admit θ = π in the cosine block, rescaled by 1/√2
    bool allow_pi_in_cos = false;

    std::size_t dimension() const noexcept
    {
        return cos_block.size() + sin_block.size();
    }
    Angle const& angle(std::size_t component) const;
    TrigKind kind(std::size_t component) const;
    bool is_pi_rescaled(std::size_t component) const;
    // "cos(1/2 pi)" style label
    std::string label(std::size_t component) const;
};

enum class HypothesisRule
{
    kRange,
    kSum2Pi,
    kSameBlockEqual,
};

char const* to_string(HypothesisRule rule);

/// One failed admissibility condition. Positions are 1-based over θ_1…θ_{n+m}.
struct Violation
{
    HypothesisRule rule;
    std::size_t first;
    std::size_t second;
    double first_value;
    double second_value;
};

struct HypothesisReport
{
    bool valid = true;
    std::vector<Violation> violations;
    // 1-based positions of cosine entries equal to π that get the 1/√2 factor
    std::vector<std::size_t> pi_rescaled_indices;

    std::string describe() const;
};

/*!
 * Check the admissibility conditions on θ and report every violation.
 *
 * RANGE: θ_i ∈ (0, π) ∪ (π, 2π), except θ = π in the cosine block when
 * allow_pi_in_cos is set. SUM_2PI: θ_i + θ_j ≠ 2π over all pairs of both
 * blocks, i = j included. SAME_BLOCK_EQUAL: no repeated angle within a block;
 * equal angles across blocks are admissible.
 *
 * Throws std::invalid_argument for an empty configuration.
 */
HypothesisReport validate_hypothesis_h(ThetaConfig const& config);

}  // namespace poissonbm

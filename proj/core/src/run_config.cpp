#include "poissonbm/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "poissonbm/process.hpp"

namespace poissonbm {
namespace {

struct CheckName
{
    Check check;
    char const* name;
};

constexpr CheckName kCheckNames[] = {
    {Check::kCovariance, "covariance"},
    {Check::kQuadraticVariation, "qv"},
    {Check::kCrossMoment, "cross_moment"},
    {Check::kFourthMoment, "fourth_moment"},
    {Check::kNormality, "normality"},
    {Check::kMartingale, "martingale"},
    {Check::kStroock, "stroock"},
    {Check::kDegeneracy, "degeneracy"},
};

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_list(std::string_view value)
{
    std::vector<std::string_view> out;
    while (true)
    {
        auto comma = value.find(',');
        auto item = trim(value.substr(0, comma));
        if (!item.empty())
            out.push_back(item);
        if (comma == std::string_view::npos)
            break;
        value.remove_prefix(comma + 1);
    }
    return out;
}

[[noreturn]] void fail(std::size_t line, std::string const& what)
{
    throw ConfigError("config line " + std::to_string(line) + ": " + what);
}

double to_double(std::string_view s, std::size_t line)
{
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
        fail(line, "expected a number, got '" + std::string(s) + "'");
    return v;
}

std::uint64_t to_unsigned(std::string_view s, std::size_t line)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        fail(line, "expected a nonnegative integer, got '" + std::string(s)
                       + "'");
    return v;
}

bool to_bool(std::string_view s, std::size_t line)
{
    if (s == "true" || s == "yes" || s == "1")
        return true;
    if (s == "false" || s == "no" || s == "0")
        return false;
    fail(line, "expected true/false, got '" + std::string(s) + "'");
}

std::vector<Angle> to_angles(std::string_view value, std::size_t line)
{
    std::vector<Angle> out;
    for (auto item : split_list(value))
    {
        try
        {
            out.push_back(parse_angle(item));
        }
        catch (std::invalid_argument const& e)
        {
            fail(line, e.what());
        }
    }
    return out;
}

std::string g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

char const* to_string(Check check)
{
    for (auto const& c : kCheckNames)
    {
        if (c.check == check)
            return c.name;
    }
    return "unknown";
}

Check parse_check(std::string_view name)
{
    for (auto const& c : kCheckNames)
    {
        if (name == c.name)
            return c.check;
    }
    throw ConfigError("unknown check '" + std::string(name) + "'");
}

void RunConfig::validate() const
{
    if (theta.dimension() == 0)
        throw ConfigError("no process components requested");
    if (!(horizon_T > 0.0))
        throw ConfigError("horizon_T must be positive");
    if (epsilons.empty())
        throw ConfigError("epsilons must be nonempty");
    for (std::size_t k = 0; k < epsilons.size(); ++k)
    {
        if (!(epsilons[k] > 0.0) || epsilons[k] > 1.0)
            throw ConfigError("each epsilon must lie in (0, 1]");
        if (k > 0 && !(epsilons[k] < epsilons[k - 1]))
            throw ConfigError("epsilons must be strictly decreasing");
    }
    double const widest = path_time(horizon_T, epsilons.back());
    if (!(widest <= kMaxPathHorizon))
    {
        throw ConfigError("resource cap exceeded: 2T/min(eps)^2 = " + g17(widest)
                          + " > " + g17(kMaxPathHorizon));
    }
    if (replications < 2)
        throw ConfigError("replications must be at least 2");
    if (replications > std::numeric_limits<std::uint32_t>::max()
        || epsilons.size() > std::numeric_limits<std::uint32_t>::max())
    {
        throw ConfigError("replication or epsilon count exceeds stream index "
                          "range");
    }
    if (grid_points == 0)
        throw ConfigError("grid_points must be positive");
}

std::vector<Check> RunConfig::effective_checks() const
{
    if (!checks.empty())
        return checks;
    std::vector<Check> out = {Check::kCovariance,
                              Check::kQuadraticVariation,
                              Check::kCrossMoment,
                              Check::kFourthMoment,
                              Check::kNormality,
                              Check::kMartingale};
    bool const has_pi
        = std::any_of(theta.cos_block.begin(),
                      theta.cos_block.end(),
                      [](Angle const& a) { return a.is_pi(); });
    if (has_pi)
        out.push_back(Check::kStroock);
    if (allow_invalid_theta)
        out.push_back(Check::kDegeneracy);
    return out;
}

RunConfig parse_run_config(std::string_view text)
{
    RunConfig config;
    std::map<std::string, std::size_t, std::less<>> seen;
    std::size_t line_no = 0;
    while (!text.empty())
    {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(line_no, "expected 'key = value'");
        std::string key(trim(line.substr(0, eq)));
        std::string_view value = trim(line.substr(eq + 1));
        if (!seen.emplace(key, line_no).second)
            fail(line_no, "duplicate key '" + key + "'");

        if (key == "cos_block")
            config.theta.cos_block = to_angles(value, line_no);
        else if (key == "sin_block")
            config.theta.sin_block = to_angles(value, line_no);
        else if (key == "allow_pi_in_cos")
            config.theta.allow_pi_in_cos = to_bool(value, line_no);
        else if (key == "horizon_T")
            config.horizon_T = to_double(value, line_no);
        else if (key == "epsilons")
        {
            for (auto item : split_list(value))
                config.epsilons.push_back(to_double(item, line_no));
        }
        else if (key == "replications")
            config.replications = to_unsigned(value, line_no);
        else if (key == "grid_points")
            config.grid_points = to_unsigned(value, line_no);
        else if (key == "master_seed")
            config.master_seed = to_unsigned(value, line_no);
        else if (key == "checks")
        {
            for (auto item : split_list(value))
            {
                if (item == "default")
                    continue;
                try
                {
                    config.checks.push_back(parse_check(item));
                }
                catch (ConfigError const& e)
                {
                    fail(line_no, e.what());
                }
            }
        }
        else if (key == "output_dir")
            config.output_dir = std::string(value);
        else if (key == "allow_invalid_theta")
            config.allow_invalid_theta = to_bool(value, line_no);
        else if (key == "reduction")
        {
            if (value == "fixed_tree")
                config.reduction = ReductionMode::kFixedTree;
            else if (value == "sequential")
                config.reduction = ReductionMode::kSequential;
            else
                fail(line_no, "reduction must be fixed_tree or sequential");
        }
        else
        {
            fail(line_no, "unknown key '" + key + "'");
        }
    }
    config.validate();
    return config;
}

RunConfig load_run_config(std::filesystem::path const& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

std::string to_config_text(RunConfig const& config)
{
    auto join_angles = [](std::vector<Angle> const& angles) {
        std::string out;
        for (std::size_t i = 0; i < angles.size(); ++i)
            out += (i ? ", " : "") + angles[i].to_string();
        return out;
    };
    std::ostringstream os;
    if (!config.theta.cos_block.empty())
        os << "cos_block = " << join_angles(config.theta.cos_block) << '\n';
    if (!config.theta.sin_block.empty())
        os << "sin_block = " << join_angles(config.theta.sin_block) << '\n';
    os << "allow_pi_in_cos = "
       << (config.theta.allow_pi_in_cos ? "true" : "false") << '\n';
    os << "horizon_T = " << g17(config.horizon_T) << '\n';
    os << "epsilons = ";
    for (std::size_t i = 0; i < config.epsilons.size(); ++i)
        os << (i ? ", " : "") << g17(config.epsilons[i]);
    os << '\n';
    os << "replications = " << config.replications << '\n';
    os << "grid_points = " << config.grid_points << '\n';
    os << "master_seed = " << config.master_seed << '\n';
    if (!config.checks.empty())
    {
        os << "checks = ";
        for (std::size_t i = 0; i < config.checks.size(); ++i)
            os << (i ? ", " : "") << to_string(config.checks[i]);
        os << '\n';
    }
    os << "output_dir = " << config.output_dir << '\n';
    os << "allow_invalid_theta = "
       << (config.allow_invalid_theta ? "true" : "false") << '\n';
    os << "reduction = "
       << (config.reduction == ReductionMode::kFixedTree ? "fixed_tree"
                                                         : "sequential")
       << '\n';
    return os.str();
}

}  // namespace poissonbm

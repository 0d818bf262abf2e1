#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "poissonbm/experiment.hpp"

namespace poissonbm {
namespace {

using json = nlohmann::ordered_json;

// Non-finite values have no JSON spelling; they round-trip through null
json number(double v)
{
    if (!std::isfinite(v))
        return nullptr;
    return v;
}

double to_number(json const& j)
{
    if (j.is_null())
        return std::numeric_limits<double>::quiet_NaN();
    return j.get<double>();
}

std::string g17(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json angles_to_json(std::vector<Angle> const& angles)
{
    json out = json::array();
    for (auto const& a : angles)
        out.push_back(a.to_string());
    return out;
}

std::vector<Angle> angles_from_json(json const& j)
{
    std::vector<Angle> out;
    for (auto const& a : j)
        out.push_back(parse_angle(a.get<std::string>()));
    return out;
}

json estimate_to_json(Estimate const& e)
{
    return {{"value", number(e.value)},
            {"std_error", number(e.std_error)},
            {"replications", e.replications}};
}

Estimate estimate_from_json(json const& j)
{
    return {to_number(j.at("value")),
            to_number(j.at("std_error")),
            j.at("replications").get<std::size_t>()};
}

json check_to_json(CheckResult const& c)
{
    return {{"name", c.name},
            {"value", number(c.value)},
            {"std_error", number(c.std_error)},
            {"target", number(c.target)},
            {"band", number(c.band)},
            {"relation", to_string(c.relation)},
            {"pass", c.pass}};
}

Relation relation_from_string(std::string const& s)
{
    for (Relation r : {Relation::kWithinBand,
                       Relation::kAtLeast,
                       Relation::kAtMost,
                       Relation::kBelow})
    {
        if (s == to_string(r))
            return r;
    }
    throw std::invalid_argument("unknown relation '" + s + "'");
}

CheckResult check_from_json(json const& j)
{
    CheckResult c;
    c.name = j.at("name").get<std::string>();
    c.value = to_number(j.at("value"));
    c.std_error = to_number(j.at("std_error"));
    c.target = to_number(j.at("target"));
    c.band = to_number(j.at("band"));
    c.relation = relation_from_string(j.at("relation").get<std::string>());
    c.pass = j.at("pass").get<bool>();
    return c;
}

json checks_to_json(std::vector<CheckResult> const& checks)
{
    json out = json::array();
    for (auto const& c : checks)
        out.push_back(check_to_json(c));
    return out;
}

std::vector<CheckResult> checks_from_json(json const& j)
{
    std::vector<CheckResult> out;
    for (auto const& c : j)
        out.push_back(check_from_json(c));
    return out;
}

PairKind pair_kind_from_string(std::string const& s)
{
    for (PairKind k : {PairKind::kCosCos, PairKind::kSinSin, PairKind::kCosSin})
    {
        if (s == to_string(k))
            return k;
    }
    throw std::invalid_argument("unknown pair kind '" + s + "'");
}

HypothesisRule rule_from_string(std::string const& s)
{
    for (HypothesisRule r : {HypothesisRule::kRange,
                             HypothesisRule::kSum2Pi,
                             HypothesisRule::kSameBlockEqual})
    {
        if (s == to_string(r))
            return r;
    }
    throw std::invalid_argument("unknown hypothesis rule '" + s + "'");
}

// output_dir is left out: it does not affect results, and leaving it in
// would make reports written to different places differ.
json config_to_json(RunConfig const& c)
{
    json checks = json::array();
    for (Check k : c.checks)
        checks.push_back(to_string(k));
    json eps = json::array();
    for (double e : c.epsilons)
        eps.push_back(e);
    return {{"cos_block", angles_to_json(c.theta.cos_block)},
            {"sin_block", angles_to_json(c.theta.sin_block)},
            {"allow_pi_in_cos", c.theta.allow_pi_in_cos},
            {"horizon_T", c.horizon_T},
            {"epsilons", eps},
            {"replications", c.replications},
            {"grid_points", c.grid_points},
            {"master_seed", c.master_seed},
            {"checks", checks},
            {"allow_invalid_theta", c.allow_invalid_theta},
            {"reduction",
             c.reduction == ReductionMode::kFixedTree ? "fixed_tree"
                                                      : "sequential"}};
}

RunConfig config_from_json(json const& j)
{
    RunConfig c;
    c.theta.cos_block = angles_from_json(j.at("cos_block"));
    c.theta.sin_block = angles_from_json(j.at("sin_block"));
    c.theta.allow_pi_in_cos = j.at("allow_pi_in_cos").get<bool>();
    c.horizon_T = j.at("horizon_T").get<double>();
    c.epsilons = j.at("epsilons").get<std::vector<double>>();
    c.replications = j.at("replications").get<std::size_t>();
    c.grid_points = j.at("grid_points").get<std::size_t>();
    c.master_seed = j.at("master_seed").get<std::uint64_t>();
    for (auto const& k : j.at("checks"))
        c.checks.push_back(parse_check(k.get<std::string>()));
    c.allow_invalid_theta = j.at("allow_invalid_theta").get<bool>();
    c.reduction = j.at("reduction").get<std::string>() == "sequential"
                      ? ReductionMode::kSequential
                      : ReductionMode::kFixedTree;
    c.output_dir.clear();
    return c;
}

json hypothesis_to_json(HypothesisReport const& h)
{
    json violations = json::array();
    for (auto const& v : h.violations)
    {
        violations.push_back({{"rule", to_string(v.rule)},
                              {"pair", {v.first, v.second}},
                              {"values", {v.first_value, v.second_value}}});
    }
    return {{"valid", h.valid},
            {"violations", violations},
            {"pi_rescaled_indices", h.pi_rescaled_indices}};
}

HypothesisReport hypothesis_from_json(json const& j)
{
    HypothesisReport h;
    h.valid = j.at("valid").get<bool>();
    for (auto const& v : j.at("violations"))
    {
        Violation out;
        out.rule = rule_from_string(v.at("rule").get<std::string>());
        out.first = v.at("pair").at(0).get<std::size_t>();
        out.second = v.at("pair").at(1).get<std::size_t>();
        out.first_value = v.at("values").at(0).get<double>();
        out.second_value = v.at("values").at(1).get<double>();
        h.violations.push_back(out);
    }
    h.pi_rescaled_indices
        = j.at("pi_rescaled_indices").get<std::vector<std::size_t>>();
    return h;
}

// Component indices are 1-based in the serialized form
json epsilon_to_json(EpsilonResult const& r)
{
    json out = {{"epsilon", r.epsilon}, {"checks", checks_to_json(r.checks)}};
    if (r.covariance)
    {
        std::size_t const d = r.covariance->dimension();
        json value = json::array();
        json se = json::array();
        for (std::size_t i = 0; i < d; ++i)
        {
            json vrow = json::array();
            json srow = json::array();
            for (std::size_t j = 0; j < d; ++j)
            {
                vrow.push_back(number(r.covariance->at(i, j).value));
                srow.push_back(number(r.covariance->at(i, j).std_error));
            }
            value.push_back(vrow);
            se.push_back(srow);
        }
        std::size_t const m = d ? r.covariance->at(0, 0).replications : 0;
        out["covariance"] = {{"dimension", d},
                             {"replications", m},
                             {"value", value},
                             {"std_error", se}};
    }
    json cross = json::array();
    for (auto const& c : r.cross_moments)
    {
        json rec = {{"i", c.i + 1},
                    {"j", c.j + 1},
                    {"kind", to_string(c.kind)},
                    {"estimate", estimate_to_json(c.estimate)},
                    {"bound_total", nullptr}};
        if (c.bound_total)
            rec["bound_total"] = number(*c.bound_total);
        cross.push_back(rec);
    }
    out["cross_moments"] = cross;
    json fourth = json::array();
    for (auto const& f : r.fourth_moments)
    {
        fourth.push_back({{"component", f.component + 1},
                          {"s", f.s},
                          {"t", f.t},
                          {"ratio", estimate_to_json(f.ratio)}});
    }
    out["fourth_moments"] = fourth;
    json marginals = json::array();
    for (auto const& h : r.marginals)
    {
        marginals.push_back({{"component", h.component + 1},
                             {"lo", number(h.lo)},
                             {"hi", number(h.hi)},
                             {"counts", h.counts}});
    }
    out["marginals"] = marginals;
    return out;
}

EpsilonResult epsilon_from_json(json const& j)
{
    EpsilonResult r;
    r.epsilon = j.at("epsilon").get<double>();
    r.checks = checks_from_json(j.at("checks"));
    if (j.contains("covariance"))
    {
        auto const& cov = j.at("covariance");
        std::size_t const d = cov.at("dimension").get<std::size_t>();
        std::size_t const m = cov.at("replications").get<std::size_t>();
        EstimateMatrix matrix(d);
        for (std::size_t a = 0; a < d; ++a)
        {
            for (std::size_t b = 0; b < d; ++b)
            {
                matrix.at(a, b) = {to_number(cov.at("value").at(a).at(b)),
                                   to_number(cov.at("std_error").at(a).at(b)),
                                   m};
            }
        }
        r.covariance = std::move(matrix);
    }
    for (auto const& c : j.at("cross_moments"))
    {
        CrossMomentRecord rec;
        rec.i = c.at("i").get<std::size_t>() - 1;
        rec.j = c.at("j").get<std::size_t>() - 1;
        rec.kind = pair_kind_from_string(c.at("kind").get<std::string>());
        rec.estimate = estimate_from_json(c.at("estimate"));
        if (!c.at("bound_total").is_null())
            rec.bound_total = c.at("bound_total").get<double>();
        r.cross_moments.push_back(rec);
    }
    for (auto const& f : j.at("fourth_moments"))
    {
        r.fourth_moments.push_back({f.at("component").get<std::size_t>() - 1,
                                    f.at("s").get<double>(),
                                    f.at("t").get<double>(),
                                    estimate_from_json(f.at("ratio"))});
    }
    for (auto const& h : j.at("marginals"))
    {
        HistogramRecord rec;
        rec.component = h.at("component").get<std::size_t>() - 1;
        rec.lo = to_number(h.at("lo"));
        rec.hi = to_number(h.at("hi"));
        rec.counts = h.at("counts").get<std::vector<std::uint64_t>>();
        r.marginals.push_back(std::move(rec));
    }
    return r;
}

void write_file(std::filesystem::path const& file, std::string const& text)
{
    std::ofstream out(file, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write '" + file.string() + "'");
    out << text;
    if (!out)
        throw std::runtime_error("write failed for '" + file.string() + "'");
}

}  // namespace

std::string report_to_json(RunReport const& report)
{
    json per_eps = json::array();
    for (auto const& r : report.per_epsilon)
        per_eps.push_back(epsilon_to_json(r));
    json doc = {{"tool", "poissonbm"},
                {"tool_version", report.tool_version},
                {"config", config_to_json(report.config)},
                {"hypothesis", hypothesis_to_json(report.hypothesis)},
                {"per_epsilon", per_eps},
                {"sweep_checks", checks_to_json(report.sweep_checks)},
                {"summary",
                 {{"checks_total", report.checks_total},
                  {"checks_failed", report.checks_failed},
                  {"all_pass", report.all_pass}}}};
    return doc.dump(2) + "\n";
}

RunReport report_from_json(std::string const& text)
{
    json doc;
    try
    {
        doc = json::parse(text);
        RunReport report;
        report.tool_version = doc.at("tool_version").get<std::string>();
        report.config = config_from_json(doc.at("config"));
        report.hypothesis = hypothesis_from_json(doc.at("hypothesis"));
        for (auto const& r : doc.at("per_epsilon"))
            report.per_epsilon.push_back(epsilon_from_json(r));
        report.sweep_checks = checks_from_json(doc.at("sweep_checks"));
        auto const& summary = doc.at("summary");
        report.checks_total = summary.at("checks_total").get<std::size_t>();
        report.checks_failed = summary.at("checks_failed").get<std::size_t>();
        report.all_pass = summary.at("all_pass").get<bool>();
        return report;
    }
    catch (json::exception const& e)
    {
        throw std::invalid_argument(std::string("malformed report: ")
                                    + e.what());
    }
}

std::string report_checks_csv(RunReport const& report)
{
    std::string out = "epsilon,name,value,std_error,target,band,relation,pass\n";
    auto emit = [&](std::string const& eps, CheckResult const& c) {
        out += eps + "," + c.name + "," + g17(c.value) + "," + g17(c.std_error)
               + "," + g17(c.target) + "," + g17(c.band) + ","
               + to_string(c.relation) + "," + (c.pass ? "1" : "0") + "\n";
    };
    for (auto const& r : report.per_epsilon)
    {
        for (auto const& c : r.checks)
            emit(g17(r.epsilon), c);
    }
    for (auto const& c : report.sweep_checks)
        emit("sweep", c);
    return out;
}

std::string timings_to_json(RunTimings const& timings, std::size_t workers)
{
    json doc = {{"workers", workers},
                {"total_seconds", timings.total_seconds},
                {"per_epsilon_seconds", timings.per_epsilon_seconds}};
    return doc.dump(2) + "\n";
}

void write_report(RunReport const& report,
                  RunTimings const& timings,
                  std::size_t workers,
                  std::filesystem::path const& dir)
{
    std::filesystem::create_directories(dir);
    write_file(dir / "report.json", report_to_json(report));
    write_file(dir / "checks.csv", report_checks_csv(report));
    write_file(dir / "timings.json", timings_to_json(timings, workers));
}

RunReport load_report(std::filesystem::path const& file)
{
    std::ifstream in(file, std::ios::binary);
    if (!in)
        throw std::invalid_argument("cannot open report '" + file.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return report_from_json(ss.str());
}

}  // namespace poissonbm

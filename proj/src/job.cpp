#include "fedosov/job.hpp"

#include <fmt/format.h>

#include <chrono>
#include <fstream>
#include <limits>
#include <set>
#include <variant>

#include <json.hpp>

#include "fedosov/errors.hpp"
#include "fedosov/forms.hpp"
#include "fedosov/parse.hpp"

namespace fedosov {

namespace {

using nlohmann::ordered_json;

// y names the fiber variables in every rendered report, so an opaque
// factor must not reuse it.
void reject_fiber_name(const ScalarCoeff& a, const std::string& field) {
    for (const auto& [mono, coeff] : a.terms())
        for (const auto& [atom, exp] : mono.factors())
            if (const auto* f = std::get_if<FuncDeriv>(&atom); f != nullptr && f->name == "y")
                throw ConfigError("field " + field + ": the function name y is reserved");
}

int positive_int_field(const ordered_json& obj, const std::string& key) {
    const auto& v = obj.at(key);
    if (!v.is_number_integer())
        throw ConfigError("field " + key + " must be a positive integer");
    long long raw = v.get<long long>();
    if (raw < 1 || raw > std::numeric_limits<int>::max())
        throw ConfigError("field " + key + " must be a positive integer");
    return static_cast<int>(raw);
}

ScalarCoeff expression_field(const ordered_json& obj, const std::string& key,
                             const std::string& label, int n) {
    const auto& v = obj.at(key);
    if (!v.is_string())
        throw ConfigError(label + " must be a string expression");
    try {
        return parse_expr(v.get<std::string>(), n);
    } catch (const ParseError& e) {
        throw ConfigError(label + ": " + e.what());
    }
}

void check_keys(const ordered_json& obj, const std::set<std::string>& known,
                const std::string& where) {
    for (const auto& item : obj.items())
        if (known.count(item.key()) == 0)
            throw ConfigError("unknown field " + item.key() + " in " + where);
    for (const auto& key : known)
        if (!obj.contains(key))
            throw ConfigError(where + " is missing field " + key);
}

std::string section_lines(const FlatSection& s) {
    std::string out;
    for (std::size_t z = 0; z < s.by_degree.size(); ++z)
        out += fmt::format("  degree {}: {}\n", z, render_weyl(s.by_degree[z]));
    return out;
}

ordered_json section_records(const FlatSection& s) {
    ordered_json out = ordered_json::array();
    for (std::size_t z = 0; z < s.by_degree.size(); ++z)
        out.push_back({{"degree", z},
                       {"component", render_weyl(s.by_degree[z], RenderStyle::machine)}});
    return out;
}

std::string human_report(const JobConfig& cfg, const WeylForm& gamma, const WeylForm& curv,
                         const AbelianCorrection& r, const FlatSection& la,
                         const FlatSection& lb, const StarResult& result) {
    std::string out;
    if (cfg.print_intermediate) {
        out += "Connection one-form:\n  " + render_form(gamma) + "\n\n";
        out += "Curvature:\n  " + render_form(curv) + "\n\n";
        out += fmt::format("Connection plus correction (degree <= {}):\n  {}\n\n",
                           2 * cfg.hpower - 1, render_form(gamma + r.total(cfg.n)));
        out += "Section of A:\n" + section_lines(la) + "\n";
        out += "Section of B:\n" + section_lines(lb) + "\n";
    }
    out += "Star product:\n";
    for (std::size_t k = 0; k < result.by_hpower.size(); ++k)
        out += fmt::format("  h^{}: {}\n", k, render_expr(result.by_hpower[k], RenderStyle::human));
    return out;
}

std::string machine_report(const JobConfig& cfg, const WeylForm& gamma, const WeylForm& curv,
                           const AbelianCorrection& r, const FlatSection& la,
                           const FlatSection& lb, const StarResult& result) {
    ordered_json doc;
    doc["n"] = cfg.n;
    doc["hpower"] = cfg.hpower;
    ordered_json star = ordered_json::array();
    for (std::size_t k = 0; k < result.by_hpower.size(); ++k)
        star.push_back({{"hpower", k},
                        {"coefficient", render_expr(result.by_hpower[k], RenderStyle::machine)}});
    doc["star"] = star;
    if (cfg.print_intermediate) {
        ordered_json inter;
        inter["connection"] = render_form(gamma, RenderStyle::machine);
        inter["curvature"] = render_form(curv, RenderStyle::machine);
        ordered_json corr = ordered_json::array();
        for (int z = 3; z <= r.z_max; ++z)
            corr.push_back({{"degree", z}, {"form", render_form(r.at(z), RenderStyle::machine)}});
        inter["correction"] = corr;
        inter["connection_plus_correction"] =
            render_form(gamma + r.total(cfg.n), RenderStyle::machine);
        inter["section_a"] = section_records(la);
        inter["section_b"] = section_records(lb);
        doc["intermediates"] = inter;
    }
    return doc.dump(2) + "\n";
}

}  // namespace

JobConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file " + path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const ordered_json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config root must be an object");

    static const std::set<std::string> known{"n", "hpower", "gamma", "A", "B"};
    for (const auto& item : doc.items())
        if (known.count(item.key()) == 0)
            throw ConfigError("unknown config field " + item.key());
    for (const auto* required : {"n", "hpower", "A", "B"})
        if (!doc.contains(required))
            throw ConfigError(std::string("missing config field ") + required);

    JobConfig cfg;
    cfg.n = positive_int_field(doc, "n");
    cfg.hpower = positive_int_field(doc, "hpower");
    cfg.a = expression_field(doc, "A", "field A", cfg.n);
    cfg.b = expression_field(doc, "B", "field B", cfg.n);
    reject_fiber_name(cfg.a, "A");
    reject_fiber_name(cfg.b, "B");

    if (doc.contains("gamma")) {
        const auto& list = doc.at("gamma");
        if (!list.is_array())
            throw ConfigError("field gamma must be a list");
        std::size_t idx = 0;
        for (const auto& entry : list) {
            ++idx;
            std::string where = "gamma entry " + std::to_string(idx);
            if (!entry.is_object())
                throw ConfigError(where + " must be an object");
            check_keys(entry, {"i", "j", "k", "expr"}, where);
            GammaEntry g;
            g.i = positive_int_field(entry, "i");
            g.j = positive_int_field(entry, "j");
            g.k = positive_int_field(entry, "k");
            g.expr = expression_field(entry, "expr", where, cfg.n);
            cfg.gamma.push_back(std::move(g));
        }
    }
    connection_from(cfg);  // surfaces range, ordering and duplicate errors now
    return cfg;
}

ConnectionData connection_from(const JobConfig& cfg) {
    ConnectionData c(cfg.n);
    std::size_t idx = 0;
    for (const auto& g : cfg.gamma) {
        ++idx;
        try {
            c.set(g.i, g.j, g.k, g.expr);
        } catch (const Error& e) {
            throw ConfigError("gamma entry " + std::to_string(idx) + ": " + e.what());
        }
    }
    return c;
}

JobReport run_job(const JobConfig& cfg) {
    if (cfg.n < 1 || cfg.hpower < 1)
        throw ConfigError("n and hpower must be positive");
    using Clock = std::chrono::steady_clock;
    auto ms_since = [](Clock::time_point s) {
        return std::chrono::duration<double, std::milli>(Clock::now() - s).count();
    };
    std::vector<std::pair<std::string, double>> stages;

    auto whole = Clock::now();
    ConnectionData conn = connection_from(cfg);
    const int z_max = 2 * cfg.hpower - 1;

    auto tick = Clock::now();
    WeylForm gamma = connection_one_form(conn);
    stages.emplace_back("connection", ms_since(tick));

    tick = Clock::now();
    WeylForm curv = curvature(gamma, kUnboundedDeg);
    stages.emplace_back("curvature", ms_since(tick));

    tick = Clock::now();
    AbelianCorrection r = abelian_correction(gamma, curv, z_max);
    stages.emplace_back("correction", ms_since(tick));

    tick = Clock::now();
    FlatSection la = flat_section(cfg.a, gamma, r, z_max);
    stages.emplace_back("section_a", ms_since(tick));

    tick = Clock::now();
    FlatSection lb = flat_section(cfg.b, gamma, r, z_max);
    stages.emplace_back("section_b", ms_since(tick));

    StarProduct ctx(std::move(conn));
    tick = Clock::now();
    StarResult result = ctx.star_from_lifts(la, lb, cfg.hpower);
    stages.emplace_back("projection", ms_since(tick));

    JobReport report;
    report.result = std::move(result);
    if (cfg.print_intermediate)
        report.result.intermediates = StarIntermediates{gamma, curv, r, la, lb};

    report.text = cfg.output == OutputMode::machine
                      ? machine_report(cfg, gamma, curv, r, la, lb, report.result)
                      : human_report(cfg, gamma, curv, r, la, lb, report.result);

    stages.emplace_back("total", ms_since(whole));
    report.timing = "timing (ms):\n";
    for (const auto& [name, duration] : stages)
        report.timing += fmt::format("  {:<12}{:>12.3f}\n", name, duration);
    return report;
}

}  // namespace fedosov

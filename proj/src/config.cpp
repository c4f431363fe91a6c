#include "flatfront/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "flatfront/errors.hpp"

namespace flatfront {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> kKnown = {
    {"data", {"family", "alpha", "beta"}},
    {"domain", {"shape", "u0", "u1", "v0", "v1", "r0", "r1", "center", "half_width"}},
    {"region", {"shape", "u0", "u1", "v0", "v1", "r0", "r1", "center", "half_width"}},
    {"tolerances", {"step_tol", "det_tol", "trace_step", "class_tol", "lc_tol", "h_fd"}},
    {"trace", {"max_length", "grid_n"}},
    {"mesh", {"n_s", "n_t"}},
    {"verify", {"seed", "samples"}},
    {"output", {"dir"}},
};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double real_value(const std::string& key, const std::string& text) {
    Expression e;
    try {
        e = Expression::parse(text);
    } catch (const Error& ex) {
        throw ConfigError(fmt::format("{}: cannot parse '{}': {}", key, text, ex.what()));
    }
    if (!e.is_constant()) throw ConfigError(fmt::format("{}: '{}' is not a constant", key, text));
    const cplx v = e.value(0.0);
    if (v.imag() != 0.0 || !std::isfinite(v.real())) {
        throw ConfigError(fmt::format("{}: '{}' is not a finite real number", key, text));
    }
    return v.real();
}

long integer_value(const std::string& key, const std::string& text) {
    const double v = real_value(key, text);
    if (v != std::floor(v) || std::abs(v) > 9.0e15) throw ConfigError(fmt::format("{}: '{}' is not an integer", key, text));
    return static_cast<long>(v);
}

/// Splits "name(a, b)" into name and top-level comma separated arguments.
bool call_form(const std::string& s, std::string& name, std::vector<std::string>& args) {
    const auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')') return false;
    name = trim(s.substr(0, open));
    args.clear();
    int depth = 0;
    std::string cur;
    for (std::size_t k = open + 1; k + 1 < s.size(); ++k) {
        const char c = s[k];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            args.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    args.push_back(trim(cur));
    return true;
}

Domain read_domain(const pt::ptree& sec, const std::string& section) {
    auto get = [&](const char* key, std::optional<double> fallback) {
        const auto v = sec.get_optional<std::string>(key);
        if (!v) {
            if (fallback) return *fallback;
            throw ConfigError(fmt::format("[{}] {} is required", section, key));
        }
        return real_value(fmt::format("[{}] {}", section, key), *v);
    };
    const std::string shape = trim(sec.get<std::string>("shape", "rectangle"));
    if (shape == "rectangle") {
        const double u0 = get("u0", std::nullopt), u1 = get("u1", std::nullopt);
        const double v0 = get("v0", std::nullopt), v1 = get("v1", std::nullopt);
        if (!(u0 < u1) || !(v0 < v1)) throw ConfigError(fmt::format("[{}] rectangle is empty", section));
        return Domain::rectangle(u0, u1, v0, v1);
    }
    if (shape == "annulus") {
        const double r0 = get("r0", std::nullopt), r1 = get("r1", std::nullopt);
        const double center = get("center", 0.0), half = get("half_width", std::numbers::pi);
        if (!(r0 > 0.0) || !(r0 < r1)) throw ConfigError(fmt::format("[{}] annulus needs 0 < r0 < r1", section));
        if (!(half > 0.0) || half > std::numbers::pi) {
            throw ConfigError(fmt::format("[{}] half_width must lie in (0, pi]", section));
        }
        return Domain::annular_sector(r0, r1, center, half);
    }
    throw ConfigError(fmt::format("[{}] shape must be rectangle or annulus, got '{}'", section, shape));
}

}  // namespace

WeierstrassData JobConfig::data() const { return WeierstrassData::make(alpha_src, beta_src, domain, family); }

JobConfig parse_config(std::istream& in) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(fmt::format("config: {} (line {})", e.message(), e.line()));
    }
    for (const auto& [section, body] : tree) {
        const auto known = kKnown.find(section);
        if (known == kKnown.end()) {
            if (body.empty()) throw ConfigError(fmt::format("config: key '{}' outside any section", section));
            throw ConfigError(fmt::format("config: unknown section [{}]", section));
        }
        for (const auto& [key, value] : body) {
            if (!known->second.count(key)) throw ConfigError(fmt::format("config: unknown key [{}] {}", section, key));
        }
    }

    JobConfig cfg;
    const pt::ptree empty;
    const pt::ptree& data = tree.get_child("data", empty);
    cfg.family = trim(data.get<std::string>("family", "e1"));
    std::string name;
    std::vector<std::string> args;
    const bool has_alpha = data.count("alpha") > 0, has_beta = data.count("beta") > 0;
    if (cfg.family != "custom" && (has_alpha || has_beta)) {
        throw ConfigError(fmt::format("[data] alpha/beta are only read with family = custom (family is '{}')",
                                      cfg.family));
    }
    Domain preset = Domain::rectangle(-1, 1, -1, 1);
    if (cfg.family == "e1") {
        cfg.alpha_src = "exp(z)";
        cfg.beta_src = "1";
        preset = Domain::rectangle(-1, 1, -4, 4);
    } else if (cfg.family == "e2") {
        cfg.alpha_src = "-1";
        cfg.beta_src = "z^-2";
        preset = Domain::annular_sector(0.5, 2.0, 0.0, std::numbers::pi);
    } else if (cfg.family == "custom") {
        if (!has_alpha || !has_beta) throw ConfigError("[data] family = custom needs alpha and beta");
        cfg.alpha_src = trim(data.get<std::string>("alpha"));
        cfg.beta_src = trim(data.get<std::string>("beta"));
    } else if (call_form(cfg.family, name, args) && name == "constants") {
        if (args.size() != 2) throw ConfigError("[data] constants(a,b) takes two arguments");
        cfg.alpha_src = args[0];
        cfg.beta_src = args[1];
    } else if (call_form(cfg.family, name, args) && name == "schwarz") {
        if (args.size() != 1) throw ConfigError("[data] schwarz(alpha) takes one argument");
        cfg.alpha_src = args[0];
        cfg.beta_src = "1";
    } else {
        throw ConfigError(fmt::format("[data] unknown family '{}'", cfg.family));
    }
    cfg.domain = tree.count("domain") ? read_domain(tree.get_child("domain"), "domain") : preset;
    cfg.region = tree.count("region") ? read_domain(tree.get_child("region"), "region") : cfg.domain;
    if (!cfg.region.within(cfg.domain)) {
        throw ConfigError(fmt::format("[region] {} is not inside the domain {}", cfg.region.describe(),
                                      cfg.domain.describe()));
    }

    auto positive = [&](const char* section, const char* key, double& target) {
        const auto v = tree.get_optional<std::string>(pt::ptree::path_type(fmt::format("{}.{}", section, key), '.'));
        if (!v) return;
        const double x = real_value(fmt::format("[{}] {}", section, key), *v);
        if (!(x > 0.0)) throw ConfigError(fmt::format("[{}] {} must be positive, got {}", section, key, x));
        target = x;
    };
    auto positive_int = [&](const char* section, const char* key, auto& target) {
        const auto v = tree.get_optional<std::string>(pt::ptree::path_type(fmt::format("{}.{}", section, key), '.'));
        if (!v) return;
        const long x = integer_value(fmt::format("[{}] {}", section, key), *v);
        if (x <= 0) throw ConfigError(fmt::format("[{}] {} must be positive, got {}", section, key, x));
        target = static_cast<std::remove_reference_t<decltype(target)>>(x);
    };
    SuiteOptions& s = cfg.suite;
    positive("tolerances", "step_tol", s.integrator.step_tol);
    positive("tolerances", "det_tol", s.integrator.det_tol);
    positive("tolerances", "trace_step", s.trace.trace_step);
    positive("tolerances", "class_tol", s.classify.class_tol);
    positive("tolerances", "lc_tol", s.classify.lc_tol);
    positive("tolerances", "h_fd", s.oracle.h_fd);
    positive("trace", "max_length", s.trace.max_length);
    positive_int("trace", "grid_n", s.trace.grid_n);
    positive_int("mesh", "n_s", cfg.mesh_n_s);
    positive_int("mesh", "n_t", cfg.mesh_n_t);
    positive_int("verify", "seed", s.seed);
    positive_int("verify", "samples", s.agreement_samples);
    if (s.trace.grid_n < 2 || cfg.mesh_n_s < 2 || cfg.mesh_n_t < 2) {
        throw ConfigError("[trace] grid_n and [mesh] n_s, n_t must be at least 2");
    }
    cfg.out_dir = trim(tree.get<std::string>("output.dir", "."));
    if (cfg.out_dir.empty()) throw ConfigError("[output] dir is empty");
    return cfg;
}

JobConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(fmt::format("cannot open config file '{}'", path));
    return parse_config(in);
}

}  // namespace flatfront

#include "flatfront/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "flatfront/errors.hpp"
#include "flatfront/parallel.hpp"

namespace flatfront {

namespace {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string num(double x) { return fmt::format("{:.17g}", x); }

json jnum(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json jz(cplx z) { return json::array({z.real(), z.imag()}); }

std::string out_path(const JobConfig& cfg, const char* name) { return (fs::path(cfg.out_dir) / name).string(); }

json config_json(const JobConfig& cfg) {
    const auto& s = cfg.suite;
    return {{"family", cfg.family},
            {"alpha", cfg.alpha_src},
            {"beta", cfg.beta_src},
            {"domain", cfg.domain.describe()},
            {"region", cfg.region.describe()},
            {"step_tol", s.integrator.step_tol},
            {"det_tol", s.integrator.det_tol},
            {"trace_step", s.trace.trace_step},
            {"class_tol", s.classify.class_tol},
            {"lc_tol", s.classify.lc_tol},
            {"h_fd", s.oracle.h_fd},
            {"seed", s.seed}};
}

json check_json(const CheckResult& r) {
    return {{"name", r.name},     {"pass", r.pass},       {"value", jnum(r.value)},
            {"tolerance", r.tolerance}, {"samples", r.samples}, {"detail", r.detail}};
}

json run_json(const RunSummary& s) {
    return {{"surface", to_string(s.which)},
            {"first_sample", s.report.range.first},
            {"last_sample", s.report.range.last - 1},
            {"t_first", s.t_first},
            {"t_last", s.t_last},
            {"line_of_curvature", s.report.line_of_curvature},
            {"cone_like_dual", s.report.cone_like_dual},
            {"max_abs_torsion", s.report.max_abs_torsion},
            {"lc_residual", s.report.lc_residual},
            {"max_cone_angle", s.report.max_cone_angle}};
}

json event_json(const SingularEvent& e) {
    return {{"curve_id", e.curve}, {"surface", to_string(e.which)}, {"t", e.t}, {"z", jz(e.z)}};
}

json curves_json(const Analysis& a) {
    json arr = json::array();
    for (std::size_t c = 0; c < a.curves.size(); ++c) {
        const auto& cur = a.curves[c];
        arr.push_back({{"curve_id", c},
                       {"samples", cur.samples.size()},
                       {"closed", cur.closed},
                       {"length", cur.length()},
                       {"end_backward", to_string(cur.end_reasons[0])},
                       {"end_forward", to_string(cur.end_reasons[1])},
                       {"degenerate_at", cur.degenerate_at ? jz(*cur.degenerate_at) : json(nullptr)}});
    }
    return arr;
}

Analysis run_analysis(const JobConfig& cfg, const WeierstrassData& data, std::ostream& log) {
    Analysis a = analyze(data, cfg.region, cfg.suite, cfg.family);
    std::size_t n = 0;
    for (const auto& c : a.curves) n += c.samples.size();
    log << fmt::format("traced {} curve(s), {} samples on {}\n", a.curves.size(), n, cfg.region.describe());
    for (const auto& w : a.warnings) log << "warning: " << w << '\n';
    return a;
}

std::string curves_csv(const Analysis& a) {
    std::string s = "curve_id,t,u,v,lambda,lambda_z_re,lambda_z_im,branch_phase\n";
    for (std::size_t c = 0; c < a.curves.size(); ++c) {
        for (const auto& p : a.curves[c].samples) {
            s += fmt::format("{},{},{},{},{},{},{},{}\n", c, num(p.t), num(p.z.real()), num(p.z.imag()),
                             num(p.lj.lambda), num(p.lj.lambda_z.real()), num(p.lj.lambda_z.imag()),
                             num(p.field.branch_phase));
        }
    }
    return s;
}

std::string classify_prefix(std::size_t c, const CurveSample& p, const ClassificationRecord& r) {
    return fmt::format("{},{},{},{},{},{},{},{},{}", c, num(p.t), num(p.z.real()), num(p.z.imag()), num(r.c_h),
                       num(r.c_d), to_string(r.class_f), to_string(r.class_g), num(r.swcond));
}

const char* kClassifyHeader = "curve_id,t,u,v,C_h,C_d,class_f,class_g,swcond";

std::string classify_csv(const Analysis& a) {
    std::string s = std::string(kClassifyHeader) + "\n";
    for (std::size_t c = 0; c < a.curves.size(); ++c) {
        for (std::size_t i = 0; i < a.curves[c].samples.size(); ++i) {
            s += classify_prefix(c, a.curves[c].samples[i], a.classes[c][i]) + "\n";
        }
    }
    return s;
}

std::string invariants_csv(const Analysis& a, const SuiteOptions& opts) {
    std::string s = std::string(kClassifyHeader) +
                    ",kappa_s_h,kappa_t_h,kappa_c_h,kappa_s_d,kappa_t_d,kappa_c_d,dkappat_h_dt,dkappat_d_dt\n";
    for (std::size_t c = 0; c < a.curves.size(); ++c) {
        const auto& cur = a.curves[c];
        for (std::size_t i = 0; i < cur.samples.size(); ++i) {
            const auto& p = cur.samples[i];
            const auto& r = a.classes[c][i];
            InvariantSet inv[2];
            double dk[2] = {kNaN, kNaN};
            for (int k = 0; k < 2; ++k) {
                const Surface w = k == 0 ? Surface::H : Surface::S;
                if (r.of(w) != SingularClass::CuspidalEdge) continue;
                inv[k] = closed_form_invariants(*a.data, p.z, p.field, w, opts.classify);
                try {
                    dk[k] = torsion_derivative(cur, i, w, opts.classify).value;
                } catch (const InsufficientSamplesError&) {
                }
            }
            s += fmt::format("{},{},{},{},{},{},{},{},{}\n", classify_prefix(c, p, r), num(inv[0].kappa_s),
                             num(inv[0].kappa_t), num(inv[0].kappa_c), num(inv[1].kappa_s), num(inv[1].kappa_t),
                             num(inv[1].kappa_c), num(dk[0]), num(dk[1]));
        }
    }
    return s;
}

json summary_json(const JobConfig& cfg, const Analysis& a) {
    json curves = curves_json(a);
    const auto runs = curve_summaries(a, cfg.suite);
    for (auto& c : curves) c["runs"] = json::array();
    for (const auto& r : runs) curves[r.curve]["runs"].push_back(run_json(r));
    json tails = json::array();
    for (const auto& e : swallowtails(a, cfg.suite)) tails.push_back(event_json(e));
    return {{"config", config_json(cfg)}, {"curves", curves}, {"swallowtails", tails}, {"warnings", a.warnings}};
}

Mat2 surface_matrix(const Mat2& A, Surface which) {
    return which == Surface::H ? A * A.adjoint() : A * basis::e3 * A.adjoint();
}

HermVector surface_point(const Mat2& A, Surface which) {
    const double tol = kPointTol * std::max(1.0, std::pow(A.max_abs(), 4));
    const Mat2 m = surface_matrix(A, which);
    return which == Surface::H ? HermVector::point_h3(m, tol) : HermVector::point_s31(m, tol);
}

CommandResult run_mesh(const JobConfig& cfg, const WeierstrassData& data, std::ostream& log) {
    const SuiteOptions& s = cfg.suite;
    const FrameGrid grid = frame_grid(data, cfg.region, cfg.mesh_n_s, cfg.mesh_n_t, s.integrator, std::nullopt,
                                      Mat2::identity(), s.threads);
    log << fmt::format("frame grid {}x{}, route discrepancy {:.3e}\n", cfg.mesh_n_s, cfg.mesh_n_t,
                       grid.route_discrepancy);
    Analysis a = analyze(data, cfg.region, s, cfg.family, grid.base_z, grid.base_A);

    // curve frames come from the base along the domain path, like the grid nodes
    std::vector<std::vector<Mat2>> curve_frames(a.curves.size());
    for (std::size_t c = 0; c < a.curves.size(); ++c) {
        const auto& samples = a.curves[c].samples;
        curve_frames[c].resize(samples.size());
        parallel_for(
            samples.size(),
            [&](std::size_t i) {
                curve_frames[c][i] = integrate_frame(data, grid.base_z, grid.base_A, samples[i].z, s.integrator).A;
            },
            s.threads);
    }

    CommandResult res;
    json files = json::array();
    for (Surface w : {Surface::H, Surface::S}) {
        const Projection model = w == Surface::H ? Projection::poincare_ball : Projection::hollow_ball;
        std::string obj = fmt::format("# flat front {} of {} on {}\n# projection {}\n", to_string(w), cfg.family,
                                      cfg.region.describe(), w == Surface::H ? "poincare_ball" : "hollow_ball");
        obj += fmt::format("o front_{}\n", w == Surface::H ? "h" : "s");
        auto vertex = [&](const Mat2& A) {
            const HermVector p = surface_point(A, w);
            const auto raw = project(p, Projection::raw);
            const auto x = project(p, model);
            obj += fmt::format("# raw {} {} {} {}\nv {} {} {}\n", num(raw[0]), num(raw[1]), num(raw[2]), num(raw[3]),
                               num(x[0]), num(x[1]), num(x[2]));
        };
        const int ns = grid.lattice.n_s, nt = grid.lattice.n_t;
        for (int k = 0; k < nt; ++k) {
            for (int j = 0; j < ns; ++j) vertex(grid.at(j, k).A);
        }
        auto id = [&](int j, int k) { return k * ns + j + 1; };
        for (int k = 0; k + 1 < nt; ++k) {
            for (int j = 0; j + 1 < ns; ++j) {
                obj += fmt::format("f {} {} {} {}\n", id(j, k), id(j + 1, k), id(j + 1, k + 1), id(j, k + 1));
            }
        }
        std::size_t next = static_cast<std::size_t>(ns * nt) + 1;
        const double jump = 0.5 * (cfg.region.s1() - cfg.region.s0());
        for (std::size_t c = 0; c < a.curves.size(); ++c) {
            const auto& samples = a.curves[c].samples;
            if (samples.size() < 2) continue;
            obj += fmt::format("o singular_curve_{}\n", c);
            const std::size_t first = next;
            for (const Mat2& A : curve_frames[c]) vertex(A);
            next += samples.size();
            std::string line = fmt::format("l {}", first);
            for (std::size_t i = 1; i < samples.size(); ++i) {
                const double ds = std::abs(cfg.region.to_chart(samples[i].z).real() -
                                           cfg.region.to_chart(samples[i - 1].z).real());
                if (ds > jump) {
                    obj += line + "\n";
                    line = "l";
                }
                line += fmt::format(" {}", first + i);
            }
            obj += line + "\n";
        }
        const char* name = w == Surface::H ? "front_h.obj" : "front_s.obj";
        write_atomically(out_path(cfg, name), obj);
        res.files.push_back(out_path(cfg, name));
        files.push_back(name);
    }
    json meta = {{"config", config_json(cfg)},
                 {"n_s", cfg.mesh_n_s},
                 {"n_t", cfg.mesh_n_t},
                 {"base_z", jz(grid.base_z)},
                 {"route_discrepancy", grid.route_discrepancy},
                 {"projection_h", "poincare_ball"},
                 {"projection_s", "hollow_ball"},
                 {"grid_vertices", cfg.mesh_n_s * cfg.mesh_n_t},
                 {"curves", curves_json(a)},
                 {"files", files}};
    write_atomically(out_path(cfg, "mesh_meta.json"), meta.dump(2) + "\n");
    res.files.push_back(out_path(cfg, "mesh_meta.json"));
    return res;
}

CommandResult run_verify(const JobConfig& cfg, const WeierstrassData& data, std::ostream& log) {
    const SuiteOptions& s = cfg.suite;
    const Analysis a = run_analysis(cfg, data, log);
    std::vector<CheckResult> checks;
    for (Surface w : {Surface::H, Surface::S}) {
        for (auto& r : oracle_agreement(a, w, s)) checks.push_back(std::move(r));
    }
    checks.push_back(negativity(a, s));
    checks.push_back(torsion_duality(a, s));
    for (auto& r : singular_set_coincidence(a, s)) checks.push_back(std::move(r));
    checks.push_back(lemma_check(a, s));
    checks.push_back(duality_check(a, s));
    checks.push_back(classification_duality(a, s));

    bool pass = true;
    json arr = json::array();
    for (const auto& r : checks) {
        pass = pass && r.pass;
        arr.push_back(check_json(r));
        log << fmt::format("{} {}: {}\n", r.pass ? "PASS" : "FAIL", r.name, r.detail);
    }
    json tails = json::array();
    for (const auto& e : swallowtails(a, s)) {
        tails.push_back(event_json(e));
        log << fmt::format("swallowtail of {} at {:.6g}{:+.6g}i\n", to_string(e.which), e.z.real(), e.z.imag());
    }
    json curves = curves_json(a);
    for (auto& c : curves) c["runs"] = json::array();
    for (const auto& r : curve_summaries(a, s)) curves[r.curve]["runs"].push_back(run_json(r));
    json report = {{"config", config_json(cfg)}, {"pass", pass},     {"checks", arr},
                   {"swallowtails", tails},      {"curves", curves}, {"warnings", a.warnings}};
    write_atomically(out_path(cfg, "report.json"), report.dump(2) + "\n");
    CommandResult res;
    res.files.push_back(out_path(cfg, "report.json"));
    res.exit_code = pass ? 0 : 3;
    return res;
}

}  // namespace

Command parse_command(const std::string& name) {
    if (name == "trace") return Command::trace;
    if (name == "classify") return Command::classify;
    if (name == "invariants") return Command::invariants;
    if (name == "mesh") return Command::mesh;
    if (name == "verify") return Command::verify;
    throw ConfigError(fmt::format("unknown command '{}'", name));
}

const char* to_string(Command c) {
    switch (c) {
        case Command::trace: return "trace";
        case Command::classify: return "classify";
        case Command::invariants: return "invariants";
        case Command::mesh: return "mesh";
        case Command::verify: return "verify";
    }
    return "?";
}

void write_atomically(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(fmt::format("cannot write '{}'", tmp));
        out << content;
        out.flush();
        if (!out) throw Error(fmt::format("write to '{}' failed", tmp));
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw Error(fmt::format("cannot rename '{}' to '{}': {}", tmp, path, ec.message()));
}

CommandResult run_command(Command cmd, const JobConfig& cfg, std::ostream& log) {
    std::error_code ec;
    fs::create_directories(cfg.out_dir, ec);
    if (ec) throw ConfigError(fmt::format("cannot create output directory '{}': {}", cfg.out_dir, ec.message()));
    const WeierstrassData data = cfg.data();
    CommandResult res;
    switch (cmd) {
        case Command::trace: {
            const Analysis a = run_analysis(cfg, data, log);
            write_atomically(out_path(cfg, "curves.csv"), curves_csv(a));
            res.files.push_back(out_path(cfg, "curves.csv"));
            break;
        }
        case Command::classify: {
            const Analysis a = run_analysis(cfg, data, log);
            write_atomically(out_path(cfg, "classify.csv"), classify_csv(a));
            res.files.push_back(out_path(cfg, "classify.csv"));
            break;
        }
        case Command::invariants: {
            const Analysis a = run_analysis(cfg, data, log);
            write_atomically(out_path(cfg, "invariants.csv"), invariants_csv(a, cfg.suite));
            write_atomically(out_path(cfg, "curves_summary.json"), summary_json(cfg, a).dump(2) + "\n");
            res.files.push_back(out_path(cfg, "invariants.csv"));
            res.files.push_back(out_path(cfg, "curves_summary.json"));
            break;
        }
        case Command::mesh: res = run_mesh(cfg, data, log); break;
        case Command::verify: res = run_verify(cfg, data, log); break;
    }
    for (const auto& f : res.files) log << "wrote " << f << '\n';
    return res;
}

}  // namespace flatfront

#include "flatfront/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "flatfront/errors.hpp"
#include "flatfront/parallel.hpp"

namespace flatfront {

namespace {

Surface dual(Surface s) { return s == Surface::H ? Surface::S : Surface::H; }

std::string zstr(cplx z) { return fmt::format("{:.6g}{:+.6g}i", z.real(), z.imag()); }

double own_c(const ClassificationRecord& r, Surface which) { return which == Surface::H ? r.c_h : r.c_d; }

template <class T>
std::vector<T> thin(const std::vector<T>& all, int n) {
    if (n <= 0 || all.size() <= static_cast<std::size_t>(n)) return all;
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(n));
    if (n == 1) return {all[all.size() / 2]};
    for (int k = 0; k < n; ++k) {
        const auto idx = static_cast<std::size_t>(std::llround(double(k) * double(all.size() - 1) / double(n - 1)));
        out.push_back(all[idx]);
    }
    return out;
}

std::vector<SampleRef> curve_points(const Analysis& a, double margin, int n) {
    std::vector<SampleRef> all;
    for (std::size_t c = 0; c < a.curves.size(); ++c) {
        for (std::size_t i = 0; i < a.curves[c].samples.size(); ++i) {
            if (boundary_distance(a.region, a.curves[c].samples[i].z) >= margin) all.push_back({c, i});
        }
    }
    return thin(all, n);
}

std::vector<cplx> random_points(const Analysis& a, std::uint64_t seed, int n, double margin, double min_abs_lambda) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> us(a.region.s0(), a.region.s1());
    std::uniform_real_distribution<double> ut(a.region.t0(), a.region.t1());
    std::vector<cplx> out;
    for (int tries = 0; tries < 100 * n && static_cast<int>(out.size()) < n; ++tries) {
        const cplx z = a.region.from_chart(cplx(us(rng), ut(rng)));
        if (boundary_distance(a.region, z) < margin) continue;
        try {
            if (std::abs(lambda_jet(*a.data, z).lambda) < min_abs_lambda) continue;
        } catch (const EvaluationError&) {
            continue;
        }
        out.push_back(z);
    }
    return out;
}

const CurveSample& sample_of(const Analysis& a, SampleRef r) { return a.curves[r.curve].samples[r.index]; }

}  // namespace

Analysis analyze(const WeierstrassData& data, const Domain& region, const SuiteOptions& opts, std::string name,
                 std::optional<cplx> base_z, const Mat2& base_A) {
    Analysis a;
    a.data = &data;
    a.name = std::move(name);
    a.region = region;
    a.base_z = base_z ? *base_z : region.from_chart(region.default_base_chart());
    a.base_A = base_A;
    a.curves = trace_all(data, region, opts.trace, &a.warnings, opts.threads);
    a.classes.reserve(a.curves.size());
    for (const auto& c : a.curves) a.classes.push_back(classify_curve(data, c, opts.classify));
    return a;
}

double boundary_distance(const Domain& region, cplx z) {
    const cplx c = region.to_chart(z);
    const double s = c.real(), t = c.imag();
    if (region.is_rectangle()) {
        return std::min({s - region.s0(), region.s1() - s, t - region.t0(), region.t1() - t});
    }
    return std::min({t - region.t0(), region.t1() - t, t * (s - region.s0()), t * (region.s1() - s)});
}

std::vector<SampleRef> conditioned_samples(const Analysis& a, Surface which, double min_abs_c, double margin, int n) {
    std::vector<SampleRef> all;
    for (std::size_t c = 0; c < a.curves.size(); ++c) {
        const auto& cls = a.classes[c];
        for (std::size_t i = 0; i < cls.size(); ++i) {
            if (cls[i].of(which) != SingularClass::CuspidalEdge) continue;
            if (std::abs(own_c(cls[i], which)) < min_abs_c) continue;
            if (boundary_distance(a.region, cls[i].z) < margin) continue;
            all.push_back({c, i});
        }
    }
    return thin(all, n);
}

std::vector<CheckResult> oracle_agreement(const Analysis& a, Surface which, const SuiteOptions& opts,
                                          std::vector<AgreementRow>* rows_out) {
    const auto refs = conditioned_samples(a, which, opts.min_abs_c, opts.boundary_margin, opts.agreement_samples);
    std::vector<AgreementRow> rows(refs.size());
    std::vector<std::string> errors(refs.size());
    parallel_for(
        refs.size(),
        [&](std::size_t k) {
            const CurveSample& s = sample_of(a, refs[k]);
            rows[k].z = s.z;
            rows[k].which = which;
            try {
                rows[k].closed = closed_form_invariants(*a.data, s.z, s.field, which, opts.classify);
                const LocalChart chart(*a.data, a.base_z, a.base_A, s.z, opts.oracle);
                rows[k].oracle = definition_invariants(chart, which, s.z, s.field, opts.oracle).inv;
            } catch (const Error& e) {
                errors[k] = e.what();
            }
        },
        opts.threads);

    const std::string tag = fmt::format("{} {}", a.name, to_string(which));
    struct Component {
        const char* name;
        double InvariantSet::*field;
    };
    const Component comps[] = {{"kappa_s", &InvariantSet::kappa_s},
                               {"kappa_t", &InvariantSet::kappa_t},
                               {"kappa_c", &InvariantSet::kappa_c}};
    std::vector<CheckResult> out;
    std::size_t n_err = 0;
    std::string first_err;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (!errors[k].empty()) {
            if (n_err++ == 0) first_err = fmt::format("z = {}: {}", zstr(rows[k].z), errors[k]);
        }
    }
    for (const auto& comp : comps) {
        CheckResult r;
        r.name = fmt::format("oracle agreement {} {}", tag, comp.name);
        r.samples = rows.size();
        r.tolerance = 1.0;
        std::size_t bad = 0;
        double worst_diff = 0.0;
        cplx worst_z{};
        for (std::size_t k = 0; k < rows.size(); ++k) {
            if (!errors[k].empty()) continue;
            const double cf = rows[k].closed.*comp.field;
            const double orc = rows[k].oracle.*comp.field;
            const double tol = std::max(1e-5, 1e-4 * std::abs(cf));
            const double ratio = std::isfinite(cf) && std::isfinite(orc) ? std::abs(cf - orc) / tol
                                                                          : std::numeric_limits<double>::infinity();
            if (ratio > 1.0) ++bad;
            if (ratio > r.value || k == 0) {
                r.value = std::max(r.value, ratio);
                worst_diff = std::abs(cf - orc);
                worst_z = rows[k].z;
            }
        }
        r.pass = bad == 0 && n_err == 0;
        r.detail = fmt::format("{} of {} samples outside max(1e-5, 1e-4 |closed|); worst |diff| = {:.3e} at z = {}",
                               bad, rows.size(), worst_diff, zstr(worst_z));
        if (n_err) r.detail += fmt::format("; {} samples raised errors, first: {}", n_err, first_err);
        out.push_back(std::move(r));
    }
    CheckResult n;
    n.name = fmt::format("oracle agreement {} kappa_n", tag);
    n.samples = rows.size();
    n.tolerance = 1e-6;
    std::size_t bad = 0;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (!errors[k].empty()) continue;
        const double v = std::abs(rows[k].oracle.kappa_n);
        if (!(v <= n.tolerance)) ++bad;
        if (!(v <= n.value)) n.value = v;
    }
    n.pass = bad == 0 && n_err == 0;
    n.detail = fmt::format("{} of {} samples with |kappa_n| above 1e-6", bad, rows.size());
    out.push_back(std::move(n));
    if (rows_out) *rows_out = std::move(rows);
    return out;
}

CheckResult negativity(const Analysis& a, const SuiteOptions& opts) {
    CheckResult r;
    r.name = fmt::format("negativity {}", a.name);
    r.value = -std::numeric_limits<double>::infinity();
    std::size_t bad = 0;
    for (std::size_t c = 0; c < a.curves.size(); ++c) {
        for (std::size_t i = 0; i < a.curves[c].samples.size(); ++i) {
            const auto& rec = a.classes[c][i];
            const auto& s = a.curves[c].samples[i];
            for (Surface w : {Surface::H, Surface::S}) {
                if (rec.of(w) != SingularClass::CuspidalEdge) continue;
                const InvariantSet inv = closed_form_invariants(*a.data, s.z, s.field, w, opts.classify);
                ++r.samples;
                r.value = std::max(r.value, inv.kappa_s);
                if (!(inv.kappa_s < 0.0)) ++bad;
            }
        }
    }
    r.pass = bad == 0;
    r.detail = fmt::format("{} of {} cuspidal-edge samples with kappa_s >= 0; max kappa_s = {:.6g}", bad, r.samples,
                           r.value);
    return r;
}

CheckResult torsion_duality(const Analysis& a, const SuiteOptions& opts) {
    CheckResult r;
    r.name = fmt::format("torsion duality {}", a.name);
    r.tolerance = opts.duality_product_tol;
    for (std::size_t c = 0; c < a.curves.size(); ++c) {
        for (std::size_t i = 0; i < a.curves[c].samples.size(); ++i) {
            const auto& rec = a.classes[c][i];
            if (std::min(std::abs(rec.c_h), std::abs(rec.c_d)) <= opts.classify.class_tol) continue;
            const auto& s = a.curves[c].samples[i];
            const double th = closed_form_invariants(*a.data, s.z, s.field, Surface::H, opts.classify).kappa_t;
            const double td = closed_form_invariants(*a.data, s.z, s.field, Surface::S, opts.classify).kappa_t;
            ++r.samples;
            const double res = std::abs(th * td + 1.0);
            if (!(res <= r.value)) r.value = res;
        }
    }
    r.pass = r.value <= r.tolerance;
    r.detail = fmt::format("max |kappa_t^h kappa_t^d + 1| = {:.3e} over {} samples", r.value, r.samples);
    return r;
}

std::vector<CheckResult> singular_set_coincidence(const Analysis& a, const SuiteOptions& opts) {
    const auto refs = curve_points(a, 0.02, opts.curve_probe_samples);
    std::vector<std::pair<double, double>> on(refs.size());
    parallel_for(
        refs.size(),
        [&](std::size_t k) {
            const cplx z = sample_of(a, refs[k]).z;
            on[k] = area_densities(LocalChart(*a.data, a.base_z, a.base_A, z, opts.oracle), z, opts.oracle);
        },
        opts.threads);
    CheckResult r1;
    r1.name = fmt::format("area densities vanish on curve {}", a.name);
    r1.tolerance = opts.area_on_curve_tol;
    r1.samples = on.size();
    for (const auto& [h, d] : on) r1.value = std::max({r1.value, std::abs(h), std::abs(d)});
    r1.pass = r1.value <= r1.tolerance;
    r1.detail = fmt::format("max(|Lambda_h|, |Lambda_d|) = {:.3e} at {} curve samples", r1.value, on.size());

    const auto probes = random_points(a, opts.seed, opts.off_curve_probes, 0.02, 1e-2);
    std::vector<std::pair<double, double>> off(probes.size());
    parallel_for(
        probes.size(),
        [&](std::size_t k) {
            off[k] = area_densities(LocalChart(*a.data, a.base_z, a.base_A, probes[k], opts.oracle), probes[k],
                                    opts.oracle);
        },
        opts.threads);
    CheckResult r2;
    r2.name = fmt::format("area densities nonzero off curve {}", a.name);
    r2.tolerance = opts.area_off_curve_min;
    r2.samples = off.size();
    r2.value = std::numeric_limits<double>::infinity();
    for (const auto& [h, d] : off) r2.value = std::min({r2.value, std::abs(h), std::abs(d)});
    r2.pass = !off.empty() && r2.value > r2.tolerance;
    r2.detail = fmt::format("min(|Lambda_h|, |Lambda_d|) = {:.3e} at {} probes with |lambda| >= 1e-2", r2.value,
                            off.size());
    return {r1, r2};
}

CheckResult lemma_check(const Analysis& a, const SuiteOptions& opts) {
    const auto refs = curve_points(a, 0.0, opts.lemma_samples);
    std::vector<LemmaResidual> worst(refs.size());
    parallel_for(
        refs.size(),
        [&](std::size_t k) {
            const CurveSample& s = sample_of(a, refs[k]);
            const Frame fr = integrate_frame(*a.data, a.base_z, a.base_A, s.z, opts.integrator);
            for (const auto& l : lemma_suite(*a.data, fr, s.field)) {
                if (!(l.residual <= worst[k].residual)) worst[k] = l;
            }
        },
        opts.threads);
    CheckResult r;
    r.name = fmt::format("lemma suite {}", a.name);
    r.tolerance = opts.lemma_tol;
    r.samples = refs.size();
    std::string which;
    for (const auto& w : worst) {
        if (!(w.residual <= r.value)) {
            r.value = w.residual;
            which = w.name;
        }
    }
    r.pass = refs.empty() ? a.curves.empty() : r.value <= r.tolerance;
    r.detail = fmt::format("max residual {:.3e} ({}) over {} samples", r.value, which.empty() ? "-" : which,
                           refs.size());
    return r;
}

CheckResult duality_check(const Analysis& a, const SuiteOptions& opts) {
    const auto pts = random_points(a, opts.seed + 1, opts.duality_probes, 0.02, 0.0);
    std::vector<DualityResiduals> res(pts.size());
    parallel_for(
        pts.size(),
        [&](std::size_t k) {
            res[k] = duality_residuals(LocalChart(*a.data, a.base_z, a.base_A, pts[k], opts.oracle), pts[k],
                                       opts.oracle);
        },
        opts.threads);
    CheckResult r;
    r.name = fmt::format("duality residuals {}", a.name);
    r.tolerance = opts.duality_tol;
    r.samples = pts.size();
    for (const auto& d : res) r.value = std::max({r.value, d.orth, d.iso1, d.iso2});
    r.pass = r.value <= r.tolerance;
    r.detail = fmt::format("max(orth, iso1, iso2) = {:.3e} at {} points", r.value, pts.size());
    return r;
}

std::vector<SingularEvent> swallowtails(const Analysis& a, const SuiteOptions& opts) {
    std::vector<SingularEvent> out;
    for (std::size_t c = 0; c < a.curves.size(); ++c) {
        for (Surface w : {Surface::H, Surface::S}) {
            for (const CZero& z : locate_c_zeros(*a.data, a.curves[c], a.classes[c], w, opts.classify)) {
                if (z.record.of(w) != SingularClass::Swallowtail) continue;
                out.push_back({c, z.t, z.record.z, w, 0.0, 0.0});
            }
        }
    }
    return out;
}

std::vector<SingularEvent> torsion_zeros(const Analysis& a, Surface which, const SuiteOptions& opts) {
    std::vector<SingularEvent> out;
    for (std::size_t c = 0; c < a.curves.size(); ++c) {
        const auto& cur = a.curves[c];
        const auto& cls = a.classes[c];
        std::vector<double> kt(cur.samples.size(), std::numeric_limits<double>::quiet_NaN());
        for (std::size_t i = 0; i < cur.samples.size(); ++i) {
            if (cls[i].of(which) != SingularClass::CuspidalEdge) continue;
            kt[i] = closed_form_invariants(*a.data, cur.samples[i].z, cur.samples[i].field, which, opts.classify)
                        .kappa_t;
        }
        for (std::size_t i = 0; i + 1 < cur.samples.size(); ++i) {
            if (!std::isfinite(kt[i]) || !std::isfinite(kt[i + 1])) continue;
            if ((own_c(cls[i], which) > 0) != (own_c(cls[i + 1], which) > 0)) continue;
            if (kt[i] == 0.0 || (kt[i] > 0) == (kt[i + 1] > 0)) continue;
            const double w = kt[i] / (kt[i] - kt[i + 1]);
            SingularEvent e;
            e.curve = c;
            e.which = which;
            e.t = cur.samples[i].t + w * (cur.samples[i + 1].t - cur.samples[i].t);
            e.z = cur.samples[i].z + w * (cur.samples[i + 1].z - cur.samples[i].z);
            const std::size_t near = w < 0.5 ? i : i + 1;
            try {
                const Derivative d = torsion_derivative(cur, near, which, opts.classify);
                e.derivative = d.value;
                e.derivative_error = d.error;
            } catch (const InsufficientSamplesError&) {
                e.derivative = std::numeric_limits<double>::quiet_NaN();
            }
            out.push_back(e);
        }
    }
    return out;
}

CheckResult classification_duality(const Analysis& a, const SuiteOptions& opts, double min_derivative) {
    CheckResult r;
    r.name = fmt::format("classification duality {}", a.name);
    const auto tails = swallowtails(a, opts);
    std::vector<std::string> notes;
    std::size_t unmatched = 0;
    for (Surface w : {Surface::H, Surface::S}) {
        std::vector<SingularEvent> zeros;
        for (const auto& z : torsion_zeros(a, w, opts)) {
            if (std::abs(z.derivative) >= min_derivative) zeros.push_back(z);
        }
        std::vector<SingularEvent> duals;
        for (const auto& t : tails) {
            if (t.which == dual(w)) duals.push_back(t);
        }
        auto matched = [&](cplx z, const std::vector<SingularEvent>& set) {
            return std::any_of(set.begin(), set.end(),
                               [&](const SingularEvent& e) { return std::abs(e.z - z) <= opts.trace.trace_step; });
        };
        for (const auto& z : zeros) {
            r.samples++;
            if (!matched(z.z, duals)) {
                ++unmatched;
                notes.push_back(fmt::format("kappa_t {} zero at {} without dual swallowtail", to_string(w), zstr(z.z)));
            }
        }
        for (const auto& t : duals) {
            r.samples++;
            if (!matched(t.z, zeros)) {
                ++unmatched;
                notes.push_back(
                    fmt::format("swallowtail of {} at {} without kappa_t {} zero", to_string(t.which), zstr(t.z),
                                to_string(w)));
            }
        }
    }
    r.value = static_cast<double>(unmatched);
    r.pass = unmatched == 0;
    r.detail = fmt::format("{} events, {} unmatched", r.samples, unmatched);
    for (const auto& n : notes) r.detail += "; " + n;
    return r;
}

std::vector<RunSummary> curve_summaries(const Analysis& a, const SuiteOptions& opts) {
    std::vector<RunSummary> out;
    for (std::size_t c = 0; c < a.curves.size(); ++c) {
        const auto& cur = a.curves[c];
        for (Surface w : {Surface::H, Surface::S}) {
            for (const SampleRange& run : cuspidal_runs(a.classes[c], w)) {
                RunSummary s;
                s.curve = c;
                s.which = w;
                s.report = curve_report(*a.data, cur, a.classes[c], w, run, opts.classify);
                s.t_first = cur.samples[run.first].t;
                s.t_last = cur.samples[run.last - 1].t;
                out.push_back(s);
            }
        }
    }
    return out;
}

TestFamily family_e1() {
    return {"E1", WeierstrassData::make("exp(z)", "1", Domain::rectangle(-1, 1, -4, 4), "e1")};
}

TestFamily family_e2() {
    return {"E2", WeierstrassData::make("-1", "z^-2", Domain::annular_sector(0.5, 2.0, 0.0, std::numbers::pi), "e2")};
}

std::vector<TestFamily> random_families(std::uint64_t seed, int n) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
    std::uniform_real_distribution<double> radius(0.5, 1.5);
    auto lit = [](cplx c) { return fmt::format("({:.17g} + {:.17g}*i)", c.real(), c.imag()); };
    std::vector<TestFamily> out;
    for (int k = 0; k < n; ++k) {
        const cplx c0(0.0, angle(rng));
        const cplx c1 = std::polar(radius(rng), angle(rng));
        const cplx c2 = 0.5 * cplx(unit(rng), unit(rng));
        const cplx c3 = 0.5 * cplx(unit(rng), unit(rng));
        const std::string alpha =
            fmt::format("exp({} + {}*z + {}*z^2 + {}*z^3)", lit(c0), lit(c1), lit(c2), lit(c3));
        out.push_back({fmt::format("R{}", k + 1),
                       WeierstrassData::make(alpha, "1", Domain::rectangle(-1, 1, -1, 1), "random")});
    }
    return out;
}

std::vector<CheckResult> frame_integrity(const SuiteOptions& opts) {
    std::vector<CheckResult> out;
    const cplx a(2.0, 0.0), b(1.0, 0.0);
    const auto data = WeierstrassData::make("2", "1", Domain::rectangle(-1, 1, -1, 1), "constants");
    const cplx z1(0.8, 0.6);
    auto exact = [&](cplx z) {
        const cplx r = std::sqrt(a * b);
        Mat2 D{0.0, a, b, 0.0};
        return std::cosh(z * r) * Mat2::identity() + (std::sinh(z * r) / r) * D;
    };
    {
        const Frame fr = integrate_frame(data, line_path({0.0, z1}), Mat2::identity(), opts.integrator);
        CheckResult r;
        r.name = "frame endpoint constants(2,1)";
        r.tolerance = 1e-9;
        r.samples = 1;
        r.value = (fr.A - exact(z1)).max_abs();
        r.pass = r.value <= r.tolerance;
        r.detail = fmt::format("max |A - exp(z D)| = {:.3e} at z = {} after {} steps", r.value, zstr(z1), fr.steps);
        out.push_back(r);
    }
    {
        const auto osc = WeierstrassData::make("2", "-0.5", Domain::rectangle(-3, 3, -1, 1), "constants");
        IntegratorOptions io = opts.integrator;
        io.renormalize = false;
        const Path p = line_path({0.0, 2.5, -2.5, 2.5, 0.0});
        double length = 0.0;
        for (const auto& s : p.segments) length += std::abs(s.b - s.a);
        const Frame fr = integrate_frame(osc, p, Mat2::identity(), io);
        CheckResult r;
        r.name = "det drift without renormalization";
        r.tolerance = 1e-9;
        r.samples = static_cast<std::size_t>(fr.steps);
        r.value = fr.max_det_drift;
        r.pass = length >= 10.0 && fr.renormalizations == 0 && r.value <= r.tolerance;
        r.detail = fmt::format("max |det A - 1| = {:.3e} over path length {:.3g} (constants(2,-0.5))", r.value, length);
        out.push_back(r);
    }
    {
        IntegratorOptions io = opts.integrator;
        io.renormalize = false;
        io.fixed_steps = 8;
        const double e1 = (integrate_frame(data, line_path({0.0, z1}), Mat2::identity(), io).A - exact(z1)).max_abs();
        io.fixed_steps = 16;
        const double e2 = (integrate_frame(data, line_path({0.0, z1}), Mat2::identity(), io).A - exact(z1)).max_abs();
        CheckResult r;
        r.name = "step halving error reduction";
        r.tolerance = 4.0;
        r.samples = 2;
        r.value = e1 / e2;
        r.pass = r.value >= r.tolerance;
        r.detail = fmt::format("error {:.3e} with 8 steps, {:.3e} with 16 steps, ratio {:.3g}", e1, e2, r.value);
        out.push_back(r);
    }
    return out;
}

}  // namespace flatfront

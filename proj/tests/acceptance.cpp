// Acceptance run: one PASS/FAIL line per criterion, failing components listed below it.
// Exit status is the number of failing criteria.

#include <chrono>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "flatfront/errors.hpp"
#include "flatfront/verification.hpp"

using namespace flatfront;

namespace {

struct Verdict {
    bool pass = true;
    std::string summary;
    std::vector<std::string> notes;

    void fail(std::string note) {
        pass = false;
        notes.push_back(std::move(note));
    }
    void require(const CheckResult& r) {
        if (!r.pass) fail(fmt::format("{}: {}", r.name, r.detail));
    }
};

int g_failed = 0;

void report(int n, const char* title, const Verdict& v) {
    fmt::print("{} {:>2} {}: {}\n", v.pass ? "PASS" : "FAIL", n, title, v.summary);
    for (const auto& s : v.notes) fmt::print("        {}\n", s);
    if (!v.pass) ++g_failed;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::size_t cuspidal_count(const Analysis& a, Surface w) {
    std::size_t n = 0;
    for (const auto& cls : a.classes) {
        for (const auto& r : cls) n += r.of(w) == SingularClass::CuspidalEdge;
    }
    return n;
}

}  // namespace

int main() {
    SuiteOptions opts;
    std::vector<TestFamily> families{family_e1(), family_e2()};
    for (auto& f : random_families(opts.seed, 5)) families.push_back(std::move(f));

    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Analysis> runs;
    for (const auto& f : families) runs.push_back(analyze(f.data, f.data.domain, opts, f.name));

    {
        Verdict v;
        std::size_t total = 0;
        int vacuous = 0;
        for (const auto& a : runs) {
            for (Surface w : {Surface::H, Surface::S}) {
                const auto checks = oracle_agreement(a, w, opts);
                const std::size_t n = checks.front().samples;
                total += n;
                if (cuspidal_count(a, w) == 0) {
                    ++vacuous;
                    continue;
                }
                if (n < 50) v.fail(fmt::format("{} {}: only {} conditioned samples", a.name, to_string(w), n));
                for (const auto& r : checks) v.require(r);
            }
        }
        const double elapsed = seconds_since(t0);
        if (elapsed > 60.0) v.fail(fmt::format("runtime {:.1f} s exceeds 60 s", elapsed));
        v.summary = fmt::format("{} families, {} samples, {} surface(s) without cuspidal edges, {:.1f} s",
                                runs.size(), total, vacuous, elapsed);
        report(1, "oracle agreement", v);
    }

    {
        Verdict v;
        const double pi = std::numbers::pi;
        const auto e1 = family_e1().data;
        const auto e2 = family_e2().data;
        auto closed = [](const WeierstrassData& d, cplx z, Surface w, bool positive_c) {
            FieldSample b = field_sample(d, z, nullptr);
            const CValues c = c_values(d, z, b);
            if (positive_c && (w == Surface::H ? c.c_h : c.c_d) < 0.0) b = b.flipped();
            return closed_form_invariants(d, z, b, w);
        };
        double worst = 0.0;
        auto expect = [&](const char* what, double got, double want) {
            const double err = std::abs(got - want);
            worst = std::max(worst, std::isfinite(err) ? err : INFINITY);
            if (!(err <= 1e-6)) v.fail(fmt::format("{} = {:.12g}, expected {:.12g}", what, got, want));
        };
        const auto a = closed(e1, cplx(0, pi), Surface::H, true);
        expect("E1 kappa_s^h(i pi)", a.kappa_s, -0.25);
        expect("E1 kappa_t^h(i pi)", a.kappa_t, 0.0);
        expect("E1 kappa_c^h(i pi)", a.kappa_c, 4.0);
        expect("E1 kappa_t^h(i pi/2)", closed(e1, cplx(0, pi / 2), Surface::H, true).kappa_t, 1.0);
        expect("E1 kappa_t^d(i pi/2)", closed(e1, cplx(0, pi / 2), Surface::S, true).kappa_t, -1.0);
        for (int k = 0; k < 8; ++k) {
            const cplx z = std::polar(1.0, -pi + (k + 0.5) * pi / 4);
            const auto b = closed(e2, z, Surface::H, true);
            const std::string at = fmt::format("at {:.3f}{:+.3f}i", z.real(), z.imag());
            expect(("E2 kappa_s^h " + at).c_str(), b.kappa_s, -0.5);
            expect(("E2 kappa_t^h " + at).c_str(), b.kappa_t, 0.0);
            expect(("E2 kappa_c^h " + at).c_str(), b.kappa_c, 2.0 * std::numbers::sqrt2);
        }
        v.summary = fmt::format("max deviation {:.3e}", worst);
        report(2, "spot values", v);
    }

    {
        Verdict v;
        std::size_t n = 0;
        for (const auto& a : runs) {
            const auto r = negativity(a, opts);
            n += r.samples;
            v.require(r);
        }
        v.summary = fmt::format("{} cuspidal-edge samples", n);
        report(3, "negativity of kappa_s", v);
    }

    {
        Verdict v;
        std::size_t n = 0;
        double worst = 0.0;
        for (const auto& a : runs) {
            const auto r = torsion_duality(a, opts);
            n += r.samples;
            worst = std::max(worst, r.value);
            v.require(r);
        }
        v.summary = fmt::format("max |kappa_t^h kappa_t^d + 1| = {:.3e} over {} samples", worst, n);
        report(4, "torsion duality", v);
    }

    {
        Verdict v;
        const Analysis& a = runs[0];
        v.require(classification_duality(a, opts));
        const double pi = std::numbers::pi;
        const double tol = opts.trace.trace_step;
        const auto tails = swallowtails(a, opts);
        bool f0 = false, g_up = false, g_down = false;
        for (const auto& e : tails) {
            if (e.which == Surface::H && std::abs(e.z) <= tol) {
                f0 = true;
            } else if (e.which == Surface::S && std::abs(e.z - cplx(0, pi)) <= tol) {
                g_up = true;
            } else if (e.which == Surface::S && std::abs(e.z + cplx(0, pi)) <= tol) {
                g_down = true;
            } else {
                v.fail(fmt::format("unexpected swallowtail of {} at {:.6g}{:+.6g}i", to_string(e.which), e.z.real(),
                                   e.z.imag()));
            }
        }
        if (!f0) v.fail("no swallowtail of f at 0");
        if (!g_up || !g_down) v.fail("missing swallowtail of g at +-i pi");
        if (tails.size() != 3) v.fail(fmt::format("{} swallowtails, expected 3", tails.size()));
        v.summary = fmt::format("E1: {} swallowtails, {} torsion zeros of f, {} of g", tails.size(),
                                torsion_zeros(a, Surface::H, opts).size(), torsion_zeros(a, Surface::S, opts).size());
        report(5, "classification duality", v);
    }

    {
        Verdict v;
        const double lc = opts.classify.lc_tol;
        int e2_runs = 0, e1_runs = 0;
        double e2_torsion = 0.0, e2_residual = 0.0;
        for (const auto& s : curve_summaries(runs[1], opts)) {
            if (s.which != Surface::H) continue;
            ++e2_runs;
            e2_torsion = std::max(e2_torsion, s.report.max_abs_torsion);
            e2_residual = std::max(e2_residual, s.report.lc_residual);
            if (!s.report.line_of_curvature || s.report.max_abs_torsion > lc || s.report.lc_residual > lc) {
                v.fail(fmt::format("E2 run fails line of curvature: torsion {:.3e}, residual {:.3e}",
                                   s.report.max_abs_torsion, s.report.lc_residual));
            }
            if (!s.report.cone_like_dual) v.fail("E2 dual is not cone-like");
        }
        if (e2_runs == 0) v.fail("E2 has no cuspidal run of f");
        for (const auto& s : curve_summaries(runs[0], opts)) {
            if (s.which != Surface::H) continue;
            ++e1_runs;
            if (s.report.line_of_curvature || s.report.max_abs_torsion <= lc || s.report.lc_residual <= lc) {
                v.fail(fmt::format("E1 run passes a line-of-curvature test: torsion {:.3e}, residual {:.3e}",
                                   s.report.max_abs_torsion, s.report.lc_residual));
            }
        }
        if (e1_runs == 0) v.fail("E1 has no cuspidal run of f");
        v.summary = fmt::format("E2: max |kappa_t^h| {:.3e}, max |Omega| {:.3e}; E1: {} run(s) fail both", e2_torsion,
                                e2_residual, e1_runs);
        report(6, "line of curvature and cone-like dual", v);
    }

    {
        Verdict v;
        std::string s;
        for (const auto& r : frame_integrity(opts)) {
            v.require(r);
            s += fmt::format("{}{} {:.3e}", s.empty() ? "" : "; ", r.name, r.value);
        }
        v.summary = s;
        report(7, "frame integrity", v);
    }

    {
        Verdict v;
        double on = 0.0, off = INFINITY;
        for (const auto& a : runs) {
            const auto r = singular_set_coincidence(a, opts);
            on = std::max(on, r[0].value);
            off = std::min(off, r[1].value);
            for (const auto& c : r) v.require(c);
        }
        v.summary = fmt::format("on curves max {:.3e}, off curves min {:.3e}", on, off);
        report(8, "coincidence of singular sets", v);
    }

    {
        Verdict v;
        double worst = 0.0;
        for (const auto& a : runs) {
            const auto r = lemma_check(a, opts);
            worst = std::max(worst, r.value);
            v.require(r);
            if (r.samples < 20) v.fail(fmt::format("{}: {} samples", r.name, r.samples));
        }
        v.summary = fmt::format("max residual {:.3e}, {} samples per family", worst, opts.lemma_samples);
        report(9, "lemma identities", v);
    }

    {
        Verdict v;
        const auto d = WeierstrassData::make("exp(z^2)", "1", Domain::rectangle(-1, 1, -1, 1));
        const auto c = trace_curve(d, d.domain, cplx(0.5, 0.5), opts.trace);
        const bool ended = c.end_reasons[0] == EndReason::degenerate_point ||
                           c.end_reasons[1] == EndReason::degenerate_point;
        const double dist = c.degenerate_at ? std::abs(*c.degenerate_at) : INFINITY;
        if (!ended) v.fail("trace did not end at a degenerate point");
        if (!(dist <= 1e-3)) v.fail(fmt::format("degenerate point {:.3e} from the origin", dist));
        std::string message = "(accepted)";
        try {
            WeierstrassData::make("exp(z)", "exp(z)", Domain::rectangle(-1, 1, -1, 1));
            v.fail("alpha = beta was accepted");
        } catch (const ConfigError& e) {
            message = e.what();
            if (message.find("identifier vanishes identically") == std::string::npos) {
                v.fail("unexpected message: " + message);
            }
        }
        v.summary = fmt::format("degenerate point at distance {:.3e}; alpha = beta: {}", dist, message);
        report(10, "degeneracy handling", v);
    }

    fmt::print("{} of 10 criteria failed, total {:.1f} s\n", g_failed, seconds_since(t0));
    return g_failed;
}

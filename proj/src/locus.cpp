#include "flatfront/locus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "flatfront/errors.hpp"
#include "flatfront/parallel.hpp"

namespace flatfront {

const char* to_string(EndReason r) {
    switch (r) {
        case EndReason::loop_closed: return "loop_closed";
        case EndReason::boundary: return "boundary";
        case EndReason::degenerate_point: return "degenerate_point";
        case EndReason::max_length: return "max_length";
    }
    return "?";
}

namespace {

bool inside(const WeierstrassData& data, const Domain& region, cplx z) {
    return data.cut_free() ? region.contains_ignoring_cut(z) : region.contains(z);
}

double segment_distance(cplx p, cplx a, cplx b) {
    const cplx d = b - a;
    const double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    const double s = std::clamp((std::conj(d) * (p - a)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + s * d));
}

double distance_to_curve(cplx p, const SingularCurve& c) {
    double best = std::numeric_limits<double>::infinity();
    const auto& s = c.samples;
    if (s.size() == 1) return std::abs(p - s[0].z);
    for (std::size_t k = 1; k < s.size(); ++k) best = std::min(best, segment_distance(p, s[k - 1].z, s[k].z));
    if (c.closed && s.size() > 2) best = std::min(best, segment_distance(p, s.back().z, s.front().z));
    return best;
}

struct HalfTrace {
    std::vector<CurveSample> samples;  // excluding the seed
    EndReason reason = EndReason::boundary;
    std::optional<cplx> degenerate_at;
    double length = 0.0;
};

HalfTrace trace_half(const WeierstrassData& data, const Domain& region, const CurveSample& seed, double direction,
                     double budget, const TraceOptions& opts, bool detect_loop) {
    HalfTrace out;
    CurveSample cur = seed;
    const double corrector_tol = opts.on_curve_tol / 10.0;
    int steps = 0;
    for (;;) {
        if (out.length >= budget) {
            out.reason = EndReason::max_length;
            return out;
        }
        const double second = std::abs(cur.lj.lambda_zz) + std::abs(cur.lj.lambda_zzbar);
        double h = opts.trace_step;
        if (second > 0.0) h = std::min(h, 0.5 * std::abs(cur.lj.lambda_z) / second);
        h = std::min(h, budget - out.length + 1e-15);
        const cplx dir = direction * cur.field.xi / std::abs(cur.field.xi);

        std::optional<cplx> next;
        bool left_region = false;
        while (h > 1e-14) {
            const cplx pred = cur.z + h * dir;
            if (!inside(data, region, pred)) {
                left_region = true;
                break;
            }
            try {
                next = newton_to_curve(data, pred, corrector_tol, opts.newton_max_iter, nullptr);
            } catch (const EvaluationError&) {
                next.reset();
            }
            if (next && std::abs(*next - cur.z) <= opts.trace_step && std::abs(*next - pred) < 0.5 * h) break;
            next.reset();
            h *= 0.5;
        }
        if (left_region) {
            out.reason = EndReason::boundary;
            return out;
        }
        if (!next) {
            out.reason = EndReason::degenerate_point;
            out.degenerate_at = cur.z;
            return out;
        }
        if (!inside(data, region, *next)) {
            out.reason = EndReason::boundary;
            return out;
        }

        CurveSample s;
        s.z = *next;
        const auto [alpha, beta] = data.jets(s.z);
        s.lj = lambda_jet(alpha, beta);
        if (std::abs(s.lj.lambda_z) < opts.nondegeneracy_tol) {
            out.reason = EndReason::degenerate_point;
            out.degenerate_at = s.z;
            return out;
        }
        s.field = field_sample(alpha, beta, s.lj, &cur.field);
        const double dl = std::abs(s.z - cur.z);
        out.length += dl;
        s.t = seed.t + direction * out.length;
        ++steps;
        if (detect_loop && steps >= 5 && std::abs(s.z - seed.z) < opts.trace_step / 2) {
            out.reason = EndReason::loop_closed;
            return out;
        }
        out.samples.push_back(s);
        cur = s;
    }
}

}  // namespace

std::optional<cplx> newton_to_curve(const WeierstrassData& data, cplx z, double tol, int max_iter,
                                    const Domain* region) {
    for (int it = 0; it <= max_iter; ++it) {
        const LambdaJet lj = lambda_jet(data, z);
        if (!std::isfinite(lj.lambda)) return std::nullopt;
        if (std::abs(lj.lambda) <= tol) return z;
        if (it == max_iter) break;
        const cplx g = lj.gradient();
        const double g2 = std::norm(g);
        if (g2 == 0.0) return std::nullopt;
        z -= lj.lambda * g / g2;
        if (region && !region->contains(z)) return std::nullopt;
    }
    return std::nullopt;
}

SeedReport find_seeds(const WeierstrassData& data, const Domain& region, const TraceOptions& opts) {
    const int n = opts.grid_n;
    const Lattice lat = Lattice::over(region, n, n);
    std::vector<double> lam(static_cast<std::size_t>(n * n), std::numeric_limits<double>::quiet_NaN());
    auto node_z = [&](int j, int k) { return region.from_chart(lat.chart(j, k)); };
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            try {
                const auto [a, b] = data.values(node_z(j, k));
                lam[static_cast<std::size_t>(k * n + j)] = std::norm(a) - std::norm(b);
            } catch (const EvaluationError&) {
            }
        }
    }
    SeedReport rep;
    const double h_grid = region.spacing(n);
    auto try_edge = [&](int j0, int k0, int j1, int k1) {
        const double l0 = lam[static_cast<std::size_t>(k0 * n + j0)];
        const double l1 = lam[static_cast<std::size_t>(k1 * n + j1)];
        if (!std::isfinite(l0) || !std::isfinite(l1)) return;
        if ((l0 > 0.0) == (l1 > 0.0) && l0 != 0.0 && l1 != 0.0) return;
        const double w = (l0 == l1) ? 0.5 : l0 / (l0 - l1);
        const cplx c = lat.chart(j0, k0) + w * (lat.chart(j1, k1) - lat.chart(j0, k0));
        const cplx start = region.from_chart(c);
        std::optional<cplx> z;
        try {
            z = newton_to_curve(data, start, opts.seed_tol, opts.newton_max_iter, &region);
        } catch (const EvaluationError&) {
        }
        if (!z) {
            rep.warnings.push_back(fmt::format("Newton did not converge from z = {:.6g}{:+.6g}i; seed discarded",
                                               start.real(), start.imag()));
            return;
        }
        for (const cplx& s : rep.seeds) {
            if (std::abs(s - *z) < h_grid / 2) return;
        }
        rep.seeds.push_back(*z);
    };
    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            if (j + 1 < n) try_edge(j, k, j + 1, k);
            if (k + 1 < n) try_edge(j, k, j, k + 1);
        }
    }
    return rep;
}

SingularCurve trace_curve(const WeierstrassData& data, const Domain& region, cplx seed, const TraceOptions& opts) {
    CurveSample s0;
    s0.z = seed;
    const auto [alpha, beta] = data.jets(seed);
    s0.lj = lambda_jet(alpha, beta);
    if (std::abs(s0.lj.lambda) > opts.on_curve_tol) {
        throw NumericalError(fmt::format("seed z = {:.6g}{:+.6g}i is off the singular set (|lambda| = {:.3e})",
                                         seed.real(), seed.imag(), std::abs(s0.lj.lambda)));
    }
    if (std::abs(s0.lj.lambda_z) < opts.nondegeneracy_tol) {
        throw NumericalError(fmt::format("seed z = {:.6g}{:+.6g}i is a degenerate singular point", seed.real(),
                                         seed.imag()));
    }
    s0.field = field_sample(alpha, beta, s0.lj, nullptr);

    SingularCurve curve;
    HalfTrace fwd = trace_half(data, region, s0, +1.0, opts.max_length, opts, true);
    if (fwd.reason == EndReason::loop_closed) {
        curve.closed = true;
        curve.end_reasons = {EndReason::loop_closed, EndReason::loop_closed};
        curve.samples.push_back(s0);
        curve.samples.insert(curve.samples.end(), fwd.samples.begin(), fwd.samples.end());
        return curve;
    }
    HalfTrace bwd = trace_half(data, region, s0, -1.0, opts.max_length - fwd.length, opts, false);
    curve.end_reasons = {bwd.reason, fwd.reason};
    curve.degenerate_at = bwd.degenerate_at ? bwd.degenerate_at : fwd.degenerate_at;
    curve.samples.assign(bwd.samples.rbegin(), bwd.samples.rend());
    curve.samples.push_back(s0);
    curve.samples.insert(curve.samples.end(), fwd.samples.begin(), fwd.samples.end());
    const double t0 = curve.samples.front().t;
    for (auto& s : curve.samples) s.t -= t0;
    return curve;
}

std::vector<SingularCurve> trace_all(const WeierstrassData& data, const Domain& region, const TraceOptions& opts,
                                     std::vector<std::string>* warnings, int threads) {
    SeedReport seeds = find_seeds(data, region, opts);
    if (warnings) warnings->insert(warnings->end(), seeds.warnings.begin(), seeds.warnings.end());

    std::vector<std::optional<SingularCurve>> traced(seeds.seeds.size());
    std::vector<std::string> errors(seeds.seeds.size());
    parallel_for(
        seeds.seeds.size(),
        [&](std::size_t i) {
            try {
                traced[i] = trace_curve(data, region, seeds.seeds[i], opts);
            } catch (const NumericalError& e) {
                errors[i] = e.what();
            }
        },
        threads);

    std::vector<SingularCurve> out;
    for (std::size_t i = 0; i < traced.size(); ++i) {
        if (!traced[i]) {
            if (warnings) warnings->push_back(errors[i]);
            continue;
        }
        bool duplicate = false;
        for (const auto& c : out) {
            if (distance_to_curve(seeds.seeds[i], c) <= opts.trace_step) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) out.push_back(std::move(*traced[i]));
    }
    return out;
}

}  // namespace flatfront

#include "flatfront/invariants.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "flatfront/errors.hpp"

namespace flatfront {

const char* to_string(SingularClass c) {
    switch (c) {
        case SingularClass::CuspidalEdge: return "CuspidalEdge";
        case SingularClass::Swallowtail: return "Swallowtail";
        case SingularClass::NonDegenerateOther: return "NonDegenerateOther";
        case SingularClass::Degenerate: return "Degenerate";
    }
    return "?";
}

CValues c_values(const LambdaJet& lj, const FieldSample& branch) {
    const cplx w = lj.lambda_z / branch.sqrt_ab;
    return {(cplx(0.0, 1.0) * w).real(), w.real()};
}

namespace {

FieldSample rebranch(const Jet& alpha, const Jet& beta, const LambdaJet& lj, const FieldSample& branch) {
    if (branch.sqrt_ab == 0.0) throw NumericalError("c_values: branch of sqrt(alpha beta) unavailable");
    FieldSample ref = branch;
    return field_sample(alpha, beta, lj, &ref);
}

}  // namespace

CValues c_values(const WeierstrassData& data, cplx z, const FieldSample& branch) {
    const auto [alpha, beta] = data.jets(z);
    const LambdaJet lj = lambda_jet(alpha, beta);
    return c_values(lj, rebranch(alpha, beta, lj, branch));
}

double swallowtail_condition(const Jet& alpha, const Jet& beta) {
    return ((schwarzian(alpha) - schwarzian(beta)) / (alpha.d0 * beta.d0)).real();
}

ClassificationRecord classify(const Jet& alpha, const Jet& beta, const LambdaJet& lj, const FieldSample& branch,
                              const ClassifyOptions& opts) {
    if (std::abs(lj.lambda) > opts.on_curve_tol) {
        throw NumericalError(fmt::format("classify: z = {:.6g}{:+.6g}i is off the singular set (|lambda| = {:.3e})",
                                         lj.z.real(), lj.z.imag(), std::abs(lj.lambda)));
    }
    ClassificationRecord r;
    r.z = lj.z;
    r.branch_phase = branch.branch_phase;
    const CValues c = c_values(lj, branch);
    r.c_h = c.c_h;
    r.c_d = c.c_d;
    r.swcond = swallowtail_condition(alpha, beta);
    // C_h^2 + C_d^2 = |lambda' / sqrt(alpha beta)|^2
    const bool degenerate =
        std::abs(lj.lambda_z) < opts.nondegeneracy_tol || std::hypot(r.c_h, r.c_d) <= opts.class_tol;
    auto decide = [&](double cv, bool& ambiguous) {
        ambiguous = std::abs(cv) >= opts.class_tol / 10 && std::abs(cv) <= opts.class_tol;
        if (degenerate) return SingularClass::Degenerate;
        if (std::abs(cv) > opts.class_tol) return SingularClass::CuspidalEdge;
        if (std::abs(r.swcond) > opts.class_tol) return SingularClass::Swallowtail;
        return SingularClass::NonDegenerateOther;
    };
    r.class_f = decide(r.c_h, r.ambiguous_f);
    r.class_g = decide(r.c_d, r.ambiguous_g);
    return r;
}

ClassificationRecord classify(const WeierstrassData& data, cplx z, const FieldSample& branch,
                              const ClassifyOptions& opts) {
    const auto [alpha, beta] = data.jets(z);
    const LambdaJet lj = lambda_jet(alpha, beta);
    return classify(alpha, beta, lj, rebranch(alpha, beta, lj, branch), opts);
}

InvariantSet closed_form_invariants(const Jet& alpha, const LambdaJet& lj, const CValues& c, Surface which,
                                    const ClassifyOptions& opts) {
    InvariantSet inv;
    if (std::abs(lj.lambda_z) < opts.nondegeneracy_tol) return inv;
    const double own = which == Surface::H ? c.c_h : c.c_d;
    if (std::abs(own) <= opts.class_tol) return inv;
    const double a = std::abs(alpha.d0);
    const double a4 = a * a * a * a;
    const double l2 = std::norm(lj.lambda_z);
    inv.kappa_s = -l2 / (4.0 * a4 * std::abs(own));
    if (which == Surface::H) {
        inv.kappa_t = c.c_d / c.c_h;
        inv.kappa_c = 4.0 * a * c.c_h / std::pow(std::abs(c.c_h), 1.5);
    } else {
        inv.kappa_t = -c.c_h / c.c_d;
        inv.kappa_c = -4.0 * a * c.c_d / std::pow(std::abs(c.c_d), 1.5);
    }
    inv.kappa_n = 0.0;
    inv.defined = true;
    return inv;
}

InvariantSet closed_form_invariants(const WeierstrassData& data, cplx z, const FieldSample& branch, Surface which,
                                    const ClassifyOptions& opts) {
    const auto [alpha, beta] = data.jets(z);
    const LambdaJet lj = lambda_jet(alpha, beta);
    return closed_form_invariants(alpha, lj, c_values(lj, rebranch(alpha, beta, lj, branch)), which, opts);
}

std::vector<ClassificationRecord> classify_curve(const WeierstrassData& data, const SingularCurve& curve,
                                                 const ClassifyOptions& opts) {
    std::vector<ClassificationRecord> out;
    out.reserve(curve.samples.size());
    for (const auto& s : curve.samples) {
        const auto [alpha, beta] = data.jets(s.z);
        out.push_back(classify(alpha, beta, s.lj, s.field, opts));
    }
    return out;
}

namespace {

double lagrange_derivative(const double* x, const double* y, int n, double x0) {
    double d = 0.0;
    for (int i = 0; i < n; ++i) {
        double li = 0.0;
        for (int m = 0; m < n; ++m) {
            if (m == i) continue;
            double term = 1.0 / (x[i] - x[m]);
            for (int l = 0; l < n; ++l) {
                if (l == i || l == m) continue;
                term *= (x0 - x[l]) / (x[i] - x[l]);
            }
            li += term;
        }
        d += y[i] * li;
    }
    return d;
}

}  // namespace

Derivative torsion_derivative(const SingularCurve& curve, std::size_t index, Surface which,
                              const ClassifyOptions& opts) {
    const auto& s = curve.samples;
    const auto n = static_cast<long>(s.size());
    const auto i = static_cast<long>(index);
    if (i < 0 || i >= n) throw InsufficientSamplesError("torsion_derivative: index out of range");
    const double loop = curve.closed && n > 2 ? s.back().t + std::abs(s.front().z - s.back().z) : 0.0;
    double t[5], k[5];
    for (long m = -2; m <= 2; ++m) {
        long j = i + m;
        double shift = 0.0;
        if (j < 0 || j >= n) {
            if (!curve.closed || n < 5) {
                throw InsufficientSamplesError(
                    fmt::format("torsion_derivative: sample {} needs two neighbors on each side", index));
            }
            shift = j < 0 ? -loop : loop;
            j = (j + n) % n;
        }
        const CValues c = c_values(s[static_cast<std::size_t>(j)].lj, s[static_cast<std::size_t>(j)].field);
        const double own = which == Surface::H ? c.c_h : c.c_d;
        if (std::abs(own) <= opts.class_tol) {
            throw InsufficientSamplesError(
                fmt::format("torsion_derivative: kappa_t undefined at neighbor {} of sample {}", j, index));
        }
        t[m + 2] = s[static_cast<std::size_t>(j)].t + shift;
        k[m + 2] = which == Surface::H ? c.c_d / c.c_h : -c.c_h / c.c_d;
    }
    const double d5 = lagrange_derivative(t, k, 5, t[2]);
    const double d3 = lagrange_derivative(t + 1, k + 1, 3, t[2]);
    return {d5, std::abs(d5 - d3)};
}

std::vector<CZero> locate_c_zeros(const WeierstrassData& data, const SingularCurve& curve,
                                  const std::vector<ClassificationRecord>& classes, Surface which,
                                  const ClassifyOptions& opts) {
    std::vector<CZero> out;
    const auto& s = curve.samples;
    auto own = [&](const ClassificationRecord& r) { return which == Surface::H ? r.c_h : r.c_d; };
    auto decisive = [&](std::size_t k) { return std::abs(own(classes[k])) > opts.class_tol; };
    const std::size_t n = s.size();
    if (n == 0) return out;

    auto t_at = [&](std::size_t k, std::size_t k1, cplx z) {
        const cplx za = s[k].z, zb = s[k1].z;
        const double tk = s[k].t;
        const double t1 = k1 <= k ? s.back().t + std::abs(s.front().z - s.back().z) + (s[k1].t - s.front().t) : s[k1].t;
        return tk + std::abs(z - za) / std::max(std::abs(zb - za), 1e-300) * (t1 - tk);
    };
    auto smallest = [&](std::size_t from, std::size_t count) {
        std::size_t best = from % n;
        for (std::size_t m = 0; m < count; ++m) {
            const std::size_t k = (from + m) % n;
            if (std::abs(own(classes[k])) < std::abs(own(classes[best]))) best = k;
        }
        return best;
    };

    std::vector<std::size_t> marks;
    for (std::size_t k = 0; k < n; ++k) {
        if (decisive(k)) marks.push_back(k);
    }
    if (marks.empty()) return out;
    if (!curve.closed) {
        if (marks.front() > 0) {
            const std::size_t b = smallest(0, marks.front());
            out.push_back({b, s[b].t, which, classes[b]});
        }
    }
    const std::size_t pairs = curve.closed ? marks.size() : marks.size() - 1;
    for (std::size_t m = 0; m < pairs; ++m) {
        const std::size_t k = marks[m];
        const std::size_t k1 = marks[(m + 1) % marks.size()];
        const std::size_t gap = (k1 + n - k) % n == 0 ? n : (k1 + n - k) % n;
        const double c0 = own(classes[k]);
        const double c1 = own(classes[k1]);
        if ((c0 > 0.0) == (c1 > 0.0)) {
            if (gap > 1) {
                const std::size_t b = smallest(k + 1, gap - 1);
                out.push_back({b, s[b].t, which, classes[b]});
            }
            continue;
        }
        const cplx za = s[k].z, zb = s[k1].z;
        double lo = 0.0, hi = 1.0;
        FieldSample branch = s[k].field;
        ClassificationRecord rec = classes[k];
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            const auto z = newton_to_curve(data, za + mid * (zb - za), 1e-12, 50);
            if (!z) throw NumericalError("locate_c_zeros: corrector failed while refining a zero of C");
            const auto [alpha, beta] = data.jets(*z);
            const LambdaJet lj = lambda_jet(alpha, beta);
            const FieldSample f = field_sample(alpha, beta, lj, &branch);
            rec = classify(alpha, beta, lj, f, opts);
            const double c = own(rec);
            if (std::abs(c) <= opts.class_tol * 1e-3) break;
            if ((c > 0.0) == (c0 > 0.0)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.push_back({k, t_at(k, k1, rec.z), which, rec});
    }
    if (!curve.closed && marks.back() + 1 < n) {
        const std::size_t b = smallest(marks.back() + 1, n - marks.back() - 1);
        out.push_back({b, s[b].t, which, classes[b]});
    }
    return out;
}

std::vector<SampleRange> cuspidal_runs(const std::vector<ClassificationRecord>& classes, Surface which) {
    std::vector<SampleRange> runs;
    std::size_t k = 0;
    while (k < classes.size()) {
        if (classes[k].of(which) != SingularClass::CuspidalEdge) {
            ++k;
            continue;
        }
        SampleRange r{k, k};
        while (r.last < classes.size() && classes[r.last].of(which) == SingularClass::CuspidalEdge) ++r.last;
        runs.push_back(r);
        k = r.last;
    }
    return runs;
}

std::vector<Frame> frames_along(const WeierstrassData& data, const SingularCurve& curve, cplx base_z,
                                const Mat2& base_A, const IntegratorOptions& opts) {
    std::vector<Frame> frames;
    if (curve.samples.empty()) return frames;
    frames.reserve(curve.samples.size());
    frames.push_back(integrate_frame(data, base_z, base_A, curve.samples.front().z, opts));
    for (std::size_t k = 1; k < curve.samples.size(); ++k) {
        Frame fr = integrate_frame(data, line_path({curve.samples[k - 1].z, curve.samples[k].z}), frames.back().A,
                                   opts, "curve");
        fr.z = curve.samples[k].z;
        frames.push_back(std::move(fr));
    }
    return frames;
}

CurveReport curve_report(const WeierstrassData& data, const SingularCurve& curve,
                         const std::vector<ClassificationRecord>& classes, Surface which, SampleRange range,
                         const ClassifyOptions& opts) {
    if (range.last > curve.samples.size() || range.first >= range.last) {
        throw InsufficientSamplesError("curve_report: empty sample range");
    }
    std::vector<std::size_t> offending;
    for (std::size_t k = range.first; k < range.last; ++k) {
        if (classes[k].of(which) != SingularClass::CuspidalEdge) offending.push_back(k);
    }
    if (!offending.empty()) {
        std::string list;
        for (std::size_t n = 0; n < offending.size() && n < 10; ++n) {
            const cplx z = curve.samples[offending[n]].z;
            list += fmt::format("{}#{} ({:.6g}{:+.6g}i, {})", n ? ", " : "", offending[n], z.real(), z.imag(),
                                to_string(classes[offending[n]].of(which)));
        }
        throw MixedClassificationError(fmt::format("curve_report: {} sample(s) are not cuspidal edges of {}: {}",
                                                   offending.size(), to_string(which), list));
    }
    CurveReport rep;
    rep.range = range;
    for (std::size_t k = range.first; k < range.last; ++k) {
        const auto& s = curve.samples[k];
        const auto [alpha, beta] = data.jets(s.z);
        const CValues c{classes[k].c_h, classes[k].c_d};
        const InvariantSet inv = closed_form_invariants(alpha, s.lj, c, which, opts);
        rep.max_abs_torsion = std::max(rep.max_abs_torsion, std::abs(inv.kappa_t));

        const SurfaceJet fj = surface_jet(Mat2::identity(), alpha, beta, Surface::H);
        const SurfaceJet gj = surface_jet(Mat2::identity(), alpha, beta, Surface::S);
        const SurfaceJet& own = which == Surface::H ? fj : gj;
        const SurfaceJet& other = which == Surface::H ? gj : fj;
        const cplx omega = volume_form(own.p, own.directional(s.field.xi), other.p, other.directional(s.field.xi));
        rep.lc_residual = std::max(rep.lc_residual, std::abs(omega));

        const cplx dual = which == Surface::H ? s.field.eta_d : s.field.eta_h;
        const cplx ratio = s.field.xi / dual;
        rep.max_cone_angle = std::max(rep.max_cone_angle, std::abs(ratio.imag()) / std::abs(ratio));
    }
    rep.line_of_curvature = rep.max_abs_torsion <= opts.lc_tol && rep.lc_residual <= opts.lc_tol;
    rep.cone_like_dual = rep.line_of_curvature && rep.max_cone_angle <= opts.cone_angle_tol;
    return rep;
}

}  // namespace flatfront

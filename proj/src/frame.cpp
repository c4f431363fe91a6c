#include "flatfront/frame.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <fmt/format.h>

#include "flatfront/errors.hpp"
#include "flatfront/parallel.hpp"

namespace flatfront {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

class Rhs {
public:
    Rhs(const WeierstrassData& data, const PathSegment& seg) : data_(data), seg_(seg) {}

    Mat2 operator()(double sigma, const Mat2& A) const {
        cplx z, dz;
        data_.domain.eval_segment(seg_, sigma, z, dz);
        if (!data_.domain.contains(z, 1e-9)) {
            throw PathError(fmt::format("integration path leaves the domain at z = {:.6g}{:+.6g}i", z.real(), z.imag()),
                            z);
        }
        const auto [alpha, beta] = data_.values(z);
        // A * [[0, alpha], [beta, 0]] * dz
        return {A(0, 1) * beta * dz, A(0, 0) * alpha * dz, A(1, 1) * beta * dz, A(1, 0) * alpha * dz};
    }

    cplx z_at(double sigma) const {
        cplx z, dz;
        data_.domain.eval_segment(seg_, sigma, z, dz);
        return z;
    }

private:
    const WeierstrassData& data_;
    const PathSegment& seg_;
};

struct StepResult {
    Mat2 y;
    Mat2 k7;
    double err;
};

StepResult dopri_step(const Rhs& f, double s, double h, const Mat2& y, const Mat2& k1) {
    const Mat2 k2 = f(s + c2 * h, y + h * (a21 * k1));
    const Mat2 k3 = f(s + c3 * h, y + h * (a31 * k1 + a32 * k2));
    const Mat2 k4 = f(s + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
    const Mat2 k5 = f(s + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const Mat2 k6 = f(s + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const Mat2 y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const Mat2 k7 = f(s + h, y5);
    const Mat2 err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    return {y5, k7, err.max_abs()};
}

void after_step(Frame& fr, const IntegratorOptions& opts) {
    double drift = std::abs(fr.A.det() - 1.0);
    if (opts.renormalize && drift > opts.det_tol / 10.0) {
        fr.A *= 1.0 / std::sqrt(fr.A.det());
        ++fr.renormalizations;
        drift = std::abs(fr.A.det() - 1.0);
    }
    fr.max_det_drift = std::max(fr.max_det_drift, drift);
    ++fr.steps;
}

void integrate_segment(const WeierstrassData& data, const PathSegment& seg, Frame& fr, const IntegratorOptions& opts) {
    const double length = data.domain.segment_length(seg);
    if (length == 0.0) return;
    const Rhs f(data, seg);

    if (opts.fixed_steps > 0) {
        const double h = 1.0 / opts.fixed_steps;
        Mat2 k1 = f(0.0, fr.A);
        for (int n = 0; n < opts.fixed_steps; ++n) {
            StepResult r = dopri_step(f, n * h, h, fr.A, k1);
            const int before = fr.renormalizations;
            fr.A = r.y;
            after_step(fr, opts);
            k1 = fr.renormalizations != before ? f((n + 1) * h, fr.A) : r.k7;
        }
        return;
    }

    double s = 0.0;
    double h = std::min(1.0, 0.05 / length);
    Mat2 k1 = f(0.0, fr.A);
    int steps = 0;
    while (s < 1.0) {
        if (s + h > 1.0) h = 1.0 - s;
        if (h * length < opts.min_step) {
            const cplx z = f.z_at(s);
            throw IntegrationError(fmt::format("step size underflow at z = {:.6g}{:+.6g}i", z.real(), z.imag()), z);
        }
        if (++steps > opts.max_steps) {
            const cplx z = f.z_at(s);
            throw IntegrationError(fmt::format("step budget exhausted at z = {:.6g}{:+.6g}i", z.real(), z.imag()), z);
        }
        StepResult r = dopri_step(f, s, h, fr.A, k1);
        const double scale = opts.step_tol * std::max(1.0, fr.A.max_abs());
        const double ratio = r.err / scale;
        if (ratio <= 1.0) {
            s = (1.0 - s - h) < 1e-15 ? 1.0 : s + h;
            const int before = fr.renormalizations;
            fr.A = r.y;
            after_step(fr, opts);
            k1 = fr.renormalizations != before ? f(s, fr.A) : r.k7;
        }
        const double factor = ratio == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(ratio, -0.2), 0.2, 5.0);
        h *= factor;
    }
}

}  // namespace

Mat2 frame_matrix_D(const WeierstrassData& data, cplx z) {
    const auto [alpha, beta] = data.values(z);
    return {0.0, alpha, beta, 0.0};
}

Frame integrate_frame(const WeierstrassData& data, const Path& path, const Mat2& A0, const IntegratorOptions& opts,
                      std::string path_id) {
    if (std::abs(A0.det() - 1.0) > opts.det_tol * std::max(1.0, A0.max_abs() * A0.max_abs())) {
        throw NumericalError(fmt::format("initial frame has det {:.15g}, expected 1", std::abs(A0.det())));
    }
    Frame fr;
    fr.A = A0;
    fr.path_id = std::move(path_id);
    if (!path.segments.empty()) {
        cplx z, dz;
        data.domain.eval_segment(path.segments.front(), 0.0, z, dz);
        fr.z = z;
    }
    for (const auto& seg : path.segments) {
        integrate_segment(data, seg, fr, opts);
        cplx z, dz;
        data.domain.eval_segment(seg, 1.0, z, dz);
        fr.z = z;
    }
    fr.det_drift = std::abs(fr.A.det() - 1.0);
    return fr;
}

Frame integrate_frame(const WeierstrassData& data, cplx z0, const Mat2& A0, cplx z, const IntegratorOptions& opts) {
    Frame fr = integrate_frame(data, data.domain.path(z0, z), A0, opts, "domain");
    fr.z = z;
    return fr;
}

FrameGrid frame_grid(const WeierstrassData& data, const Domain& region, int n_s, int n_t,
                     const IntegratorOptions& opts, std::optional<cplx> base_z, const Mat2& base_A, int threads) {
    if (!region.within(data.domain)) {
        throw ConfigError(fmt::format("region {} is not inside the domain {}", region.describe(), data.domain.describe()));
    }
    FrameGrid g;
    g.region = region;
    g.lattice = Lattice::over(region, n_s, n_t);
    const cplx base_c = base_z ? region.to_chart(*base_z) : region.default_base_chart();
    if (!region.contains_chart(base_c)) throw ConfigError("base point lies outside the region");
    g.base_z = region.from_chart(base_c);
    g.base_A = base_A;
    g.frames.resize(static_cast<std::size_t>(n_s * n_t));

    // chart segments are interpreted in the region's chart
    WeierstrassData local = data;
    local.domain = region;

    auto chart_seg = [](cplx a, cplx b) { return PathSegment{PathSegment::Kind::chart, a, b}; };
    auto step = [&](const Mat2& A, cplx a, cplx b, const std::string& id) {
        Path p;
        if (a != b) p.segments.push_back(chart_seg(a, b));
        return integrate_frame(local, p, A, opts, id);
    };

    // column at s = s_b
    const Lattice& lat = g.lattice;
    std::vector<Mat2> column(static_cast<std::size_t>(n_t));
    int k_b = 0;
    while (k_b + 1 < n_t && lat.chart(0, k_b + 1).imag() <= base_c.imag()) ++k_b;
    auto col_c = [&](int k) { return cplx(base_c.real(), lat.chart(0, k).imag()); };
    {
        Mat2 A = base_A;
        cplx at = base_c;
        for (int k = k_b; k >= 0; --k) {
            A = step(A, at, col_c(k), "column").A;
            at = col_c(k);
            column[static_cast<std::size_t>(k)] = A;
        }
        A = column[static_cast<std::size_t>(k_b)];
        at = col_c(k_b);
        for (int k = k_b + 1; k < n_t; ++k) {
            A = step(A, at, col_c(k), "column").A;
            at = col_c(k);
            column[static_cast<std::size_t>(k)] = A;
        }
    }

    int j_b = 0;
    while (j_b + 1 < n_s && lat.chart(j_b + 1, 0).real() <= base_c.real()) ++j_b;

    parallel_for(
        static_cast<std::size_t>(n_t),
        [&](std::size_t kk) {
            const int k = static_cast<int>(kk);
            const std::string id = fmt::format("row{}", k);
            auto store = [&](int j, Frame fr) {
                fr.z = g.z(j, k);
                g.frames[static_cast<std::size_t>(k * n_s + j)] = std::move(fr);
            };
            Frame fr;
            Mat2 A = column[static_cast<std::size_t>(kk)];
            cplx at = col_c(k);
            for (int j = j_b; j >= 0; --j) {
                fr = step(A, at, lat.chart(j, k), id);
                A = fr.A;
                at = lat.chart(j, k);
                store(j, fr);
            }
            A = g.frames[static_cast<std::size_t>(k * n_s + j_b)].A;
            at = lat.chart(j_b, k);
            for (int j = j_b + 1; j < n_s; ++j) {
                fr = step(A, at, lat.chart(j, k), id);
                A = fr.A;
                at = lat.chart(j, k);
                store(j, fr);
            }
        },
        threads);

    std::mt19937_64 rng(20240611);
    std::uniform_int_distribution<int> pick_s(0, n_s - 1), pick_t(0, n_t - 1);
    for (int trial = 0; trial < 10; ++trial) {
        const int j = pick_s(rng), k = pick_t(rng);
        Path p;
        const cplx mid(lat.chart(j, k).real(), base_c.imag());
        if (mid != base_c) p.segments.push_back(chart_seg(base_c, mid));
        if (lat.chart(j, k) != mid) p.segments.push_back(chart_seg(mid, lat.chart(j, k)));
        const Frame other = integrate_frame(local, p, base_A, opts, "spot-check");
        const Mat2& A = g.at(j, k).A;
        const double diff = (other.A - A).max_abs() / std::max(1.0, A.max_abs());
        g.route_discrepancy = std::max(g.route_discrepancy, diff);
        if (diff > kPathConsistencyTol) {
            const cplx z = g.z(j, k);
            throw IntegrationError(fmt::format("lattice routes to z = {:.6g}{:+.6g}i disagree by {:.3e}", z.real(),
                                               z.imag(), diff),
                                   z);
        }
    }
    return g;
}

}  // namespace flatfront

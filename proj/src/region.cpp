#include "flatfront/region.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "flatfront/errors.hpp"

namespace flatfront {

namespace {
constexpr double kPi = std::numbers::pi;
}

Path line_path(const std::vector<cplx>& points) {
    Path p;
    for (std::size_t k = 1; k < points.size(); ++k) {
        p.segments.push_back({PathSegment::Kind::line, points[k - 1], points[k]});
    }
    return p;
}

Domain Domain::rectangle(double u0, double u1, double v0, double v1) {
    if (!(u1 > u0) || !(v1 > v0) || !std::isfinite(u0 + u1 + v0 + v1)) {
        throw ConfigError(fmt::format("empty rectangle [{}, {}] x [{}, {}]", u0, u1, v0, v1));
    }
    Domain d;
    d.shape_ = Shape::rectangle;
    d.s0_ = u0;
    d.s1_ = u1;
    d.t0_ = v0;
    d.t1_ = v1;
    return d;
}

Domain Domain::annular_sector(double r0, double r1, double center, double half_width) {
    if (!(r0 > 0.0) || !(r1 > r0) || !std::isfinite(r1)) {
        throw ConfigError(fmt::format("annular sector needs 0 < r0 < r1, got r0 = {}, r1 = {}", r0, r1));
    }
    if (!(half_width > 0.0) || half_width > kPi + 1e-15) {
        throw ConfigError(fmt::format("annular sector half width must lie in (0, pi], got {}", half_width));
    }
    Domain d;
    d.shape_ = Shape::annular_sector;
    d.center_ = center;
    d.s0_ = center - std::min(half_width, kPi);
    d.s1_ = center + std::min(half_width, kPi);
    d.t0_ = r0;
    d.t1_ = r1;
    return d;
}

bool Domain::full_annulus() const noexcept {
    return shape_ == Shape::annular_sector && (s1_ - s0_) >= 2.0 * kPi - 1e-14;
}

double Domain::branch_angle() const noexcept { return shape_ == Shape::rectangle ? 0.0 : center_; }

cplx Domain::to_chart(cplx z) const {
    if (shape_ == Shape::rectangle) return z;
    const double rel = std::arg(z * std::polar(1.0, -center_));
    return {center_ + rel, std::abs(z)};
}

cplx Domain::from_chart(cplx c) const {
    if (shape_ == Shape::rectangle) return c;
    return std::polar(c.imag(), c.real());
}

bool Domain::contains_chart(cplx c, double slack) const {
    const double ss = slack * std::max(1.0, std::abs(s1_ - s0_));
    const double ts = slack * std::max(1.0, std::abs(t1_ - t0_));
    return c.real() >= s0_ - ss && c.real() <= s1_ + ss && c.imag() >= t0_ - ts && c.imag() <= t1_ + ts;
}

bool Domain::contains(cplx z, double slack) const { return contains_chart(to_chart(z), slack); }

bool Domain::contains_ignoring_cut(cplx z, double slack) const {
    if (!full_annulus()) return contains(z, slack);
    const double r = std::abs(z);
    const double ts = slack * std::max(1.0, t1_ - t0_);
    return r >= t0_ - ts && r <= t1_ + ts;
}

bool Domain::within(const Domain& outer, double slack) const {
    if (outer.shape_ == Shape::rectangle) {
        if (shape_ == Shape::rectangle) {
            return outer.contains_chart({s0_, t0_}, slack) && outer.contains_chart({s1_, t1_}, slack);
        }
        // conservative: bounding box of the sector's outer circle portion
        const double r = t1_;
        for (int k = 0; k <= 64; ++k) {
            const double s = s0_ + (s1_ - s0_) * k / 64.0;
            if (!outer.contains(std::polar(r, s), slack) || !outer.contains(std::polar(t0_, s), slack)) return false;
        }
        return true;
    }
    if (shape_ == Shape::rectangle) {
        for (int k = 0; k <= 64; ++k) {
            const double a = k / 64.0;
            const cplx pts[4] = {{s0_ + a * (s1_ - s0_), t0_}, {s0_ + a * (s1_ - s0_), t1_},
                                 {s0_, t0_ + a * (t1_ - t0_)}, {s1_, t0_ + a * (t1_ - t0_)}};
            for (const cplx& p : pts) {
                if (!outer.contains(p, slack) || std::abs(p) < 1e-300) return false;
            }
        }
        return true;
    }
    const double ts = slack * std::max(1.0, outer.t1_ - outer.t0_);
    const double ss = slack * std::max(1.0, outer.s1_ - outer.s0_);
    if (t0_ < outer.t0_ - ts || t1_ > outer.t1_ + ts) return false;
    // compare angular ranges relative to the outer center
    const double shift = outer.center_ - center_;
    const double k = std::round(shift / (2.0 * kPi));
    const double a0 = s0_ + 2.0 * kPi * k;
    const double a1 = s1_ + 2.0 * kPi * k;
    return a0 >= outer.s0_ - ss && a1 <= outer.s1_ + ss;
}

Path Domain::chart_path(cplx from_c, cplx to_c) const {
    Path p;
    const cplx corner(from_c.real(), to_c.imag());
    if (corner != from_c) p.segments.push_back({PathSegment::Kind::chart, from_c, corner});
    if (to_c != corner) p.segments.push_back({PathSegment::Kind::chart, corner, to_c});
    return p;
}

void Domain::eval_segment(const PathSegment& seg, double sigma, cplx& z, cplx& dz) const {
    if (seg.kind == PathSegment::Kind::line || shape_ == Shape::rectangle) {
        z = seg.a + sigma * (seg.b - seg.a);
        dz = seg.b - seg.a;
        return;
    }
    const cplx d = seg.b - seg.a;
    const cplx c = seg.a + sigma * d;
    const cplx e = std::polar(1.0, c.real());
    z = c.imag() * e;
    dz = d.imag() * e + cplx(0.0, d.real()) * z;
}

double Domain::segment_length(const PathSegment& seg) const {
    if (seg.kind == PathSegment::Kind::line || shape_ == Shape::rectangle) return std::abs(seg.b - seg.a);
    const cplx d = seg.b - seg.a;
    if (d.real() == 0.0) return std::abs(d.imag());
    if (d.imag() == 0.0) return std::abs(seg.a.imag() * d.real());
    double len = 0.0;
    constexpr int n = 64;
    for (int k = 0; k < n; ++k) {
        cplx z, dz;
        eval_segment(seg, (k + 0.5) / n, z, dz);
        len += std::abs(dz) / n;
    }
    return len;
}

double Domain::spacing(int n) const {
    const int m = std::max(n - 1, 1);
    if (shape_ == Shape::rectangle) return std::min(s1_ - s0_, t1_ - t0_) / m;
    return std::min(t0_ * (s1_ - s0_), t1_ - t0_) / m;
}

std::string Domain::describe() const {
    if (shape_ == Shape::rectangle) {
        return fmt::format("rectangle [{}, {}] x [{}, {}]", s0_, s1_, t0_, t1_);
    }
    return fmt::format("annular sector {} < |z| < {}, arg in [{}, {}]", t0_, t1_, s0_, s1_);
}

Lattice Lattice::over(const Domain& d, int n_s, int n_t) {
    if (n_s < 2 || n_t < 2) throw ConfigError(fmt::format("lattice needs at least 2x2 nodes, got {}x{}", n_s, n_t));
    Lattice l;
    l.n_s = n_s;
    l.n_t = n_t;
    l.ds = (d.s1() - d.s0()) / (n_s - 1);
    l.dt = (d.t1() - d.t0()) / (n_t - 1);
    l.origin = cplx(d.s0(), d.t0());
    return l;
}

}  // namespace flatfront

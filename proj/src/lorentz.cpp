#include "flatfront/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "flatfront/errors.hpp"

namespace flatfront {

Mat2 Mat2::inverse() const {
    const cplx d = det();
    return {a[3] / d, -a[1] / d, -a[2] / d, a[0] / d};
}

double Mat2::max_abs() const {
    double m = 0.0;
    for (const auto& x : a) m = std::max(m, std::abs(x));
    return m;
}

Mat2& Mat2::operator+=(const Mat2& o) {
    for (std::size_t k = 0; k < 4; ++k) a[k] += o.a[k];
    return *this;
}

Mat2& Mat2::operator-=(const Mat2& o) {
    for (std::size_t k = 0; k < 4; ++k) a[k] -= o.a[k];
    return *this;
}

Mat2& Mat2::operator*=(cplx s) {
    for (auto& x : a) x *= s;
    return *this;
}

Mat2 operator+(Mat2 x, const Mat2& y) { return x += y; }
Mat2 operator-(Mat2 x, const Mat2& y) { return x -= y; }
Mat2 operator-(const Mat2& x) { return {-x.a[0], -x.a[1], -x.a[2], -x.a[3]}; }
Mat2 operator*(cplx s, Mat2 x) { return x *= s; }
Mat2 operator*(Mat2 x, cplx s) { return x *= s; }
Mat2 operator/(Mat2 x, cplx s) { return x *= (1.0 / s); }

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a[0] * y.a[0] + x.a[1] * y.a[2], x.a[0] * y.a[1] + x.a[1] * y.a[3],
            x.a[2] * y.a[0] + x.a[3] * y.a[2], x.a[2] * y.a[1] + x.a[3] * y.a[3]};
}

double hermitian_asymmetry(const Mat2& m) { return (m - m.adjoint()).max_abs(); }

const char* to_string(Tag t) {
    switch (t) {
        case Tag::point_h3: return "point_H3";
        case Tag::point_s31: return "point_S31";
        case Tag::real_tangent: return "real_tangent";
        case Tag::complex_tangent: return "complex_tangent";
    }
    return "?";
}

namespace {

void require_hermitian(const Mat2& m, double tol, const char* what) {
    const double asym = hermitian_asymmetry(m);
    if (asym > tol * std::max(1.0, m.max_abs())) {
        throw HermitianError(fmt::format("{}: matrix is not Hermitian (max asymmetry {:.3e})", what, asym), asym);
    }
}

}  // namespace

HermVector HermVector::point_h3(const Mat2& m, double tol) {
    require_hermitian(m, tol, "point_H3");
    const double scale = std::max(1.0, m.max_abs() * m.max_abs());
    const cplx d = m.det();
    if (std::abs(d - 1.0) > tol * scale || m.trace().real() <= 0.0) {
        throw TagError(fmt::format("point_H3: det = {:.12g}{:+.3g}i, trace = {:.6g}", d.real(), d.imag(),
                                   m.trace().real()));
    }
    return {m, Tag::point_h3};
}

HermVector HermVector::point_s31(const Mat2& m, double tol) {
    require_hermitian(m, tol, "point_S31");
    const double scale = std::max(1.0, m.max_abs() * m.max_abs());
    const cplx d = m.det();
    if (std::abs(d + 1.0) > tol * scale) {
        throw TagError(fmt::format("point_S31: det = {:.12g}{:+.3g}i", d.real(), d.imag()));
    }
    return {m, Tag::point_s31};
}

HermVector HermVector::real_tangent(const Mat2& m, double tol) {
    require_hermitian(m, tol, "real_tangent");
    return {m, Tag::real_tangent};
}

HermVector& HermVector::operator+=(const HermVector& o) {
    m_ += o.m_;
    tag_ = Tag::complex_tangent;
    return *this;
}

HermVector& HermVector::operator-=(const HermVector& o) {
    m_ -= o.m_;
    tag_ = Tag::complex_tangent;
    return *this;
}

HermVector& HermVector::operator*=(cplx s) {
    m_ *= s;
    tag_ = Tag::complex_tangent;
    return *this;
}

HermVector operator+(HermVector x, const HermVector& y) { return x += y; }
HermVector operator-(HermVector x, const HermVector& y) { return x -= y; }
HermVector operator-(const HermVector& x) { return HermVector::tangent(-x.matrix()); }
HermVector operator*(cplx s, HermVector x) { return x *= s; }
HermVector operator*(HermVector x, cplx s) { return x *= s; }
HermVector operator/(HermVector x, cplx s) { return x *= (1.0 / s); }

HermVector vec_herm(const Vec4& x) {
    const Mat2 m{cplx(x[0] + x[3], 0.0), cplx(x[1], x[2]), cplx(x[1], -x[2]), cplx(x[0] - x[3], 0.0)};
    return HermVector::real_tangent(m);
}

Vec4 herm_vec(const HermVector& x) {
    const Mat2& m = x.matrix();
    require_hermitian(m, kHermitianTol, "herm_vec");
    const double d0 = m(0, 0).real();
    const double d1 = m(1, 1).real();
    return {0.5 * (d0 + d1), m(0, 1).real(), m(0, 1).imag(), 0.5 * (d0 - d1)};
}

double minkowski_dot(const Vec4& x, const Vec4& y) {
    return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3];
}

cplx minkowski_inner(const Mat2& x, const Mat2& y) {
    // -1/2 tr(X e2 Y^T e2) written out: e2 Y^T e2 = [[y11, -y01], [-y10, y00]].
    return -0.5 * (x(0, 0) * y(1, 1) - x(0, 1) * y(1, 0) - x(1, 0) * y(0, 1) + x(1, 1) * y(0, 0));
}

cplx minkowski_inner(const HermVector& x, const HermVector& y) { return minkowski_inner(x.matrix(), y.matrix()); }

Mat2 cross_with_inverse(const Mat2& p_inv, const Mat2& x, const Mat2& y) {
    return cplx(0.0, 0.5) * (x * p_inv * y - y * p_inv * x);
}

HermVector cross(const HermVector& p, const HermVector& x, const HermVector& y) {
    if (!p.is_point()) {
        throw TagError(fmt::format("cross: base point has tag {}", to_string(p.tag())));
    }
    const Mat2& pm = p.matrix();
    if (std::abs(pm.det()) <= 1e-300 * std::max(1.0, pm.max_abs())) {
        throw SingularPointError("cross: base point matrix is not invertible");
    }
    return HermVector::tangent(cross_with_inverse(pm.inverse(), x.matrix(), y.matrix()));
}

cplx volume_form(const HermVector& p, const HermVector& x, const HermVector& y, const HermVector& z) {
    return minkowski_inner(cross(p, x, y), z);
}

std::vector<double> project(const HermVector& p, Projection model) {
    switch (model) {
        case Projection::raw: {
            const Vec4 x = herm_vec(p);
            return {x[0], x[1], x[2], x[3]};
        }
        case Projection::poincare_ball: {
            if (p.tag() != Tag::point_h3) {
                throw TagError(fmt::format("poincare_ball projection needs point_H3, got {}", to_string(p.tag())));
            }
            const Vec4 x = herm_vec(p);
            const double s = 1.0 / (1.0 + x[0]);
            return {x[1] * s, x[2] * s, x[3] * s};
        }
        case Projection::hollow_ball: {
            if (p.tag() != Tag::point_s31) {
                throw TagError(fmt::format("hollow_ball projection needs point_S31, got {}", to_string(p.tag())));
            }
            const Vec4 y = herm_vec(p);
            const double s = std::exp(std::atan(y[0])) / std::sqrt(1.0 + y[0] * y[0]);
            return {y[1] * s, y[2] * s, y[3] * s};
        }
    }
    return {};
}

}  // namespace flatfront

#pragma once

// Hermitian-matrix model of Lorentz-Minkowski 4-space R^4_1 with signature (-+++).
//
// A real 4-vector x is identified with the Hermitian matrix
//     iota(x) = x0 e0 + x1 e1 + x2 e2 + x3 e3 = [[x0 + x3, x1 + i x2], [x1 - i x2, x0 - x3]],
// so that <x, x> = -det iota(x).  H^3 = {X : det X = 1, tr X > 0} and
// S^3_1 = {X : det X = -1}.  Complexified tangent vectors (holomorphic derivatives
// of real-analytic maps) live in the same 2x2 complex matrices and every bilinear
// operation below extends complex-bilinearly to them.

#include <array>
#include <complex>
#include <vector>

namespace flatfront {

using cplx = std::complex<double>;

/// Dense 2x2 complex matrix, row-major.
struct Mat2 {
    std::array<cplx, 4> a{};

    constexpr Mat2() = default;
    constexpr Mat2(cplx m00, cplx m01, cplx m10, cplx m11) : a{m00, m01, m10, m11} {}

    constexpr cplx& operator()(int r, int c) { return a[static_cast<std::size_t>(2 * r + c)]; }
    constexpr const cplx& operator()(int r, int c) const { return a[static_cast<std::size_t>(2 * r + c)]; }

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 zero() { return {}; }

    cplx det() const { return a[0] * a[3] - a[1] * a[2]; }
    cplx trace() const { return a[0] + a[3]; }
    Mat2 adjoint() const { return {std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}; }
    Mat2 transpose() const { return {a[0], a[2], a[1], a[3]}; }
    Mat2 inverse() const;
    double max_abs() const;

    Mat2& operator+=(const Mat2& o);
    Mat2& operator-=(const Mat2& o);
    Mat2& operator*=(cplx s);
};

Mat2 operator+(Mat2 x, const Mat2& y);
Mat2 operator-(Mat2 x, const Mat2& y);
Mat2 operator-(const Mat2& x);
Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator*(cplx s, Mat2 x);
Mat2 operator*(Mat2 x, cplx s);
Mat2 operator/(Mat2 x, cplx s);

/// max |X - X^*| over entries.
double hermitian_asymmetry(const Mat2& m);

/// The basis e0..e3 of Herm(2).
namespace basis {
inline constexpr Mat2 e0{1.0, 0.0, 0.0, 1.0};
inline constexpr Mat2 e1{0.0, 1.0, 1.0, 0.0};
inline constexpr Mat2 e2{0.0, cplx(0.0, 1.0), cplx(0.0, -1.0), 0.0};
inline constexpr Mat2 e3{1.0, 0.0, 0.0, -1.0};
}  // namespace basis

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPointTol = 1e-9;

enum class Tag { point_h3, point_s31, real_tangent, complex_tangent };

const char* to_string(Tag t);

/// A point or tangent vector of R^4_1 in the Hermitian model.
///
/// Construction through the named factories validates the invariant attached to the
/// tag; arithmetic on HermVectors always yields a complex_tangent.
class HermVector {
public:
    HermVector() = default;

    static HermVector point_h3(const Mat2& m, double tol = kPointTol);
    static HermVector point_s31(const Mat2& m, double tol = kPointTol);
    static HermVector real_tangent(const Mat2& m, double tol = kHermitianTol);
    static HermVector tangent(const Mat2& m) { return HermVector(m, Tag::complex_tangent); }

    const Mat2& matrix() const noexcept { return m_; }
    Tag tag() const noexcept { return tag_; }
    bool is_point() const noexcept { return tag_ == Tag::point_h3 || tag_ == Tag::point_s31; }

    cplx operator()(int r, int c) const { return m_(r, c); }

    HermVector& operator+=(const HermVector& o);
    HermVector& operator-=(const HermVector& o);
    HermVector& operator*=(cplx s);

private:
    HermVector(const Mat2& m, Tag t) : m_(m), tag_(t) {}
    Mat2 m_{};
    Tag tag_ = Tag::complex_tangent;
};

HermVector operator+(HermVector x, const HermVector& y);
HermVector operator-(HermVector x, const HermVector& y);
HermVector operator-(const HermVector& x);
HermVector operator*(cplx s, HermVector x);
HermVector operator*(HermVector x, cplx s);
HermVector operator/(HermVector x, cplx s);

using Vec4 = std::array<double, 4>;

/// iota(x).  The result is tagged real_tangent; use HermVector::point_h3 / point_s31 to
/// promote it to a point.
HermVector vec_herm(const Vec4& x);

/// Inverse of vec_herm.  Throws HermitianError when X is not Hermitian within 1e-12
/// (relative to max(1, |X|)).
Vec4 herm_vec(const HermVector& x);

/// <x, y> = -x0 y0 + x1 y1 + x2 y2 + x3 y3 on real vectors.
double minkowski_dot(const Vec4& x, const Vec4& y);

/// Complex-bilinear Lorentzian inner product, <X, Y> = -1/2 tr(X e2 Y^T e2).
/// On Hermitian X this gives <X, X> = -det X.
cplx minkowski_inner(const Mat2& x, const Mat2& y);
cplx minkowski_inner(const HermVector& x, const HermVector& y);

/// Exterior product on T_p H^3 or T_p S^3_1: X x Y = (i/2)(X p^{-1} Y - Y p^{-1} X).
/// p must carry a point tag; throws SingularPointError when p is not invertible.
HermVector cross(const HermVector& p, const HermVector& x, const HermVector& y);

/// Unchecked matrix-level kernel of cross(); p_inv is the precomputed inverse of p.
Mat2 cross_with_inverse(const Mat2& p_inv, const Mat2& x, const Mat2& y);

/// Omega(X, Y, Z) = <X x Y, Z> at the point p.
cplx volume_form(const HermVector& p, const HermVector& x, const HermVector& y, const HermVector& z);

enum class Projection { poincare_ball, hollow_ball, raw };

/// Visualization coordinates.  poincare_ball requires a point of H^3 and returns a
/// 3-vector in the open unit ball; hollow_ball requires a point of S^3_1 and returns a
/// 3-vector with norm in (e^{-pi/2}, e^{pi/2}); raw returns the 4-vector.
std::vector<double> project(const HermVector& p, Projection model);

}  // namespace flatfront

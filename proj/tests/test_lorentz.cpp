#include <cmath>
#include <random>

#include <doctest.h>

#include "flatfront/errors.hpp"
#include "flatfront/lorentz.hpp"

using namespace flatfront;

namespace {

Mat2 random_sl2(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat2 m{cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng)), cplx(u(rng), u(rng))};
    m(0, 0) += 2.0;
    return m / std::sqrt(m.det());
}

double dist(const Mat2& x, const Mat2& y) { return (x - y).max_abs(); }

}  // namespace

TEST_CASE("basis is Lorentz orthonormal") {
    const Mat2 e[4] = {basis::e0, basis::e1, basis::e2, basis::e3};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            const double want = i != j ? 0.0 : (i == 0 ? -1.0 : 1.0);
            CHECK(std::abs(minkowski_inner(e[i], e[j]) - want) < 1e-15);
        }
    }
}

TEST_CASE("inner product of Hermitian matrices is the Minkowski form") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int k = 0; k < 20; ++k) {
        const Vec4 x{u(rng), u(rng), u(rng), u(rng)}, y{u(rng), u(rng), u(rng), u(rng)};
        const auto X = vec_herm(x), Y = vec_herm(y);
        CHECK(std::abs(minkowski_inner(X, Y) - minkowski_dot(x, y)) < 1e-13);
        CHECK(std::abs(minkowski_inner(X, X) + X.matrix().det()) < 1e-13);
        const Vec4 back = herm_vec(X);
        for (int i = 0; i < 4; ++i) CHECK(back[i] == doctest::Approx(x[i]).epsilon(1e-15));
    }
}

TEST_CASE("inner product is invariant under X -> A X A*") {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 10; ++k) {
        const Mat2 A = random_sl2(rng);
        const Mat2 X = vec_herm({0.3, -1.0, 0.5, 2.0}).matrix(), Y = vec_herm({1.2, 0.4, -0.7, 0.1}).matrix();
        const cplx before = minkowski_inner(X, Y);
        const cplx after = minkowski_inner(A * X * A.adjoint(), A * Y * A.adjoint());
        CHECK(std::abs(before - after) < 1e-12);
    }
}

TEST_CASE("point tags validate the quadric") {
    CHECK_NOTHROW(HermVector::point_h3(Mat2::identity()));
    CHECK_THROWS_AS(HermVector::point_h3(basis::e3), TagError);
    CHECK_THROWS_AS(HermVector::point_h3(-1.0 * Mat2::identity()), TagError);
    CHECK_NOTHROW(HermVector::point_s31(basis::e3));
    CHECK_THROWS_AS(HermVector::point_s31(Mat2::identity()), TagError);
    CHECK_THROWS_AS(herm_vec(HermVector::tangent(Mat2{0.0, 1.0, 0.0, 0.0})), HermitianError);
}

TEST_CASE("cross product and volume form at the identity") {
    const auto p = HermVector::point_h3(Mat2::identity());
    const auto e1 = HermVector::real_tangent(basis::e1), e2 = HermVector::real_tangent(basis::e2);
    const auto e3 = HermVector::real_tangent(basis::e3);
    CHECK(dist(cross(p, e1, e2).matrix(), basis::e3) < 1e-15);
    CHECK(dist(cross(p, e2, e3).matrix(), basis::e1) < 1e-15);
    CHECK(dist(cross(p, e1, e1).matrix(), Mat2::zero()) < 1e-15);
    CHECK(std::abs(volume_form(p, e1, e2, e3) - 1.0) < 1e-15);
    CHECK(std::abs(volume_form(p, e2, e1, e3) + 1.0) < 1e-15);
    CHECK_THROWS_AS(cross(e1, e2, e3), TagError);
}

TEST_CASE("projections") {
    const auto o = project(HermVector::point_h3(Mat2::identity()), Projection::poincare_ball);
    CHECK(std::hypot(o[0], o[1], o[2]) < 1e-15);
    const double r = 1.3;
    const auto p = HermVector::point_h3(vec_herm({std::cosh(r), std::sinh(r), 0.0, 0.0}).matrix());
    const auto x = project(p, Projection::poincare_ball);
    CHECK(std::hypot(x[0], x[1], x[2]) == doctest::Approx(std::tanh(r / 2)).epsilon(1e-14));
    const auto raw = project(p, Projection::raw);
    REQUIRE(raw.size() == 4);
    CHECK(raw[0] == doctest::Approx(std::cosh(r)).epsilon(1e-14));
    const auto s = project(HermVector::point_s31(basis::e3), Projection::hollow_ball);
    const double n = std::hypot(s[0], s[1], s[2]);
    CHECK(n > std::exp(-M_PI / 2));
    CHECK(n < std::exp(M_PI / 2));
    CHECK_THROWS_AS(project(p, Projection::hollow_ball), TagError);
}

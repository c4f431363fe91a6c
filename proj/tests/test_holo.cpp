#include <cmath>
#include <numbers>

#include <doctest.h>

#include "flatfront/errors.hpp"
#include "flatfront/holo.hpp"

using namespace flatfront;

namespace {
constexpr double pi = std::numbers::pi;
bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }
}  // namespace

TEST_CASE("expression values") {
    CHECK(near(Expression::parse("exp(z)").value(cplx(0, pi)), -1.0, 1e-15));
    CHECK(near(Expression::parse("2i*z + 1").value(cplx(1, 1)), cplx(-1, 2), 1e-15));
    CHECK(near(Expression::parse("z^-2").value(cplx(0, 2)), -0.25, 1e-15));
    CHECK(near(Expression::parse("pow(z, 0.5)").value(4.0), 2.0, 1e-15));
    CHECK(near(Expression::parse("-(z - 1)*(z + 1)").value(3.0), -8.0, 1e-15));
    CHECK(Expression::parse("exp(1 + 2i)").is_constant());
    CHECK_FALSE(Expression::parse("z*0 + 1").is_constant());
}

TEST_CASE("jet of a cubic") {
    const Jet j = Expression::parse("2*z^3 - z").jet(cplx(1, 1));
    CHECK(near(j.d0, cplx(-5, 3), 1e-14));
    CHECK(near(j.d1, cplx(-1, 12), 1e-14));
    CHECK(near(j.d2, cplx(12, 12), 1e-14));
    CHECK(near(j.d3, 12.0, 1e-14));
}

TEST_CASE("jet of exp(z^2)") {
    const cplx z(0.3, -0.4);
    const Jet j = Expression::parse("exp(z^2)").jet(z);
    const cplx e = std::exp(z * z);
    CHECK(near(j.d1, 2.0 * z * e, 1e-14));
    CHECK(near(j.d2, (2.0 + 4.0 * z * z) * e, 1e-14));
    CHECK(near(j.d3, (12.0 * z + 8.0 * z * z * z) * e, 1e-14));
}

TEST_CASE("log uses the cut opposite the branch anchor") {
    const auto l = Expression::parse("log(z)");
    CHECK(near(l.value(cplx(0, 1)), cplx(0, pi / 2), 1e-15));
    CHECK_THROWS_AS(l.value(-1.0), EvaluationError);
    const auto m = Expression::parse("log(z)", pi);
    CHECK(near(m.value(-1.0), cplx(0, pi), 1e-15));
    CHECK_FALSE(l.cut_free());
    CHECK_THROWS_AS(Expression::parse("1/z").value(0.0), EvaluationError);
}

TEST_CASE("schwarzian-type derivative (a'/a)' - (a'/a)^2 / 2") {
    CHECK(near(schwarzian(Expression::parse("exp(z)").jet(0.7)), -0.5, 1e-14));
    CHECK(near(schwarzian(Expression::parse("z^-2").jet(cplx(0.6, 0.8))), 0.0, 1e-13));
    CHECK(near(schwarzian(Expression::parse("1/z").jet(2.0)), 0.125, 1e-14));
    CHECK(near(schwarzian(Expression::parse("exp(z^2)").jet(0.0)), 2.0, 1e-14));
}

TEST_CASE("malformed expressions") {
    for (const char* s : {"exp(", "z +", "foo(z)", "", "2 * * z", "pow(z, z)"}) {
        CHECK_THROWS_AS(Expression::parse(s), ConfigError);
    }
}

TEST_CASE("Weierstrass data validation") {
    const auto box = Domain::rectangle(-1, 1, -1, 1);
    CHECK_NOTHROW(WeierstrassData::make("exp(z)", "1", box));
    try {
        WeierstrassData::make("exp(z)", "exp(z)", box);
        FAIL("alpha = beta accepted");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("identifier vanishes identically") != std::string::npos);
    }
    CHECK_THROWS_AS(WeierstrassData::make("2", "-2", box), ConfigError);
    CHECK_THROWS_AS(WeierstrassData::make("z", "1", box), ConfigError);
}

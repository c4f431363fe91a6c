#include <cmath>
#include <numbers>

#include <doctest.h>

#include "flatfront/errors.hpp"
#include "flatfront/invariants.hpp"

using namespace flatfront;

namespace {

constexpr double pi = std::numbers::pi;

const WeierstrassData& e1() {
    static const auto d = WeierstrassData::make("exp(z)", "1", Domain::rectangle(-1, 1, -4, 4));
    return d;
}

const WeierstrassData& e2() {
    static const auto d = WeierstrassData::make("-1", "z^-2", Domain::annular_sector(0.5, 2.0, 0.0, pi));
    return d;
}

}  // namespace

TEST_CASE("C values on the imaginary axis") {
    for (double v : {-2.5, -1.0, 0.0, 0.4, 1.7, 3.0}) {
        const cplx z(0.0, v);
        const CValues c = c_values(e1(), z, field_sample(e1(), z, nullptr));
        CHECK(c.c_h == doctest::Approx(std::sin(v / 2)).epsilon(1e-13));
        CHECK(c.c_d == doctest::Approx(std::cos(v / 2)).epsilon(1e-13));
    }
}

TEST_CASE("classification on the imaginary axis") {
    auto at = [](double v) {
        const cplx z(0.0, v);
        return classify(e1(), z, field_sample(e1(), z, nullptr));
    };
    const auto r0 = at(0.0);
    CHECK(r0.class_f == SingularClass::Swallowtail);
    CHECK(r0.class_g == SingularClass::CuspidalEdge);
    CHECK(r0.swcond == doctest::Approx(-0.5));
    const auto r1 = at(pi / 2);
    CHECK(r1.class_f == SingularClass::CuspidalEdge);
    CHECK(r1.class_g == SingularClass::CuspidalEdge);
    const auto r2 = at(pi);
    CHECK(r2.class_f == SingularClass::CuspidalEdge);
    CHECK(r2.class_g == SingularClass::Swallowtail);
    CHECK(r2.swcond == doctest::Approx(0.5));
    CHECK_THROWS_AS(classify(e1(), cplx(0.5, 0.0), field_sample(e1(), cplx(0.5, 0.0), nullptr)), NumericalError);
}

TEST_CASE("swallowtail condition") {
    const auto ja = Expression::parse("exp(z)").jet(cplx(0, pi / 3));
    const auto jb = Jet::constant(1.0, cplx(0, pi / 3));
    CHECK(swallowtail_condition(ja, jb) == doctest::Approx(-0.25).epsilon(1e-13));
}

TEST_CASE("closed forms on the imaginary axis") {
    const double v = 2 * pi / 3;
    const cplx z(0.0, v);
    const auto b = field_sample(e1(), z, nullptr);
    const double s = std::sin(v / 2), c = std::cos(v / 2);
    const auto h = closed_form_invariants(e1(), z, b, Surface::H);
    REQUIRE(h.defined);
    CHECK(h.kappa_s == doctest::Approx(-1 / (4 * s)).epsilon(1e-13));
    CHECK(h.kappa_t == doctest::Approx(c / s).epsilon(1e-13));
    CHECK(h.kappa_c == doctest::Approx(4 / std::sqrt(s)).epsilon(1e-13));
    CHECK(h.kappa_n == 0.0);
    const auto d = closed_form_invariants(e1(), z, b, Surface::S);
    REQUIRE(d.defined);
    CHECK(d.kappa_s == doctest::Approx(-1 / (4 * c)).epsilon(1e-13));
    CHECK(d.kappa_t == doctest::Approx(-s / c).epsilon(1e-13));
    CHECK(d.kappa_c == doctest::Approx(-4 / std::sqrt(c)).epsilon(1e-13));
    CHECK_FALSE(closed_form_invariants(e1(), 0.0, field_sample(e1(), 0.0, nullptr), Surface::H).defined);
}

TEST_CASE("closed forms on the unit circle") {
    for (double th : {-2.5, -1.0, 0.3, 1.9, 3.0}) {
        const cplx z = std::polar(1.0, th);
        FieldSample b = field_sample(e2(), z, nullptr);
        if (c_values(e2(), z, b).c_h < 0) b = b.flipped();
        const CValues cv = c_values(e2(), z, b);
        CHECK(cv.c_h == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(std::abs(cv.c_d) < 1e-13);
        const auto h = closed_form_invariants(e2(), z, b, Surface::H);
        CHECK(h.kappa_s == doctest::Approx(-0.5).epsilon(1e-13));
        CHECK(std::abs(h.kappa_t) < 1e-13);
        CHECK(h.kappa_c == doctest::Approx(2 * std::numbers::sqrt2).epsilon(1e-13));
    }
}

TEST_CASE("curve level results on (exp z, 1)") {
    const auto curves = trace_all(e1(), e1().domain);
    REQUIRE(curves.size() == 1);
    const auto& c = curves[0];
    const auto classes = classify_curve(e1(), c);
    REQUIRE(classes.size() == c.samples.size());

    const auto zf = locate_c_zeros(e1(), c, classes, Surface::H);
    REQUIRE(zf.size() == 1);
    CHECK(std::abs(zf[0].record.z) < 1e-8);
    const auto zg = locate_c_zeros(e1(), c, classes, Surface::S);
    REQUIRE(zg.size() == 2);
    for (const auto& z : zg) CHECK(std::abs(std::abs(z.record.z.imag()) - pi) < 1e-8);

    // d/dv cot(v/2) = -1/(2 sin^2(v/2)), so |d kappa_t / dt| = 1 at v = pi/2
    std::size_t k = 0;
    for (std::size_t i = 0; i < c.samples.size(); ++i) {
        if (std::abs(c.samples[i].z.imag() - pi / 2) < std::abs(c.samples[k].z.imag() - pi / 2)) k = i;
    }
    const double v = c.samples[k].z.imag();
    const auto dk = torsion_derivative(c, k, Surface::H);
    CHECK(std::abs(dk.value) == doctest::Approx(0.5 / std::pow(std::sin(v / 2), 2)).epsilon(1e-6));

    const auto runs = cuspidal_runs(classes, Surface::H);
    REQUIRE(runs.size() == 2);
    for (const auto& r : runs) {
        const auto rep = curve_report(e1(), c, classes, Surface::H, r);
        CHECK_FALSE(rep.line_of_curvature);
        CHECK_FALSE(rep.cone_like_dual);
    }
    CHECK_THROWS_AS(curve_report(e1(), c, classes, Surface::H, {0, c.samples.size()}), MixedClassificationError);
}

TEST_CASE("the unit circle is a line of curvature with a cone-like dual") {
    const auto curves = trace_all(e2(), e2().domain);
    REQUIRE(curves.size() == 1);
    const auto classes = classify_curve(e2(), curves[0]);
    const auto runs = cuspidal_runs(classes, Surface::H);
    REQUIRE(runs.size() == 1);
    const auto rep = curve_report(e2(), curves[0], classes, Surface::H, runs[0]);
    CHECK(rep.line_of_curvature);
    CHECK(rep.cone_like_dual);
    CHECK(rep.max_abs_torsion < 1e-7);
    CHECK(rep.lc_residual < 1e-7);
    CHECK(cuspidal_runs(classes, Surface::S).empty());
}

TEST_CASE("cuspidal runs") {
    std::vector<ClassificationRecord> cls(6);
    for (auto& r : cls) r.class_f = SingularClass::CuspidalEdge;
    cls[2].class_f = SingularClass::Swallowtail;
    const auto runs = cuspidal_runs(cls, Surface::H);
    REQUIRE(runs.size() == 2);
    CHECK(runs[0].first == 0);
    CHECK(runs[0].last == 2);
    CHECK(runs[1].first == 3);
    CHECK(runs[1].last == 6);
    CHECK(cuspidal_runs(cls, Surface::S).empty());
}

TEST_CASE("points where neither C can be decisive are degenerate") {
    const auto d = WeierstrassData::make("exp(z^2)", "1", Domain::rectangle(-1, 1, -1, 1));
    const cplx z(5e-9, 5e-9);
    const auto r = classify(d, z, field_sample(d, z, nullptr));
    CHECK(r.class_f == SingularClass::Degenerate);
    CHECK(r.class_g == SingularClass::Degenerate);
    const cplx w(0.3, 0.3);
    const auto s = classify(d, w, field_sample(d, w, nullptr));
    CHECK(s.class_f == SingularClass::CuspidalEdge);
    CHECK(s.class_g == SingularClass::CuspidalEdge);
}

#include <cmath>
#include <numbers>

#include <doctest.h>

#include "flatfront/invariants.hpp"
#include "flatfront/oracle.hpp"

using namespace flatfront;

namespace {

const WeierstrassData& e1() {
    static const auto d = WeierstrassData::make("exp(z)", "1", Domain::rectangle(-1, 1, -4, 4));
    return d;
}

bool agrees(double closed, double oracle) {
    return std::abs(closed - oracle) <= std::max(1e-5, 1e-4 * std::abs(closed));
}

}  // namespace

TEST_CASE("directional derivative is exact on quadratics") {
    const MatField w = [](cplx z) { return Mat2{z * z, std::conj(z), 1.0, z * std::conj(z)}; };
    const cplx z(0.3, -0.2), zeta(0.6, 0.8);
    const Mat2 d = directional_derivative(w, z, zeta, 1e-2);
    const Mat2 want{2.0 * z * zeta, std::conj(zeta), 0.0, zeta * std::conj(z) + std::conj(zeta) * z};
    CHECK((d - want).max_abs() < 1e-12);
}

TEST_CASE("definitions agree with the closed forms on (exp z, 1)") {
    for (double v : {0.9, 2.0, -1.3}) {
        const cplx z(0.0, v);
        const FieldSample b = field_sample(e1(), z, nullptr);
        const LocalChart chart(e1(), 0.0, Mat2::identity(), z);
        for (Surface w : {Surface::H, Surface::S}) {
            const auto cf = closed_form_invariants(e1(), z, b, w);
            const auto od = definition_invariants(chart, w, z, b);
            CHECK(agrees(cf.kappa_s, od.inv.kappa_s));
            CHECK(agrees(cf.kappa_c, od.inv.kappa_c));
            CHECK(std::abs(od.inv.kappa_n) < 1e-6);
            CHECK(od.lambda_eta_numeric == doctest::Approx(od.lambda_eta_closed).epsilon(1e-6));
            CHECK(std::abs(od.eta_eta_xi) < 1e-6);
            if (w == Surface::S) CHECK(agrees(cf.kappa_t, od.inv.kappa_t));
        }
    }
}

TEST_CASE("torsion of f from its definition is -C_d/C_h") {
    const cplx z(0.0, 2.0);
    const FieldSample b = field_sample(e1(), z, nullptr);
    const CValues c = c_values(e1(), z, b);
    const auto od = definition_invariants(LocalChart(e1(), 0.0, Mat2::identity(), z), Surface::H, z, b);
    CHECK(agrees(-c.c_d / c.c_h, od.inv.kappa_t));
}

TEST_CASE("area densities vanish exactly on the singular set") {
    for (double v : {-2.0, 0.5, 3.0}) {
        const LocalChart on(e1(), 0.0, Mat2::identity(), cplx(0.0, v));
        const auto [lh, ld] = area_densities(on, cplx(0.0, v));
        CHECK(std::abs(lh) < 1e-7);
        CHECK(std::abs(ld) < 1e-7);
        const cplx off(0.4, v);
        const auto [mh, md] = area_densities(LocalChart(e1(), 0.0, Mat2::identity(), off), off);
        CHECK(std::abs(mh) > 1e-4);
        CHECK(std::abs(md) > 1e-4);
    }
}

TEST_CASE("duality of f and g") {
    for (cplx z : {cplx(0.0, 1.0), cplx(0.5, -2.0)}) {
        const auto r = duality_residuals(LocalChart(e1(), 0.0, Mat2::identity(), z), z);
        CHECK(r.orth < 1e-7);
        CHECK(r.iso1 < 1e-7);
        CHECK(r.iso2 < 1e-7);
    }
}

TEST_CASE("lemma identities on the singular set") {
    for (double v : {-3.0, -0.7, 1.1, 2.6}) {
        const cplx z(0.0, v);
        const Frame fr = integrate_frame(e1(), 0.0, Mat2::identity(), z);
        const auto res = lemma_suite(e1(), fr, field_sample(e1(), z, nullptr));
        CHECK(res.size() > 10);
        for (const auto& r : res) {
            INFO(r.name);
            CHECK(r.residual < 1e-7);
        }
    }
}

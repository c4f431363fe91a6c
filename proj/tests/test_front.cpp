#include <cmath>

#include <doctest.h>

#include "flatfront/front.hpp"
#include "flatfront/oracle.hpp"

using namespace flatfront;

namespace {
const WeierstrassData& e1() {
    static const auto d = WeierstrassData::make("exp(z)", "1", Domain::rectangle(-1, 1, -4, 4));
    return d;
}
}  // namespace

TEST_CASE("identifier of (exp z, 1)") {
    const cplx z(0.3, 0.7);
    const LambdaJet lj = lambda_jet(e1(), z);
    const double e = std::exp(2 * z.real());
    CHECK(lj.lambda == doctest::Approx(e - 1).epsilon(1e-14));
    CHECK(std::abs(lj.lambda_z - e) < 1e-14);
    CHECK(std::abs(lj.lambda_zbar - e) < 1e-14);
    CHECK(std::abs(lj.lambda_zz - e) < 1e-14);
    CHECK(lj.lambda_zzbar == doctest::Approx(e).epsilon(1e-14));
    CHECK(std::abs(lj.gradient() - 2.0 * e) < 1e-14);
}

TEST_CASE("singular and null directions") {
    const cplx z(0.0, 1.2);
    const FieldSample s = field_sample(e1(), z, nullptr);
    CHECK(std::abs(s.xi - cplx(0, -1)) < 1e-14);
    CHECK(std::abs(s.eta_d * s.eta_d * std::exp(z) - 1.0) < 1e-14);
    CHECK(std::abs(s.eta_h - cplx(0, 1) * s.eta_d) < 1e-15);
    CHECK(std::abs(s.eta_d - std::exp(-z / 2.0)) < 1e-14);
    const FieldSample t = s.flipped();
    CHECK(std::abs(t.eta_d + s.eta_d) < 1e-15);
}

TEST_CASE("branch is continued from the previous sample") {
    const auto d = WeierstrassData::make("exp(z)", "1", Domain::rectangle(-1, 1, -8, 8));
    FieldSample prev = field_sample(d, 0.0, nullptr);
    for (int k = 1; k <= 70; ++k) {
        const cplx z(0.0, 0.1 * k);
        prev = field_sample(d, z, &prev);
    }
    CHECK(std::abs(prev.eta_d - std::exp(cplx(0, -3.5))) < 1e-12);
}

TEST_CASE("surface jets at the identity frame") {
    const auto [a, b] = e1().jets(cplx(0.2, 0.4));
    const SurfaceJet f = surface_jet(Mat2::identity(), a, b, Surface::H);
    const SurfaceJet g = surface_jet(Mat2::identity(), a, b, Surface::S);
    CHECK((f.p.matrix() - Mat2::identity()).max_abs() < 1e-15);
    CHECK((g.p.matrix() - basis::e3).max_abs() < 1e-15);
    CHECK(f.p.tag() == Tag::point_h3);
    CHECK(g.p.tag() == Tag::point_s31);
}

TEST_CASE("surface jets match finite differences") {
    const WeierstrassData& d = e1();
    const cplx z(0.25, 0.9);
    const LocalChart chart(d, 0.0, Mat2::identity(), z);
    const Mat2 A = chart.frame(z);
    const auto [a, b] = d.jets(z);
    for (Surface w : {Surface::H, Surface::S}) {
        const SurfaceJet j = surface_jet(A, a, b, w);
        const double scale = std::max(1.0, A.max_abs() * A.max_abs());
        CHECK((numeric_partials(chart, w, z, 1, 0, 1e-3).value - j.f_u().matrix()).max_abs() < 1e-7 * scale);
        CHECK((numeric_partials(chart, w, z, 0, 1, 1e-3).value - j.f_v().matrix()).max_abs() < 1e-7 * scale);
        const Mat2 uu = (j.d_zz + 2.0 * j.d_zzb + j.d_zbzb).matrix();
        CHECK((numeric_partials(chart, w, z, 2, 0, 1e-3).value - uu).max_abs() < 1e-6 * scale);
    }
}

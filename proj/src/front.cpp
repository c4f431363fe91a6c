#include "flatfront/front.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "flatfront/errors.hpp"

namespace flatfront {

const char* to_string(Surface s) { return s == Surface::H ? "H" : "S"; }

SurfaceJet surface_jet(const Mat2& A_in, const Jet& alpha, const Jet& beta, Surface which) {
    const Mat2 A = A_in / std::sqrt(A_in.det());
    const double point_tol = kPointTol * std::max(1.0, std::pow(A.max_abs(), 4));
    const cplx a = alpha.d0, a1 = alpha.d1, a2 = alpha.d2;
    const cplx b = beta.d0, b1 = beta.d1, b2 = beta.d2;
    const cplx ac = std::conj(a), a1c = std::conj(a1), a2c = std::conj(a2);
    const cplx bc = std::conj(b), b1c = std::conj(b1), b2c = std::conj(b2);
    const double na = std::norm(a), nb = std::norm(b);
    const Mat2 Ad = A.adjoint();
    auto conj_by = [&](const Mat2& m) { return HermVector::tangent(A * m * Ad); };

    SurfaceJet j;
    j.z = alpha.z;
    j.which = which;
    if (which == Surface::H) {
        j.p = HermVector::point_h3(A * Ad, point_tol);
        j.d_z = conj_by({0.0, a, b, 0.0});
        j.d_zb = conj_by({0.0, bc, ac, 0.0});
        j.d_zz = conj_by({a * b, a1, b1, a * b});
        j.d_zzb = conj_by({na, 0.0, 0.0, nb});
        j.d_zbzb = conj_by({ac * bc, b1c, a1c, ac * bc});
        j.d_zzz = conj_by({a1 * b + 2.0 * a * b1, a2 + a * a * b, b2 + a * b * b, 2.0 * a1 * b + a * b1});
        j.d_zzzb = conj_by({a1 * ac, a * nb, b * na, b1 * bc});
        j.d_zzbzb = conj_by({a * a1c, bc * na, ac * nb, b * b1c});
        j.d_zbzbzb = conj_by({a1c * bc + 2.0 * ac * b1c, b2c + ac * bc * bc, a2c + ac * ac * bc,
                              2.0 * a1c * bc + ac * b1c});
    } else {
        j.p = HermVector::point_s31(A * basis::e3 * Ad, point_tol);
        j.d_z = conj_by({0.0, -a, b, 0.0});
        j.d_zb = conj_by({0.0, bc, -ac, 0.0});
        j.d_zz = conj_by({a * b, -a1, b1, -a * b});
        j.d_zzb = conj_by({-na, 0.0, 0.0, nb});
        j.d_zbzb = conj_by({ac * bc, b1c, -a1c, -ac * bc});
        j.d_zzz = conj_by({a1 * b + 2.0 * a * b1, -(a2 + a * a * b), b2 + a * b * b, -(2.0 * a1 * b + a * b1)});
        j.d_zzzb = conj_by({-a1 * ac, a * nb, -b * na, b1 * bc});
        j.d_zzbzb = conj_by({-a * a1c, -bc * na, ac * nb, b * b1c});
        j.d_zbzbzb = conj_by({a1c * bc + 2.0 * ac * b1c, b2c + ac * bc * bc, -(a2c + ac * ac * bc),
                              -(2.0 * a1c * bc + ac * b1c)});
    }
    return j;
}

SurfaceJet surface_jet(const Frame& frame, const WeierstrassData& data, Surface which) {
    const auto [alpha, beta] = data.jets(frame.z);
    return surface_jet(frame.A, alpha, beta, which);
}

LambdaJet lambda_jet(const Jet& alpha, const Jet& beta) {
    LambdaJet l;
    l.z = alpha.z;
    l.lambda = std::norm(alpha.d0) - std::norm(beta.d0);
    l.lambda_z = alpha.d1 * std::conj(alpha.d0) - beta.d1 * std::conj(beta.d0);
    l.lambda_zbar = std::conj(l.lambda_z);
    l.lambda_zz = alpha.d2 * std::conj(alpha.d0) - beta.d2 * std::conj(beta.d0);
    l.lambda_zzbar = std::norm(alpha.d1) - std::norm(beta.d1);
    return l;
}

LambdaJet lambda_jet(const WeierstrassData& data, cplx z) {
    const auto [alpha, beta] = data.jets(z);
    return lambda_jet(alpha, beta);
}

FieldSample FieldSample::flipped() const {
    FieldSample f = *this;
    f.sqrt_ab = -sqrt_ab;
    f.eta_d = -eta_d;
    f.eta_h = -eta_h;
    f.branch_phase = branch_phase + std::numbers::pi;
    return f;
}

FieldSample field_sample(const Jet& alpha, const Jet& beta, const LambdaJet& lj, const FieldSample* prev) {
    const cplx ab = alpha.d0 * beta.d0;
    if (ab == 0.0) throw NumericalError("field_sample: alpha beta vanishes");
    FieldSample s;
    s.z = alpha.z;
    s.xi = cplx(0.0, -1.0) * lj.lambda_zbar;
    cplx root = std::sqrt(ab);
    if (prev) {
        double jump = std::arg(root / prev->sqrt_ab);
        if (std::abs(jump) > std::numbers::pi / 2) {
            root = -root;
            jump = std::arg(root / prev->sqrt_ab);
        }
        if (std::abs(jump) > std::numbers::pi / 2) {
            throw BranchError(fmt::format("branch of sqrt(alpha beta) jumps by {:.3f} rad near z = {:.6g}{:+.6g}i", jump,
                                          s.z.real(), s.z.imag()));
        }
        s.branch_phase = prev->branch_phase + jump;
    } else {
        s.branch_phase = std::arg(root);
    }
    s.sqrt_ab = root;
    s.eta_d = 1.0 / root;
    s.eta_h = cplx(0.0, 1.0) * s.eta_d;
    return s;
}

FieldSample field_sample(const WeierstrassData& data, cplx z, const FieldSample* prev) {
    const auto [alpha, beta] = data.jets(z);
    return field_sample(alpha, beta, lambda_jet(alpha, beta), prev);
}

}  // namespace flatfront

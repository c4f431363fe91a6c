#pragma once

#include "flatfront/frame.hpp"
#include "flatfront/holo.hpp"
#include "flatfront/lorentz.hpp"

namespace flatfront {

/// H: the flat front f = A A* in H^3.  S: its dual g = A e3 A* in S^3_1.
enum class Surface { H, S };

const char* to_string(Surface s);

/// A point of f (or g) with all complexified partial derivatives up to order three.
/// Naming: d_z = k', d_zb = k_zbar, d_zzb = k'_zbar, and so on.
struct SurfaceJet {
    cplx z{};
    Surface which = Surface::H;
    HermVector p;
    HermVector d_z, d_zb;
    HermVector d_zz, d_zzb, d_zbzb;
    HermVector d_zzz, d_zzzb, d_zzbzb, d_zbzbzb;

    HermVector f_u() const { return d_z + d_zb; }
    HermVector f_v() const { return cplx(0.0, 1.0) * (d_z - d_zb); }
    /// d_zeta k = zeta k_z + conj(zeta) k_zbar.
    HermVector directional(cplx zeta) const { return zeta * d_z + std::conj(zeta) * d_zb; }
};

/// Assembles the derivative tables by conjugating the middle matrices with A, A*.
SurfaceJet surface_jet(const Mat2& A, const Jet& alpha, const Jet& beta, Surface which);
SurfaceJet surface_jet(const Frame& frame, const WeierstrassData& data, Surface which);

/// lambda = |alpha|^2 - |beta|^2 and its derivatives.
struct LambdaJet {
    cplx z{};
    double lambda = 0.0;
    cplx lambda_z{};
    cplx lambda_zbar{};
    cplx lambda_zz{};
    double lambda_zzbar = 0.0;

    /// (lambda_u, lambda_v) as the complex number lambda_u + i lambda_v = 2 lambda_zbar.
    cplx gradient() const { return 2.0 * lambda_zbar; }
};

LambdaJet lambda_jet(const Jet& alpha, const Jet& beta);
LambdaJet lambda_jet(const WeierstrassData& data, cplx z);

/// Singular direction xi = -i lambda_zbar and null directions eta_d = 1/sqrt(alpha beta),
/// eta_h = i eta_d, with a continuity-tracked branch of the square root.
struct FieldSample {
    cplx z{};
    cplx xi{};
    cplx eta_h{};
    cplx eta_d{};
    cplx sqrt_ab{};
    double branch_phase = 0.0;

    /// The same sample on the opposite branch of sqrt(alpha beta).
    FieldSample flipped() const;
};

/// prev == nullptr selects the principal root.  Throws BranchError when the selected
/// root jumps by more than pi/2 in phase relative to prev.
FieldSample field_sample(const Jet& alpha, const Jet& beta, const LambdaJet& lj, const FieldSample* prev);
FieldSample field_sample(const WeierstrassData& data, cplx z, const FieldSample* prev);

}  // namespace flatfront

#pragma once

// Definition-based recomputation of the cuspidal-edge invariants from integrated frames
// and finite differences only.  Nothing here reads the closed-form derivative tables of
// front.hpp except lemma_suite, whose purpose is to check those tables.

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "flatfront/frame.hpp"
#include "flatfront/front.hpp"
#include "flatfront/invariants.hpp"

namespace flatfront {

struct OracleOptions {
    double h_fd = 1e-3;        ///< orders 1-2 of numeric_partials
    double h_fd3 = 5e-3;       ///< order 3 of numeric_partials
    double h_nested = 4e-3;    ///< directional steps of nested covariant derivatives
    int chart_steps = 8;       ///< fixed DOPRI steps from the chart anchor to a stencil point
    double anchor_step_tol = 1e-12;
    double sign_rel_tol = 1e-8;
};

/// Surface values near an anchor point z0.  The anchor frame is integrated from the base
/// along the domain path; every other point is integrated along the straight segment from
/// z0 with a fixed number of steps, so that the map z -> A(z) is smooth in z as finite
/// differences require.
class LocalChart {
public:
    LocalChart(const WeierstrassData& data, cplx base_z, const Mat2& base_A, cplx z0, const OracleOptions& opts = {});

    cplx anchor() const noexcept { return z0_; }
    const Mat2& anchor_frame() const noexcept { return A0_; }
    const WeierstrassData& data() const noexcept { return *data_; }

    /// Throws StencilError when z lies outside the data domain.
    Mat2 frame(cplx z) const;
    Mat2 surface(cplx z, Surface which) const;
    /// The congruent chart whose anchor frame is the identity (same data, same steps).
    LocalChart at_identity() const;

private:
    LocalChart() = default;
    const WeierstrassData* data_ = nullptr;
    cplx z0_;
    Mat2 A0_;
    OracleOptions opts_;
};

/// A point sampler for f (H) or g (S) built on local charts.
class Sampler {
public:
    Sampler(const WeierstrassData& data, Surface which, cplx base_z, const Mat2& base_A = Mat2::identity(),
            const OracleOptions& opts = {});

    Surface which() const noexcept { return which_; }
    const WeierstrassData& data() const noexcept { return *data_; }
    const OracleOptions& options() const noexcept { return opts_; }
    LocalChart chart(cplx z0) const { return LocalChart(*data_, base_z_, base_A_, z0, opts_); }
    /// Surface point integrated from the base (values only).
    HermVector point(cplx z) const;

private:
    const WeierstrassData* data_;
    Surface which_;
    cplx base_z_;
    Mat2 base_A_;
    OracleOptions opts_;
};

struct NumericDerivative {
    Mat2 value;
    double error = 0.0;
};

/// d^{i+j} k / du^i dv^j at z by tensor central differences with one Richardson level.
NumericDerivative numeric_partials(const LocalChart& chart, Surface which, cplx z, int i, int j, double h);
NumericDerivative numeric_partials(const Sampler& s, cplx z, int i, int j);

using MatField = std::function<Mat2(cplx)>;
using DirField = std::function<cplx(cplx)>;

/// zeta W at z (zeta W = zeta W_z + conj(zeta) W_zbar) by the sixth-order
/// central difference along zeta / |zeta|.
Mat2 directional_derivative(const MatField& w, cplx z, cplx zeta, double h);

/// nabla_zeta W: directional derivative followed by projection to the tangent space of
/// H^3 at f (nabla = zeta W + <zeta W, f> f) or of S^3_1 at g (zeta W - <zeta W, g> g).
Mat2 covariant_derivative(const MatField& w, const MatField& point, Surface which, cplx z, cplx zeta, double h);

struct OracleInvariants {
    InvariantSet inv;
    double lambda_eta_numeric = 0.0;
    double lambda_eta_closed = 0.0;
    double det_xi_eta = 0.0;
    double xi_norm2 = 0.0;
    double cross_norm2 = 0.0;
    /// <nabla_eta (eta k), xi k>
    double eta_eta_xi = 0.0;
};

/// Invariants from their general definitions.  `branch` is the field sample whose root of
/// alpha beta fixes eta; eta and xi are extended off z by their global formulas.  The
/// computation runs in the congruent chart at_identity().
OracleInvariants definition_invariants(const LocalChart& chart, Surface which, cplx z, const FieldSample& branch,
                                       const OracleOptions& opts = {});

struct DualityResiduals {
    double orth = 0.0;
    double iso1 = 0.0;
    double iso2 = 0.0;
};

DualityResiduals duality_residuals(const LocalChart& chart, cplx z, const OracleOptions& opts = {});

/// Lambda_h = Omega(f_u, f_v, g) at f and Lambda_d = Omega(g_u, g_v, f) at g from numeric partials.
std::pair<double, double> area_densities(const LocalChart& chart, cplx z, const OracleOptions& opts = {});

struct LemmaResidual {
    std::string name;
    double residual = 0.0;
};

/// Every identity of the derivative-product lemmas evaluated with the closed-form tables.
std::vector<LemmaResidual> lemma_suite(const Mat2& A, const Jet& alpha, const Jet& beta, const FieldSample& branch);
std::vector<LemmaResidual> lemma_suite(const WeierstrassData& data, const Frame& frame, const FieldSample& branch);

}  // namespace flatfront

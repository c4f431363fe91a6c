#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "flatfront/frame.hpp"
#include "flatfront/front.hpp"
#include "flatfront/locus.hpp"

namespace flatfront {

struct ClassifyOptions {
    double class_tol = 1e-7;
    double nondegeneracy_tol = 1e-8;
    double on_curve_tol = 1e-8;
    double lc_tol = 1e-7;
    double cone_angle_tol = 1e-6;
};

struct CValues {
    double c_h = 0.0;
    double c_d = 0.0;
};

/// C_h = Re(i lambda' / sqrt(alpha beta)), C_d = Re(lambda' / sqrt(alpha beta)) on the
/// branch carried by `branch`.
CValues c_values(const LambdaJet& lj, const FieldSample& branch);
/// Recomputes lambda' at z and the root of alpha beta nearest to branch.sqrt_ab.
CValues c_values(const WeierstrassData& data, cplx z, const FieldSample& branch);

enum class SingularClass { CuspidalEdge, Swallowtail, NonDegenerateOther, Degenerate };

const char* to_string(SingularClass c);

struct ClassificationRecord {
    cplx z{};
    double c_h = 0.0;
    double c_d = 0.0;
    SingularClass class_f = SingularClass::Degenerate;
    SingularClass class_g = SingularClass::Degenerate;
    double swcond = 0.0;
    double branch_phase = 0.0;
    bool ambiguous_f = false;
    bool ambiguous_g = false;

    SingularClass of(Surface s) const { return s == Surface::H ? class_f : class_g; }
};

/// swcond = Re((S(alpha) - S(beta)) / (alpha beta)).
double swallowtail_condition(const Jet& alpha, const Jet& beta);

/// Both classes are Degenerate when |lambda'| < nondegeneracy_tol or when neither C can be
/// decisive (|lambda' / sqrt(alpha beta)| <= class_tol).  Throws NumericalError when
/// |lambda(z)| exceeds opts.on_curve_tol.
ClassificationRecord classify(const WeierstrassData& data, cplx z, const FieldSample& branch,
                              const ClassifyOptions& opts = {});
ClassificationRecord classify(const Jet& alpha, const Jet& beta, const LambdaJet& lj, const FieldSample& branch,
                              const ClassifyOptions& opts = {});

struct InvariantSet {
    double kappa_s = std::numeric_limits<double>::quiet_NaN();
    double kappa_t = std::numeric_limits<double>::quiet_NaN();
    double kappa_c = std::numeric_limits<double>::quiet_NaN();
    double kappa_n = std::numeric_limits<double>::quiet_NaN();
    bool defined = false;
};

/// Closed forms for the cuspidal-edge invariants of f (H) or g (S); defined = false
/// when the point is not a cuspidal edge of that surface.
InvariantSet closed_form_invariants(const WeierstrassData& data, cplx z, const FieldSample& branch, Surface which,
                                    const ClassifyOptions& opts = {});
InvariantSet closed_form_invariants(const Jet& alpha, const LambdaJet& lj, const CValues& c, Surface which,
                                    const ClassifyOptions& opts = {});

/// Per-sample classification along a traced curve (branch from the curve's samples).
std::vector<ClassificationRecord> classify_curve(const WeierstrassData& data, const SingularCurve& curve,
                                                 const ClassifyOptions& opts = {});

struct Derivative {
    double value = 0.0;
    double error = 0.0;
};

/// d kappa_t / dt at sample `index` by a five-point Lagrange derivative on the sample
/// parameters, with |five-point - three-point| as error estimate.  Closed curves wrap.
Derivative torsion_derivative(const SingularCurve& curve, std::size_t index, Surface which,
                              const ClassifyOptions& opts = {});

/// Zeros of C_h (which = H) or C_d (which = S) along a curve.  A sign change between
/// consecutive decisive samples (|C| > class_tol) is refined by bisection; a run of
/// non-decisive samples without sign change is reported at its smallest |C|.  Curves on
/// which C is nowhere decisive have no isolated zeros and yield nothing.
struct CZero {
    std::size_t after = 0;
    double t = 0.0;
    Surface which = Surface::H;
    ClassificationRecord record;
};
std::vector<CZero> locate_c_zeros(const WeierstrassData& data, const SingularCurve& curve,
                                  const std::vector<ClassificationRecord>& classes, Surface which,
                                  const ClassifyOptions& opts = {});

/// Maximal index ranges [first, last) of consecutive CuspidalEdge samples for `which`.
struct SampleRange {
    std::size_t first = 0;
    std::size_t last = 0;
};
std::vector<SampleRange> cuspidal_runs(const std::vector<ClassificationRecord>& classes, Surface which);

/// Frames at every sample, integrated from (base_z, base_A) to the first sample along the
/// domain path and then along the curve polyline.
std::vector<Frame> frames_along(const WeierstrassData& data, const SingularCurve& curve, cplx base_z,
                                const Mat2& base_A, const IntegratorOptions& opts = {});

struct CurveReport {
    bool line_of_curvature = false;
    bool cone_like_dual = false;
    double max_abs_torsion = 0.0;
    double lc_residual = 0.0;
    double max_cone_angle = 0.0;
    SampleRange range;
};

/// Line-of-curvature and cone-like tests on samples [range.first, range.last); throws
/// MixedClassificationError when a sample in the range is not a cuspidal edge of `which`.
/// Omega(xi f, g, xi g) is evaluated on the congruent front with A(z) = I at each sample.
CurveReport curve_report(const WeierstrassData& data, const SingularCurve& curve,
                         const std::vector<ClassificationRecord>& classes, Surface which, SampleRange range,
                         const ClassifyOptions& opts = {});

}  // namespace flatfront

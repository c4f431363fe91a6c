#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flatfront/frame.hpp"
#include "flatfront/invariants.hpp"
#include "flatfront/locus.hpp"
#include "flatfront/oracle.hpp"

namespace flatfront {

struct CheckResult {
    std::string name;
    bool pass = false;
    /// Worst observed residual (or count, for counting checks) against `tolerance`.
    double value = 0.0;
    double tolerance = 0.0;
    std::size_t samples = 0;
    std::string detail;
};

struct SuiteOptions {
    IntegratorOptions integrator;
    TraceOptions trace;
    ClassifyOptions classify;
    OracleOptions oracle;
    int agreement_samples = 50;
    int lemma_samples = 20;
    int curve_probe_samples = 40;
    int off_curve_probes = 20;
    int duality_probes = 20;
    /// Oracle samples keep this distance from the region boundary and |C| above min_abs_c.
    double boundary_margin = 0.05;
    double min_abs_c = 0.05;
    double lemma_tol = 1e-7;
    double area_on_curve_tol = 1e-7;
    double area_off_curve_min = 1e-4;
    double duality_tol = 1e-7;
    double duality_product_tol = 1e-8;
    std::uint64_t seed = 20240611;
    int threads = 0;
};

/// Traced and classified singular set of one data set on a region.
struct Analysis {
    const WeierstrassData* data = nullptr;
    std::string name;
    Domain region;
    cplx base_z{};
    Mat2 base_A = Mat2::identity();
    std::vector<SingularCurve> curves;
    std::vector<std::vector<ClassificationRecord>> classes;
    std::vector<std::string> warnings;
};

Analysis analyze(const WeierstrassData& data, const Domain& region, const SuiteOptions& opts, std::string name = {},
                 std::optional<cplx> base_z = std::nullopt, const Mat2& base_A = Mat2::identity());

/// Distance from z to the boundary of the region, measured in the z-plane.
double boundary_distance(const Domain& region, cplx z);

struct SampleRef {
    std::size_t curve = 0;
    std::size_t index = 0;
};

/// Cuspidal-edge samples of `which` with |C| >= min_abs_c at least margin away from the
/// boundary, thinned to at most n evenly spread samples (n <= 0 keeps all).
std::vector<SampleRef> conditioned_samples(const Analysis& a, Surface which, double min_abs_c, double margin, int n);

struct AgreementRow {
    cplx z{};
    Surface which = Surface::H;
    InvariantSet closed;
    InvariantSet oracle;
};

/// Oracle agreement of kappa_s, kappa_t, kappa_c and vanishing of the oracle kappa_n on
/// conditioned samples; one result per component.
std::vector<CheckResult> oracle_agreement(const Analysis& a, Surface which, const SuiteOptions& opts,
                                          std::vector<AgreementRow>* rows = nullptr);

CheckResult negativity(const Analysis& a, const SuiteOptions& opts);
CheckResult torsion_duality(const Analysis& a, const SuiteOptions& opts);
/// On-curve vanishing and off-curve nonvanishing of both area densities.
std::vector<CheckResult> singular_set_coincidence(const Analysis& a, const SuiteOptions& opts);
CheckResult lemma_check(const Analysis& a, const SuiteOptions& opts);
CheckResult duality_check(const Analysis& a, const SuiteOptions& opts);

struct SingularEvent {
    std::size_t curve = 0;
    double t = 0.0;
    cplx z{};
    /// Swallowtail: the surface that has the swallowtail.  TorsionZero: the surface whose
    /// cuspidal torsion vanishes.
    Surface which = Surface::H;
    double derivative = 0.0;
    double derivative_error = 0.0;
};

std::vector<SingularEvent> swallowtails(const Analysis& a, const SuiteOptions& opts);
/// Sign changes of kappa_t of `which` between consecutive cuspidal samples on which the
/// own C keeps its sign, located by linear interpolation in t.
std::vector<SingularEvent> torsion_zeros(const Analysis& a, Surface which, const SuiteOptions& opts);

/// Torsion zeros with decisively nonzero derivative against swallowtails of the dual surface.
CheckResult classification_duality(const Analysis& a, const SuiteOptions& opts, double min_derivative = 0.1);

struct RunSummary {
    std::size_t curve = 0;
    Surface which = Surface::H;
    CurveReport report;
    double t_first = 0.0;
    double t_last = 0.0;
};

std::vector<RunSummary> curve_summaries(const Analysis& a, const SuiteOptions& opts);

/// Families used by the acceptance run: E1, E2 and n_random exponential cubics.
struct TestFamily {
    std::string name;
    WeierstrassData data;
};
TestFamily family_e1();
TestFamily family_e2();
std::vector<TestFamily> random_families(std::uint64_t seed, int n);

/// (alpha, beta) = constants on a rectangle: endpoint against exp(z D), drift with
/// renormalization off over a path of length >= 10, and the fixed-step error ratio.
std::vector<CheckResult> frame_integrity(const SuiteOptions& opts);

}  // namespace flatfront

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "flatfront/front.hpp"
#include "flatfront/holo.hpp"

namespace flatfront {

struct TraceOptions {
    double trace_step = 1e-2;
    double max_length = 50.0;
    double on_curve_tol = 1e-10;
    double nondegeneracy_tol = 1e-8;
    int grid_n = 101;
    int newton_max_iter = 50;
    double seed_tol = 1e-12;
};

enum class EndReason { loop_closed, boundary, degenerate_point, max_length };

const char* to_string(EndReason r);

struct CurveSample {
    double t = 0.0;
    cplx z{};
    LambdaJet lj;
    FieldSample field;
};

/// A traced component of lambda = 0, ordered in the +xi direction.
struct SingularCurve {
    std::vector<CurveSample> samples;
    bool closed = false;
    /// end_reasons[0]: backward end (first sample), end_reasons[1]: forward end.
    std::array<EndReason, 2> end_reasons{EndReason::boundary, EndReason::boundary};
    std::optional<cplx> degenerate_at;
    double length() const { return samples.empty() ? 0.0 : samples.back().t - samples.front().t; }
};

struct SeedReport {
    std::vector<cplx> seeds;
    std::vector<std::string> warnings;
};

/// Newton-refined points of lambda = 0 at sign changes of lambda on lattice edges.
SeedReport find_seeds(const WeierstrassData& data, const Domain& region, const TraceOptions& opts = {});

/// Newton iteration along the real gradient of lambda; nullopt when it does not reach
/// |lambda| <= tol within max_iter steps or leaves the region.
std::optional<cplx> newton_to_curve(const WeierstrassData& data, cplx z, double tol, int max_iter,
                                    const Domain* region = nullptr);

/// Traces from a seed.  Throws NumericalError when the seed violates the preconditions.
SingularCurve trace_curve(const WeierstrassData& data, const Domain& region, cplx seed, const TraceOptions& opts = {});

/// Seeds, traces every seed in parallel, and drops curves whose seed lies on an earlier curve.
std::vector<SingularCurve> trace_all(const WeierstrassData& data, const Domain& region, const TraceOptions& opts = {},
                                     std::vector<std::string>* warnings = nullptr, int threads = 0);

}  // namespace flatfront

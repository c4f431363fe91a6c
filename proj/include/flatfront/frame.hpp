#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flatfront/holo.hpp"
#include "flatfront/lorentz.hpp"
#include "flatfront/region.hpp"

namespace flatfront {

struct IntegratorOptions {
    double step_tol = 1e-10;
    double det_tol = 1e-9;
    bool renormalize = true;
    /// When positive, every path segment is integrated with this many equal steps and no
    /// error control (used for order checks).
    int fixed_steps = 0;
    int max_steps = 2'000'000;
    double min_step = 1e-13;
};

/// Solution A(z) of A' = A D with D = [[0, alpha], [beta, 0]].
struct Frame {
    cplx z{};
    Mat2 A = Mat2::identity();
    double det_drift = 0.0;
    double max_det_drift = 0.0;
    int renormalizations = 0;
    int steps = 0;
    std::string path_id;
};

Mat2 frame_matrix_D(const WeierstrassData& data, cplx z);

/// Integrates the frame ODE along `path` starting from A0.
Frame integrate_frame(const WeierstrassData& data, const Path& path, const Mat2& A0,
                      const IntegratorOptions& opts = {}, std::string path_id = {});

/// Integrates from (z0, A0) to z along the domain's spanning-tree path.
Frame integrate_frame(const WeierstrassData& data, cplx z0, const Mat2& A0, cplx z,
                      const IntegratorOptions& opts = {});

inline constexpr double kPathConsistencyTol = 1e-8;

/// Frames on an n_s x n_t chart lattice of a region, built along the base column and
/// then along lattice rows.
struct FrameGrid {
    Domain region;
    Lattice lattice;
    cplx base_z{};
    Mat2 base_A = Mat2::identity();
    std::vector<Frame> frames;
    /// Largest relative discrepancy found by the two-route spot check.
    double route_discrepancy = 0.0;

    const Frame& at(int j, int k) const { return frames[static_cast<std::size_t>(k * lattice.n_s + j)]; }
    cplx z(int j, int k) const { return region.from_chart(lattice.chart(j, k)); }
};

/// Throws ConfigError when region is not inside the data domain, IntegrationError
/// (with node location) when the spot check exceeds kPathConsistencyTol.
FrameGrid frame_grid(const WeierstrassData& data, const Domain& region, int n_s, int n_t,
                     const IntegratorOptions& opts = {}, std::optional<cplx> base_z = std::nullopt,
                     const Mat2& base_A = Mat2::identity(), int threads = 0);

}  // namespace flatfront

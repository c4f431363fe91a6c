#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "flatfront/holo.hpp"
#include "flatfront/region.hpp"
#include "flatfront/verification.hpp"

namespace flatfront {

/// One job read from an INI file:
///
///   [data]        family = e1 | e2 | constants(a,b) | schwarz(<expr>) | custom
///                 alpha, beta (custom only)
///   [domain]      shape = rectangle (u0 u1 v0 v1) | annulus (r0 r1 center half_width)
///   [region]      same keys as [domain]; defaults to the domain
///   [tolerances]  step_tol det_tol trace_step class_tol lc_tol h_fd
///   [trace]       max_length grid_n
///   [mesh]        n_s n_t
///   [verify]      seed samples
///   [output]      dir
struct JobConfig {
    std::string family = "e1";
    std::string alpha_src;
    std::string beta_src;
    Domain domain;
    Domain region;
    SuiteOptions suite;
    int mesh_n_s = 81;
    int mesh_n_t = 81;
    std::string out_dir = ".";

    /// Parses and validates (alpha, beta) on the domain.
    WeierstrassData data() const;
};

/// Throws ConfigError with the offending key for unknown sections or keys, malformed
/// values, non-positive tolerances, or a region outside the domain.
JobConfig parse_config(std::istream& in);
JobConfig load_config(const std::string& path);

}  // namespace flatfront

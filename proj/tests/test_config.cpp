#include <numbers>
#include <sstream>

#include <doctest.h>

#include "flatfront/config.hpp"
#include "flatfront/errors.hpp"

using namespace flatfront;

namespace {
JobConfig parse(const std::string& s) {
    std::istringstream in(s);
    return parse_config(in);
}
}  // namespace

TEST_CASE("presets") {
    const auto a = parse("[data]\nfamily = e1\n");
    CHECK(a.alpha_src == "exp(z)");
    CHECK(a.beta_src == "1");
    CHECK(a.domain.contains(cplx(0.9, 3.9)));
    const auto b = parse("[data]\nfamily = e2\n");
    CHECK(b.domain.full_annulus());
    const auto c = parse("[data]\nfamily = constants(2, 1+i)\n");
    CHECK(c.alpha_src == "2");
    CHECK(c.beta_src == "1+i");
    const auto d = parse("[data]\nfamily = schwarz(exp(z^2))\n");
    CHECK(d.alpha_src == "exp(z^2)");
    CHECK(d.beta_src == "1");
    CHECK(parse("").family == "e1");
}

TEST_CASE("full job") {
    const auto cfg = parse(
        "[data]\nfamily = custom\nalpha = exp(z)\nbeta = 1\n"
        "[domain]\nshape = rectangle\nu0 = -1\nu1 = 1\nv0 = -pi\nv1 = pi\n"
        "[region]\nshape = rectangle\nu0 = -0.5\nu1 = 0.5\nv0 = -1\nv1 = 1\n"
        "[tolerances]\nstep_tol = 1e-11\ntrace_step = 0.005\nh_fd = 2e-3\n"
        "[trace]\ngrid_n = 51\n[mesh]\nn_s = 21\nn_t = 31\n[verify]\nseed = 42\nsamples = 60\n"
        "[output]\ndir = out/run\n");
    CHECK(cfg.domain.contains(cplx(0.0, 3.1)));
    CHECK_FALSE(cfg.region.contains(cplx(0.0, 1.5)));
    CHECK(cfg.suite.integrator.step_tol == 1e-11);
    CHECK(cfg.suite.trace.trace_step == 0.005);
    CHECK(cfg.suite.oracle.h_fd == 2e-3);
    CHECK(cfg.suite.trace.grid_n == 51);
    CHECK(cfg.mesh_n_s == 21);
    CHECK(cfg.mesh_n_t == 31);
    CHECK(cfg.suite.seed == 42);
    CHECK(cfg.suite.agreement_samples == 60);
    CHECK(cfg.out_dir == "out/run");
    CHECK_NOTHROW(cfg.data());
}

TEST_CASE("annulus") {
    const auto cfg = parse("[data]\nfamily = custom\nalpha = -1\nbeta = z^-2\n"
                           "[domain]\nshape = annulus\nr0 = 0.5\nr1 = 2\n");
    CHECK(cfg.domain.full_annulus());
    CHECK(cfg.domain.contains(cplx(-1.0, 0.5)));
}

TEST_CASE("rejected configurations") {
    const char* bad[] = {
        "[data]\nfamily = e3\n",
        "[data]\nfamily = custom\nalpha = exp(z)\n",
        "[data]\nfamily = e1\nalpha = z\n",
        "[data]\nfamily = constants(1)\n",
        "[colour]\nx = 1\n",
        "[data]\nfamly = e1\n",
        "[tolerances]\nstep_tol = -1\n",
        "[tolerances]\nclass_tol = 0\n",
        "[tolerances]\nlc_tol = abc\n",
        "[tolerances]\nh_fd = 1i\n",
        "[region]\nshape = rectangle\nu0 = -2\nu1 = 0\nv0 = 0\nv1 = 1\n",
        "[domain]\nshape = rectangle\nu0 = 1\nu1 = -1\nv0 = 0\nv1 = 1\n",
        "[domain]\nshape = annulus\nr0 = 0\nr1 = 1\n",
        "[domain]\nshape = disk\n",
        "[mesh]\nn_s = 1\n",
        "[verify]\nsamples = 2.5\n",
        "[output]\ndir =\n",
        "family = e1\n",
    };
    for (const char* s : bad) {
        INFO(s);
        CHECK_THROWS_AS(parse(s), ConfigError);
    }
    CHECK_THROWS_AS(load_config("/nonexistent/job.ini"), ConfigError);
}

TEST_CASE("degenerate data is reported when the data is built") {
    const auto cfg = parse("[data]\nfamily = constants(1, -1)\n");
    CHECK_THROWS_WITH_AS(cfg.data(), doctest::Contains("identifier vanishes identically"), ConfigError);
}

#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "flatfront/commands.hpp"
#include "flatfront/errors.hpp"

using namespace flatfront;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("flatfront_test_" + name);
    fs::remove_all(p);
    return p;
}

JobConfig job(const std::string& text, const fs::path& out) {
    std::istringstream in(text);
    JobConfig cfg = parse_config(in);
    cfg.out_dir = out.string();
    return cfg;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("command names") {
    for (const char* n : {"trace", "classify", "invariants", "mesh", "verify"}) {
        CHECK(std::string(to_string(parse_command(n))) == n);
    }
    CHECK_THROWS_AS(parse_command("plot"), ConfigError);
}

TEST_CASE("classify on constant data writes an empty table") {
    const auto out = scratch("const");
    std::ostringstream log;
    const auto r = run_command(Command::classify, job("[data]\nfamily = constants(2,1)\n", out), log);
    CHECK(r.exit_code == 0);
    CHECK(slurp(out / "classify.csv") == "curve_id,t,u,v,C_h,C_d,class_f,class_g,swcond\n");
}

TEST_CASE("trace output is deterministic and round-trips doubles") {
    const auto out = scratch("trace");
    const auto cfg = job("[data]\nfamily = e1\n[region]\nu0 = -0.5\nu1 = 0.5\nv0 = -1\nv1 = 1\n", out);
    std::ostringstream log;
    run_command(Command::trace, cfg, log);
    const std::string first = slurp(out / "curves.csv");
    run_command(Command::trace, cfg, log);
    CHECK(slurp(out / "curves.csv") == first);
    CHECK(first.rfind("curve_id,t,u,v,lambda,lambda_z_re,lambda_z_im,branch_phase\n", 0) == 0);
    CHECK_FALSE(fs::exists(out / "curves.csv.tmp"));
    std::istringstream rows(first);
    std::string line;
    std::getline(rows, line);
    std::getline(rows, line);
    std::istringstream cells(line);
    std::string cell;
    int n = 0;
    while (std::getline(cells, cell, ',')) {
        ++n;
        if (cell.find('.') != std::string::npos) {
            const double x = std::stod(cell);
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            CHECK(cell == buf);
        }
    }
    CHECK(n == 8);
}

TEST_CASE("invariants on (-1, z^-2) mark the circle") {
    const auto out = scratch("e2");
    std::ostringstream log;
    run_command(Command::invariants, job("[data]\nfamily = e2\n", out), log);
    const auto j = nlohmann::json::parse(slurp(out / "curves_summary.json"));
    REQUIRE(j["curves"].size() == 1);
    const auto& runs = j["curves"][0]["runs"];
    REQUIRE(runs.size() == 1);
    CHECK(runs[0]["surface"] == "H");
    CHECK(runs[0]["line_of_curvature"] == true);
    CHECK(runs[0]["cone_like_dual"] == true);
    CHECK(fs::file_size(out / "invariants.csv") > 0);
}

TEST_CASE("mesh writes both fronts") {
    const auto out = scratch("mesh");
    std::ostringstream log;
    auto cfg = job("[data]\nfamily = e1\n[mesh]\nn_s = 5\nn_t = 7\n", out);
    const auto r = run_command(Command::mesh, cfg, log);
    CHECK(r.files.size() == 3);
    const std::string obj = slurp(out / "front_h.obj");
    std::size_t v = 0, f = 0, l = 0;
    std::istringstream lines(obj);
    std::string line;
    while (std::getline(lines, line)) {
        v += line.rfind("v ", 0) == 0;
        f += line.rfind("f ", 0) == 0;
        l += line.rfind("l ", 0) == 0;
    }
    CHECK(f == 4 * 6);
    CHECK(v > 35);
    CHECK(l == 1);
    const auto meta = nlohmann::json::parse(slurp(out / "mesh_meta.json"));
    CHECK(meta["grid_vertices"] == 35);
}

TEST_CASE("verify on (-1, z^-2) passes") {
    const auto out = scratch("verify");
    std::ostringstream log;
    const auto r = run_command(Command::verify, job("[data]\nfamily = e2\n", out), log);
    CHECK(r.exit_code == 0);
    const auto j = nlohmann::json::parse(slurp(out / "report.json"));
    CHECK(j["pass"] == true);
    CHECK(j["checks"].size() == 15);
}

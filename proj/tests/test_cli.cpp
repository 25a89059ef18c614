// SPDX-License-Identifier: Apache-2.0
//
// End-to-end tests of the command-line binary, exercised via the shell.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "gfmimo/config.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string output;  // stdout + stderr combined
};

CliResult run_cli(const std::string& args) {
  const fs::path dir = fs::temp_directory_path() / "gfmimo_cli_test";
  fs::create_directories(dir);
  const fs::path log = dir / "out.log";
  const std::string cmd =
      std::string(GFMIMO_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  std::ifstream in(log);
  std::ostringstream os;
  os << in.rdbuf();
  return {WEXITSTATUS(rc), os.str()};
}

std::string write_config(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "gfmimo_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

const char* kSmallConfig = R"({
  "n_online": 10, "n_active": 3, "n_antennas": 4,
  "frame_len": 25, "msg_len": 5, "bomp_iters": 5,
  "es_n0_db": 6.0, "precoder_kind": "orthonormal_columns",
  "fer_bit_threshold": 8, "seed": 7
})";

int count_data_rows(const std::string& csv_path) {
  std::ifstream in(csv_path);
  std::string line;
  int rows = -1;  // skip header
  while (std::getline(in, line))
    if (!line.empty()) ++rows;
  return rows;
}

}  // namespace

TEST_CASE("simulate: valid config gives exit 0 and a one-row csv") {
  const auto cfg = write_config("small.json", kSmallConfig);
  const auto out = (fs::temp_directory_path() / "gfmimo_cli_test" / "sim.csv").string();
  const auto r = run_cli("simulate --config " + cfg + " --trials 5 --workers 1 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(count_data_rows(out) == 1);
}

TEST_CASE("simulate: d >= T exits 1 naming the violated constraint") {
  const auto cfg = write_config("bad.json", R"({
    "n_online": 10, "n_active": 3, "n_antennas": 4,
    "frame_len": 25, "msg_len": 25, "bomp_iters": 4,
    "es_n0_db": 6.0, "precoder_kind": "orthonormal_columns",
    "fer_bit_threshold": 8, "seed": 7
  })");
  const auto r = run_cli("simulate --config " + cfg + " --trials 2");
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("msg_len < frame_len") != std::string::npos);
}

TEST_CASE("simulate: overrides change the effective point") {
  const auto cfg = write_config("small.json", kSmallConfig);
  const auto out_dir = fs::temp_directory_path() / "gfmimo_cli_test";
  const auto a = (out_dir / "a.csv").string();
  const auto b = (out_dir / "b.csv").string();
  const auto ra = run_cli("simulate --config " + cfg + " --trials 6 --workers 1 --out " + a);
  const auto rb = run_cli("simulate --config " + cfg +
                          " --trials 6 --workers 1 --override es_n0_db=-6 --out " + b);
  CHECK(ra.exit_code == 0);
  CHECK(rb.exit_code == 0);
  std::ifstream fa(a), fb(b);
  std::string la, lb;
  std::getline(fa, la);
  std::getline(fb, lb);  // headers
  std::getline(fa, la);
  std::getline(fb, lb);  // data rows
  CHECK(la != lb);
  CHECK(lb.rfind("-6", 0) == 0);  // axis_value column reflects the override
}

TEST_CASE("simulate: unknown override key exits 1") {
  const auto cfg = write_config("small.json", kSmallConfig);
  const auto r = run_cli("simulate --config " + cfg + " --trials 2 --override n_actve=3");
  CHECK(r.exit_code == 1);
}

TEST_CASE("sweep: runs a two-point sweep from a spec file") {
  const auto base = std::string(kSmallConfig);
  const auto spec = write_config("sweep.json", std::string(R"({
    "base": )") + base + R"(,
    "axis": "es_n0_db", "values": [2.0, 6.0],
    "trials_per_point": 5, "parallel_workers": 1,
    "algorithm": "bomp", "evaluate_theorem1": false
  })");
  const auto out = (fs::temp_directory_path() / "gfmimo_cli_test" / "sweep.csv").string();
  const auto r = run_cli("sweep --config " + spec + " --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(count_data_rows(out) == 2);
}

TEST_CASE("guarantees: reports per-realization coherences, nu = 0 for orthonormal") {
  const auto cfg = write_config("small.json", kSmallConfig);
  const auto out = (fs::temp_directory_path() / "gfmimo_cli_test" / "gua.csv").string();
  const auto r = run_cli("guarantees --config " + cfg + " --realizations 3 --out " + out);
  CHECK(r.exit_code == 0);
  CHECK(count_data_rows(out) == 3);
  std::ifstream in(out);
  std::string header, row;
  std::getline(in, header);
  CHECK(header.find("mu_block") != std::string::npos);
  CHECK(header.find("max_allowed_n_active") != std::string::npos);
  std::getline(in, row);
  // second CSV field on each data row is mu_block; third is sub_coherence (nu)
  std::istringstream rs(row);
  std::string field;
  std::getline(rs, field, ',');
  std::getline(rs, field, ',');
  std::getline(rs, field, ',');
  CHECK(std::stod(field) <= 1e-12);
  CHECK(r.output.find("mode_max_allowed_n_active=") != std::string::npos);
}

TEST_CASE("reproduce: unknown figure exits 1") {
  const auto r = run_cli("reproduce fig9 --scale desk");
  CHECK(r.exit_code == 1);
}

TEST_CASE("reproduce: unknown scale exits 1") {
  const auto r = run_cli("reproduce fig1 --scale huge");
  CHECK(r.exit_code == 1);
}

TEST_CASE("bad command line exits nonzero") {
  CHECK(run_cli("").exit_code != 0);
  CHECK(run_cli("simulate").exit_code != 0);          // missing --config
  CHECK(run_cli("simulate --bogus-flag").exit_code != 0);
}

TEST_CASE("missing config file exits 1") {
  const auto r = run_cli("simulate --config /nonexistent/nope.json");
  CHECK(r.exit_code == 1);
}

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out; ///< stdout followed by stderr
};

RunResult run(const std::string& binary, const std::string& args) {
  const std::string command = "'" + binary + "' " + args + " 2>&1";
  RunResult result;
  FILE* pipe = ::popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer{};
  while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe)) result.out.append(buffer.data(), got);
  const int status = ::pclose(pipe);
  result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

RunResult cli(const std::string& args) { return run(ODDEXT_CLI, args); }

fs::path workdir() {
  const fs::path dir = fs::path(ODDEXT_TEST_DIR) / "cli_scratch";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_file(const std::string& name, const std::string& text) {
  const fs::path p = workdir() / name;
  std::ofstream(p) << text;
  return p;
}

const char* kWorkedSystem = R"({"n": 2, "q": 0, "m": 1,
  "f": {"n": 2, "q": 1, "backend": "fourier", "scalar": "rational",
        "terms": [{"k": [1, 1], "I": [1], "re": "0/1", "im": "1/1"},
                  {"k": [1, 1], "I": [2], "re": "0/1", "im": "1/1"}]}})";

} // namespace

TEST_CASE("verify passes on the default build") {
  const auto r = cli("verify");
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("verify with zero trials is vacuous") {
  const auto r = cli("verify --trials 0");
  CHECK(r.code == 0);
  CHECK(r.out.empty());
}

TEST_CASE("a flipped star sign is caught by verify") {
  const auto r = run(ODDEXT_MUTANT_CLI, "verify --trials 2");
  CHECK(r.code != 0);
  CHECK(r.out.find("witness") != std::string::npos);
}

TEST_CASE("solve writes the worked solution") {
  const fs::path in = write_file("worked.json", kWorkedSystem);
  const fs::path out = workdir() / "worked_v.json";
  const auto r = cli("solve '" + in.string() + "' '" + out.string() + "'");
  REQUIRE(r.code == 0);
  const auto v = nlohmann::json::parse(slurp(out));
  REQUIRE(v["terms"].size() == 1);
  CHECK(v["terms"][0]["re"] == "1/2");
  CHECK(v["terms"][0]["k"] == nlohmann::json::array({1, 1}));
  const auto report = nlohmann::json::parse(slurp(out.string() + ".report.json"));
  CHECK(report["failed"] == false);
}

TEST_CASE("solve warns on exceptional systems") {
  // n = 2, q = 1: f is a 2-form, so q = n-1 with f != 0
  const fs::path in = write_file("exceptional.json", R"({"n": 2, "q": 1, "m": 0,
    "f": {"n": 2, "q": 2, "backend": "fourier", "scalar": "rational",
          "terms": [{"k": [1, 0], "I": [1, 2], "re": "1/1", "im": "0/1"}]}})");
  const auto r = cli("solve '" + in.string() + "' '" + (workdir() / "exc_v.json").string() + "'");
  CHECK(r.code == 0);
  CHECK(r.out.find("warning") != std::string::npos);
}

TEST_CASE("solve exit codes") {
  const fs::path out = workdir() / "err_v.json";
  const fs::path malformed = write_file("malformed.json", "{\"n\": 2, ");
  CHECK(cli("solve '" + malformed.string() + "' '" + out.string() + "'").code == 3);

  const fs::path incompatible = write_file("incompatible.json", R"({"n": 2, "q": 0, "m": 0,
    "f": {"n": 2, "q": 1, "backend": "fourier", "scalar": "rational",
          "terms": [{"k": [1, 0], "I": [2], "re": "1/1", "im": "0/1"}]}})");
  CHECK(cli("solve '" + incompatible.string() + "' '" + out.string() + "'").code == 4);

  const fs::path kernel = write_file("kernel.json", R"({"n": 2, "q": 0, "m": 0,
    "f": {"n": 2, "q": 1, "backend": "fourier", "scalar": "rational",
          "terms": [{"k": [0, 0], "I": [1], "re": "1/1", "im": "0/1"}]}})");
  CHECK(cli("solve '" + kernel.string() + "' '" + out.string() + "'").code == 5);
}

TEST_CASE("ratio emits one reproducible row") {
  const fs::path a = workdir() / "ratio_a.csv";
  const fs::path b = workdir() / "ratio_b.csv";
  const std::string args = "ratio --n 2 --q 0 --m 0 --bandwidth 1 --trials 1 --seed 1 -o ";
  REQUIRE(cli(args + "'" + a.string() + "'").code == 0);
  REQUIRE(cli(args + "'" + b.string() + "'").code == 0);
  const std::string text = slurp(a);
  CHECK(text == slurp(b));
  std::istringstream lines(text);
  std::string header, row, extra;
  std::getline(lines, header);
  std::getline(lines, row);
  CHECK(header == "seed,n,q,m,bandwidth,norm_f_l1,norm_g_l1,norm_v_sobolev,ratio,flag_q1,flag_qn1");
  CHECK_FALSE(std::getline(lines, extra));
  // ratio is the 9th column
  std::istringstream cells(row);
  std::string cell;
  for (int c = 0; c < 9; ++c) std::getline(cells, cell, ',');
  const double ratio = std::stod(cell);
  CHECK(ratio > 0.0);
  CHECK(std::isfinite(ratio));
}

TEST_CASE("ratio json output") {
  const auto r = cli("ratio --n 3 --q 0 --m 1 --bandwidth 2 --trials 2 --seed 3 --format json");
  REQUIRE(r.code == 0);
  const auto start = r.out.find('[');
  REQUIRE(start != std::string::npos);
  CHECK(r.out.find("\"norm_v_sobolev\"") != std::string::npos);
}

TEST_CASE("pairing LL rows carry the d*h norm") {
  const fs::path out = workdir() / "pairing.csv";
  REQUIRE(cli("pairing --n 2 --q 0 --variant LL --trials 3 --seed 2 -o '" + out.string() + "'").code == 0);
  std::istringstream lines(slurp(out));
  std::string header, row;
  std::getline(lines, header);
  CHECK(header.find("norm_ll_h_ln") != std::string::npos);
  int rows = 0;
  while (std::getline(lines, row)) {
    ++rows;
    CHECK(row.find(",d,LL,") != std::string::npos);
  }
  CHECK(rows == 3);
}

TEST_CASE("usage errors") {
  CHECK(cli("ratio --n 2 --q 5").code == 2);
  CHECK(cli("pairing --n 2 --q 1").code == 2);
  CHECK(cli("bogus").code == 2);
  CHECK(cli("").code == 2);
}

TEST_CASE("extremize trajectory") {
  const auto r = cli("extremize --n 2 --q 0 --m 1 --bandwidth 2 --steps 4 --seed 9");
  CHECK(r.code == 0);
  CHECK(r.out.find("best ratio") != std::string::npos);
}

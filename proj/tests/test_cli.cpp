#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Run {
  int status = -1;
  std::string out;
  Json json() const { return Json::parse(out); }
};

std::string corpus(const std::string& stem) { return std::string(TSPEC_CORPUS_DIR) + "/" + stem + ".toml"; }

Run tspec(const std::string& args) {
  const std::string command = std::string(TSPEC_BINARY) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t n;
  while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) r.out.append(buffer, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

fs::path scratch(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "tspec_cli_test";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

std::vector<std::string> strings(const Json& a) { return a.get<std::vector<std::string>>(); }

}  // namespace

TEST_CASE("spectrum command") {
  const Run d2 = tspec("spectrum " + corpus("z_d2") + " --kmax 5");
  REQUIRE(d2.status == 0);
  CHECK(strings(d2.json()["spectrum"]) == std::vector<std::string>{"1", "3", "7", "15", "31"});

  const Run d1 = tspec("spectrum " + corpus("z_d1") + " --kmax 4");
  REQUIRE(d1.status == 0);
  CHECK(strings(d1.json()["spectrum"]) == std::vector<std::string>(4, "inf"));
  CHECK(d1.json()["multiplicities"][0]["dold"].is_null());

  const Run torus = tspec("spectrum " + corpus("torus_fib") + " --kmax 3");
  CHECK(strings(torus.json()["spectrum"]) == std::vector<std::string>{"1", "5", "16"});
}

TEST_CASE("zeta command") {
  const Json d2 = tspec("zeta " + corpus("z_d2")).json();
  CHECK(strings(d2["zeta"]["numerator"]) == std::vector<std::string>{"1", "-1"});
  CHECK(strings(d2["zeta"]["denominator"]) == std::vector<std::string>{"1", "-2"});

  const Json torus = tspec("zeta " + corpus("torus_fib")).json();
  CHECK(strings(torus["zeta"]["numerator"]) == std::vector<std::string>{"1", "-2", "1"});
  CHECK(strings(torus["zeta"]["denominator"]) == std::vector<std::string>{"1", "-3", "1"});
  CHECK(torus["spectral"]["lambda"].get<double>() == doctest::Approx(2.6180339887));
  CHECK(torus["exterior_bound"]["match"] == true);
}

TEST_CASE("heights and orbits commands") {
  const Json h = tspec("heights " + corpus("z_dm2") + " --kmax 8").json();
  CHECK(h["heights"].get<std::vector<int>>() == std::vector<int>{1, 3, 4, 5, 6, 7, 8});
  CHECK(h["complete"] == true);

  const Run o = tspec("orbits " + corpus("z_dm2") + " --k 1");
  REQUIRE(o.status == 0);
  const Json j = o.json();
  CHECK(j["class_count"] == 3);
  REQUIRE(j["orbits"].size() == 3);
  for (const auto& orbit : j["orbits"]) CHECK(orbit["length"] == 1);
}

TEST_CASE("classify and verify commands") {
  const Json c = tspec("classify " + corpus("torus_fib")).json();
  CHECK(c["trichotomy"]["case"] == "periodic");
  CHECK(c["alpha2"] == 3);

  const Run v = tspec("verify " + corpus("torus_fib") + " --kmax 12");
  CHECK(v.status == 0);
  CHECK(v.json()["summary"]["failed"] == 0);
}

TEST_CASE("exit codes") {
  CHECK(tspec("frobnicate " + corpus("z_d2")).status == 1);
  CHECK(tspec("spectrum").status == 1);
  CHECK(tspec("orbits " + corpus("z_d2") + " --k 0").status == 1);

  const fs::path malformed = scratch("malformed.toml", "[group\nn = 1\n");
  CHECK(tspec("spectrum " + malformed.string()).status == 2);
  CHECK(tspec("spectrum " + (fs::temp_directory_path() / "tspec_cli_test" / "absent.toml").string()).status == 2);

  const fs::path invalid = scratch("invalid.toml",
                                   "[group]\nn = 2\nholonomy = [[[-1, 0], [0, 1]]]\n"
                                   "[endo]\nD = [[2, 0], [0, 3]]\nd = [0, 0]\n");
  CHECK(tspec("spectrum " + invalid.string()).status == 3);

  CHECK(tspec("zeta " + corpus("torus_fib") + " --kmax 3").status == 4);
  CHECK(tspec("zeta " + corpus("z_d1")).status == 5);
}

TEST_CASE("output is deterministic and --out writes the same bytes") {
  const Run a = tspec("classify " + corpus("klein_2_3"));
  const Run b = tspec("classify " + corpus("klein_2_3"));
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
  CHECK(a.out.back() == '\n');

  const fs::path out = fs::temp_directory_path() / "tspec_cli_test" / "out.json";
  fs::create_directories(out.parent_path());
  const Run c = tspec("classify " + corpus("klein_2_3") + " --out " + out.string());
  CHECK(c.status == 0);
  CHECK(c.out.empty());
  std::ifstream in(out, std::ios::binary);
  std::stringstream written;
  written << in.rdbuf();
  CHECK(written.str() == a.out);
}

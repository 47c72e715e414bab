#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <string>

#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// stdout and stderr together
Run run(const std::string& args) {
  const std::string cmd = std::string(PADICL_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  const int st = pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string cfg(const char* name) { return std::string(PADICL_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("eval") {
  const Run r = run("eval " + cfg("q5.cfg") + " --no-timing");
  REQUIRE(r.code == 0);
  const json j = json::parse(r.out);
  CHECK(j["p"] == 5);
  CHECK(j["M"] == 8);
  CHECK(j["aux_prime"] == 2);
  CHECK(j["value"] == json::array({2}));
  CHECK(j["s_digits"] == "2,4,4,4,4,4,4,4");
  CHECK_FALSE(j.contains("timing_ms"));
  // byte-stable without timings
  CHECK(run("eval " + cfg("q5.cfg") + " --no-timing").out == r.out);
  CHECK(json::parse(run("eval " + cfg("q5.cfg")).out).contains("timing_ms"));
}

TEST_CASE("paths agree through the CLI") {
  const json d = json::parse(run("eval " + cfg("sqrt5_p7.cfg") + " --no-timing --path direct").out);
  const json m = json::parse(run("eval " + cfg("sqrt5_p7.cfg") + " --no-timing --path measure").out);
  const json i = json::parse(run("eval " + cfg("sqrt5_p7.cfg") + " --no-timing --path iwasawa").out);
  CHECK(d["beta"] == m["beta"]);
  CHECK(d["gamma"] == m["gamma"]);
  CHECK(d["aux_prime"] == 11);
  CHECK(i.contains("beta"));
}

TEST_CASE("invariants, cones and verify") {
  const json inv = json::parse(run("invariants " + cfg("q5.cfg") + " --no-timing").out);
  CHECK(inv["determined"] == true);
  CHECK(inv["lambda"] == 0);
  CHECK(inv["mu"] == 0);
  const Run v = run("verify " + cfg("sqrt5_p7.cfg") + " --no-timing --set height=200");
  REQUIRE(v.code == 0);
  const json vj = json::parse(v.out);
  CHECK(vj.dump().find("\"clean\":true") != std::string::npos);
  const Run dropped = run("verify " + cfg("sqrt5_p7.cfg") + " --no-timing --set height=500 --drop-cone 0");
  CHECK(json::parse(dropped.out).dump().find("\"clean\":false") != std::string::npos);
  const Run c = run("cones " + cfg("sqrt5_p7.cfg") + " --pretty");
  CHECK(c.code == 0);
  CHECK(c.out.find('\n') != std::string::npos);
}

TEST_CASE("oracle") {
  const json b = json::parse(run("oracle --kind bernoulli --k 4").out);
  CHECK(b["number"] == json({{"num", "-1"}, {"den", "30"}}));
  const json t = json::parse(run("oracle --kind twisted --a 1 --f 5 --c 2 --k 3").out);
  CHECK(t["value"] == json({{"num", "-99"}, {"den", "8"}}));
  // L(chi, -3) = 2
  const json c = json::parse(run("oracle " + cfg("q5.cfg") + " --kind classical --k 3").out);
  CHECK(c["value"] == json::array({json({{"num", "2"}, {"den", "1"}})}));
}

TEST_CASE("exit codes") {
  CHECK(run("eval " + cfg("q5.cfg") + " --set character=1 --set s=1").code == 2);
  const Run pole = run("eval " + cfg("q5.cfg") + " --set character=1 --set s=1");
  CHECK(json::parse(pole.out)["error"] == "pole");
  CHECK(run("eval " + cfg("q5.cfg") + " --set modulus=3").code == 1);
  CHECK(run("eval " + cfg("q5.cfg") + " --set bogus=1").code == 1);
  CHECK(run("eval /nonexistent.cfg").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("iwasawa " + cfg("q5.cfg") + " --set L=2 --set s=3").code == 0);
  CHECK(run("eval " + cfg("q5.cfg") + " --path iwasawa --set L=2").code == 3);
}

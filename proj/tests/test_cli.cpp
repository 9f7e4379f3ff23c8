#include <catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <sys/wait.h>

#include "ecgw/cli.hpp"
#include "ecgw/exactqi.hpp"
#include "ecgw/io.hpp"

using namespace ecgw;

namespace {

std::string data(const std::string& name) { return std::string(ECGW_DATA) + "/" + name; }

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Runs the installed binary through the shell; returns exit status and stdout.
Run shell(const std::string& cmdline) {
  std::string cmd = cmdline + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[4096];
  while (auto n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

}  // namespace

TEST_CASE("qiso agrees with the library") {
  FinSetInstance fs;
  auto r = io::resolve(fs, io::load(data("complexes.json")));
  for (const auto& [name, m] : r.chain_maps) {
    auto res = run({"chain", "qiso", "--file", data("complexes.json"), "--map", name});
    CHECK(res.code == 0);
    CHECK(res.out == std::string(is_quasi_iso(fs, m) ? "true\n" : "false\n"));
  }
  CHECK(run({"chain", "qiso", "--file", data("complexes.json"), "--map", "a"}).out == "true\n");
  CHECK(run({"chain", "qiso", "--file", data("complexes.json"), "--map", "b"}).out == "false\n");
}

TEST_CASE("validate reports success and the failing degree") {
  auto ok = run({"chain", "validate", "--file", data("complexes.json")});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("chain map a valid kind m") != std::string::npos);
  auto bad = run({"chain", "validate", "--file", data("chain_violation.json")});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("invalid") != std::string::npos);
  CHECK(bad.out.find("(0)") != std::string::npos);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"chain"}).code == 2);
  CHECK(run({"chain", "bogus"}).code == 2);
  CHECK(run({"chain", "qiso", "--file", data("complexes.json")}).code == 2);
  CHECK(run({"chain", "qiso", "--file", data("complexes.json"), "--map", "nope"}).code == 2);
  CHECK(run({"chain", "validate", "--file", data("malformed.json")}).code == 2);
  CHECK(run({"chain", "validate", "--file", data("missing.json")}).code == 2);
  CHECK(run({"audit", "--suite", "nope"}).code == 2);
  CHECK(run({"audit", "--suite", "cgw", "--trials", "0"}).code == 2);
  auto e = run({"chain", "validate"});
  CHECK(e.code == 2);
  CHECK_FALSE(e.err.empty());
}

TEST_CASE("cokernel output is a loadable document") {
  auto res = run({"chain", "coker", "--file", data("complexes.json"), "--map", "a"});
  REQUIRE(res.code == 0);
  FinSetInstance fs;
  auto r = io::resolve(fs, io::parse(res.out));
  const auto& g = r.chain_maps.at("a.coker");
  CHECK(g.kind == MapKind::E);
  CHECK(g.src.X(0).size() == 1);
  CHECK(run({"chain", "ker", "--file", data("complexes.json"), "--map", "a"}).code == 2);
}

TEST_CASE("homology and exactness") {
  auto h = run({"chain", "homology", "--file", data("complexes.json"), "--complex", "A"});
  CHECK(h.code == 0);
  CHECK(h.out == "H1 = {}\nH0 = {}\nH-1 = {}\n");
  auto b = run({"chain", "homology", "--file", data("complexes.json"), "--complex", "B"});
  CHECK(b.out.find("H-1 = {w}") != std::string::npos);
  CHECK(run({"chain", "exact", "--file", data("complexes.json"), "--complex", "X"}).out == "exact\n");
  auto ne = run({"chain", "exact", "--file", data("complexes.json"), "--complex", "B"});
  CHECK(ne.out.rfind("not exact at degree -1", 0) == 0);
}

TEST_CASE("staircase commands") {
  auto b = run({"sdot", "build", "--file", data("staircase.json"), "--staircase", "row3"});
  CHECK(b.code == 0);
  CHECK(b.out.find("A1,3 = {2,3}") != std::string::npos);
  auto f = run({"sdot", "face", "--file", data("staircase.json"), "--staircase", "row3", "--k", "1"});
  CHECK(f.out.rfind("level 2\n", 0) == 0);
  CHECK(f.out.find("A1,2 = {3}") != std::string::npos);
  auto s = run({"sdot", "degeneracy", "--file", data("staircase.json"), "--staircase", "row3", "--k", "0"});
  CHECK(s.out.rfind("level 4\n", 0) == 0);
  auto dot = run({"sdot", "build", "--file", data("staircase.json"), "--staircase", "row3", "--dot"});
  CHECK(dot.out.rfind("digraph staircase {", 0) == 0);
  CHECK(run({"sdot", "face", "--file", data("staircase.json"), "--staircase", "row3", "--k", "9"}).code == 2);
}

TEST_CASE("euler characteristics") {
  auto e = run({"k0", "euler", "--file", data("complexes.json"), "--complex", "B"});
  CHECK(e.code == 0);
  CHECK(e.out.find("chi -1") != std::string::npos);
  auto x = run({"k0", "euler", "--file", data("complexes.json"), "--complex", "X"});
  CHECK(x.out.find("chi 0") != std::string::npos);
}

TEST_CASE("m-set instance from a monoid table") {
  auto r = run({"chain", "validate", "--file", data("mset.json"), "--instance", "mset:" + data("idempotent.json")});
  CHECK(r.code == 0);
  auto plain = run({"chain", "validate", "--file", data("mset.json")});
  CHECK(plain.code == 1);
  CHECK(plain.out.find("actions given for a plain set") != std::string::npos);
}

TEST_CASE("audit output is deterministic and accepts a negative window") {
  std::vector<std::string> args{"audit", "--suite", "quasi-iso", "--trials", "30", "--seed", "7",
                                "--window", "-2", "2"};
  auto one = run(args);
  CHECK(one.code == 0);
  CHECK(one.out.find("result PASS") != std::string::npos);
  CHECK(run(args).out == one.out);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  CHECK(run(threaded).out == one.out);
  args[6] = "8";
  CHECK(run(args).out != one.out);
}

TEST_CASE("binary honours the seed environment variable") {
  std::string bin = ECGW_BIN;
  auto a = shell("ECGW_SEED=5 " + bin + " audit --suite cgw --trials 10");
  auto b = shell(bin + " audit --suite cgw --trials 10 --seed 5");
  auto c = shell(bin + " audit --suite cgw --trials 10 --seed 6");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(shell(bin + " chain validate --file " + data("chain_violation.json")).code == 1);
  CHECK(shell(bin + " chain frobnicate").code == 2);
}

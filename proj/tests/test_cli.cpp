#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "burau/io.hpp"

using namespace burau;
namespace fs = std::filesystem;

namespace {

const std::string kCli = BURAU_CLI_PATH;
const std::string kFixtures = BURAU_FIXTURE_DIR;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = "'" + kCli + "' " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (const std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "burau_test_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

}  // namespace

TEST_CASE("verify exit codes") {
  const std::string kappa = kFixtures + "/kappa.json";
  const Run mod5 = run("verify " + kappa + " --mod 5");
  CHECK(mod5.code == 0);
  CHECK(mod5.out.find("result: kernel element, l_G=54") != std::string::npos);
  CHECK(mod5.out.find("projlen: 0") != std::string::npos);

  const Run mod7 = run("verify " + kappa + " --mod 7");
  CHECK(mod7.code == 1);
  CHECK(mod7.out.find("result: not in kernel") != std::string::npos);
  CHECK(run("verify " + kappa + " --mod 0").code == 1);

  CHECK(run("verify " + kFixtures + "/kappa1.json --mod 5").code == 0);
  CHECK(run("verify " + kFixtures + "/kappa2.json --mod 5").code == 0);
  CHECK(run("verify " + kFixtures + "/sigma.txt --mod 5").code == 1);

  CHECK(run("verify /nonexistent.json").code == 2);
  CHECK(run("verify " + kappa + " --mod 1").code == 2);
  CHECK(run("verify " + kappa + " --n 5").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("").code == 2);
}

TEST_CASE("gnf output feeds verify") {
  const auto dir = scratch_dir("gnf");
  const Run g = run("gnf " + kFixtures + "/sigma.txt");
  REQUIRE(g.code == 0);
  const Braid sigma = braid_from_json(json::parse(g.out));
  CHECK(sigma.inf() == 0);
  CHECK(sigma.garside_length() == 54);

  std::ofstream(dir / "kappa.json") << braid_to_json(sigma.with_inf(-27)).dump();
  CHECK(run("verify " + (dir / "kappa.json").string() + " --mod 5").code == 0);

  // word input and its normal form give the same verdict
  std::ofstream(dir / "w.txt") << "1 2 -1 3 -2\n";
  const Run gw = run("gnf " + (dir / "w.txt").string());
  REQUIRE(gw.code == 0);
  std::ofstream(dir / "w.json") << gw.out;
  const Run v1 = run("verify " + (dir / "w.txt").string() + " --mod 0");
  const Run v2 = run("verify " + (dir / "w.json").string() + " --mod 0");
  CHECK(v1.code == 1);
  CHECK(v1.out == v2.out);

  std::ofstream(dir / "trivial.txt") << "2 -2\n";
  CHECK(run("verify " + (dir / "trivial.txt").string()).code == 0);
}

TEST_CASE("search writes its reports") {
  const auto dir = scratch_dir("search");
  std::ofstream(dir / "config.json") << R"({"n":4,"modulus":2,"capacity":50,"max_level":12,"seed":1})";
  const Run r = run("search " + (dir / "config.json").string() + " --stop-on-kernel --out-dir " + dir.string());
  CHECK(r.code == 0);
  CHECK(first_line(dir / "min_projlen.csv") == "level,min_projlen");
  CHECK(first_line(dir / "buckets.csv") == "level,projlen,seen");
  const std::string kernel = first_line(dir / "kernels.jsonl");
  REQUIRE_FALSE(kernel.empty());
  std::ofstream(dir / "k.json") << kernel;
  CHECK(run("verify " + (dir / "k.json").string() + " --mod 2").code == 0);

  const auto again = scratch_dir("search2");
  run("search " + (dir / "config.json").string() + " --stop-on-kernel --threads 2 --out-dir " + again.string());
  for (const char* f : {"min_projlen.csv", "buckets.csv", "kernels.jsonl"}) {
    CHECK(read_text_file(dir / f) == read_text_file(again / f));
  }

  CHECK(run("search /nonexistent.json").code == 2);
  std::ofstream(dir / "bad.json") << R"({"n":12})";
  CHECK(run("search " + (dir / "bad.json").string() + " --out-dir " + dir.string()).code == 2);
}

TEST_CASE("mc-search writes its reports") {
  const auto dir = scratch_dir("mc");
  std::ofstream(dir / "config.json") << R"({"n":4,"modulus":5,"capacity":5,"seed":3})";
  const Run r = run("mc-search " + (dir / "config.json").string() + " --rounds 2 --rollout 2 --out-dir " + dir.string());
  CHECK(r.code == 0);
  CHECK(first_line(dir / "min_projlen.csv") == "level,min_projlen");
  CHECK(fs::exists(dir / "kernels.jsonl"));
}

TEST_CASE("trajectory, sample, forced-analyze and features") {
  const auto dir = scratch_dir("misc");
  const Run t = run("trajectory " + kFixtures + "/sigma.txt --mod 0");
  CHECK(t.code == 0);
  CHECK(t.out.rfind("prefix_index,garside_length,projlen\n1,1,", 0) == 0);

  CHECK(run("trajectory " + kFixtures + "/sigma.txt --mod 5 --out-dir " + dir.string()).code == 0);
  CHECK(first_line(dir / "trajectory.csv") == "prefix_index,garside_length,projlen");

  const Run s = run("sample --n 4 --max-len 3 --per-len 4 --seed 1");
  CHECK(s.code == 0);
  CHECK(std::count(s.out.begin(), s.out.end(), '\n') == 13);
  CHECK(s.out.rfind("garside_length,half_projlen\n", 0) == 0);

  std::ofstream(dir / "config.json") << R"({"n":4,"modulus":5,"capacity":20,"seed":1})";
  const Run f = run("forced-analyze " + (dir / "config.json").string() + " " + kFixtures +
                    "/sigma.txt --out-dir " + dir.string());
  CHECK(f.code == 0);
  CHECK(f.out.find("P(beta) = ") != std::string::npos);
  CHECK(first_line(dir / "forced.csv") == "prefix_index,r,k");

  const Run feat = run("features " + kFixtures + "/kappa.json --mod 5 --slices 1");
  CHECK(feat.code == 0);
  const json j = json::parse(feat.out);
  CHECK(j["projlen"] == 0);
  CHECK(j["head"].size() == 1);
}

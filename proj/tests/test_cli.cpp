#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "json.hpp"

namespace {

std::string bin() {
  const char* b = std::getenv("SPLITKIT_BIN");
  REQUIRE(b != nullptr);
  return b;
}
std::string data() {
  const char* d = std::getenv("SPLITKIT_DATA");
  REQUIRE(d != nullptr);
  return d;
}

struct RunResult {
  int exit_code;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = bin() + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf;
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  while (fgets(buf.data(), buf.size(), p)) out += buf.data();
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

}  // namespace

TEST_CASE("inum self is zero, exact, exit 0") {
  auto r = run("inum --s " + data() + "/z.json --t " + data() +
               "/z.json --radius 6");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["count"] == 0);
  CHECK(j["exact"] == true);
}

TEST_CASE("ends of F2 over the trivial subgroup") {
  auto r = run("ends --group " + data() + "/f2.json --radius 6");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["value"] == "many");
}

TEST_CASE("unresolved results exit with code 2") {
  auto r = run("ends --group " + data() + "/f2.json --radius 2");
  CHECK(r.exit_code == 2);
}

TEST_CASE("normal form output") {
  auto r = run("nf --splitting " + data() + "/z4z2.json --word \"a a b\"");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["syllables"].size() == 1);
  CHECK(j["syllables"][0]["rep"] == "b");
  CHECK(j["tail"] == "a a");
  CHECK(j["reassembled"] == "a a b");
}

TEST_CASE("side output") {
  auto r = run("side --splitting " + data() + "/z2z2.json --word \"a b a\"");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["side"] == "inside");
}

TEST_CASE("ball counts") {
  auto r = run("ball --group " + data() + "/f2.json --radius 1");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["vertices"] == 5);
  CHECK(j["edges"] == 4);
}

TEST_CASE("dtree validates and round-trips") {
  auto r = run("dtree --poset " + data() + "/poset_chain.json");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["accepted"] == true);
  CHECK(j["edges"] == 2);
  CHECK(j["round_trip"] == true);
}

TEST_CASE("gog assembles the F3 pair") {
  auto r = run("gog --splittings " + data() + "/f3a.json " + data() +
               "/f3b.json --radius 7");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["edges"] == 2);
  CHECK(j["vertices"] == 3);
}

TEST_CASE("gog rejects the crossing slope pair") {
  auto r = run("gog --splittings " + data() + "/slope01.json " + data() +
               "/slope10.json --radius 8");
  CHECK(r.exit_code == 1);
}

TEST_CASE("oracle slopes triple agreement") {
  auto r = run("oracle slopes --a 0/1 --b 1/0 --radius 8");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["determinant"] == 1);
  CHECK(j["agree"] == true);
}

TEST_CASE("byte-identical output across repeated runs") {
  std::string args = "inum --s " + data() + "/slope01.json --t " + data() +
                     "/slope10.json --radius 7";
  auto r1 = run(args);
  auto r2 = run(args);
  CHECK(r1.out == r2.out);
  CHECK(r1.exit_code == r2.exit_code);
  auto j = nlohmann::json::parse(r1.out);
  CHECK(j["count"] == 1);
}

TEST_CASE("malformed input exits 1") {
  auto r = run("inum --s /nonexistent.json --t " + data() + "/z.json");
  CHECK(r.exit_code == 1);
}

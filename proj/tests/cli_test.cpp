#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(PRYMCHECK_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), p) != nullptr) r.out += buf.data();
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("bn") {
  auto r = run("bn rho --g 9 --r 2 --d 8");
  CHECK(r.code == 0);
  CHECK(r.out.find('0') != std::string::npos);
  r = run("--json bn pairs --g 9");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.dump().find("8") != std::string::npos);
  r = run("bn slope --g 23");
  CHECK(r.code == 0);
  CHECK(r.out.find("13/2") != std::string::npos);
  CHECK(run("bn expdim --g 5 --e 5 --f 1").code == 2);
  CHECK(run("bn foo").code == 2);
  CHECK(run("").code != 0);
}

TEST_CASE("class") {
  auto r = run("--json class solve --i 2");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("normalized_class").at("lambda") == "7");
  CHECK(j.at("normalized_class").at("d0pp") == "undetermined");
  r = run("class pencils --g 7");
  CHECK(r.code == 0);
  CHECK(r.out.find("44") != std::string::npos);
  CHECK(run("class srange --i 0").code == 2);
}

TEST_CASE("lattice prove and replay") {
  const auto file = std::filesystem::temp_directory_path() / "prymcheck_cli_test_cert.json";
  auto r = run("lattice prove --model standard-hyp --g 7 --class \"L - 3*E - e\" --out " + file.string());
  CHECK(r.code == 0);
  CHECK(run("lattice replay " + file.string()).code == 0);

  // Corrupt one pairing and replay again.
  nlohmann::json j;
  {
    std::FILE* f = std::fopen(file.c_str(), "r");
    REQUIRE(f != nullptr);
    std::string text;
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), f)) > 0) text.append(buf.data(), n);
    std::fclose(f);
    j = nlohmann::json::parse(text);
  }
  j["candidates"][0]["pairing"] = "-9";
  {
    std::FILE* f = std::fopen(file.c_str(), "w");
    const auto text = j.dump();
    std::fwrite(text.data(), 1, text.size(), f);
    std::fclose(f);
  }
  CHECK(run("lattice replay " + file.string()).code == 1);
  std::filesystem::remove(file);

  CHECK(run("lattice prove --model standard-hyp --g 9 --class \"4E - e\" --depth 1").code == 1);
  CHECK(run("lattice prove --model standard-hyp --g 7 --class \"L - Q\"").code == 2);
  CHECK(run("lattice prove --model standard-hyp --g 7 --class \"L\"").code == 2);
  CHECK(run("lattice decomp --model standard --g 8 --class \"L - e\"").code == 0);
  r = run("lattice pair --model nonstandard-hyp --i 2 --class R --with E");
  CHECK(r.code == 0);
  CHECK(r.out.find('2') != std::string::npos);
}

TEST_CASE("verify-all") {
  CHECK(run("verify-all --max-i 2 --max-g 6").code == 0);
  CHECK(run("verify-all --max-i 1").code == 2);
}

// Drives the installed CLI binary end to end. The binary path arrives as the
// first command line argument (wired up by CMake).

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <sys/wait.h>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

std::string g_cli_path;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  const std::string cmd = g_cli_path + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe))
    res.out.append(buf.data(), got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("simulate is deterministic and sized correctly") {
  const std::string f1 = "/tmp/lmtest_cli_a.csv";
  const std::string f2 = "/tmp/lmtest_cli_b.csv";
  auto r1 = run("simulate --n 1024 --d1 0.2 --d2 0.1 --seed 7 --out " + f1);
  auto r2 = run("simulate --n 1024 --d1 0.2 --d2 0.1 --seed 7 --out " + f2);
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  CHECK(slurp(f1) == slurp(f2));

  std::ifstream in(f1);
  std::string line;
  std::size_t data_rows = 0, comments = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#')
      ++comments;
    else if (!line.empty())
      ++data_rows;
  }
  CHECK(data_rows == 1024);
  CHECK(comments >= 1);
}

TEST_CASE("test command emits a decision report") {
  const std::string data = "/tmp/lmtest_cli_c.csv";
  REQUIRE(run("simulate --n 4096 --d1 0.4 --d2 0.0 --seed 21 --out " + data)
              .exit_code == 0);
  const auto res = run("test " + data + " --variant residualized");
  CHECK(res.exit_code == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j.at("reject").get<bool>());
  CHECK(j.at("q_source").get<std::string>() == "adaptive");
  CHECK(j.at("n").get<std::size_t>() == 4096);

  const auto fixed_q = run("test " + data + " --q 5");
  const auto j2 = nlohmann::json::parse(fixed_q.out);
  CHECK(j2.at("q_used").get<int>() == 5);
  CHECK(j2.at("q_source").get<std::string>() == "user");
}

TEST_CASE("degenerate input exits with code 2") {
  const std::string data = "/tmp/lmtest_cli_d.csv";
  std::ofstream out(data);
  out << "x,y\n";
  std::mt19937_64 rng(5);
  for (int i = 0; i < 256; ++i) {
    const double v = static_cast<double>(rng() % 1000) / 100.0;
    out << v << "," << v << "\n";
  }
  out.close();
  CHECK(run("test " + data + " --variant residualized").exit_code == 2);
  // the plain statistic still works and never rejects at T_n = 2
  const auto plain = run("test " + data + " --variant plain");
  CHECK(plain.exit_code == 0);
  const auto j = nlohmann::json::parse(plain.out);
  CHECK(j.at("t_value").get<double>() == doctest::Approx(2.0));
  CHECK_FALSE(j.at("reject").get<bool>());
}

TEST_CASE("usage errors exit with code 1") {
  CHECK(run("test /nonexistent.csv").exit_code == 1);
  CHECK(run("test --frobnicate").exit_code != 0);
  CHECK(run("reproduce 9 --reps 2").exit_code == 1);
  // built-in quantile model only covers alpha = 0.05
  const std::string data = "/tmp/lmtest_cli_c.csv";
  CHECK(run("test " + data + " --alpha 0.10").exit_code == 1);
}

TEST_CASE("quantiles regenerates a usable model") {
  const std::string model = "/tmp/lmtest_cli_model.json";
  const auto res =
      run("quantiles --reps 1000 --grid-size 256 --seed 3 --out " + model);
  CHECK(res.exit_code == 0);
  const auto j = nlohmann::json::parse(slurp(model));
  CHECK(j.at("alpha").get<double>() == doctest::Approx(0.05));
  CHECK(j.at("coefficients").size() == 3);
  CHECK(j.at("mc_table").size() == 10);
  // constant term lands near the published 5.2 even at desk scale
  CHECK(j.at("coefficients").at(2).get<double>() ==
        doctest::Approx(5.2).epsilon(0.15));

  const std::string data = "/tmp/lmtest_cli_c.csv";
  const auto res2 = run("test " + data + " --quantile-model " + model);
  CHECK(res2.exit_code == 0);
}

TEST_CASE("reproduce emits the grid in both formats") {
  const auto text = run("reproduce 6 --reps 2 --n 256 --seed 5");
  CHECK(text.exit_code == 0);
  CHECK(text.out.find("d1\\d2") != std::string::npos);
  const auto csv = run("reproduce 6 --reps 2 --n 256 --seed 5 --csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out.find("block,n,d1,d2,rejection_pct,mean_q") !=
        std::string::npos);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-lmtest-binary>\n");
    return 64;
  }
  g_cli_path = argv[1];
  doctest::Context ctx;
  ctx.applyCommandLine(argc - 1, argv + 1);
  return ctx.run();
}

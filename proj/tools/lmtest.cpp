// lmtest: two-sample comparison of long-memory parameters.
//
// Subcommands:
//   test       run the comparison test on a two-column CSV
//   simulate   write a simulated bivariate FARIMA sample
//   quantiles  regenerate the null-quantile model by Monte Carlo
//   reproduce  rebuild one of the simulation-study tables
//
// Exit codes: 0 ok, 1 usage/parse error, 2 degenerate statistics,
// 3 numerical failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "lmtest/csv.hpp"
#include "lmtest/errors.hpp"
#include "lmtest/pipeline.hpp"
#include "lmtest/tables.hpp"

namespace {

using namespace lmtest;

std::vector<double> parse_coeff_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(std::stod(tok));
  return out;
}

void write_or_print(const std::optional<std::string>& path,
                    const std::string& content) {
  if (!path || *path == "-") {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(*path);
  if (!out) throw invalid_input("cannot open output file " + *path);
  out << content;
}

struct CommonTestFlags {
  std::string variant = "residualized";
  double alpha = 0.05;
  int q = -1;
  std::string estimator = "lw";
  int est_m = 0;
  int pmax = 10;
  std::string quantile_model_path;
  bool swap = false;

  TestOptions to_options() const {
    TestOptions opt;
    if (variant == "plain")
      opt.variant = Variant::plain;
    else if (variant == "residualized")
      opt.variant = Variant::residualized;
    else if (variant == "one-sided")
      opt.variant = Variant::residualized_one_sided;
    else
      throw invalid_input("unknown variant " + variant);
    opt.alpha = alpha;
    if (q >= 0) opt.q_override = q;
    opt.estimator = estimator == "gph" ? DMethod::log_periodogram
                                       : DMethod::local_whittle;
    if (estimator != "lw" && estimator != "gph")
      throw invalid_input("unknown estimator " + estimator);
    if (est_m > 0) opt.estimator_m = est_m;
    opt.p_max = pmax;
    opt.swap_pair = swap;
    if (!quantile_model_path.empty()) {
      std::ifstream in(quantile_model_path);
      if (!in)
        throw invalid_input("cannot open quantile model " +
                            quantile_model_path);
      std::stringstream buf;
      buf << in.rdbuf();
      opt.quantiles = QuantileModel::from_json_string(buf.str());
    } else {
      if (std::abs(alpha - 0.05) > 1e-12)
        throw invalid_input(
            "the built-in quantile model is calibrated for alpha = 0.05; pass "
            "--quantile-model for other levels");
      opt.quantiles = QuantileModel::published();
    }
    return opt;
  }
};

int run_test_cmd(const std::string& input, const CommonTestFlags& flags,
                 const std::optional<std::string>& out) {
  BivariatePair pair = input == "-" ? read_pair_csv(std::cin)
                                    : read_pair_csv_file(input);
  if (pair.size() < 128)
    throw invalid_input("test: need at least 128 observations per column");
  const auto report = run_two_sample_test(pair, flags.to_options());
  write_or_print(out, report.to_json_string());
  return 0;
}

int run_simulate_cmd(std::size_t n, double d1, double d2, double a1, double a2,
                     const std::string& ar1, const std::string& ar2,
                     const std::string& ma1, const std::string& ma2,
                     double sd1, double sd2, double p, std::size_t burn_in,
                     std::uint64_t seed, const std::optional<std::string>& out) {
  FarimaSpec s1, s2;
  s1.d = d1;
  s2.d = d2;
  if (a1 != 0.0) s1.ar = {a1};
  if (a2 != 0.0) s2.ar = {a2};
  if (!ar1.empty()) s1.ar = parse_coeff_list(ar1);
  if (!ar2.empty()) s2.ar = parse_coeff_list(ar2);
  if (!ma1.empty()) s1.ma = parse_coeff_list(ma1);
  if (!ma2.empty()) s2.ma = parse_coeff_list(ma2);
  s1.innovation_sd = sd1;
  s2.innovation_sd = sd2;
  const auto noise = BivariateNoiseSpec::from_p(p);
  if (burn_in == 0) burn_in = default_burn_in(n);

  const auto pair = gen_bivariate(s1, s2, noise, n, burn_in, seed);

  std::ostringstream header;
  header << "lmtest simulate n=" << n << " seed=" << seed << " burn_in="
         << burn_in << " p=" << p << "\n";
  const auto describe = [&](const char* tag, const FarimaSpec& s) {
    header << tag << ": d=" << s.d << " ar=[";
    for (std::size_t i = 0; i < s.ar.size(); ++i)
      header << (i ? "," : "") << s.ar[i];
    header << "] ma=[";
    for (std::size_t i = 0; i < s.ma.size(); ++i)
      header << (i ? "," : "") << s.ma[i];
    header << "] sd=" << s.innovation_sd << "\n";
  };
  describe("x1", s1);
  describe("x2", s2);

  std::ostringstream body;
  write_pair_csv(body, pair, header.str());
  write_or_print(out, body.str());
  return 0;
}

int run_quantiles_cmd(double alpha, int reps, std::size_t grid_size,
                      std::uint64_t seed, const std::optional<std::string>& out) {
  std::vector<double> d_grid;
  for (double d = 0.0; d < 0.451; d += 0.05) d_grid.push_back(d);
  const auto model = fit_quantile_model(alpha, d_grid, reps, grid_size, seed);

  const auto published = QuantileModel::published();
  std::cerr << "fitted t_" << alpha * 100 << "%(d) ~ " << model.a << " d^2 + "
            << model.b << " d + " << model.c
            << "  (max residual " << model.max_residual << ")\n";
  if (std::abs(alpha - 0.05) < 1e-12)
    std::cerr << "built-in polynomial:   " << published.a << " d^2 + "
              << published.b << " d + " << published.c << "\n";
  std::cerr << "mc standard error of each table entry ~ "
            << "O(1/sqrt(reps)) with reps = " << reps << "\n";

  write_or_print(out, model.to_json_string());
  return 0;
}

int run_reproduce_cmd(int table_id, int reps, bool full, std::uint64_t seed,
                      std::optional<std::size_t> n_override,
                      const std::optional<std::string>& out, bool csv) {
  if (full) reps = 1000;
  const auto table = reproduce_table(table_id, reps, seed, n_override, true);
  write_or_print(out, csv ? table.to_csv() : table.to_text());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"two-sample test for equality of long-memory parameters"};
  app.require_subcommand(1);

  // test
  auto* test = app.add_subcommand("test", "run the test on a two-column CSV");
  std::string input = "-";
  CommonTestFlags flags;
  std::optional<std::string> out;
  test->add_option("input", input, "input CSV path, or - for stdin");
  test->add_option("--variant", flags.variant,
                   "plain | residualized | one-sided");
  test->add_option("--alpha", flags.alpha, "significance level");
  test->add_option("--q", flags.q, "fixed HAC bandwidth (skips adaptive rule)");
  test->add_option("--estimator", flags.estimator, "lw | gph");
  test->add_option("--m", flags.est_m, "periodogram band for the d estimate");
  test->add_option("--pmax", flags.pmax, "AR order cap of the bandwidth rule");
  test->add_option("--quantile-model", flags.quantile_model_path,
                   "JSON produced by the quantiles command");
  test->add_flag("--swap", flags.swap,
                 "exchange the columns (tests d1 < d2 one-sided)");
  test->add_option("--out", out, "write the JSON report here");

  // simulate
  auto* sim = app.add_subcommand("simulate", "write a simulated pair as CSV");
  std::size_t n = 1024;
  double d1 = 0.0, d2 = 0.0, a1 = 0.0, a2 = 0.0, sd1 = 1.0, sd2 = 1.0, p = 0.0;
  std::string ar1, ar2, ma1, ma2;
  std::size_t burn_in = 0;
  std::uint64_t seed = 1;
  sim->add_option("--n", n, "sample length");
  sim->add_option("--d1", d1, "memory parameter of column 1");
  sim->add_option("--d2", d2, "memory parameter of column 2");
  sim->add_option("--a1", a1, "AR(1) coefficient of column 1");
  sim->add_option("--a2", a2, "AR(1) coefficient of column 2");
  sim->add_option("--ar1", ar1, "comma list a_1,..,a_p for column 1");
  sim->add_option("--ar2", ar2, "comma list for column 2");
  sim->add_option("--ma1", ma1, "comma list b_1,..,b_q for column 1");
  sim->add_option("--ma2", ma2, "comma list for column 2");
  sim->add_option("--sd1", sd1, "innovation standard deviation, column 1");
  sim->add_option("--sd2", sd2, "innovation standard deviation, column 2");
  sim->add_option("--p", p, "innovation mixing parameter in [0, 0.5)");
  sim->add_option("--burn-in", burn_in, "warmup samples (default max(1024,n/2))");
  sim->add_option("--seed", seed, "master seed");
  sim->add_option("--out", out, "output CSV path (default stdout)");

  // quantiles
  auto* quant = app.add_subcommand(
      "quantiles", "regenerate the null-quantile model by Monte Carlo");
  double q_alpha = 0.05;
  int q_reps = 10000;
  std::size_t q_grid = 4096;
  std::uint64_t q_seed = 20100501;
  quant->add_option("--alpha", q_alpha, "upper-tail level");
  quant->add_option("--reps", q_reps, "Monte Carlo replications per d");
  quant->add_option("--grid-size", q_grid, "bridge grid size (power of two)");
  quant->add_option("--seed", q_seed, "master seed");
  quant->add_option("--out", out, "output JSON path (default stdout)");

  // reproduce
  auto* rep = app.add_subcommand("reproduce", "rebuild a simulation table");
  int table_id = 1;
  int r_reps = 400;
  bool full = false;
  std::uint64_t r_seed = 20100501;
  std::optional<std::size_t> n_override;
  bool csv = false;
  rep->add_option("table", table_id, "table id 1..6")->required();
  rep->add_option("--reps", r_reps, "replications per cell (desk scale 400)");
  rep->add_flag("--full", full, "use 1000 replications per cell");
  rep->add_option("--seed", r_seed, "master seed");
  rep->add_option("--n", n_override, "override the sample length");
  rep->add_flag("--csv", csv, "emit CSV instead of the aligned text grid");
  rep->add_option("--out", out, "output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*test) return run_test_cmd(input, flags, out);
    if (*sim)
      return run_simulate_cmd(n, d1, d2, a1, a2, ar1, ar2, ma1, ma2, sd1, sd2,
                              p, burn_in, seed, out);
    if (*quant) return run_quantiles_cmd(q_alpha, q_reps, q_grid, q_seed, out);
    if (*rep)
      return run_reproduce_cmd(table_id, r_reps, full, r_seed, n_override, out,
                               csv);
  } catch (const degenerate_residual& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const degenerate_statistic& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const degenerate_denominator& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const numerical_failure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const estimation_failed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const invalid_input& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

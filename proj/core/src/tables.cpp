#include "lmtest/tables.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "lmtest/errors.hpp"
#include "lmtest/parallel.hpp"

namespace lmtest {

namespace {

constexpr double kDGrid[] = {0.0, 0.1, 0.2, 0.3, 0.4};

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::string fmt(double v, int prec = 2) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", prec, v);
  return buf;
}

}  // namespace

CellOutcome run_cell(const CellModel& model, std::size_t n, int reps,
                     std::uint64_t seed, const TestOptions& options) {
  model.s1.validate();
  model.s2.validate();
  model.noise.validate();

  std::vector<char> rejected(static_cast<std::size_t>(reps), 0);
  std::vector<double> qs(static_cast<std::size_t>(reps), 0.0);
  std::vector<double> ts(static_cast<std::size_t>(reps), 0.0);

  parallel_for(static_cast<std::size_t>(reps), [&](std::size_t rep) {
    const auto pair =
        gen_bivariate(model.s1, model.s2, model.noise, n, default_burn_in(n),
                      seed + 0x9e3779b97f4a7c15ULL * (rep + 1));
    TestOptions opt = options;
    opt.variant = model.variant;
    const auto report = run_two_sample_test(pair, opt);
    rejected[rep] = report.reject ? 1 : 0;
    qs[rep] = report.q_used;
    ts[rep] = report.t_value;
  });

  CellOutcome out;
  out.reps = reps;
  out.rejection_pct =
      100.0 * std::count(rejected.begin(), rejected.end(), 1) / reps;
  double qsum = 0.0;
  for (double q : qs) qsum += q;
  out.mean_q = qsum / reps;
  out.median_t = median_of(std::move(ts));
  return out;
}

namespace {

FarimaSpec farima_d(double d) {
  FarimaSpec s;
  s.d = d;
  return s;
}

FarimaSpec farima_ar1(double d, double a) {
  FarimaSpec s;
  s.d = d;
  if (a != 0.0) s.ar = {a};
  return s;
}

struct BlockSpec {
  std::string label;
  CellModel (*make)(double d1, double d2, double param1, double param2);
  double p1 = 0.0, p2 = 0.0;
};

CellModel make_far1_pair(double d1, double d2, double a1, double a2) {
  CellModel m;
  m.s1 = farima_ar1(d1, a1);
  m.s2 = farima_ar1(d2, a2);
  m.variant = Variant::plain;
  return m;
}

CellModel make_dependent_pair(double d1, double d2, double p, double) {
  CellModel m;
  m.s1 = farima_d(d1);
  m.s2 = farima_d(d2);
  m.noise = BivariateNoiseSpec::from_p(p);
  m.variant = Variant::residualized;
  return m;
}

CellModel make_ar3_pair(double d1, double d2, double, double) {
  CellModel m;
  m.s1 = farima_d(d1);
  m.s1.ar = {0.0, 0.0, -0.7};  // phi(z) = 1 + 0.7 z^3
  m.s2 = farima_d(d2);
  m.variant = Variant::residualized;
  return m;
}

CellModel make_ma2_pair(double d1, double d2, double, double) {
  CellModel m;
  m.s1 = farima_d(d1);
  m.s1.ma = {-1.0 / 6.0, 1.0 / 6.0};  // theta(z) = 1 - z/6 + z^2/6
  m.s2 = farima_d(d2);
  m.variant = Variant::residualized;
  return m;
}

std::uint64_t cell_seed(std::uint64_t master, std::size_t cell_index) {
  return master + 1000003ULL * (cell_index + 1);
}

}  // namespace

ReproducedTable reproduce_table(int table_id, int reps, std::uint64_t seed,
                                std::optional<std::size_t> n_override,
                                bool verbose) {
  ReproducedTable table;
  table.table_id = table_id;
  table.reps = reps;
  table.seed = seed;

  std::vector<BlockSpec> blocks;
  std::vector<std::size_t> sizes;
  switch (table_id) {
    case 1:
    case 2:
    case 3: {
      table.n = table_id == 1 ? 1024 : 4096;
      table.title = table_id == 3
                        ? "mean adaptive bandwidth, independent FARIMA(1,d,0)"
                        : "rejection % of T_n, independent FARIMA(1,d,0)";
      for (double a1 : {0.0, 0.4, 0.8})
        for (double a2 : {0.0, 0.4, 0.8}) {
          if (a2 > a1) continue;
          blocks.push_back({"a1=" + fmt(a1, 1) + ",a2=" + fmt(a2, 1),
                            make_far1_pair, a1, a2});
        }
      sizes = {n_override.value_or(table.n)};
      break;
    }
    case 4: {
      table.n = 1024;
      table.title =
          "rejection % of residualized T~n, correlated-innovation FARIMA(0,d,0)";
      for (double p : {0.0, 0.15, 0.35, 0.45})
        blocks.push_back({"p=" + fmt(p, 2), make_dependent_pair, p, 0.0});
      if (n_override)
        sizes = {*n_override};
      else
        sizes = {1024, 4096};
      break;
    }
    case 5: {
      table.n = 4096;
      table.title =
          "T~n on independent FARIMA(3,d1,0) [1+0.7z^3] vs FARIMA(0,d2,0)";
      blocks.push_back({"ar3", make_ar3_pair, 0.0, 0.0});
      sizes = {n_override.value_or(table.n)};
      break;
    }
    case 6: {
      table.n = 4096;
      table.title =
          "T~n on independent FARIMA(0,d1,2) [1-z/6+z^2/6] vs FARIMA(0,d2,0)";
      blocks.push_back({"ma2", make_ma2_pair, 0.0, 0.0});
      sizes = {n_override.value_or(table.n)};
      break;
    }
    default:
      throw invalid_input("reproduce_table: table id must be 1..6");
  }

  std::size_t cell_index = 0;
  for (const auto& block : blocks) {
    for (std::size_t n : sizes) {
      for (double d1 : kDGrid) {
        for (double d2 : kDGrid) {
          if (d2 > d1) continue;
          const CellModel model = block.make(d1, d2, block.p1, block.p2);
          const auto outcome =
              run_cell(model, n, reps, cell_seed(seed, cell_index++));
          ReproducedTable::Row row;
          row.block = block.label;
          row.n = n;
          row.d1 = d1;
          row.d2 = d2;
          row.rejection_pct = outcome.rejection_pct;
          row.mean_q = outcome.mean_q;
          table.rows.push_back(row);
          if (verbose)
            std::cerr << "table " << table_id << " " << row.block << " n=" << n
                      << " d1=" << d1 << " d2=" << d2 << " -> "
                      << fmt(outcome.rejection_pct, 1) << "% q=" << fmt(outcome.mean_q)
                      << std::endl;
        }
      }
    }
  }
  return table;
}

std::string ReproducedTable::to_csv() const {
  std::ostringstream out;
  out << "# table " << table_id << ": " << title << "\n";
  out << "# reps=" << reps << " seed=" << seed << "\n";
  out << "block,n,d1,d2,rejection_pct,mean_q\n";
  for (const auto& row : rows)
    out << row.block << ',' << row.n << ',' << row.d1 << ',' << row.d2 << ','
        << row.rejection_pct << ',' << row.mean_q << "\n";
  return out.str();
}

std::string ReproducedTable::to_text() const {
  std::ostringstream out;
  out << "table " << table_id << ": " << title << " (reps=" << reps
      << ", seed=" << seed << ")\n";
  // group rows by (block, n)
  std::vector<std::pair<std::string, std::size_t>> groups;
  for (const auto& row : rows) {
    const auto key = std::pair(row.block, row.n);
    if (std::find(groups.begin(), groups.end(), key) == groups.end())
      groups.push_back(key);
  }
  const bool q_panel = table_id == 5 || table_id == 6;
  const auto cell = [](double v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%7.1f", v);
    return std::string(buf);
  };
  for (const auto& [block, n] : groups) {
    out << "\n[" << block << ", n=" << n << "]";
    out << (table_id == 3 ? "  (mean q)" : "  (rejection %)");
    if (q_panel) out << "  |  (mean q)";
    out << "\n  d1\\d2";
    for (double d2 : kDGrid) out << cell(d2);
    out << "\n";
    for (double d1 : kDGrid) {
      out << cell(d1) << " ";
      std::string qcols;
      for (double d2 : kDGrid) {
        if (d2 > d1) {
          out << std::string(7, ' ');
          qcols += std::string(7, ' ');
          continue;
        }
        for (const auto& row : rows)
          if (row.block == block && row.n == n && row.d1 == d1 &&
              row.d2 == d2) {
            out << cell(table_id == 3 ? row.mean_q : row.rejection_pct);
            qcols += cell(row.mean_q);
          }
      }
      if (q_panel) out << "  |" << qcols;
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace lmtest

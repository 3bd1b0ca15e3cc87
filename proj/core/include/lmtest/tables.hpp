#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lmtest/pipeline.hpp"
#include "lmtest/simgen.hpp"

namespace lmtest {

/// One simulated-experiment cell: the bivariate model and the statistic.
struct CellModel {
  FarimaSpec s1;
  FarimaSpec s2;
  BivariateNoiseSpec noise;  // identity mixing when the samples are independent
  Variant variant = Variant::plain;
};

struct CellOutcome {
  double rejection_pct = 0.0;
  double mean_q = 0.0;
  double median_t = 0.0;
  int reps = 0;
};

/// Runs reps independent replications of the full pipeline on freshly
/// simulated pairs; replications are parallel with per-replication streams,
/// so the outcome is a deterministic function of (model, n, reps, seed).
CellOutcome run_cell(const CellModel& model, std::size_t n, int reps,
                     std::uint64_t seed, const TestOptions& options = {});

/// A reproduced simulation-table grid in long format.
struct ReproducedTable {
  int table_id = 0;
  std::string title;
  std::size_t n = 0;
  int reps = 0;
  std::uint64_t seed = 0;

  struct Row {
    std::string block;  // e.g. "a1=0.8,a2=0.4" or "p=0.35"
    std::size_t n = 0;
    double d1 = 0.0, d2 = 0.0;
    double rejection_pct = 0.0;
    double mean_q = 0.0;
  };
  std::vector<Row> rows;

  std::string to_csv() const;
  std::string to_text() const;  // aligned triangular blocks
};

/// Rebuilds the layout of simulation table 1..6 at the requested
/// replication count. Progress lines go to stderr when verbose.
ReproducedTable reproduce_table(int table_id, int reps, std::uint64_t seed,
                                std::optional<std::size_t> n_override = {},
                                bool verbose = false);

}  // namespace lmtest

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bogomps/gsvd.hpp"

namespace bogomps {

struct BenchCell {
  int d;
  int bond_dim;
  double mean_seconds;
  double stddev_seconds;
  int repeats;
  std::uint64_t update_ops;
};

struct PowerFit {
  std::string axis;    // "d" or "D"
  int fixed_value;     // the other coordinate
  double exponent;
  double log_prefactor;
};

struct BenchReport {
  std::vector<BenchCell> cells;
  std::vector<PowerFit> fits;
};

// Default benchmark state: 20 modes, ten r = 1 squeezers, seeded interferometer.
// Its middle bonds carry about ten active modes.
CovarianceMatrix bench_state();
inline constexpr int kBenchSite = 9;

// Least-squares fit of log y = a + b log x; returns (b, a).
std::pair<double, double> fit_power_law(const std::vector<double>& x, const std::vector<double>& y);

// Times build_local_tensor at one site for every (d, D) pair.
BenchReport run_bench(const ChainDecomposition& decomp, int site, const std::vector<int>& ds,
                      const std::vector<int>& bond_dims, int repeat);

}  // namespace bogomps

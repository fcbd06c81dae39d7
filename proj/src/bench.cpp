#include "bogomps/bench.hpp"

#include <cmath>
#include <numeric>

#include "bogomps/error.hpp"
#include "bogomps/fock_subspace.hpp"
#include "bogomps/pco.hpp"
#include "bogomps/synth.hpp"

namespace bogomps {

CovarianceMatrix bench_state() { return synthetic_gbs(20, std::vector<double>(10, 1.0), 3u, 1.0); }

std::pair<double, double> fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2 || y.size() != n) throw Error(ErrorCode::InvalidArgument, "power-law fit needs two or more points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double b = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {b, (sy - b * sx) / n};
}

BenchReport run_bench(const ChainDecomposition& decomp, int site, const std::vector<int>& ds,
                      const std::vector<int>& bond_dims, int repeat) {
  const int n = static_cast<int>(decomp.specs.size());
  if (site < 0 || site >= n) throw Error(ErrorCode::InvalidArgument, "bench site out of range");
  if (repeat < 1) throw Error(ErrorCode::InvalidArgument, "repeat must be >= 1");
  const auto& spec = decomp.specs[site];
  BenchReport rep;
  for (int bd : bond_dims) {
    const KeptBasis left = site > 0 ? kept_basis(decomp.bonds[site - 1], bd) : kept_basis({}, 1);
    const KeptBasis right = site + 1 < n ? kept_basis(decomp.bonds[site], bd) : kept_basis({}, 1);
    for (int d : ds) {
      std::vector<double> t(repeat);
      BuildStats st;
      build_local_tensor(spec, left, right, d, {}, &st);  // warm-up, untimed
      for (int r = 0; r < repeat; ++r) {
        build_local_tensor(spec, left, right, d, {}, &st);
        t[r] = st.seconds;
      }
      const double mean = std::accumulate(t.begin(), t.end(), 0.0) / repeat;
      double var = 0.0;
      for (double x : t) var += (x - mean) * (x - mean);
      const double sd = repeat > 1 ? std::sqrt(var / (repeat - 1)) : 0.0;
      rep.cells.push_back({d, bd, mean, sd, repeat, st.update_ops});
    }
  }
  if (ds.size() >= 2)
    for (int bd : bond_dims) {
      std::vector<double> x, y;
      for (const auto& c : rep.cells)
        if (c.bond_dim == bd) x.push_back(c.d), y.push_back(c.mean_seconds);
      const auto [b, a] = fit_power_law(x, y);
      rep.fits.push_back({"d", bd, b, a});
    }
  if (bond_dims.size() >= 2)
    for (int d : ds) {
      std::vector<double> x, y;
      for (const auto& c : rep.cells)
        if (c.d == d) x.push_back(c.bond_dim), y.push_back(c.mean_seconds);
      const auto [b, a] = fit_power_law(x, y);
      rep.fits.push_back({"D", d, b, a});
    }
  return rep;
}

}  // namespace bogomps

#include "bogomps/convert.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "bogomps/error.hpp"

namespace bogomps {

std::vector<KeptBasis> kept_bases(const ChainDecomposition& decomp, const ConvertOptions& opts) {
  std::vector<KeptBasis> bases;
  bases.push_back(kept_basis(BondSpectrum{}, 1));
  for (const auto& b : decomp.bonds)
    bases.push_back(opts.eps >= 0.0 ? kept_basis_for_error(b, opts.eps, opts.bond_dim) : kept_basis(b, opts.bond_dim));
  bases.push_back(kept_basis(BondSpectrum{}, 1));
  return bases;
}

Conversion convert(const CovarianceMatrix& gamma, const ConvertOptions& opts) {
  if (!is_pure(gamma, 1e-7))
    throw Error(ErrorCode::ImpureResidual, "input covariance is mixed; extract its pure part with purify first");
  GsvdOptions gopts;
  gopts.d_star = opts.d_star;
  gopts.max_bond_modes = opts.max_bond_modes;
  Conversion out;
  out.decomp = decompose_chain(gamma, gopts);
  out.bases = kept_bases(out.decomp, opts);
  const int n = gamma.n_modes();

  std::vector<double> eps(n - 1);
  for (int m = 0; m + 1 < n; ++m) eps[m] = truncation_error(out.bases[m + 1], out.decomp.bonds[m]);

  std::vector<CoefficientBlock> tensors(n);
  out.stats.resize(n);
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    for (int m; (m = next++) < n;) {
      try {
        BuildStats bs;
        tensors[m] = build_local_tensor(out.decomp.specs[m], out.bases[m], out.bases[m + 1], opts.local_dim, {}, &bs);
        out.stats[m] = {m, out.decomp.specs[m].n_out, m + 1 < n ? eps[m] : 0.0, bs.seconds, bs.update_ops};
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min(opts.threads, n));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  out.mps = assemble_mps(out.decomp, std::move(tensors), std::move(eps));
  return out;
}

}  // namespace bogomps

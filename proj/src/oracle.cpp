#include "bogomps/oracle.hpp"

#include <cmath>

#include "bogomps/error.hpp"

namespace bogomps::oracle {

std::size_t DenseFockState::index(const std::vector<int>& occ) const {
  if (occ.size() != cutoffs.size()) throw Error(ErrorCode::ShapeMismatch, "occupation length");
  std::size_t idx = 0;
  for (std::size_t j = 0; j < occ.size(); ++j) {
    if (occ[j] < 0 || occ[j] >= cutoffs[j]) throw Error(ErrorCode::OccupationOutOfRange, "occupation outside box");
    idx = idx * cutoffs[j] + occ[j];
  }
  return idx;
}

DenseFockState fock_expand(const ComplexMatrix& q, const std::vector<int>& cutoffs) {
  const int n = static_cast<int>(cutoffs.size());
  if (q.rows() != n || q.cols() != n) throw Error(ErrorCode::DimensionMismatch, "pairing matrix vs cutoffs");
  double total = 1.0;
  for (int c : cutoffs) {
    if (c < 1) throw Error(ErrorCode::InvalidArgument, "cutoff must be >= 1");
    total *= c;
  }
  if (total > static_cast<double>(kDenseGuard)) throw Error(ErrorCode::GuardExceeded, "dense Fock box too large");
  const std::size_t dim = static_cast<std::size_t>(total);
  std::vector<std::size_t> stride(n, 1);
  for (int j = n - 2; j >= 0; --j) stride[j] = stride[j + 1] * cutoffs[j + 1];

  struct Pair {
    int i, j;
    cplx g;
  };
  std::vector<Pair> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const cplx g = (i == j) ? 0.5 * q(i, i) : 0.5 * (q(i, j) + q(j, i));
      if (g != cplx(0.0)) pairs.push_back({i, j, g});
    }

  DenseFockState out{cutoffs, std::vector<cplx>(dim)};
  std::vector<cplx> term(dim), next(dim);
  term[0] = 1.0;
  out.data[0] = 1.0;
  std::vector<int> occ(n);
  int max_terms = 0;
  for (int c : cutoffs) max_terms += c;
  for (int k = 1; k <= max_terms; ++k) {
    std::fill(next.begin(), next.end(), cplx(0.0));
    std::fill(occ.begin(), occ.end(), 0);
    bool any = false;
    for (std::size_t idx = 0; idx < dim; ++idx) {
      if (idx > 0) {
        for (int j = n - 1; j >= 0; --j) {
          if (++occ[j] < cutoffs[j]) break;
          occ[j] = 0;
        }
      }
      const cplx v = term[idx];
      if (v == cplx(0.0)) continue;
      for (const auto& pr : pairs) {
        if (pr.i == pr.j) {
          if (occ[pr.i] + 2 >= cutoffs[pr.i]) continue;
          const double f = std::sqrt((occ[pr.i] + 1.0) * (occ[pr.i] + 2.0));
          next[idx + 2 * stride[pr.i]] += pr.g * f * v;
        } else {
          if (occ[pr.i] + 1 >= cutoffs[pr.i] || occ[pr.j] + 1 >= cutoffs[pr.j]) continue;
          const double f = std::sqrt((occ[pr.i] + 1.0) * (occ[pr.j] + 1.0));
          next[idx + stride[pr.i] + stride[pr.j]] += pr.g * f * v;
        }
      }
    }
    for (std::size_t idx = 0; idx < dim; ++idx) {
      next[idx] /= static_cast<double>(k);
      if (next[idx] != cplx(0.0)) any = true;
      out.data[idx] += next[idx];
    }
    if (!any) break;
    std::swap(term, next);
  }
  return out;
}

CoefficientBlock dense_projected_tensor(const LocalGaussianSpec& spec, const KeptBasis& left, const KeptBasis& right,
                                        int d) {
  if (left.n_e() != spec.n_in || right.n_e() != spec.n_out)
    throw Error(ErrorCode::DimensionMismatch, "kept bases do not match the local map");
  std::vector<int> cut;
  for (int q = 0; q < left.n_e(); ++q) cut.push_back(static_cast<int>(left.max_occupation(q)) + 1);
  cut.push_back(d);
  for (int q = 0; q < right.n_e(); ++q) cut.push_back(static_cast<int>(right.max_occupation(q)) + 1);
  const DenseFockState psi = fock_expand(spec.q_matrix.q_matrix, cut);

  CoefficientBlock c(left.dim(), d, right.dim());
  std::vector<int> occ(cut.size());
  for (int a = 0; a < left.dim(); ++a) {
    auto ol = left.occupation(a);
    for (int q = 0; q < left.n_e(); ++q) occ[q] = static_cast<int>(ol[q]);
    for (int p = 0; p < d; ++p) {
      occ[left.n_e()] = p;
      for (int b = 0; b < right.dim(); ++b) {
        auto orr = right.occupation(b);
        for (int q = 0; q < right.n_e(); ++q) occ[left.n_e() + 1 + q] = static_cast<int>(orr[q]);
        c.at(a, p, b) = psi.amplitude(occ);
      }
    }
  }
  return c;
}

}  // namespace bogomps::oracle

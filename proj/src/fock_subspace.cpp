#include "bogomps/fock_subspace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <unordered_set>

#include "bogomps/error.hpp"

namespace bogomps {

std::size_t OccupationHash::operator()(const std::vector<std::uint32_t>& v) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint32_t x : v) {
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

KeptBasis::KeptBasis(int n_e, std::vector<std::uint32_t> occupations, std::vector<double> energies)
    : n_e_(n_e), occ_(std::move(occupations)), energies_(std::move(energies)), max_occ_(n_e, 0) {
  const int d = dim();
  if (occ_.size() != static_cast<std::size_t>(d) * n_e_) throw Error(ErrorCode::ShapeMismatch, "occupation table size");
  index_.reserve(d);
  for (int b = 0; b < d; ++b) {
    auto o = occupation(b);
    for (int q = 0; q < n_e_; ++q) max_occ_[q] = std::max(max_occ_[q], o[q]);
    index_.emplace(std::vector<std::uint32_t>(o.begin(), o.end()), b);
  }
}

int KeptBasis::find(const std::vector<std::uint32_t>& occ) const {
  auto it = index_.find(occ);
  return it == index_.end() ? -1 : it->second;
}

double occupation_energy(const BondSpectrum& spec, std::span<const std::uint32_t> occ) {
  double e = 0.0;
  for (std::size_t q = 0; q < occ.size(); ++q) e += occ[q] * spec.energies_unit[q];
  return e;
}

bool basis_order_less(double e_a, std::span<const std::uint32_t> a, double e_b, std::span<const std::uint32_t> b) {
  if (e_a != e_b) return e_a < e_b;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

namespace {

struct Node {
  double energy;
  std::vector<std::uint32_t> occ;
};

struct NodeAfter {
  bool operator()(const Node& x, const Node& y) const { return basis_order_less(y.energy, y.occ, x.energy, x.occ); }
};

// Best-first walk over the occupation lattice; stop(k, weight_sum) ends it after k states.
template <class Stop>
KeptBasis best_first(const BondSpectrum& spec, Stop stop) {
  const int ne = spec.n_e();
  if (ne == 0) return KeptBasis(0, {}, {0.0});
  for (double l : spec.lambdas)
    if (!(l > 0.0 && l < 1.0)) throw Error(ErrorCode::InvalidArgument, "squeezing parameters must lie in (0,1)");
  double log_z0 = 0.0;
  for (double l : spec.lambdas) log_z0 += std::log1p(-l * l);

  std::priority_queue<Node, std::vector<Node>, NodeAfter> frontier;
  std::unordered_set<std::vector<std::uint32_t>, OccupationHash> seen;
  std::vector<std::uint32_t> occ;
  std::vector<double> energies;
  frontier.push({0.0, std::vector<std::uint32_t>(ne, 0)});
  seen.insert(frontier.top().occ);
  double weight = 0.0;
  while (!frontier.empty()) {
    Node top = frontier.top();
    frontier.pop();
    occ.insert(occ.end(), top.occ.begin(), top.occ.end());
    energies.push_back(top.energy);
    weight += std::exp(log_z0 - top.energy);
    if (stop(energies.size(), weight)) break;
    for (int q = 0; q < ne; ++q) {
      Node next{0.0, top.occ};
      ++next.occ[q];
      if (!seen.insert(next.occ).second) continue;
      next.energy = occupation_energy(spec, next.occ);
      frontier.push(std::move(next));
    }
  }
  return KeptBasis(ne, std::move(occ), std::move(energies));
}

}  // namespace

KeptBasis kept_basis(const BondSpectrum& spec, int d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "bond dimension must be >= 1");
  return best_first(spec, [d](std::size_t k, double) { return k >= static_cast<std::size_t>(d); });
}

KeptBasis kept_basis_for_error(const BondSpectrum& spec, double eps_target, int d_max) {
  if (d_max < 1) throw Error(ErrorCode::InvalidArgument, "bond dimension cap must be >= 1");
  return best_first(spec, [&](std::size_t k, double w) {
    return k >= static_cast<std::size_t>(d_max) || 1.0 - w <= eps_target;
  });
}

namespace {

// Probability mass outside the kept states whose occupations in modes < q match the range's common prefix.
double discarded_mass(const KeptBasis& basis, const BondSpectrum& spec, const std::vector<int>& order, std::size_t lo,
                      std::size_t hi, int q) {
  if (q == basis.n_e()) return lo < hi ? 0.0 : 1.0;
  const double log_l2 = 2.0 * std::log(spec.lambdas[q]);
  const double log_norm = std::log1p(-spec.lambdas[q] * spec.lambdas[q]);
  double total = 0.0;
  std::int64_t next = 0;
  for (std::size_t i = lo; i < hi;) {
    const std::uint32_t k = basis.occupation(order[i])[q];
    std::size_t j = i;
    while (j < hi && basis.occupation(order[j])[q] == k) ++j;
    for (; next < k; ++next) total += std::exp(log_norm + next * log_l2);
    total += std::exp(log_norm + k * log_l2) * discarded_mass(basis, spec, order, i, j, q + 1);
    next = static_cast<std::int64_t>(k) + 1;
    i = j;
  }
  return total + std::exp(next * log_l2);
}

}  // namespace

double truncation_error(const KeptBasis& basis, const BondSpectrum& spec) {
  if (spec.n_e() == 0) return 0.0;
  std::vector<int> order(basis.dim());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    auto x = basis.occupation(a), y = basis.occupation(b);
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
  });
  const double eps = discarded_mass(basis, spec, order, 0, order.size(), 0);
  return std::clamp(eps, 0.0, std::nextafter(1.0, 0.0));
}

namespace {

double log_ladder_weight(std::uint32_t n_out, std::uint32_t n_in) {
  return 0.5 * (std::lgamma(n_out + 1.0) - std::lgamma(n_in + 1.0));
}

}  // namespace

VectorSet build_vector_set(const KeptBasis& basis, int q) {
  if (q < 0 || q >= basis.n_e()) throw Error(ErrorCode::InvalidArgument, "mode index out of range");
  VectorSet vs;
  vs.mode = q;
  std::vector<std::uint32_t> probe(basis.n_e());
  for (int beta = basis.dim() - 1; beta >= 0; --beta) {
    auto o = basis.occupation(beta);
    std::copy(o.begin(), o.end(), probe.begin());
    for (std::uint32_t k = 1; k <= o[q]; ++k) {
      probe[q] = o[q] - k;
      const int alpha = basis.find(probe);
      if (alpha < 0) continue;
      vs.v_in.push_back(static_cast<std::uint32_t>(alpha));
      vs.v_out.push_back(static_cast<std::uint32_t>(beta));
      vs.v_ord.push_back(k);
      vs.log_weight.push_back(log_ladder_weight(o[q], o[q] - k));
    }
  }
  return vs;
}

VectorSet compose_vector_sets(const VectorSet& a, const VectorSet& b) {
  if (a.mode == b.mode || a.mode2 >= 0 || b.mode2 >= 0)
    throw Error(ErrorCode::ModeCollision, "composition needs two distinct single-mode sets");
  VectorSet out;
  out.mode = a.mode;
  out.mode2 = b.mode;
  if (a.size() == 0 || b.size() == 0) return out;
  std::unordered_map<std::uint64_t, std::size_t> by_out;
  by_out.reserve(a.size());
  for (std::size_t l = 0; l < a.size(); ++l)
    by_out.emplace((static_cast<std::uint64_t>(a.v_out[l]) << 32) | a.v_ord[l], l);
  for (std::size_t r = 0; r < b.size(); ++r) {
    auto it = by_out.find((static_cast<std::uint64_t>(b.v_in[r]) << 32) | b.v_ord[r]);
    if (it == by_out.end()) continue;
    const std::size_t l = it->second;
    out.v_in.push_back(a.v_in[l]);
    out.v_out.push_back(b.v_out[r]);
    out.v_ord.push_back(b.v_ord[r]);
    out.log_weight.push_back(a.log_weight[l] + b.log_weight[r]);
  }
  return out;
}

std::size_t vector_set_total_length(const KeptBasis& basis) {
  std::size_t total = 0;
  for (int q = 0; q < basis.n_e(); ++q) total += build_vector_set(basis, q).size();
  return total;
}

}  // namespace bogomps

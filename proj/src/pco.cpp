#include "bogomps/pco.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "bogomps/error.hpp"
#include "bogomps/kernels.hpp"

namespace bogomps {

const char* pco_kind_name(PcoKind kind) {
  switch (kind) {
    case PcoKind::Cross: return "cross";
    case PcoKind::IntraLeft: return "intra-left";
    case PcoKind::IntraRight: return "intra-right";
    case PcoKind::DuplicateLeft: return "duplicate-left";
    case PcoKind::DuplicateRight: return "duplicate-right";
    case PcoKind::PhysicalCrossLeft: return "physical-cross-left";
    case PcoKind::PhysicalCrossRight: return "physical-cross-right";
    case PcoKind::PhysicalDuplicate: return "physical-duplicate";
  }
  return "unknown";
}

std::vector<PcoDescriptor> classify_pcos(const LocalGaussianSpec& spec, const KeptBasis& left, const KeptBasis& right,
                                         int d) {
  if (left.n_e() != spec.n_in || right.n_e() != spec.n_out)
    throw Error(ErrorCode::DimensionMismatch, "kept bases do not match the local map's virtual mode counts");
  const int nm = spec.n_modes();
  if (spec.q_matrix.q_matrix.rows() != nm || spec.q_matrix.q_matrix.cols() != nm)
    throw Error(ErrorCode::DimensionMismatch, "pairing matrix size");
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "local dimension must be >= 1");
  const int phys = spec.n_in;
  enum Side { L, P, R };
  auto side = [&](int z) { return z < phys ? L : (z == phys ? P : R); };
  auto top = [&](int z) -> int {
    switch (side(z)) {
      case L: return static_cast<int>(left.max_occupation(z));
      case P: return d - 1;
      default: return static_cast<int>(right.max_occupation(z - phys - 1));
    }
  };
  std::vector<PcoDescriptor> out;
  for (int z = 0; z < nm; ++z) {
    for (int z2 = z; z2 < nm; ++z2) {
      const cplx g = spec.q_matrix.q_matrix(z, z2);
      if (std::abs(g) < kPcoStrengthThreshold) continue;
      const int order = (z == z2) ? top(z) / 2 : std::min(top(z), top(z2));
      if (order < 1) continue;
      const Side s1 = side(z), s2 = side(z2);
      PcoKind kind;
      if (s1 == L && s2 == L) kind = (z == z2) ? PcoKind::DuplicateLeft : PcoKind::IntraLeft;
      else if (s1 == R && s2 == R) kind = (z == z2) ? PcoKind::DuplicateRight : PcoKind::IntraRight;
      else if (s1 == L && s2 == R) kind = PcoKind::Cross;
      else if (s1 == L && s2 == P) kind = PcoKind::PhysicalCrossLeft;
      else if (s1 == P && s2 == R) kind = PcoKind::PhysicalCrossRight;
      else kind = PcoKind::PhysicalDuplicate;
      out.push_back({kind, z, z2, g, order});
    }
  }
  return out;
}

namespace {

// Row transition list: row out += coef · row in.
struct RowOps {
  std::vector<std::uint32_t> out, in;
  std::vector<cplx> coef;
};

// g^k/k!·e^{log_w}, formed in the log domain so huge ladder weights meet tiny powers safely.
cplx series_coef(cplx g, int k, double log_w) {
  if (g == cplx(0.0)) return 0.0;
  return std::polar(std::exp(k * std::log(std::abs(g)) - std::lgamma(k + 1.0) + log_w), k * std::arg(g));
}

double log_falling_sqrt(int p, int k) {  // log √(p!/(p-k)!)
  return 0.5 * (std::lgamma(p + 1.0) - std::lgamma(p - k + 1.0));
}

RowOps pair_ops(const VectorSet& vs, cplx g) {
  RowOps ops;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    ops.out.push_back(vs.v_out[i]);
    ops.in.push_back(vs.v_in[i]);
    ops.coef.push_back(series_coef(g, static_cast<int>(vs.v_ord[i]), vs.log_weight[i]));
  }
  return ops;
}

RowOps duplicate_ops(const VectorSet& vs, cplx g) {
  RowOps ops;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs.v_ord[i] % 2 != 0) continue;
    ops.out.push_back(vs.v_out[i]);
    ops.in.push_back(vs.v_in[i]);
    ops.coef.push_back(series_coef(0.5 * g, static_cast<int>(vs.v_ord[i] / 2), vs.log_weight[i]));
  }
  return ops;
}

// Entries of one vector set split by κ, each group keeping the descending-out order.
// Weights are stored as e^{log_w - log_scale[κ]} <= 1.
struct KappaGroups {
  std::vector<std::vector<std::uint32_t>> out, in;
  std::vector<std::vector<double>> w;
  std::vector<double> log_scale;
  int kmax() const { return static_cast<int>(out.size()) - 1; }
};

KappaGroups group_by_order(const VectorSet& vs) {
  KappaGroups g;
  std::uint32_t kmax = 0;
  for (auto k : vs.v_ord) kmax = std::max(kmax, k);
  g.out.resize(kmax + 1);
  g.in.resize(kmax + 1);
  g.w.resize(kmax + 1);
  g.log_scale.assign(kmax + 1, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < vs.size(); ++i) g.log_scale[vs.v_ord[i]] = std::max(g.log_scale[vs.v_ord[i]], vs.log_weight[i]);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto k = vs.v_ord[i];
    g.out[k].push_back(vs.v_out[i]);
    g.in[k].push_back(vs.v_in[i]);
    g.w[k].push_back(std::exp(vs.log_weight[i] - g.log_scale[k]));
  }
  return g;
}

// Left-side row ops of a cross PCO; each coefficient absorbs the right group's scale.
struct CrossOps {
  RowOps left;
  std::vector<std::uint32_t> ord;
};

CrossOps cross_ops(const VectorSet& vs_left, cplx g, const KappaGroups& right) {
  CrossOps c;
  for (std::size_t i = 0; i < vs_left.size(); ++i) {
    const auto k = vs_left.v_ord[i];
    if (static_cast<int>(k) > right.kmax() || right.out[k].empty()) continue;
    c.left.out.push_back(vs_left.v_out[i]);
    c.left.in.push_back(vs_left.v_in[i]);
    c.left.coef.push_back(series_coef(g, static_cast<int>(k), vs_left.log_weight[i] + right.log_scale[k]));
    c.ord.push_back(k);
  }
  return c;
}

std::vector<char> live_rows(const cplx* m, std::size_t rows, std::size_t cols) {
  std::vector<char> live(rows, 0);
  for (std::size_t r = 0; r < rows; ++r)
    live[r] = std::any_of(m + r * cols, m + (r + 1) * cols, [](cplx z) { return z != cplx(0.0); });
  return live;
}

// Rows that start out zero are skipped: far rows can carry coefficients past the double range.
std::uint64_t apply_rows(cplx* m, std::size_t rows, std::size_t cols, const RowOps& ops) {
  const auto& k = kernels::active();
  const std::vector<char> live = live_rows(m, rows, cols);
  std::uint64_t n = 0;
  for (std::size_t i = 0; i < ops.out.size(); ++i) {
    if (!live[ops.in[i]]) continue;
    k.axpy(m + ops.out[i] * cols, m + ops.in[i] * cols, ops.coef[i], cols);
    n += cols;
  }
  return n;
}

// Left ops carry the full coefficient; right groups supply the column gather.
std::uint64_t apply_cross(cplx* m, std::size_t rows, std::size_t cols, const CrossOps& c, const KappaGroups& right) {
  const auto& k = kernels::active();
  const std::vector<char> live = live_rows(m, rows, cols);
  std::uint64_t ops = 0;
  for (std::size_t i = 0; i < c.left.out.size(); ++i) {
    if (!live[c.left.in[i]]) continue;
    const auto kap = c.ord[i];
    const auto n = right.out[kap].size();
    k.indexed_axpy(m + c.left.out[i] * cols, m + c.left.in[i] * cols, right.out[kap].data(), right.in[kap].data(),
                   right.w[kap].data(), c.left.coef[i], n);
    ops += n;
  }
  return ops;
}

void transpose(const cplx* src, cplx* dst, std::size_t rows, std::size_t cols) {
  using RowMajor = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<RowMajor>(dst, cols, rows) = Eigen::Map<const RowMajor>(src, rows, cols).transpose();
}

std::uint64_t apply_rows_right(CoefficientBlock& c, const RowOps& ops) {
  std::vector<cplx> t(c.sector_size());
  std::uint64_t n = 0;
  for (std::size_t p = 0; p < c.d(); ++p) {
    transpose(c.sector(p), t.data(), c.dl(), c.dr());
    n += apply_rows(t.data(), c.dr(), c.dl(), ops);
    transpose(t.data(), c.sector(p), c.dr(), c.dl());
  }
  return n;
}

std::uint64_t apply_rows_left(CoefficientBlock& c, const RowOps& ops) {
  std::uint64_t n = 0;
  for (std::size_t p = 0; p < c.d(); ++p) n += apply_rows(c.sector(p), c.dl(), c.dr(), ops);
  return n;
}

bool is_left_kind(PcoKind k) { return k == PcoKind::IntraLeft || k == PcoKind::DuplicateLeft; }
bool is_right_kind(PcoKind k) { return k == PcoKind::IntraRight || k == PcoKind::DuplicateRight; }
bool is_physical_kind(PcoKind k) {
  return k == PcoKind::PhysicalCrossLeft || k == PcoKind::PhysicalCrossRight || k == PcoKind::PhysicalDuplicate;
}

}  // namespace

std::uint64_t apply_cross_pco(CoefficientBlock& c, const PcoDescriptor& desc, const VectorSet& vs_left,
                              const VectorSet& vs_right) {
  if (desc.kind != PcoKind::Cross) throw Error(ErrorCode::InvalidArgument, "descriptor is not cross-type");
  const KappaGroups right = group_by_order(vs_right);
  const CrossOps ops = cross_ops(vs_left, desc.g, right);
  std::uint64_t n = 0;
  for (std::size_t p = 0; p < c.d(); ++p) n += apply_cross(c.sector(p), c.dl(), c.dr(), ops, right);
  return n;
}

std::uint64_t apply_intra_pco(CoefficientBlock& c, const PcoDescriptor& desc, const VectorSet& composed) {
  const RowOps ops = pair_ops(composed, desc.g);
  if (desc.kind == PcoKind::IntraLeft) return apply_rows_left(c, ops);
  if (desc.kind == PcoKind::IntraRight) return apply_rows_right(c, ops);
  throw Error(ErrorCode::InvalidArgument, "descriptor is not intra-type");
}

std::uint64_t apply_duplicate_pco(CoefficientBlock& c, const PcoDescriptor& desc, const VectorSet& vs) {
  const RowOps ops = duplicate_ops(vs, desc.g);
  if (desc.kind == PcoKind::DuplicateLeft) return apply_rows_left(c, ops);
  if (desc.kind == PcoKind::DuplicateRight) return apply_rows_right(c, ops);
  throw Error(ErrorCode::InvalidArgument, "descriptor is not duplicate-type");
}

std::uint64_t apply_physical_pcos(CoefficientBlock& c, const std::vector<PcoDescriptor>& descs,
                                  const std::vector<VectorSet>& left_sets, const std::vector<VectorSet>& right_sets,
                                  int d) {
  if (static_cast<int>(c.d()) != d) throw Error(ErrorCode::DimensionMismatch, "physical dimension");
  const auto& k = kernels::active();
  const int n_in = static_cast<int>(left_sets.size());
  const std::size_t dl = c.dl(), dr = c.dr(), sz = c.sector_size();
  std::uint64_t ops = 0;
  for (const auto& desc : descs) {
    switch (desc.kind) {
      case PcoKind::PhysicalDuplicate: {
        for (int p = d - 1; p >= 2; --p)
          for (int j = 1; 2 * j <= p; ++j) {
            k.axpy(c.sector(p), c.sector(p - 2 * j), series_coef(0.5 * desc.g, j, log_falling_sqrt(p, 2 * j)), sz);
            ops += sz;
          }
        break;
      }
      case PcoKind::PhysicalCrossLeft: {
        const VectorSet& vs = left_sets.at(desc.zeta);
        for (int p = d - 1; p >= 1; --p)
          for (std::size_t i = 0; i < vs.size(); ++i) {
            const int kap = static_cast<int>(vs.v_ord[i]);
            if (kap > p) continue;
            k.axpy(c.sector(p) + vs.v_out[i] * dr, c.sector(p - kap) + vs.v_in[i] * dr,
                   series_coef(desc.g, kap, vs.log_weight[i] + log_falling_sqrt(p, kap)), dr);
            ops += dr;
          }
        break;
      }
      case PcoKind::PhysicalCrossRight: {
        const VectorSet& vs = right_sets.at(desc.zeta2 - n_in - 1);
        const KappaGroups groups = group_by_order(vs);
        for (int p = d - 1; p >= 1; --p)
          for (int kap = 1; kap <= std::min(p, groups.kmax()); ++kap) {
            const auto n = groups.out[kap].size();
            if (n == 0) continue;
            const cplx a = series_coef(desc.g, kap, log_falling_sqrt(p, kap) + groups.log_scale[kap]);
            for (std::size_t row = 0; row < dl; ++row)
              k.indexed_axpy(c.sector(p) + row * dr, c.sector(p - kap) + row * dr, groups.out[kap].data(),
                             groups.in[kap].data(), groups.w[kap].data(), a, n);
            ops += n * dl;
          }
        break;
      }
      default: throw Error(ErrorCode::InvalidArgument, "non-physical descriptor passed to apply_physical_pcos");
    }
  }
  return ops;
}

namespace {

// Everything one p-sector needs for its virtual-only stage.
struct VirtualPlan {
  std::vector<RowOps> left_ops;                       // left-acting, row ops on the sector
  std::vector<CrossOps> cross_left;
  std::vector<const KappaGroups*> cross_right;
  std::vector<RowOps> right_ops;                      // row ops on the transposed sector
};

}  // namespace

CoefficientBlock build_local_tensor(const LocalGaussianSpec& spec, const KeptBasis& left, const KeptBasis& right,
                                    int d, const BuildOptions& opts, BuildStats* stats) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto descs = classify_pcos(spec, left, right, d);
  const int n_in = spec.n_in;

  std::vector<VectorSet> left_sets, right_sets;
  for (int q = 0; q < left.n_e(); ++q) left_sets.push_back(build_vector_set(left, q));
  for (int q = 0; q < right.n_e(); ++q) right_sets.push_back(build_vector_set(right, q));
  std::vector<KappaGroups> right_groups;
  for (const auto& vs : right_sets) right_groups.push_back(group_by_order(vs));

  CoefficientBlock c = CoefficientBlock::vacuum(left.dim(), d, right.dim());
  std::uint64_t ops = 0;

  std::vector<PcoDescriptor> physical;
  VirtualPlan plan;
  for (const auto& desc : descs) {
    if (is_physical_kind(desc.kind)) {
      physical.push_back(desc);
    } else if (desc.kind == PcoKind::Cross) {
      const KappaGroups& rg = right_groups[desc.zeta2 - n_in - 1];
      plan.cross_left.push_back(cross_ops(left_sets[desc.zeta], desc.g, rg));
      plan.cross_right.push_back(&rg);
    } else if (is_left_kind(desc.kind)) {
      if (desc.kind == PcoKind::DuplicateLeft) plan.left_ops.push_back(duplicate_ops(left_sets[desc.zeta], desc.g));
      else plan.left_ops.push_back(pair_ops(compose_vector_sets(left_sets[desc.zeta], left_sets[desc.zeta2]), desc.g));
    } else if (is_right_kind(desc.kind)) {
      const int q = desc.zeta - n_in - 1, q2 = desc.zeta2 - n_in - 1;
      if (desc.kind == PcoKind::DuplicateRight) plan.right_ops.push_back(duplicate_ops(right_sets[q], desc.g));
      else plan.right_ops.push_back(pair_ops(compose_vector_sets(right_sets[q], right_sets[q2]), desc.g));
    }
  }

  ops += apply_physical_pcos(c, physical, left_sets, right_sets, d);

  const std::size_t dl = c.dl(), dr = c.dr();
  std::atomic<std::uint64_t> sector_ops{0};
  auto run_sector = [&](std::size_t p) {
    std::uint64_t n = 0;
    cplx* s = c.sector(p);
    for (const auto& o : plan.left_ops) n += apply_rows(s, dl, dr, o);
    for (std::size_t i = 0; i < plan.cross_left.size(); ++i)
      n += apply_cross(s, dl, dr, plan.cross_left[i], *plan.cross_right[i]);
    if (!plan.right_ops.empty()) {
      std::vector<cplx> t(c.sector_size());
      transpose(s, t.data(), dl, dr);
      for (const auto& o : plan.right_ops) n += apply_rows(t.data(), dr, dl, o);
      transpose(t.data(), s, dr, dl);
    }
    sector_ops += n;
  };
  const int workers = std::max(1, std::min<int>(opts.threads, d));
  if (workers == 1) {
    for (std::size_t p = 0; p < static_cast<std::size_t>(d); ++p) run_sector(p);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t p; (p = next++) < static_cast<std::size_t>(d);) run_sector(p);
      });
    for (auto& th : pool) th.join();
  }
  ops += sector_ops.load();

  for (const cplx& x : c.data())
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()) || std::abs(x) > 1e100)
      throw Error(ErrorCode::Overflow, "tensor coefficient exceeds 1e100 at site " + std::to_string(spec.site_index));

  if (stats) {
    stats->update_ops = ops;
    stats->n_pcos = descs.size();
    stats->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return c;
}

}  // namespace bogomps

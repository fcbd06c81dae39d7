#include "bogomps/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "bogomps/bench.hpp"
#include "bogomps/convert.hpp"
#include "bogomps/error.hpp"
#include "bogomps/io.hpp"
#include "bogomps/purifier.hpp"
#include "bogomps/synth.hpp"

namespace bogomps::cli {

namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSymmetric:
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::Unphysical:
    case ErrorCode::ImpureResidual:
    case ErrorCode::ParseError:
    case ErrorCode::ShapeMismatch:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::OccupationOutOfRange:
      return kValidation;
    case ErrorCode::InvalidArgument:
      return kUsage;
    default:
      return kNumerical;
  }
}

std::ofstream open_csv(const std::string& path, const std::string& command) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  f << io::csv_banner(command) << '\n';
  return f;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  const auto dots = s.find("..");
  if (dots != std::string::npos) {
    const int a = std::stoi(s.substr(0, dots)), b = std::stoi(s.substr(dots + 2));
    if (b < a) throw Error(ErrorCode::InvalidArgument, "empty range '" + s + "'");
    for (int v = a; v <= b; ++v) out.push_back(v);
    return out;
  }
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

int threads_default() {
  if (const char* env = std::getenv("BOGOMPS_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

struct GenArgs {
  int modes = 0;
  std::vector<double> squeezers;
  std::optional<std::uint64_t> seed;
  double eta = 1.0;
  std::string out;
};

struct PurifyArgs {
  std::string in, out, trace;
  double tol = -1.0;
  int max_iters = 5000;
};

struct ConvertArgs {
  std::string in, out, stats;
  int bond_dim = 64;
  double eps = -1.0;
  int local_dim = 4;
  double dstar = kDefaultDStar;
  int threads = 1;
  int max_bond_modes = 64;
};

struct BenchArgs {
  std::vector<std::string> scans;
  std::string in, out;
  int site = kBenchSite;
  int repeat = 3;
};

int cmd_gen(const GenArgs& a, std::ostream& out) {
  const auto g = synthetic_gbs(a.modes, a.squeezers, a.seed, a.eta);
  io::write_cov_file(a.out, g.matrix());
  out << "wrote " << a.out << " (" << a.modes << " modes, mean photon number "
      << io::format_double(mean_photon_number(g.matrix())) << ")\n";
  return kOk;
}

int cmd_purify(const PurifyArgs& a, std::ostream& out, std::ostream& err) {
  const auto g = validate_covariance(io::read_cov_file(a.in));
  PurifyOptions opts;
  opts.tol_loss = a.tol;
  opts.max_iters = a.max_iters;
  const auto res = purify(g, opts);
  io::write_cov_file(a.out, res.gamma_p.matrix());
  if (!a.trace.empty()) {
    auto f = open_csv(a.trace, "purify");
    f << "iteration,loss,n_eff\n";
    for (const auto& r : res.loss_trace)
      f << r.iteration << ',' << io::format_double(r.loss) << ',' << io::format_double(r.n_eff) << '\n';
  }
  out << "n_eff " << io::format_double(res.n_eff) << " iterations " << res.loss_trace.back().iteration
      << " converged " << (res.converged ? "yes" : "no") << '\n';
  if (!res.converged) {
    err << "purify: did not converge within " << a.max_iters << " iterations (result written anyway)\n";
    return kNumerical;
  }
  return kOk;
}

int cmd_convert(const ConvertArgs& a, std::ostream& out) {
  const auto g = validate_covariance(io::read_cov_file(a.in));
  if (!is_pure(g, 1e-7))
    throw Error(ErrorCode::ImpureResidual, "input covariance is mixed; run 'bogomps purify' first and convert its output");
  ConvertOptions opts;
  opts.bond_dim = a.bond_dim;
  opts.eps = a.eps;
  opts.local_dim = a.local_dim;
  opts.d_star = a.dstar;
  opts.threads = a.threads;
  opts.max_bond_modes = a.max_bond_modes;
  const auto conv = convert(g, opts);
  io::write_mps_file(a.out, conv.mps);
  if (!a.stats.empty()) {
    auto f = open_csv(a.stats, "convert");
    f << "# policy " << (a.eps >= 0.0 ? "fixed-eps " + io::format_double(a.eps) : "fixed-D") << " D "
      << a.bond_dim << " d " << a.local_dim << '\n';
    f << "site,n_e,eps_m,build_seconds,update_ops\n";
    for (const auto& s : conv.stats)
      f << s.site << ',' << s.n_e << ',' << io::format_double(s.eps) << ',' << io::format_double(s.build_seconds)
        << ',' << s.update_ops << '\n';
  }
  out << "wrote " << a.out << " max_eps " << io::format_double(conv.mps.max_eps()) << " log_norm "
      << io::format_double(conv.mps.global_log_norm) << '\n';
  return kOk;
}

int cmd_amp(const std::string& in, const std::string& pattern, std::ostream& out) {
  const Mps psi = io::read_mps_file(in);
  std::vector<int> occ;
  std::stringstream ss(pattern);
  std::string tok;
  while (std::getline(ss, tok, ',')) occ.push_back(std::stoi(tok));
  const cplx a = amplitude(psi, occ);
  out << io::format_double(a.real()) << ' ' << io::format_double(a.imag()) << ' ' << io::format_double(std::norm(a))
      << '\n';
  return kOk;
}

int cmd_sample(const std::string& in, std::uint64_t seed, std::size_t n, const std::string& path, std::ostream& out) {
  const Mps psi = io::read_mps_file(in);
  const auto samples = sample(psi, seed, n);
  std::ofstream file;
  if (!path.empty()) {
    file.open(path);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  }
  std::ostream& os = path.empty() ? out : file;
  for (const auto& s : samples) {
    for (std::size_t j = 0; j < s.size(); ++j) os << (j ? " " : "") << s[j];
    os << '\n';
  }
  return kOk;
}

int cmd_fidelity(const std::string& a, const std::string& b, std::ostream& out) {
  out << io::format_double(fidelity(io::read_mps_file(a), io::read_mps_file(b))) << '\n';
  return kOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  std::vector<int> ds{4}, bds{500};
  for (const auto& s : a.scans) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "scan must look like d=4..10 or D=300,500");
    const std::string key = s.substr(0, eq);
    if (key == "d") ds = parse_int_list(s.substr(eq + 1));
    else if (key == "D") bds = parse_int_list(s.substr(eq + 1));
    else throw Error(ErrorCode::InvalidArgument, "unknown scan axis '" + key + "'");
  }
  const CovarianceMatrix g = a.in.empty() ? bench_state() : validate_covariance(io::read_cov_file(a.in));
  const auto decomp = decompose_chain(g);
  const auto rep = run_bench(decomp, a.site, ds, bds, a.repeat);
  std::ofstream file;
  if (!a.out.empty()) file = open_csv(a.out, "bench");
  std::ostream& os = a.out.empty() ? out : static_cast<std::ostream&>(file);
  os << "d,D,mean_seconds,stddev_seconds,repeats,update_ops\n";
  for (const auto& c : rep.cells)
    os << c.d << ',' << c.bond_dim << ',' << io::format_double(c.mean_seconds) << ','
       << io::format_double(c.stddev_seconds) << ',' << c.repeats << ',' << c.update_ops << '\n';
  for (const auto& f : rep.fits) {
    const std::string other = f.axis == "d" ? "D" : "d";
    os << "# fit exponent_" << f.axis << " at " << other << "=" << f.fixed_value << " : "
       << io::format_double(f.exponent) << '\n';
    if (!a.out.empty())
      out << "exponent in " << f.axis << " at " << other << "=" << f.fixed_value << ": " << f.exponent << '\n';
  }
  return kOk;
}

int cmd_validate(const std::string& in, std::ostream& out) {
  const RealMatrix raw = io::read_cov_file(in);
  const double scale = max_abs(raw);
  out << "modes " << raw.rows() / 2 << '\n';
  out << "asymmetry " << io::format_double(max_abs(RealMatrix(raw - raw.transpose()))) << " (relative "
      << io::format_double(max_abs(RealMatrix(raw - raw.transpose())) / scale) << ")\n";
  const RealMatrix sym = 0.5 * (raw + raw.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym, Eigen::EigenvaluesOnly);
  out << "min_eigenvalue " << io::format_double(es.eigenvalues()(0)) << '\n';
  CovarianceMatrix g = CovarianceMatrix::unchecked(RealMatrix());
  try {
    g = validate_covariance(raw);
  } catch (const Error& e) {
    out << "verdict invalid (" << e.what() << ")\n";
    return kValidation;
  }
  const auto d = symplectic_spectrum(g.matrix());
  out << "symplectic_spectrum";
  for (double x : d) out << ' ' << io::format_double(x);
  out << '\n';
  const bool pure = is_pure(g, 1e-7);
  out << "purity " << (pure ? "pure" : "mixed") << " (max |D-1| " << io::format_double(d.front() - 1.0) << ")\n";
  out << "mean_photon_number " << io::format_double(mean_photon_number(g.matrix())) << '\n';
  for (int k = 1; k < g.n_modes(); ++k) out << "entropy cut " << k << ' ' << io::format_double(reduced_entropy(g, k)) << '\n';
  out << "verdict valid\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian covariance matrices to matrix product states"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* sc_gen = app.add_subcommand("gen", "synthetic Gaussian boson sampling covariance");
  sc_gen->add_option("--modes", gen.modes, "number of modes")->required()->check(CLI::PositiveNumber);
  sc_gen->add_option("--squeezers", gen.squeezers, "squeezing parameters r1,r2,...")->delimiter(',');
  sc_gen->add_option("--interferometer-seed", gen.seed, "seed of the random interferometer (identity if omitted)");
  sc_gen->add_option("--loss", gen.eta, "transmissivity eta in [0,1]")->check(CLI::Range(0.0, 1.0));
  sc_gen->add_option("--out", gen.out, "output covariance file")->required();

  PurifyArgs pur;
  auto* sc_pur = app.add_subcommand("purify", "extract the pure Gaussian part of a mixed covariance");
  sc_pur->add_option("--in", pur.in)->required();
  sc_pur->add_option("--tol", pur.tol, "loss tolerance (default 1e-9·tr/N)");
  sc_pur->add_option("--max-iters", pur.max_iters)->check(CLI::NonNegativeNumber);
  sc_pur->add_option("--out", pur.out)->required();
  sc_pur->add_option("--trace", pur.trace, "loss trace CSV");

  ConvertArgs conv;
  conv.threads = threads_default();
  auto* sc_conv = app.add_subcommand("convert", "pure covariance to MPS");
  sc_conv->add_option("--in", conv.in)->required();
  sc_conv->add_option("--bond-dim", conv.bond_dim, "fixed bond dimension (cap when --eps is given)")
                   ->check(CLI::PositiveNumber);
  sc_conv->add_option("--eps", conv.eps, "per-bond truncation error target")->check(CLI::Range(0.0, 1.0));
  sc_conv->add_option("--local-dim", conv.local_dim, "Fock levels per mode")->check(CLI::PositiveNumber);
  sc_conv->add_option("--dstar", conv.dstar, "frozen-mode threshold on D")->check(CLI::Range(1.0, 1e300));
  sc_conv->add_option("--max-bond-modes", conv.max_bond_modes)->check(CLI::PositiveNumber);
  sc_conv->add_option("--threads", conv.threads, "worker threads (BOGOMPS_THREADS)")->check(CLI::PositiveNumber);
  sc_conv->add_option("--out", conv.out)->required();
  sc_conv->add_option("--stats", conv.stats, "per-site CSV");

  std::string amp_in, amp_pattern;
  auto* sc_amp = app.add_subcommand("amp", "amplitude of one occupation pattern");
  sc_amp->add_option("--in", amp_in)->required();
  sc_amp->add_option("--pattern", amp_pattern, "comma separated occupations")->required();

  std::string smp_in, smp_out;
  std::uint64_t smp_seed = 0;
  std::size_t smp_n = 1;
  auto* sc_smp = app.add_subcommand("sample", "seeded Born-rule samples");
  sc_smp->add_option("--in", smp_in)->required();
  sc_smp->add_option("--seed", smp_seed);
  sc_smp->add_option("--n", smp_n);
  sc_smp->add_option("--out", smp_out);

  std::string fa, fb;
  auto* sc_fid = app.add_subcommand("fidelity", "fidelity of two MPS files");
  sc_fid->add_option("--a", fa)->required();
  sc_fid->add_option("--b", fb)->required();

  BenchArgs bench;
  auto* sc_bench = app.add_subcommand("bench", "tensor build wall time over (d, D)");
  sc_bench->add_option("--scan", bench.scans, "d=4..10 or D=300,500,800,1000");
  sc_bench->add_option("--site", bench.site);
  sc_bench->add_option("--repeat", bench.repeat)->check(CLI::PositiveNumber);
  sc_bench->add_option("--in", bench.in, "covariance file (default: built-in 20-mode state)");
  sc_bench->add_option("--out", bench.out, "CSV output");

  std::string val_in;
  auto* sc_val = app.add_subcommand("validate", "covariance diagnostics");
  sc_val->add_option("--in", val_in)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*sc_gen) return cmd_gen(gen, out);
    if (*sc_pur) return cmd_purify(pur, out, err);
    if (*sc_conv) return cmd_convert(conv, out);
    if (*sc_amp) return cmd_amp(amp_in, amp_pattern, out);
    if (*sc_smp) return cmd_sample(smp_in, smp_seed, smp_n, smp_out, out);
    if (*sc_fid) return cmd_fidelity(fa, fb, out);
    if (*sc_bench) return cmd_bench(bench, out);
    if (*sc_val) return cmd_validate(val_in, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::invalid_argument& e) {
    err << "error: malformed number in arguments\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    err << "error: number out of range in arguments\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace bogomps::cli

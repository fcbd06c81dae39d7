#include "bogomps/io.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "bogomps/error.hpp"

namespace bogomps::io {

namespace {

double parse_double(const std::string& tok) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (tok.empty() || end != tok.c_str() + tok.size()) throw Error(ErrorCode::ParseError, "bad number '" + tok + "'");
  return v;
}

long parse_long(const std::string& tok) {
  char* end = nullptr;
  const long v = std::strtol(tok.c_str(), &end, 10);
  if (tok.empty() || end != tok.c_str() + tok.size()) throw Error(ErrorCode::ParseError, "bad integer '" + tok + "'");
  return v;
}

// Value of "key=value" in a whitespace-split header.
std::string field(std::istringstream& is, const std::string& key) {
  std::string tok;
  if (!(is >> tok) || tok.rfind(key + "=", 0) != 0) throw Error(ErrorCode::ParseError, "expected " + key + "=");
  return tok.substr(key.size() + 1);
}

void expect(std::istringstream& is, const std::string& word) {
  std::string tok;
  if (!(is >> tok) || tok != word) throw Error(ErrorCode::ParseError, "expected '" + word + "'");
}

std::string next_line(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::ParseError, "unexpected end of file");
  return line;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_cov(std::ostream& os, const RealMatrix& gamma) {
  os << "COV v1 modes=" << gamma.rows() / 2 << " convention=vacuum-half\n";
  for (Eigen::Index i = 0; i < gamma.rows(); ++i) {
    for (Eigen::Index j = 0; j < gamma.cols(); ++j) os << (j ? " " : "") << format_double(gamma(i, j));
    os << '\n';
  }
}

RealMatrix read_cov(std::istream& is) {
  std::istringstream head(next_line(is));
  expect(head, "COV");
  expect(head, "v1");
  const long n = parse_long(field(head, "modes"));
  if (field(head, "convention") != "vacuum-half") throw Error(ErrorCode::ParseError, "unsupported convention");
  if (n < 1) throw Error(ErrorCode::ParseError, "modes must be positive");
  RealMatrix g(2 * n, 2 * n);
  for (long i = 0; i < 2 * n; ++i) {
    std::istringstream row(next_line(is));
    std::string tok;
    for (long j = 0; j < 2 * n; ++j) {
      if (!(row >> tok)) throw Error(ErrorCode::ParseError, "row " + std::to_string(i) + " too short");
      g(i, j) = parse_double(tok);
    }
    if (row >> tok) throw Error(ErrorCode::ParseError, "row " + std::to_string(i) + " too long");
  }
  return g;
}

void write_mps(std::ostream& os, const Mps& psi) {
  psi.check_shapes();
  os << "MPS v1 modes=" << psi.n_sites() << " d=" << psi.phys_dim() << '\n';
  for (int m = 0; m < psi.n_sites(); ++m) {
    const auto& t = psi.tensors[m];
    const double eps = m + 1 < psi.n_sites() ? psi.eps_per_bond[m] : 0.0;
    os << "site " << m << " dl=" << t.dl() << " dr=" << t.dr() << " eps=" << format_double(eps) << '\n';
    for (std::size_t a = 0; a < t.dl(); ++a)
      for (std::size_t p = 0; p < t.d(); ++p)
        for (std::size_t b = 0; b < t.dr(); ++b) {
          const cplx v = t.at(a, p, b);
          os << format_double(v.real()) << ' ' << format_double(v.imag()) << '\n';
        }
  }
  os << "lognorm " << format_double(psi.global_log_norm) << '\n';
}

Mps read_mps(std::istream& is) {
  std::istringstream head(next_line(is));
  expect(head, "MPS");
  expect(head, "v1");
  const long n = parse_long(field(head, "modes"));
  const long d = parse_long(field(head, "d"));
  if (n < 1 || d < 1) throw Error(ErrorCode::ParseError, "modes and d must be positive");
  Mps psi;
  for (long m = 0; m < n; ++m) {
    std::istringstream sl(next_line(is));
    expect(sl, "site");
    std::string idx;
    sl >> idx;
    if (parse_long(idx) != m) throw Error(ErrorCode::ParseError, "site index out of order");
    const long dl = parse_long(field(sl, "dl"));
    const long dr = parse_long(field(sl, "dr"));
    const double eps = parse_double(field(sl, "eps"));
    if (dl < 1 || dr < 1) throw Error(ErrorCode::ParseError, "bond dimensions must be positive");
    CoefficientBlock t(dl, d, dr);
    for (long a = 0; a < dl; ++a)
      for (long p = 0; p < d; ++p)
        for (long b = 0; b < dr; ++b) {
          std::istringstream vl(next_line(is));
          std::string re, im;
          if (!(vl >> re >> im)) throw Error(ErrorCode::ParseError, "expected 're im'");
          t.at(a, p, b) = cplx(parse_double(re), parse_double(im));
        }
    psi.tensors.push_back(std::move(t));
    if (m + 1 < n) psi.eps_per_bond.push_back(eps);
  }
  std::istringstream tail(next_line(is));
  expect(tail, "lognorm");
  std::string v;
  tail >> v;
  psi.global_log_norm = parse_double(v);
  try {
    psi.check_shapes();
  } catch (const Error& e) {
    throw Error(ErrorCode::ParseError, e.detail());
  }
  return psi;
}

namespace {

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  return f;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  return f;
}

}  // namespace

void write_cov_file(const std::string& path, const RealMatrix& gamma) {
  auto f = open_out(path);
  write_cov(f, gamma);
}

RealMatrix read_cov_file(const std::string& path) {
  auto f = open_in(path);
  return read_cov(f);
}

void write_mps_file(const std::string& path, const Mps& psi) {
  auto f = open_out(path);
  write_mps(f, psi);
}

Mps read_mps_file(const std::string& path) {
  auto f = open_in(path);
  return read_mps(f);
}

std::string csv_banner(const std::string& command) {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return "# bogomps " + command + " " + buf;
}

}  // namespace bogomps::io

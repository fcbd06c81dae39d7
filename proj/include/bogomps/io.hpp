#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "bogomps/linalg.hpp"
#include "bogomps/mps.hpp"

namespace bogomps::io {

// "%.17g"
std::string format_double(double x);

void write_cov(std::ostream& os, const RealMatrix& gamma);
RealMatrix read_cov(std::istream& is);

void write_mps(std::ostream& os, const Mps& psi);
Mps read_mps(std::istream& is);

void write_cov_file(const std::string& path, const RealMatrix& gamma);
RealMatrix read_cov_file(const std::string& path);
void write_mps_file(const std::string& path, const Mps& psi);
Mps read_mps_file(const std::string& path);

// "# bogomps <command> <UTC timestamp>"
std::string csv_banner(const std::string& command);

}  // namespace bogomps::io

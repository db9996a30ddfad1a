#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace dshell::cli {

struct RunConfig {
  std::string command;
  double eta = 0.0, tau = 0.0, lambda = 0.0, m = 1.0;
  int q = 2;
  std::string curve = "circle:r=1";
  int n = 256;
  int zgrid = 400;
  double tol_bs = 1e-6, tol_conv = 1e-6, tol_jump = 1e-4;
  std::string out;
  std::string format = "json";
  bool quick = false;
  bool verify_only = false;
  bool corrupt_representation = false;  // test hook for verify
};

enum ExitCode { ok = 0, verification_failed = 1, usage_error = 2 };

// Parses argv, runs the command, writes the report to `out` and diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dshell::cli

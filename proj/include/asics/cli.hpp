#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "asics/sim.hpp"

namespace asics::cli {

enum ExitCode : int { ok = 0, selftest_failed = 1, usage = 2, numeric = 3 };

enum class Format { csv, json };

/// Columns of `simulate` output, in order.
inline constexpr const char* kSimulateHeader =
    "case,rho,d,n,method,k,pattern,alpha,rejection_rate,rejection_sd,fwer,power,separation_rate,runs,seed";

/// Columns of `analyze` output, in order.
inline constexpr const char* kAnalyzeHeader =
    "feature,z,sign,beta_hat,t_stat,lower,upper,p_selective,p_selective_adj,p_nominal,p_nominal_adj,flags";

struct AnalyzeConfig {
  std::string input_path;
  Eigen::Index k = 1;
  double alpha = 0.05;
  Format format = Format::csv;
  std::optional<std::string> out_path;
};

struct SimulateConfig {
  std::vector<Eigen::Index> n;
  std::vector<Eigen::Index> d;
  std::vector<double> rho;
  std::vector<BetaPattern> pattern;
  std::vector<Method> method;
  std::vector<Eigen::Index> k;
  int runs = 1000;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  unsigned threads = 1;
  Format format = Format::csv;
  std::optional<std::string> out_path;
};

/// One scenario per grid cell, ordered by (rho, d, n, method, k, pattern). Every cell
/// shares the master seed. Throws std::invalid_argument on an empty or invalid grid.
std::vector<SimScenario> expand_grid(const SimulateConfig& cfg);

int cmd_analyze(const AnalyzeConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_simulate(const SimulateConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_selftest(std::ostream& out, std::ostream& err);

/// Parses argv and dispatches. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace asics::cli

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 usage or input error. Data goes to stdout (or --output), diagnostics to
// stderr.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace plval::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kUsage = 2 };

struct RunConfig {
  std::string subcommand;
  std::string input;
  std::string kernel;
  std::string output;
  std::string profile_output;
  std::string summary_output;
  std::optional<int> n;
  std::optional<double> p;
  std::vector<double> q_list;
  std::string s_grid;
  std::uint64_t seed = 0;
  std::vector<std::string> suites;
  std::optional<double> tolerance;
  int threads = 1;
  bool timings = false;
};

/// Parses argv into a RunConfig and dispatches. Streams are injectable for
/// tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_polytope(const RunConfig& config, std::ostream& out);
int cmd_norms(const RunConfig& config, std::ostream& out);
int cmd_valuate(const RunConfig& config, std::ostream& out);
int cmd_recover(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

/// "start:stop:step" -> (start, stop, step). Throws Error{InvalidInput}.
struct GridSpec {
  double start, stop, step;
};
GridSpec parse_grid(const std::string& text);

}  // namespace plval::cli

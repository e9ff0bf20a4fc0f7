#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace superosc::cli {

enum ExitCode : int { kPass = 0, kCheckFailed = 1, kUsageError = 2 };

struct RunConfig {
  std::string command;
  std::string mode;  // intertwine pipeline or rep kind
  std::string algebra;
  double q = 1.3;
  int dim = 12;
  std::optional<int> headroom;
  std::optional<int> root_of_unity;
  double tolerance = 1e-10;
  std::uint64_t seed = 42;
  int trials = 100;
  std::optional<double> q1, q2, q3;
  bool negative_control = false;
  std::string g00 = "1";
  std::string alpha = "qM2i";
  std::vector<std::string> two_mode = {"1", "0", "0", "0"};
  std::optional<int> random_degree;
  bool uniqueness = false;
  bool include_primed = false;
  std::string kind = "symmetric";
  int n_max = 10;
  std::string out;
};

// Each writes one JSON document to `out` and returns the exit code.
int run_rep_build(const RunConfig& cfg, std::ostream& out);
int run_verify(const RunConfig& cfg, std::ostream& out);
int run_intertwine(const RunConfig& cfg, std::ostream& out);
int run_jacobi(const RunConfig& cfg, std::ostream& out);
int run_bracket(const RunConfig& cfg, std::ostream& out);

// Full command line: parsing, dispatch, --out handling and error mapping.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace superosc::cli

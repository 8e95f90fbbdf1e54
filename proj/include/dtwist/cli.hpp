#pragma once

#include <string>
#include <vector>

#include "dtwist/flow.hpp"

namespace dtwist::cli {

// Exit codes: 0 success, 1 check failed, 2 usage/parse error, 3 evaluation
// domain error.
enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kUsage = 2,
  kDomainError = 3,
};

struct RunConfig {
  std::string f_src;
  std::string g_src;
  Rect region{-1.0, 1.0, -1.0, 1.0};
  int grid = 21;
  double tol = 1e-9;
  double step = 1e-3;
  int steps = 1000;
  std::vector<Point> seeds;
  std::string format = "csv";  // csv | json
  std::string out;             // output path; empty = stdout
  std::string svg;             // leaves mode: optional SVG path

  // check / flow field selection
  std::string field = "canonical";  // canonical | custom (--a/--b)
  std::string a_src;
  std::string b_src;

  // flow
  std::string mode = "field";  // field | geodesic | leaves
  Point start{0.0, 0.0};
  TangentVector dir{0.0, 0.0};
  bool has_dir = false;
};

/// Throws std::invalid_argument when a RunConfig invariant is violated.
void validate_config(const RunConfig& cfg);

int cmd_report(const RunConfig& cfg);
int cmd_check(const RunConfig& cfg);
int cmd_flow(const RunConfig& cfg);

/// Full CLI: flag parsing, --config JSON handling, dispatch.
int run_main(int argc, const char* const* argv);

}  // namespace dtwist::cli

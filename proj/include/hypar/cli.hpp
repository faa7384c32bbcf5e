#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "hypar/foldctor.hpp"

namespace hypar::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kInfeasible = 3,
  kPrecisionExhausted = 4,
  kSelfIntersection = 5,
  kAuditFailure = 6,
};

/// Environment variable holding the default --digits-max.
inline constexpr const char* kDigitsMaxEnv = "HYPAR_DIGITS_MAX";

struct RunConfig {
  std::string command;
  std::string kind = "asym";
  int n = 0;
  std::vector<std::string> thetas;  // as given, exact rationals
  int digits = 0;                   // fixed precision; 0 means auto-escalate
  int digits_start = 16;
  int digits_max = 4096;
  std::vector<int> digit_grid;
  int n_cap = 0;
  std::string trilateration = "frame";
  std::string input;
  std::string out;
  std::string mesh;
  std::string csv;
  std::string svg;
  std::string dump_pattern;
  std::string format = "text";
  bool check_embedding = false;
  int jobs = 1;

  nlohmann::json to_json() const;
};

struct Instance {
  int n = 1;
  mpq_class theta_deg;
  pattern::Kind kind = pattern::Kind::Asymmetric;
};

/// Default audit grid: both kinds, n <= 8, each asymmetric instance inside
/// its self-intersection frontier.
std::vector<Instance> audit_grid();

/// Runs the command line and returns the process exit code. Normal output
/// goes to `out` (or to the files named by the options), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hypar::cli

// Verification runs: configuration, named check suites and serialized reports.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace qshilov {

enum class Mutation : std::uint8_t { None, DropRule, DropCoactionSummand };

std::string mutation_name(Mutation m);
Mutation parse_mutation(const std::string& name);

struct RunConfig {
  double q = 0.5;
  int n1 = 64;
  int n2 = 32;
  int n3 = 16;
  int phi_grid = 128;
  double tol = 1e-8;
  std::uint64_t seed = 1;
  std::vector<std::string> suites;  // empty runs nothing
  Mutation mutation = Mutation::None;

  /// Throws std::invalid_argument on q outside (0, 1), grid < 4, tol <= 0,
  /// truncations too small or an unknown suite.
  void validate() const;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// relations, hopf, coaction, wick, characters, annihilators, shilov-norm,
/// dilation, inequalities, regular-functions, confluence
const std::vector<std::string>& suite_names();

struct CheckEntry {
  std::string suite;
  std::string name;
  std::string anchor;  // the statement being checked
  std::string params;
  double value = 0;
  double tol = 0;
  bool pass = false;
  std::string error;  // set when the check threw
  friend bool operator==(const CheckEntry&, const CheckEntry&) = default;
};

struct Report {
  RunConfig config;
  std::vector<CheckEntry> entries;  // sorted by name, then params
  std::size_t passed = 0;
  std::size_t failed = 0;
  double wall_time = 0;  // seconds

  bool ok() const { return failed == 0; }
  friend bool operator==(const Report&, const Report&) = default;
};

/// Checks of one suite, in execution order.
std::vector<CheckEntry> run_suite(const std::string& suite, const RunConfig& config);
Report run(const RunConfig& config);

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);
/// One line per check followed by a summary line.
std::string to_text(const Report& r);

}  // namespace qshilov

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

namespace pfv {

enum class OutputFormat { Json, Csv, Text };

// Everything that determines a run. Serialized into every report.
struct RunConfig {
  std::string command;
  std::string poly;
  std::optional<std::string> modulus;   // rho
  std::uint64_t prime_limit = 100000;   // density, verify
  bool exact = false;
  std::uint64_t x = 0;
  std::string a, b;                     // triples bounds
  unsigned d = 0;                       // bounds
  std::optional<std::string> tau;
  std::string a_exp = "1", b_exp = "1";  // bounds: A = X^a_exp, B = X^b_exp
  std::string domain = "integers";
  std::string method = "hybrid";
  unsigned k = 0;
  std::string format = "json";
  unsigned threads = 1;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  std::uint64_t effort = std::uint64_t{1} << 32;
  bool timing = true;
};

constexpr const char* kVersion = "0.1.0";

enum ExitCode { kExitOk = 0, kExitUsage = 2, kExitCompute = 3, kExitHypothesis = 4 };

nlohmann::ordered_json config_json(const RunConfig& c);

// Runs one command and writes the report to `out` (diagnostics to `err`).
// Returns the process exit code.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// The report as JSON, without printing. `exit_code` receives the code run()
// would return. Throws pfv::Error on failure.
nlohmann::ordered_json run_json(const RunConfig& config, int& exit_code);

}  // namespace pfv

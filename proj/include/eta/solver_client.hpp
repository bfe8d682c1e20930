#pragma once

#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "eta/rational.hpp"

namespace eta {

struct SolverConfig {
  std::string binary;             // path to an SMT-LIB v2 solver executable
  std::vector<std::string> args;  // extra command-line arguments
  double timeout_seconds = 60;    // per query
  std::string dump_dir;           // when nonempty, scripts are written here
};

struct SolverResponse {
  enum class Kind { Sat, Unsat, Unknown };
  Kind kind = Kind::Unknown;
  std::map<std::string, Int> model;  // declared constants, sat only
  std::string raw;
};

/// Raised on timeouts, crashes, or unparseable output. The engine never
/// converts this into a verdict; it propagates with the query attached.
struct SolverFailure : std::runtime_error {
  std::string script;
  SolverFailure(const std::string& message, std::string script_)
      : std::runtime_error(message), script(std::move(script_)) {}
};

uint64_t fnv1a64(const std::string& data);

/// One-shot subprocess client: each query pipes a full script to the solver's
/// stdin and reads stdout until exit. Responses are cached by script text, so
/// identical queries cost one process spawn total. Safe to call from several
/// threads; returned references stay valid because entries are never evicted.
class SolverClient {
 public:
  explicit SolverClient(SolverConfig config);

  const SolverConfig& config() const { return config_; }

  /// Throws SolverFailure; never returns a half-parsed response.
  const SolverResponse& check(const std::string& script);

  size_t calls() const;
  size_t cache_hits() const;

 private:
  SolverConfig config_;
  mutable std::mutex mutex_;
  std::map<std::string, SolverResponse> cache_;
  size_t calls_ = 0;
  size_t cache_hits_ = 0;

  SolverResponse run_once(const std::string& script);
};

}  // namespace eta

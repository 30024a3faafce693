#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "hdchain/coupling.hpp"
#include "hdchain/harmonic.hpp"
#include "hdchain/report.hpp"

namespace hdchain {

inline constexpr const char* kVersion = "1.0.0";
/// Seed used when neither --seed nor HD_SEED is given.
inline constexpr std::uint64_t kDefaultSeed = 20240917;
inline constexpr std::size_t kDefaultTableSize = 20000;
inline constexpr std::size_t kDefaultCutoff = 10000;

/// Invalid flag combination or out-of-range parameter (exit status 2).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Command { exact, limits, identities, simulate, couple, overshoot };
enum class OutputFormat { csv, json };

[[nodiscard]] std::string to_string(Command command);
[[nodiscard]] Command parse_command(const std::string& text);
[[nodiscard]] std::string to_string(OutputFormat format);
[[nodiscard]] OutputFormat parse_output_format(const std::string& text);

struct RunConfig {
  Command command = Command::exact;
  std::optional<std::uint64_t> n;
  std::optional<std::uint64_t> i;
  std::optional<std::uint64_t> k;
  std::optional<std::uint64_t> x;
  std::optional<std::uint64_t> y;
  std::optional<double> t;
  std::uint64_t reps = 100000;
  std::uint64_t seed = kDefaultSeed;
  TimeMode mode = TimeMode::continuous;
  CouplingProtocol protocol = CouplingProtocol::maximal;
  OutputFormat format = OutputFormat::json;
  std::string out;  ///< empty means standard output
  unsigned workers = 1;
  std::size_t table_size = kDefaultTableSize;
  std::size_t cutoff = kDefaultCutoff;
};

/// Checks that the parameters the command needs are present and in range,
/// and that no foreign parameter was given. Throws UsageError.
void validate(const RunConfig& config);

/// Validates, runs the command and returns its report. Throws UsageError
/// and CapacityError.
[[nodiscard]] Report run_cli(const RunConfig& config);

/// Report rendered in the configured format.
[[nodiscard]] std::string render(const Report& report, OutputFormat format);

}  // namespace hdchain

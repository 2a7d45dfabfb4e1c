#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace qsearch::cli {

enum class Command { kTable1, kTrace, kBound, kScan, kFluctuations };
enum class Format { kCsv, kJson };

/// Exit codes of the command-line tool.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

/// Raised for any argument that violates a command's preconditions.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  Command command = Command::kTable1;
  std::optional<int> qubits;
  std::optional<int> min_qubits;
  std::optional<int> max_qubits;
  std::optional<std::uint64_t> target;
  std::optional<double> epsilon;
  Format format = Format::kCsv;
  std::optional<std::string> output_path;
  unsigned threads = 1;
  bool include_final_test_query = true;
};

Command parse_command(const std::string& name);
std::string command_name(Command command);

/// Checks every numeric argument against the preconditions of `command`.
/// Throws ArgumentError.
void validate(const RunConfig& config);

using Cell = std::variant<std::monostate, bool, std::int64_t, std::uint64_t, double>;

/// Flat table of records with a fixed column order.
struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  /// Human-readable lines for stderr (warnings, scan summary).
  std::vector<std::string> notes;
};

/// Column names per command; these are the public CSV header and JSON keys.
const std::vector<std::string>& report_columns(Command command);

/// Validates, then runs the command. Output rows are in a fixed order that
/// does not depend on config.threads.
Report run_command(const RunConfig& config);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

void write_csv(const Report& report, std::ostream& out);
void write_json(const Report& report, std::ostream& out);
void write_report(const Report& report, Format format, std::ostream& out);

/// Full tool entry point: parses argv-style arguments (without the program
/// name), runs, and writes the report. Returns an exit code.
int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err);

}  // namespace qsearch::cli

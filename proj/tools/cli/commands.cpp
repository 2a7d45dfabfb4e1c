#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsearch/complexity.hpp"
#include "qsearch/entanglement.hpp"
#include "qsearch/pseudopure.hpp"
#include "qsearch/search.hpp"

namespace qsearch::cli {

namespace {

constexpr int kMaxScanQubits = 20;
constexpr int kMaxFluctuationQubits = 8;  // N <= kMaxDenseDimension

// Evaluates fn(0..count-1) on up to `threads` workers; results keep index order.
template <typename T>
std::vector<T> parallel_map(std::size_t count, unsigned threads,
                            const std::function<T(std::size_t)>& fn) {
  std::vector<T> results(count);
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(std::max(threads, 1U), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count && !failed; i = next++) {
        try {
          results[i] = fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
  return results;
}

void require(bool condition, const std::string& message) {
  if (!condition) throw ArgumentError(message);
}

int qubits_or_throw(const RunConfig& config) {
  require(config.qubits.has_value(), command_name(config.command) + " requires --qubits");
  return *config.qubits;
}

SearchInstance instance_for(const RunConfig& config) {
  const int n = *config.qubits;
  const std::uint64_t all_set = (std::uint64_t{1} << n) - 1;
  return make_instance(n, config.target.value_or(all_set));
}

double epsilon_or_default(const RunConfig& config) { return config.epsilon.value_or(1.0); }

std::string validity_warning(double epsilon) {
  return "warning: epsilon " + format_double(epsilon) +
         " exceeds the pseudo-pure validity threshold " +
         format_double(kDefaultValidityThreshold);
}

Report table1_report(const RunConfig& config) {
  const int n_min = config.qubits.value_or(config.min_qubits.value_or(1));
  const int n_max = config.qubits.value_or(config.max_qubits.value_or(8));
  const QueryOptions options{config.include_final_test_query};

  Report report{report_columns(Command::kTable1), {}, {}};
  const auto rows = parallel_map<ComplexityRow>(
      static_cast<std::size_t>(n_max - n_min + 1), config.threads,
      [&](std::size_t i) { return separable_complexity_row(n_min + static_cast<int>(i), options); });
  for (const ComplexityRow& row : rows) {
    report.rows.push_back({std::int64_t{row.n}, row.size, row.k_opt, row.quantum_queries,
                           row.classical_queries, row.epsilon_used, row.speedup});
  }
  return report;
}

Report trace_report(const RunConfig& config) {
  const SearchInstance instance = instance_for(config);
  const double epsilon = epsilon_or_default(config);
  const std::uint64_t k_last = instance.rotation_steps();
  const SeparabilityProfile profile = separability_profile(instance, k_last);

  Report report{report_columns(Command::kTrace), {}, {}};
  if (epsilon > kDefaultValidityThreshold) report.notes.push_back(validity_warning(epsilon));

  report.rows = parallel_map<std::vector<Cell>>(
      k_last + 1, config.threads, [&](std::size_t i) -> std::vector<Cell> {
        const std::uint64_t k = i;
        const BlochVector s = bloch_vector_for_qubit(instance, k, 0);
        const double length = std::min(s.length(), 1.0);
        const double bound = profile.per_iteration[i].epsilon;
        return {k,
                instance.angle(k),
                s.x,
                s.y,
                s.z,
                length,
                von_neumann_entropy(length),
                linear_entropy(length),
                hs_distance(length),
                schmidt_product(instance, k),
                bound,
                profile.cumulative_min[i].epsilon,
                success_probability(instance, k, epsilon),
                is_entangled(epsilon, bound)};
      });
  return report;
}

Report bound_report(const RunConfig& config) {
  const SearchInstance instance = instance_for(config);
  const std::uint64_t k_last = instance.rotation_steps();
  const SeparabilityProfile profile = separability_profile(instance, k_last);

  Report report{report_columns(Command::kBound), {}, {}};
  for (std::uint64_t k = 0; k <= k_last; ++k) {
    report.rows.push_back({k, instance.angle(k), schmidt_product(instance, k),
                           profile.per_iteration[k].epsilon, profile.cumulative_min[k].epsilon});
  }
  return report;
}

Report scan_report(const RunConfig& config) {
  const int n_min = config.min_qubits.value_or(3);
  const int n_max = config.max_qubits.value_or(kMaxScanQubits);

  const auto records = parallel_map<SpeedupScanRecord>(
      static_cast<std::size_t>(n_max - n_min + 1), config.threads,
      [&](std::size_t i) { return speedup_scan_record(n_min + static_cast<int>(i)); });

  Report report{report_columns(Command::kScan), {}, {}};
  bool conclusion = true;
  int exceptions = 0;
  for (const SpeedupScanRecord& r : records) {
    conclusion = conclusion && r.speedup_possible && r.entangled_throughout;
    exceptions += r.last_step_exception ? 1 : 0;
    const Cell threshold = r.speedup_possible ? Cell{r.epsilon_speedup} : Cell{};
    if (r.iterations.empty()) {
      report.rows.push_back({std::int64_t{r.n}, r.k_opt, threshold, Cell{}, Cell{}, Cell{},
                             r.entangled_throughout, r.last_step_exception});
      continue;
    }
    for (const IterationComparison& it : r.iterations) {
      report.rows.push_back({std::int64_t{r.n}, r.k_opt, threshold, it.k, it.epsilon_bound,
                             it.entangled, r.entangled_throughout, r.last_step_exception});
    }
  }
  report.notes.push_back("summary: entanglement required after every iteration for n in [" +
                         std::to_string(n_min) + ", " + std::to_string(n_max) +
                         "] (last-step exceptions: " + std::to_string(exceptions) +
                         "): " + (conclusion ? "true" : "false"));
  return report;
}

Report fluctuations_report(const RunConfig& config) {
  const SearchInstance instance = instance_for(config);
  const double epsilon = epsilon_or_default(config);
  const std::vector<double> amps = closed_form_state(instance, 0).materialize();

  ComplexVector psi(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) psi[static_cast<Eigen::Index>(i)] = amps[i];
  const ComplexMatrix theta = projector_deviation_operator(psi);
  const FluctuationReport fr = fluctuation_report(theta, psi, epsilon);
  const double direct = direct_variance(pseudo_pure_density(psi, epsilon), theta);

  Report report{report_columns(Command::kFluctuations), {}, {}};
  if (epsilon > kDefaultValidityThreshold) report.notes.push_back(validity_warning(epsilon));
  report.rows.push_back({std::int64_t{instance.qubits()}, instance.size(), epsilon,
                         fr.pure_expectation, fr.pure_variance, fr.trace_theta_sq_over_n,
                         fr.pseudo_variance, projector_deviation_variance(instance.size(), epsilon),
                         direct, std::abs(fr.pseudo_variance - direct)});
  return report;
}

void write_csv_cell(const Cell& cell, std::ostream& out) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
        } else if constexpr (std::is_same_v<T, bool>) {
          out << (v ? "true" : "false");
        } else if constexpr (std::is_same_v<T, double>) {
          out << format_double(v);
        } else {
          out << v;
        }
      },
      cell);
}

}  // namespace

Command parse_command(const std::string& name) {
  if (name == "table1") return Command::kTable1;
  if (name == "trace") return Command::kTrace;
  if (name == "bound") return Command::kBound;
  if (name == "scan") return Command::kScan;
  if (name == "fluctuations") return Command::kFluctuations;
  throw ArgumentError("unknown command '" + name + "'");
}

std::string command_name(Command command) {
  switch (command) {
    case Command::kTable1: return "table1";
    case Command::kTrace: return "trace";
    case Command::kBound: return "bound";
    case Command::kScan: return "scan";
    case Command::kFluctuations: return "fluctuations";
  }
  return "unknown";
}

void validate(const RunConfig& config) {
  require(config.threads >= 1, "--threads must be at least 1");
  if (config.epsilon) {
    require(*config.epsilon >= 0.0 && *config.epsilon <= 1.0,
            "--epsilon must be in [0, 1], got " + format_double(*config.epsilon));
  }

  switch (config.command) {
    case Command::kTable1: {
      const int n_min = config.qubits.value_or(config.min_qubits.value_or(1));
      const int n_max = config.qubits.value_or(config.max_qubits.value_or(8));
      require(n_min >= 1 && n_max <= kMaxInstanceQubits && n_min <= n_max,
              "table1 requires 1 <= min-qubits <= max-qubits <= " +
                  std::to_string(kMaxInstanceQubits));
      return;
    }
    case Command::kScan: {
      const int n_min = config.min_qubits.value_or(3);
      const int n_max = config.max_qubits.value_or(kMaxScanQubits);
      require(n_min > 2 && n_max <= kMaxScanQubits && n_min <= n_max,
              "scan requires 2 < min-qubits <= max-qubits <= " + std::to_string(kMaxScanQubits));
      return;
    }
    case Command::kTrace:
    case Command::kBound:
    case Command::kFluctuations: {
      const int n = qubits_or_throw(config);
      const int n_limit =
          config.command == Command::kFluctuations ? kMaxFluctuationQubits : kMaxInstanceQubits;
      require(n >= 1 && n <= n_limit, command_name(config.command) + " requires 1 <= qubits <= " +
                                          std::to_string(n_limit));
      if (config.target) {
        require(*config.target < (std::uint64_t{1} << n),
                "--target must be below 2^qubits = " + std::to_string(std::uint64_t{1} << n));
      }
      return;
    }
  }
}

const std::vector<std::string>& report_columns(Command command) {
  static const std::vector<std::string> table1{
      "n", "N", "k_opt", "n_pseudo_min", "n_class", "epsilon_used", "speedup"};
  static const std::vector<std::string> trace{
      "k",           "theta_k",        "s_x",          "s_y",
      "s_z",         "s",              "von_neumann_entropy", "linear_entropy",
      "hs_distance", "schmidt_product", "epsilon_k",   "epsilon_min",
      "success_probability", "entangled"};
  static const std::vector<std::string> bound{"k", "theta_k", "schmidt_product", "epsilon_k",
                                              "epsilon_min"};
  static const std::vector<std::string> scan{
      "n", "k_opt", "epsilon_speedup", "k", "epsilon_k", "entangled", "entangled_throughout",
      "last_step_exception"};
  static const std::vector<std::string> fluctuations{
      "n",              "N",                     "epsilon",         "pure_expectation",
      "pure_variance",  "trace_theta_sq_over_N", "pseudo_variance", "closed_form_variance",
      "direct_trace_variance", "abs_difference"};
  switch (command) {
    case Command::kTable1: return table1;
    case Command::kTrace: return trace;
    case Command::kBound: return bound;
    case Command::kScan: return scan;
    case Command::kFluctuations: return fluctuations;
  }
  return table1;
}

Report run_command(const RunConfig& config) {
  validate(config);
  switch (config.command) {
    case Command::kTable1: return table1_report(config);
    case Command::kTrace: return trace_report(config);
    case Command::kBound: return bound_report(config);
    case Command::kScan: return scan_report(config);
    case Command::kFluctuations: return fluctuations_report(config);
  }
  throw std::logic_error("unhandled command");
}

std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

void write_csv(const Report& report, std::ostream& out) {
  for (std::size_t i = 0; i < report.columns.size(); ++i) {
    out << (i ? "," : "") << report.columns[i];
  }
  out << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      write_csv_cell(row[i], out);
    }
    out << '\n';
  }
}

void write_json(const Report& report, std::ostream& out) {
  nlohmann::ordered_json records = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json record = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
              record[report.columns[i]] = nullptr;
            } else {
              record[report.columns[i]] = v;
            }
          },
          row[i]);
    }
    records.push_back(std::move(record));
  }
  out << records.dump(2) << '\n';
}

void write_report(const Report& report, Format format, std::ostream& out) {
  if (format == Format::kJson) {
    write_json(report, out);
  } else {
    write_csv(report, out);
  }
}

int run_cli(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grover search entanglement and query-complexity laboratory", "qsearch"};

  std::string command;
  int qubits = 0, min_qubits = 0, max_qubits = 0;
  std::uint64_t target = 0;
  double epsilon = 0.0;
  std::string format = "csv";
  std::string output;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  bool final_test = true;

  app.add_option("command", command, "table1 | trace | bound | scan | fluctuations")
      ->required()
      ->check(CLI::IsMember({"table1", "trace", "bound", "scan", "fluctuations"}));
  auto* qubits_opt = app.add_option("--qubits", qubits, "Qubit count n");
  auto* min_opt = app.add_option("--min-qubits", min_qubits, "Smallest n of a range");
  auto* max_opt = app.add_option("--max-qubits", max_qubits, "Largest n of a range");
  auto* target_opt = app.add_option("--target", target, "Target index y (default 2^n - 1)");
  auto* eps_opt = app.add_option("--epsilon", epsilon, "Purity parameter (default 1)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  auto* output_opt = app.add_option("--output", output, "Write to PATH instead of stdout");
  app.add_option("--threads", threads, "Worker threads (default: hardware concurrency)");
  app.add_option("--include-final-test-query", final_test,
                 "Charge one oracle call to test each run's answer (true|false)");

  RunConfig config;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    config.command = parse_command(command);
    if (qubits_opt->count()) config.qubits = qubits;
    if (min_opt->count()) config.min_qubits = min_qubits;
    if (max_opt->count()) config.max_qubits = max_qubits;
    if (target_opt->count()) config.target = target;
    if (eps_opt->count()) config.epsilon = epsilon;
    config.format = format == "json" ? Format::kJson : Format::kCsv;
    if (output_opt->count()) config.output_path = output;
    config.threads = threads;
    config.include_final_test_query = final_test;
    validate(config);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    const Report report = run_command(config);
    if (config.output_path) {
      std::ofstream file(*config.output_path, std::ios::binary);
      if (!file) {
        err << "error: cannot open " << *config.output_path << " for writing\n";
        return kExitUsage;
      }
      write_report(report, config.format, file);
    } else {
      write_report(report, config.format, out);
    }
    for (const std::string& note : report.notes) err << note << '\n';
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace qsearch::cli

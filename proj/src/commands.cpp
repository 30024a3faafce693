#include "hdchain/commands.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <set>
#include <string_view>
#include <vector>

#include "hdchain/exact.hpp"
#include "hdchain/simulate.hpp"

namespace hdchain {

namespace {

constexpr std::size_t kMaxFixedPointI = 50;

struct ParamPresence {
  std::string_view name;
  bool present;
};

std::vector<ParamPresence> presence(const RunConfig& c) {
  return {{"n", c.n.has_value()}, {"i", c.i.has_value()}, {"k", c.k.has_value()},
          {"x", c.x.has_value()}, {"y", c.y.has_value()}, {"t", c.t.has_value()}};
}

void allow_only(const RunConfig& config, std::initializer_list<std::string_view> allowed) {
  for (const auto& [name, present] : presence(config)) {
    if (present && std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      throw UsageError("--" + std::string(name) + " is not accepted by '" + to_string(config.command) +
                       "'");
    }
  }
}

std::uint64_t need(const std::optional<std::uint64_t>& value, std::string_view name,
                   std::uint64_t minimum = 1) {
  if (!value) throw UsageError("missing required --" + std::string(name));
  if (*value < minimum) {
    throw UsageError("--" + std::string(name) + " must be at least " + std::to_string(minimum));
  }
  return *value;
}

McConfig mc_config(const RunConfig& config) { return {config.reps, config.seed, config.workers}; }

Report make_report(const RunConfig& config) {
  Report report;
  report.version = kVersion;
  report.config.emplace_back("command", to_string(config.command));
  const auto add_u = [&](std::string_view key, const std::optional<std::uint64_t>& value) {
    if (value) report.config.emplace_back(std::string(key), *value);
  };
  add_u("n", config.n);
  add_u("i", config.i);
  add_u("k", config.k);
  add_u("x", config.x);
  add_u("y", config.y);
  if (config.t) report.config.emplace_back("t", *config.t);
  const bool monte_carlo = config.command == Command::simulate || config.command == Command::couple ||
                           config.command == Command::overshoot;
  if (monte_carlo) {
    report.config.emplace_back("reps", config.reps);
    report.config.emplace_back("seed", config.seed);
  }
  if (config.command == Command::simulate) report.config.emplace_back("mode", to_string(config.mode));
  if (config.command == Command::couple) {
    report.config.emplace_back("protocol", to_string(config.protocol));
  }
  if (config.command == Command::limits || config.command == Command::identities) {
    report.config.emplace_back("cutoff", static_cast<std::uint64_t>(config.cutoff));
  }
  report.config.emplace_back("table_size", static_cast<std::uint64_t>(config.table_size));
  report.config.emplace_back("format", to_string(config.format));
  return report;
}

std::int64_t as_int(std::uint64_t value) { return static_cast<std::int64_t>(value); }

void run_exact(const RunConfig& config, const HarmonicTable& table, Report& report) {
  const auto n = *config.n;
  const auto occupation = occupation_vector(StateIndex(n), table);
  report.columns = {"i", "a_n_i", "b_i", "gap"};
  report.rows.reserve(n);
  for (std::uint64_t i = 1; i <= n; ++i) {
    const double a = occupation.at(i);
    const double b = limit_value(StateIndex(i), table);
    report.rows.push_back({as_int(i), a, b, a - b});
  }
}

void run_limits(const RunConfig& config, const HarmonicTable& table, Report& report) {
  const auto limits = build_limit_table(*config.i, config.cutoff, table);
  report.columns = {"i", "b_i", "residual"};
  for (std::size_t i = 1; i <= limits.max_i; ++i) {
    report.rows.push_back({as_int(i), limits.b[i - 1], limits.residuals[i - 1]});
  }
}

void run_identities(const RunConfig& config, const HarmonicTable& table, Report& report) {
  const auto k = static_cast<std::size_t>(*config.k);
  const double euler = euler_partition_sum(k, config.cutoff, table);
  const std::size_t max_i = std::min(kMaxFixedPointI, config.cutoff - 2);
  const auto limits = build_limit_table(max_i, config.cutoff, table);
  const auto overshoot = overshoot_distribution(k, table);
  const double mass = overshoot.total();
  report.columns = {"k",
                    "euler_partition_sum",
                    "euler_residual",
                    "fixed_point_max_i",
                    "max_fixed_point_residual",
                    "overshoot_mass_sum",
                    "overshoot_mass_residual"};
  report.rows.push_back({as_int(k), euler, std::abs(euler - kZeta2), as_int(max_i),
                         limits.max_abs_residual(), mass, std::abs(mass - 1.0)});
}

void run_simulate(const RunConfig& config, const HarmonicTable& table, Report& report) {
  const StateIndex n(*config.n);
  const auto mc = mc_config(config);
  const auto estimate = estimate_absorption_time(n, config.mode, mc, table);
  const double exact = mean_absorption(n, config.mode, table);
  const double reference = kInvZeta2 * std::log(static_cast<double>(n.value()));
  report.columns = {"n", "mode", "mean_T1", "std_error", "exact_mean_T1", "reference_6_over_pi2_log_n"};
  std::vector<Cell> row{as_int(n.value()), to_string(config.mode), estimate.mean, estimate.std_error,
                        exact, reference};
  if (config.k) {
    const auto check = survival_bound_check(n, StateIndex(*config.k), *config.t, mc, table);
    report.columns.insert(report.columns.end(), {"p_Tk_le_t", "p_Tk_le_t_std_error", "bound"});
    row.insert(row.end(), {check.empirical.mean, check.empirical.std_error, check.bound});
  }
  report.rows.push_back(std::move(row));
}

void run_couple(const RunConfig& config, const HarmonicTable& table, Report& report) {
  const StateIndex x(*config.x);
  const StateIndex y(*config.y);
  const StateIndex level(config.i.value_or(2));
  const auto summary = estimate_coupling(x, y, level, config.protocol, mc_config(config), table);
  const auto ax = occupation_vector(x, table);
  const auto ay = occupation_vector(y, table);
  const auto below = [&](const OccupationVector& a) {
    return level.value() <= a.start_n ? a.at(level.value()) : 0.0;
  };
  report.columns = {"x",           "y",           "level_i",     "protocol",
                    "p_s_below",   "p_s_below_std_error",        "mean_t_couple",
                    "t_couple_std_error",         "mean_t_absorb", "t_absorb_std_error",
                    "exact_occupation_gap"};
  report.rows.push_back({as_int(x.value()), as_int(y.value()), as_int(level.value()),
                         to_string(config.protocol), summary.p_below.mean, summary.p_below.std_error,
                         summary.t_couple.mean, summary.t_couple.std_error, summary.t_absorb.mean,
                         summary.t_absorb.std_error, std::abs(below(ax) - below(ay))});
}

void run_overshoot(const RunConfig& config, const HarmonicTable& table, Report& report) {
  const auto estimate =
      estimate_overshoot(StateIndex(*config.y), StateIndex(*config.x), mc_config(config), table);
  report.columns = {"x", "y", "mean_overshoot", "std_error"};
  report.rows.push_back(
      {as_int(*config.x), as_int(*config.y), estimate.mean, estimate.std_error});
}

}  // namespace

std::string to_string(Command command) {
  switch (command) {
    case Command::exact: return "exact";
    case Command::limits: return "limits";
    case Command::identities: return "identities";
    case Command::simulate: return "simulate";
    case Command::couple: return "couple";
    case Command::overshoot: return "overshoot";
  }
  return "unknown";
}

Command parse_command(const std::string& text) {
  for (auto command : {Command::exact, Command::limits, Command::identities, Command::simulate,
                       Command::couple, Command::overshoot}) {
    if (to_string(command) == text) return command;
  }
  throw UsageError("unknown command '" + text + "'");
}

std::string to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "json"; }

OutputFormat parse_output_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw UsageError("unknown format '" + text + "'");
}

void validate(const RunConfig& config) {
  if (config.table_size == 0) throw UsageError("--table-size must be positive");
  if (config.workers == 0) throw UsageError("--workers must be positive");
  if (config.reps == 0) throw UsageError("--reps must be positive");
  switch (config.command) {
    case Command::exact:
      allow_only(config, {"n"});
      need(config.n, "n");
      break;
    case Command::limits:
      allow_only(config, {"i"});
      need(config.i, "i");
      if (config.cutoff <= *config.i + 1) throw UsageError("--cutoff must exceed --i + 1");
      break;
    case Command::identities:
      allow_only(config, {"k"});
      need(config.k, "k");
      if (config.cutoff <= *config.k + 1) throw UsageError("--cutoff must exceed --k + 1");
      break;
    case Command::simulate:
      allow_only(config, {"n", "k", "t"});
      need(config.n, "n");
      if (config.k.has_value() != config.t.has_value()) {
        throw UsageError("--k and --t must be given together");
      }
      if (config.k) {
        need(config.k, "k");
        if (*config.k > *config.n) throw UsageError("--k must not exceed --n");
        if (!(*config.t >= 0.0)) throw UsageError("--t must be nonnegative");
        if (config.mode != TimeMode::continuous) {
          throw UsageError("the survival check (--k, --t) needs --mode continuous");
        }
      }
      break;
    case Command::couple:
      allow_only(config, {"x", "y", "i"});
      need(config.x, "x");
      need(config.y, "y");
      if (config.i) need(config.i, "i", 2);
      break;
    case Command::overshoot:
      allow_only(config, {"x", "y"});
      need(config.x, "x");
      need(config.y, "y");
      if (*config.x >= *config.y) throw UsageError("overshoot needs --x < --y");
      break;
  }
}

Report run_cli(const RunConfig& config) {
  validate(config);
  const HarmonicTable table(config.table_size);
  Report report = make_report(config);
  switch (config.command) {
    case Command::exact: run_exact(config, table, report); break;
    case Command::limits: run_limits(config, table, report); break;
    case Command::identities: run_identities(config, table, report); break;
    case Command::simulate: run_simulate(config, table, report); break;
    case Command::couple: run_couple(config, table, report); break;
    case Command::overshoot: run_overshoot(config, table, report); break;
  }
  return report;
}

std::string render(const Report& report, OutputFormat format) {
  return format == OutputFormat::csv ? render_csv(report) : render_json(report);
}

}  // namespace hdchain

#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <sstream>

#include "hdchain/commands.hpp"
#include "hdchain/exact.hpp"
#include "json.hpp"

namespace hdchain {
namespace {

using nlohmann::json;

RunConfig config_for(Command command) {
  RunConfig config;
  config.command = command;
  return config;
}

double as_double(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&cell)) return static_cast<double>(*i);
  if (const auto* u = std::get_if<std::uint64_t>(&cell)) return static_cast<double>(*u);
  throw std::invalid_argument("not numeric");
}

std::size_t column(const Report& report, const std::string& name) {
  for (std::size_t c = 0; c < report.columns.size(); ++c) {
    if (report.columns[c] == name) return c;
  }
  throw std::out_of_range("no column " + name);
}

std::vector<std::vector<std::string>> csv_body(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::istringstream fs(line);
    std::string field;
    while (std::getline(fs, field, ',')) fields.push_back(field);
    rows.push_back(fields);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// validate

TEST(Validate, MissingRequiredParameter) {
  EXPECT_THROW(validate(config_for(Command::exact)), UsageError);
  auto couple = config_for(Command::couple);
  couple.x = 10;
  EXPECT_THROW(validate(couple), UsageError);
}

TEST(Validate, ForeignParameterRejected) {
  auto exact = config_for(Command::exact);
  exact.n = 10;
  exact.k = 3;
  EXPECT_THROW(validate(exact), UsageError);
  auto overshoot = config_for(Command::overshoot);
  overshoot.x = 10;
  overshoot.y = 100;
  overshoot.t = 1.0;
  EXPECT_THROW(validate(overshoot), UsageError);
}

TEST(Validate, RangeChecks) {
  auto overshoot = config_for(Command::overshoot);
  overshoot.x = 100;
  overshoot.y = 100;
  EXPECT_THROW(validate(overshoot), UsageError);

  auto exact = config_for(Command::exact);
  exact.n = 0;
  EXPECT_THROW(validate(exact), UsageError);
  exact.n = 5;
  exact.workers = 0;
  EXPECT_THROW(validate(exact), UsageError);

  auto couple = config_for(Command::couple);
  couple.x = 3;
  couple.y = 9;
  couple.i = 1;
  EXPECT_THROW(validate(couple), UsageError);
  couple.i = 2;
  EXPECT_NO_THROW(validate(couple));

  auto limits = config_for(Command::limits);
  limits.i = 50;
  limits.cutoff = 51;
  EXPECT_THROW(validate(limits), UsageError);
}

TEST(Validate, SurvivalFlagsTogetherInContinuousTime) {
  auto sim = config_for(Command::simulate);
  sim.n = 100;
  sim.k = 5;
  EXPECT_THROW(validate(sim), UsageError);
  sim.t = 1.0;
  EXPECT_NO_THROW(validate(sim));
  sim.mode = TimeMode::discrete;
  EXPECT_THROW(validate(sim), UsageError);
  sim.mode = TimeMode::continuous;
  sim.k = 200;
  EXPECT_THROW(validate(sim), UsageError);
}

TEST(Validate, CapacityErrorFromRun) {
  auto exact = config_for(Command::exact);
  exact.n = 500;
  exact.table_size = 100;
  EXPECT_THROW((void)run_cli(exact), CapacityError);
}

TEST(TextEnums, RoundTrip) {
  for (auto c : {Command::exact, Command::limits, Command::identities, Command::simulate, Command::couple,
                 Command::overshoot}) {
    EXPECT_EQ(parse_command(to_string(c)), c);
  }
  EXPECT_THROW((void)parse_command("solve"), UsageError);
  EXPECT_EQ(parse_output_format("csv"), OutputFormat::csv);
  EXPECT_THROW((void)parse_output_format("xml"), UsageError);
}

// ---------------------------------------------------------------------------
// Commands

TEST(ExactCommand, ThousandAsCsv) {
  auto config = config_for(Command::exact);
  config.n = 1000;
  config.format = OutputFormat::csv;
  const auto report = run_cli(config);
  ASSERT_EQ(report.rows.size(), 1000u);
  const auto body = csv_body(render(report, OutputFormat::csv));
  ASSERT_EQ(body.size(), 1001u);
  EXPECT_EQ(body[0], (std::vector<std::string>{"i", "a_n_i", "b_i", "gap"}));
  EXPECT_EQ(body[1][0], "1");
  EXPECT_EQ(std::stod(body[1][1]), 1.0);
  EXPECT_EQ(body[1000][0], "1000");
  EXPECT_EQ(std::stod(body[1000][1]), 1.0);

  const HarmonicTable table(2000);
  const auto exact = occupation_vector(StateIndex(1000), table);
  for (std::uint64_t i = 1; i <= 1000; ++i) {
    EXPECT_NEAR(std::stod(body[i][1]), exact.at(i), 1e-14 * exact.at(i));
  }
}

TEST(IdentitiesCommand, JsonResiduals) {
  auto config = config_for(Command::identities);
  config.k = 100;
  const auto doc = json::parse(render(run_cli(config), OutputFormat::json));
  ASSERT_EQ(doc.at("results").size(), 1u);
  const auto& row = doc.at("results")[0];
  EXPECT_EQ(row.at("k").get<int>(), 100);
  EXPECT_LT(row.at("euler_residual").get<double>(), 1e-12);
  EXPECT_LT(row.at("max_fixed_point_residual").get<double>(), 1e-12);
  EXPECT_LT(row.at("overshoot_mass_residual").get<double>(), 1e-12);
  EXPECT_EQ(row.at("fixed_point_max_i").get<int>(), 50);
  EXPECT_EQ(doc.at("version").get<std::string>(), kVersion);
}

TEST(LimitsCommand, RowsAndResiduals) {
  auto config = config_for(Command::limits);
  config.i = 20;
  const auto report = run_cli(config);
  ASSERT_EQ(report.rows.size(), 20u);
  const HarmonicTable table(100);
  for (std::size_t r = 0; r < 20; ++r) {
    EXPECT_DOUBLE_EQ(as_double(report.rows[r][column(report, "b_i")]),
                     limit_value(StateIndex(r + 1), table));
    EXPECT_LT(std::abs(as_double(report.rows[r][column(report, "residual")])), 1e-12);
  }
}

TEST(SimulateCommand, ReferenceAndExactColumns) {
  auto config = config_for(Command::simulate);
  config.n = 10000;
  config.reps = 20000;
  config.seed = 42;
  const auto report = run_cli(config);
  const auto& row = report.rows.at(0);
  EXPECT_NEAR(as_double(row[column(report, "reference_6_over_pi2_log_n")]), 5.599, 5e-4);
  const double mean = as_double(row[column(report, "mean_T1")]);
  const double se = as_double(row[column(report, "std_error")]);
  EXPECT_NEAR(mean, as_double(row[column(report, "exact_mean_T1")]), 4 * se);
  EXPECT_EQ(std::get<std::string>(row[column(report, "mode")]), "continuous");
}

TEST(SimulateCommand, SurvivalColumnsOnRequest) {
  auto config = config_for(Command::simulate);
  config.n = 10000;
  config.k = 10;
  config.t = 1.0;
  config.reps = 5000;
  const auto report = run_cli(config);
  EXPECT_NEAR(as_double(report.rows[0][column(report, "bound")]), 0.2336, 1e-4);
  EXPECT_NO_THROW((void)column(report, "p_Tk_le_t"));
}

TEST(CoupleCommand, Columns) {
  auto config = config_for(Command::couple);
  config.x = 100;
  config.y = 1000;
  config.i = 5;
  config.reps = 2000;
  config.protocol = CouplingProtocol::shift;
  const auto report = run_cli(config);
  const auto& row = report.rows.at(0);
  EXPECT_EQ(std::get<std::string>(row[column(report, "protocol")]), "shift");
  const double p = as_double(row[column(report, "p_s_below")]);
  EXPECT_GE(p, 0.0);
  EXPECT_LE(p, 1.0);
  EXPECT_GE(as_double(row[column(report, "mean_t_absorb")]), as_double(row[column(report, "mean_t_couple")]));
}

TEST(OvershootCommand, Columns) {
  auto config = config_for(Command::overshoot);
  config.x = 100;
  config.y = 10000;
  config.reps = 5000;
  const auto report = run_cli(config);
  EXPECT_EQ(report.columns, (std::vector<std::string>{"x", "y", "mean_overshoot", "std_error"}));
  EXPECT_LT(as_double(report.rows[0][2]), 3.0);
}

// ---------------------------------------------------------------------------
// Rendering

TEST(Render, CsvAndJsonCarryTheSameNumbers) {
  auto config = config_for(Command::exact);
  config.n = 60;
  const auto report = run_cli(config);
  const auto body = csv_body(render(report, OutputFormat::csv));
  const auto doc = json::parse(render(report, OutputFormat::json));
  const auto& results = doc.at("results");
  ASSERT_EQ(results.size(), body.size() - 1);
  for (std::size_t r = 0; r < results.size(); ++r) {
    for (std::size_t c = 0; c < report.columns.size(); ++c) {
      double from_csv = 0.0;
      const auto& text = body[r + 1][c];
      std::from_chars(text.data(), text.data() + text.size(), from_csv);
      EXPECT_EQ(from_csv, results[r].at(report.columns[c]).get<double>()) << r << "," << c;
    }
  }
}

TEST(Render, ConfigIsEmbedded) {
  auto config = config_for(Command::overshoot);
  config.x = 10;
  config.y = 100;
  config.reps = 100;
  config.seed = 777;
  const auto report = run_cli(config);
  const auto doc = json::parse(render(report, OutputFormat::json));
  const auto& cfg = doc.at("config");
  EXPECT_EQ(cfg.at("command").get<std::string>(), "overshoot");
  EXPECT_EQ(cfg.at("seed").get<std::uint64_t>(), 777u);
  EXPECT_EQ(cfg.at("reps").get<std::uint64_t>(), 100u);
  EXPECT_EQ(cfg.at("x").get<std::uint64_t>(), 10u);

  const auto csv = render(report, OutputFormat::csv);
  EXPECT_EQ(csv.rfind("# version=" + std::string(kVersion), 0), 0u);
  EXPECT_NE(csv.find("# seed=777\n"), std::string::npos);
}

TEST(Render, RealsUseFifteenDigits) {
  EXPECT_EQ(format_real(1.0), "1");
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(1.0 / 3.0), "0.333333333333333");
  EXPECT_EQ(format_real(1e-20), "1e-20");
}

TEST(Render, ByteIdenticalAcrossWorkers) {
  for (auto command : {Command::simulate, Command::couple, Command::overshoot}) {
    auto config = config_for(command);
    if (command == Command::simulate) config.n = 3000;
    if (command != Command::simulate) {
      config.x = 50;
      config.y = 900;
    }
    config.reps = 5000;
    config.seed = 11;
    for (auto format : {OutputFormat::csv, OutputFormat::json}) {
      config.format = format;
      config.workers = 1;
      const auto one = render(run_cli(config), format);
      config.workers = 4;
      const auto four = render(run_cli(config), format);
      EXPECT_EQ(one, four) << to_string(command);
    }
  }
}

}  // namespace
}  // namespace hdchain

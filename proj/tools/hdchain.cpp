// Command-line front end for the harmonic descent chain library.
//
//   hdchain exact      --n 1000 --format csv
//   hdchain limits     --i 50 [--cutoff 10000]
//   hdchain identities --k 100 [--cutoff 10000]
//   hdchain simulate   --n 10000 --mode continuous --reps 100000 --seed 42 [--k 10 --t 1]
//   hdchain couple     --x 100 --y 1000 [--i 5] [--protocol maximal|shift]
//   hdchain overshoot  --x 100 --y 10000
//
// Exit status: 0 success, 2 usage error, 3 harmonic table capacity exceeded.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "hdchain/commands.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitCapacity = 3;

struct RawFlags {
  std::optional<std::uint64_t> n, i, k, x, y;
  std::optional<double> t;
  std::uint64_t reps = 100000;
  std::optional<std::uint64_t> seed;
  std::string mode = "continuous";
  std::string protocol = "maximal";
  std::string format = "json";
  std::string out;
  unsigned workers = 1;
  std::size_t table_size = hdchain::kDefaultTableSize;
  std::size_t cutoff = hdchain::kDefaultCutoff;
};

void add_flags(CLI::App& sub, RawFlags& flags) {
  sub.add_option("--n", flags.n, "start state");
  sub.add_option("--i", flags.i, "state index (limits: largest i; couple: level)");
  sub.add_option("--k", flags.k, "crossing level");
  sub.add_option("--x", flags.x, "lower start / level");
  sub.add_option("--y", flags.y, "upper start");
  sub.add_option("--t", flags.t, "time horizon for the survival check");
  sub.add_option("--reps", flags.reps, "Monte Carlo replicates")->capture_default_str();
  sub.add_option("--seed", flags.seed, "64-bit seed (default: $HD_SEED, else 20240917)");
  sub.add_option("--mode", flags.mode, "discrete | continuous")->capture_default_str();
  sub.add_option("--protocol", flags.protocol, "maximal | shift")->capture_default_str();
  sub.add_option("--format", flags.format, "csv | json")->capture_default_str();
  sub.add_option("--out", flags.out, "output file (default: stdout)");
  sub.add_option("--workers", flags.workers, "worker threads")->capture_default_str();
  sub.add_option("--table-size", flags.table_size, "harmonic table capacity")->capture_default_str();
  sub.add_option("--cutoff", flags.cutoff, "series cutoff for identity checks")->capture_default_str();
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("HD_SEED")) {
    try {
      std::size_t used = 0;
      const auto value = std::stoull(env, &used, 0);
      if (used == std::string(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw hdchain::UsageError(std::string("HD_SEED is not an unsigned integer: ") + env);
  }
  return hdchain::kDefaultSeed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic descent chain: exact occupation probabilities, identities and simulation"};
  app.require_subcommand(1);
  RawFlags flags;
  std::map<CLI::App*, std::string> names;
  for (const char* name : {"exact", "limits", "identities", "simulate", "couple", "overshoot"}) {
    auto* sub = app.add_subcommand(name);
    add_flags(*sub, flags);
    names[sub] = name;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    hdchain::RunConfig config;
    config.command = hdchain::parse_command(names.at(app.get_subcommands().front()));
    config.n = flags.n;
    config.i = flags.i;
    config.k = flags.k;
    config.x = flags.x;
    config.y = flags.y;
    config.t = flags.t;
    config.reps = flags.reps;
    config.seed = resolve_seed(flags.seed);
    try {
      config.mode = hdchain::parse_time_mode(flags.mode);
      config.protocol = hdchain::parse_coupling_protocol(flags.protocol);
    } catch (const std::invalid_argument& e) {
      throw hdchain::UsageError(e.what());
    }
    config.format = hdchain::parse_output_format(flags.format);
    config.out = flags.out;
    config.workers = flags.workers;
    config.table_size = flags.table_size;
    config.cutoff = flags.cutoff;

    const auto text = hdchain::render(hdchain::run_cli(config), config.format);
    if (config.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream file(config.out, std::ios::binary);
      file << text;
      if (!file) {
        std::cerr << "hdchain: cannot write " << config.out << '\n';
        return 1;
      }
    }
    return 0;
  } catch (const hdchain::UsageError& e) {
    std::cerr << "hdchain: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const hdchain::CapacityError& e) {
    std::cerr << "hdchain: capacity exceeded: " << e.what() << " (raise --table-size)\n";
    return kExitCapacity;
  } catch (const std::domain_error& e) {
    std::cerr << "hdchain: usage error: " << e.what() << '\n';
    return kExitUsage;
  }
}

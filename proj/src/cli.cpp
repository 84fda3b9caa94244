#include "orthohaar/cli.hpp"

#include "orthohaar/battery.hpp"
#include "orthohaar/io.hpp"
#include "orthohaar/rng.hpp"
#include "orthohaar/sampler.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace orthohaar {
namespace {

// Default seed for `verify`, so CI runs are reproducible.
constexpr std::uint64_t kVerifySeed = 0x5EED2026;
constexpr int kSoakRounds = 5;

struct Config {
  std::vector<int> p;
  std::size_t n = 1;
  std::string seed = "0";
  std::string method = "recursive";
  std::string format = "text";
  double alpha = 0.01;
  std::string out_path;
  unsigned threads = 1;
  std::size_t warmup = 10;
  bool soak = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::string& flag_value) {
  const char* env = std::getenv("HAAR_SEED");
  try {
    return parse_seed(env != nullptr ? std::string(env) : flag_value);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

Method resolve_method(const std::string& name) {
  try {
    return parse_method(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void add_common(CLI::App* cmd, Config& cfg, bool many_p) {
  auto* popt = cmd->add_option("--p", cfg.p, many_p ? "Matrix sizes (comma separated)" : "Matrix size")
                   ->check(CLI::Range(1, std::numeric_limits<int>::max()));
  if (many_p) popt->delimiter(',');
  else popt->expected(1);
  cmd->add_option("--n", cfg.n, "Number of draws")->check(CLI::Range(std::size_t{1}, std::numeric_limits<std::size_t>::max()));
  cmd->add_option("--seed", cfg.seed, "Seed, decimal or 0x-hex (HAAR_SEED overrides)");
  cmd->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  cmd->add_option("--out", cfg.out_path, "Write output to FILE instead of stdout");
}

int cmd_sample(const Config& cfg, std::ostream& os) {
  const auto method = resolve_method(cfg.method);
  const RngStream root(resolve_seed(cfg.seed));
  const auto draws = sample_batch(method, cfg.p.at(0), cfg.n, root, cfg.threads);
  if (cfg.format == "json") write_json(os, draws);
  else write_text(os, draws);
  return kExitOk;
}

int cmd_verify(const Config& cfg, std::ostream& os) {
  const auto method = resolve_method(cfg.method);
  const std::vector<int> ps = cfg.p.empty() ? std::vector<int>{2, 3, 5} : cfg.p;
  std::vector<std::uint64_t> seeds;
  if (cfg.soak) {
    std::random_device rd;
    for (int i = 0; i < kSoakRounds; ++i)
      seeds.push_back((std::uint64_t{rd()} << 32) | rd());
  } else {
    seeds.push_back(cfg.seed.empty() && std::getenv("HAAR_SEED") == nullptr ? kVerifySeed
                                                                             : resolve_seed(cfg.seed));
  }
  std::vector<TestReport> all;
  for (auto seed : seeds) {
    for (int p : ps) {
      BatteryOptions opts{method, p, cfg.n, seed, cfg.alpha};
      auto reports = run_battery(opts);
      for (auto& r : reports) {
        r.details += " seed=" + std::to_string(seed) + " method=" + std::string(to_string(method));
        if (cfg.format == "text") os << r.to_line() << '\n';
      }
      all.insert(all.end(), reports.begin(), reports.end());
    }
  }
  const auto doc = reports_to_json(all);
  if (cfg.format == "json") os << doc.dump(2) << '\n';
  return doc.at("passed").get<bool>() ? kExitOk : kExitFailure;
}

struct BenchRow {
  int p;
  Method method;
  double seconds;
  double checksum;
};

int cmd_bench(const Config& cfg, std::ostream& os) {
  const std::vector<int> ps = cfg.p.empty() ? std::vector<int>{10, 50, 100} : cfg.p;
  const RngStream root(resolve_seed(cfg.seed));
  std::vector<BenchRow> rows;
  for (int p : ps) {
    for (Method method : {Method::kRecursive, Method::kQr}) {
      for (std::size_t i = 0; i < cfg.warmup; ++i) {
        auto rng = root.split(~std::uint64_t{0} - i);
        (void)draw(method, p, rng);
      }
      double checksum = 0.0;
      const auto start = std::chrono::steady_clock::now();
      for (std::size_t i = 0; i < cfg.n; ++i) {
        auto rng = root.split(i);
        checksum += draw(method, p, rng).gamma.matrix().trace();
      }
      const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
      rows.push_back({p, method, elapsed.count(), checksum});
    }
  }
  auto qr_seconds = [&](int p) {
    for (const auto& r : rows)
      if (r.p == p && r.method == Method::kQr) return r.seconds;
    return 0.0;
  };
  const double n = static_cast<double>(cfg.n);
  if (cfg.format == "json") {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : rows) {
      doc.push_back({{"p", r.p},
                     {"method", to_string(r.method)},
                     {"draws", cfg.n},
                     {"seconds", r.seconds},
                     {"draws_per_sec", n / r.seconds},
                     {"speedup_vs_qr", qr_seconds(r.p) / r.seconds},
                     {"checksum", format_17g(r.checksum)}});
    }
    os << doc.dump(2) << '\n';
    return kExitOk;
  }
  os << std::left << std::setw(6) << "p" << std::setw(11) << "method" << std::setw(10) << "draws"
     << std::setw(14) << "seconds" << std::setw(16) << "draws_per_sec" << std::setw(15)
     << "speedup_vs_qr" << "checksum" << '\n';
  for (const auto& r : rows) {
    std::ostringstream line;
    line << std::left << std::setw(6) << r.p << std::setw(11) << to_string(r.method) << std::setw(10)
         << cfg.n << std::setw(14) << std::setprecision(6) << r.seconds << std::setw(16)
         << n / r.seconds << std::setw(15) << qr_seconds(r.p) / r.seconds
         << format_17g(r.checksum);
    os << line.str() << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Haar-distributed random orthogonal matrices", "orthohaar"};
  app.require_subcommand(1);
  Config cfg;

  auto* sample = app.add_subcommand("sample", "Draw matrices and print them");
  add_common(sample, cfg, false);
  sample->add_option("--method", cfg.method, "recursive | qr | qr-nosign");
  sample->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)");

  auto* verify = app.add_subcommand("verify", "Run the statistical verification battery");
  add_common(verify, cfg, true);
  verify->add_option("--method", cfg.method, "recursive | qr | qr-nosign");
  verify->add_option("--alpha", cfg.alpha, "Significance level")
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            double a = 0.0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), a);
            const bool ok = ec == std::errc{} && ptr == s.data() + s.size() && a > 0.0 && a < 0.5;
            return ok ? "" : "alpha must lie in (0, 0.5)";
          },
          "(0,0.5)"));
  verify->add_flag("--soak", cfg.soak, "Fresh entropy seeds, repeated rounds");

  auto* bench = app.add_subcommand("bench", "Time recursive and QR sampling");
  add_common(bench, cfg, true);
  bench->add_option("--warmup", cfg.warmup, "Untimed draws per method before timing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  const bool sampling = sample->parsed();
  if (sampling && cfg.p.empty()) cfg.p = {1};
  if (verify->parsed()) {
    if (verify->count("--n") == 0) cfg.n = 100000;
    if (verify->count("--seed") == 0) cfg.seed.clear();
  }
  if (bench->parsed() && bench->count("--n") == 0) cfg.n = 100;

  std::ofstream file;
  std::ostream* os = &out;
  if (!cfg.out_path.empty()) {
    file.open(cfg.out_path);
    if (!file) {
      err << "error: cannot open " << cfg.out_path << " for writing\n";
      return kExitFailure;
    }
    os = &file;
  }

  try {
    int code = kExitOk;
    if (sampling) code = cmd_sample(cfg, *os);
    else if (verify->parsed()) code = cmd_verify(cfg, *os);
    else code = cmd_bench(cfg, *os);
    os->flush();
    if (!*os) {
      err << "error: write failed\n";
      return kExitFailure;
    }
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace orthohaar

#include "orthohaar/stats.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace orthohaar {
namespace {

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(std::string_view s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("TestReport: bad number '" + std::string(s) + "'");
  return v;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

std::vector<double> sorted_copy(std::span<const double> v) {
  std::vector<double> s(v.begin(), v.end());
  std::sort(s.begin(), s.end());
  return s;
}

TestReport make_report(std::string name, std::vector<std::size_t> n, double statistic,
                       double threshold, std::string details = {}) {
  TestReport r{std::move(name), std::move(n), statistic, threshold, false, std::move(details)};
  r.passed = std::abs(statistic) <= threshold;
  return r;
}

}  // namespace

std::string TestReport::to_line() const {
  std::string sizes;
  for (std::size_t i = 0; i < n.size(); ++i) sizes += (i ? "," : "") + std::to_string(n[i]);
  return "name=" + name + " n=" + sizes + " statistic=" + format_double(statistic) +
         " threshold=" + format_double(threshold) + " passed=" + (passed ? "true" : "false") +
         " details=\"" + escape(details) + "\"";
}

TestReport TestReport::from_line(std::string_view line) {
  TestReport r;
  std::size_t pos = 0;
  auto next_field = [&](std::string_view key) -> std::string_view {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (line.substr(pos, key.size() + 1) != std::string(key) + "=")
      throw std::invalid_argument("TestReport: expected field '" + std::string(key) + "'");
    pos += key.size() + 1;
    const auto end = std::min(line.find(' ', pos), line.size());
    const auto value = line.substr(pos, end - pos);
    pos = end;
    return value;
  };
  r.name = std::string(next_field("name"));
  const auto sizes = next_field("n");
  for (std::size_t start = 0; start < sizes.size();) {
    const auto comma = std::min(sizes.find(',', start), sizes.size());
    std::size_t v = 0;
    std::from_chars(sizes.data() + start, sizes.data() + comma, v);
    r.n.push_back(v);
    start = comma + 1;
  }
  r.statistic = parse_double(next_field("statistic"));
  r.threshold = parse_double(next_field("threshold"));
  const auto passed = next_field("passed");
  if (passed != "true" && passed != "false")
    throw std::invalid_argument("TestReport: passed must be true or false");
  r.passed = passed == "true";
  while (pos < line.size() && line[pos] == ' ') ++pos;
  if (line.substr(pos, 9) != "details=\"")
    throw std::invalid_argument("TestReport: expected details field");
  pos += 9;
  for (; pos < line.size() && line[pos] != '"'; ++pos) {
    if (line[pos] == '\\' && pos + 1 < line.size()) {
      ++pos;
      r.details += line[pos] == 'n' ? '\n' : line[pos];
    } else {
      r.details += line[pos];
    }
  }
  if (pos >= line.size()) throw std::invalid_argument("TestReport: unterminated details");
  return r;
}

void to_json(nlohmann::json& j, const TestReport& r) {
  j = nlohmann::json{{"name", r.name},           {"n", r.n},
                     {"statistic", r.statistic}, {"threshold", r.threshold},
                     {"passed", r.passed},       {"details", r.details}};
}

void from_json(const nlohmann::json& j, TestReport& r) {
  j.at("name").get_to(r.name);
  j.at("n").get_to(r.n);
  // Infinite statistics serialize as null.
  r.statistic = j.at("statistic").is_null() ? std::numeric_limits<double>::infinity()
                                            : j.at("statistic").get<double>();
  j.at("threshold").get_to(r.threshold);
  j.at("passed").get_to(r.passed);
  j.at("details").get_to(r.details);
}

nlohmann::json reports_to_json(std::span<const TestReport> reports) {
  const bool all = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
  return {{"reports", std::vector<TestReport>(reports.begin(), reports.end())}, {"passed", all}};
}

double kolmogorov_critical(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("kolmogorov_critical: alpha outside (0,1)");
  return std::sqrt(-0.5 * std::log(0.5 * alpha));
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  const auto s = sorted_copy(samples);
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double f = cdf(s[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  const auto sa = sorted_copy(a);
  const auto sb = sorted_copy(b);
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double x = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] == x) ++i;
    while (j < sb.size() && sb[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

TestReport ks_one_sample(std::string name, std::span<const double> samples,
                         const std::function<double(double)>& cdf, KsOptions opts) {
  const double d = ks_statistic(samples, cdf);
  const double n = static_cast<double>(samples.size());
  const double thr = opts.inflation * kolmogorov_critical(opts.alpha) / std::sqrt(n);
  return make_report(std::move(name), {samples.size()}, d, thr,
                     "ks1 alpha=" + format_double(opts.alpha) +
                         " inflation=" + format_double(opts.inflation));
}

TestReport ks_two_sample(std::string name, std::span<const double> a, std::span<const double> b,
                         KsOptions opts) {
  const double d = ks_statistic(a, b);
  const double n = static_cast<double>(a.size());
  const double m = static_cast<double>(b.size());
  const double thr = opts.inflation * kolmogorov_critical(opts.alpha) * std::sqrt((n + m) / (n * m));
  return make_report(std::move(name), {a.size(), b.size()}, d, thr,
                     "ks2 alpha=" + format_double(opts.alpha) +
                         " inflation=" + format_double(opts.inflation));
}

TestReport moment_test(std::string name, std::span<const double> samples, double target,
                       double sigmas) {
  if (samples.size() < 2) throw std::invalid_argument("moment_test: need at least two samples");
  const double n = static_cast<double>(samples.size());
  const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  const std::string details = "mean=" + format_double(mean) + " target=" + format_double(target) +
                              " stderr=" + format_double(se);
  if (se == 0.0) {
    if (mean == target) return make_report(std::move(name), {samples.size()}, 0.0, sigmas, details);
    return make_report(std::move(name), {samples.size()}, std::numeric_limits<double>::infinity(),
                       sigmas, details + " zero variance with mean != target");
  }
  return make_report(std::move(name), {samples.size()}, std::abs(mean - target) / se, sigmas,
                     details);
}

TestReport frequency_test(std::string name, std::size_t hits, std::size_t n, double target,
                          double half_width) {
  if (n == 0) throw std::invalid_argument("frequency_test: n must be positive");
  const double freq = static_cast<double>(hits) / static_cast<double>(n);
  const double dn = static_cast<double>(n);
  // Deviation in counts first, so band edges like 5150/10000 vs 0.5 +- 0.015 compare exactly.
  const double deviation = (static_cast<double>(hits) - target * dn) / dn;
  return make_report(std::move(name), {n}, deviation, half_width,
                     "frequency=" + format_double(freq) + " target=" + format_double(target));
}

double quantize(double x, double resolution) {
  if (!(resolution > 0.0)) throw std::domain_error("quantize: resolution must be positive");
  return std::round(x / resolution) * resolution;
}

TestReport invariance_test(std::string name, const MatrixSampler& sampler,
                           const OrthogonalMatrix& g_left, const OrthogonalMatrix& g_right,
                           const MatrixStatistic& statistic, std::size_t n, const RngStream& rng,
                           KsOptions opts) {
  if (n == 0) throw std::invalid_argument("invariance_test: n must be positive");
  auto plain_rng = rng.split(0);
  auto moved_rng = rng.split(1);
  std::vector<double> plain(n), moved(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Matrix g = sampler(plain_rng);
    if (g.rows() != g_left.size() || g.cols() != g_right.size())
      throw std::invalid_argument("invariance_test: group elements do not match sample size");
    plain[i] = statistic(g);
    moved[i] = statistic(matmul(matmul(g_left.matrix(), sampler(moved_rng)),
                                g_right.matrix().transposed()));
  }
  return ks_two_sample(std::move(name), plain, moved, opts);
}

}  // namespace orthohaar

#pragma once

#include "orthohaar/matrix.hpp"
#include "orthohaar/rng.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace orthohaar {

/// Outcome of one statistical check. For every kind of test,
/// passed == (|statistic| <= threshold).
struct TestReport {
  std::string name;
  std::vector<std::size_t> n;
  double statistic = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::string details;

  /// `name=... n=a[,b] statistic=... threshold=... passed=true|false details="..."`
  std::string to_line() const;
  static TestReport from_line(std::string_view line);

  friend bool operator==(const TestReport&, const TestReport&) = default;
};

void to_json(nlohmann::json& j, const TestReport& r);
void from_json(const nlohmann::json& j, TestReport& r);

/// Aggregate document: {"reports": [...], "passed": <all passed>}.
nlohmann::json reports_to_json(std::span<const TestReport> reports);

/// Asymptotic Kolmogorov critical value sqrt(-ln(alpha/2) / 2); 1.628 at alpha = 0.01.
double kolmogorov_critical(double alpha);

struct KsOptions {
  double alpha = 0.01;
  /// Multiplies the critical value, e.g. 2 when conditioning by binning.
  double inflation = 1.0;
};

/// sup_x |F_n(x) - F(x)| from the sorted sample, against threshold c(alpha)/sqrt(n).
TestReport ks_one_sample(std::string name, std::span<const double> samples,
                         const std::function<double(double)>& cdf, KsOptions opts = {});

/// Two-sample statistic against c(alpha) sqrt((n + m) / (n m)).
TestReport ks_two_sample(std::string name, std::span<const double> a, std::span<const double> b,
                         KsOptions opts = {});

/// Raw statistics without the report wrapper.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// |mean - target| / (sd / sqrt(n)) against `sigmas` (default 5) standard errors.
TestReport moment_test(std::string name, std::span<const double> samples, double target,
                       double sigmas = 5.0);

/// Empirical frequency of `hits` out of n must lie within target +- half_width.
TestReport frequency_test(std::string name, std::size_t hits, std::size_t n, double target,
                          double half_width);

/// Rounds x to a multiple of `resolution`. Scalar statistics of Haar draws can
/// carry atoms (the trace of a reflection in O_2 is exactly 0) that rounding
/// noise would otherwise split; applying this to both samples keeps equal laws
/// equal while making the KS comparison insensitive to last-bit differences.
double quantize(double x, double resolution = 1e-12);

using MatrixSampler = std::function<Matrix(RngStream&)>;
using MatrixStatistic = std::function<double(const Matrix&)>;

/// Compares statistic(G) with statistic(g_left G g_right^T) over two independent
/// batches of n draws (taken from rng.split(0) and rng.split(1)).
TestReport invariance_test(std::string name, const MatrixSampler& sampler,
                           const OrthogonalMatrix& g_left, const OrthogonalMatrix& g_right,
                           const MatrixStatistic& statistic, std::size_t n, const RngStream& rng,
                           KsOptions opts = {});

}  // namespace orthohaar

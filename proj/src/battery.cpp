#include "orthohaar/battery.hpp"

#include "orthohaar/marginal.hpp"
#include "orthohaar/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace orthohaar {
namespace {

Matrix cyclic_shift(int p) {
  Matrix m(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) m(static_cast<std::size_t>((i + 1) % p), static_cast<std::size_t>(i)) = 1.0;
  return m;
}

Matrix givens(int p, double angle) {
  Matrix m = Matrix::identity(static_cast<std::size_t>(p));
  if (p < 2) return m;
  const std::size_t a = 0, b = static_cast<std::size_t>(p - 1);
  m(a, a) = std::cos(angle);
  m(a, b) = -std::sin(angle);
  m(b, a) = std::sin(angle);
  m(b, b) = std::cos(angle);
  return m;
}

Matrix swap01(int p) {
  Matrix m = Matrix::identity(static_cast<std::size_t>(p));
  if (p < 2) return m;
  m(0, 0) = m(1, 1) = 0.0;
  m(0, 1) = m(1, 0) = 1.0;
  return m;
}

std::string tag(const std::string& base, int p) { return base + "_p" + std::to_string(p); }

}  // namespace

std::pair<OrthogonalMatrix, OrthogonalMatrix> fixed_group_pair(int p, int which) {
  if (p == 1) {
    return {OrthogonalMatrix(Matrix{{-1.0}}), OrthogonalMatrix(Matrix{{which == 0 ? 1.0 : -1.0}})};
  }
  if (which == 0)
    return {OrthogonalMatrix(matmul(givens(p, 0.7), cyclic_shift(p))),
            OrthogonalMatrix(givens(p, -1.9))};
  return {OrthogonalMatrix(matmul(cross_section_matrix(0.3, p).matrix(), swap01(p))),
          OrthogonalMatrix(matmul(cyclic_shift(p), cross_section_matrix(-0.55, p).matrix()))};
}

std::vector<TestReport> run_battery(const BatteryOptions& opts) {
  const int p = opts.p;
  const std::size_t n = opts.n;
  const KsOptions ks{opts.alpha, 1.0};
  const RngStream root(opts.seed, 0);
  std::vector<TestReport> out;

  const auto draws = sample_batch(opts.method, p, n, root.split(1));

  double worst_residual = 0.0, worst_det = 0.0;
  std::size_t positive = 0;
  std::vector<double> g11(n), g11_sq(n), g11_4(n), trace(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& g = draws[i].gamma;
    worst_residual = std::max(worst_residual, g.residual());
    const double det = determinant(g.matrix());
    worst_det = std::max(worst_det, std::abs(std::abs(det) - 1.0));
    positive += det > 0.0 ? 1 : 0;
    g11[i] = g(0, 0);
    g11_sq[i] = g11[i] * g11[i];
    g11_4[i] = g11_sq[i] * g11_sq[i];
    trace[i] = quantize(g.matrix().trace());
  }
  out.push_back(TestReport{tag("orthogonality_residual", p), {n}, worst_residual,
                           OrthogonalMatrix::kResidualTolerance,
                           worst_residual <= OrthogonalMatrix::kResidualTolerance, "max over draws"});
  out.push_back(TestReport{tag("determinant_modulus", p), {n}, worst_det,
                           OrthogonalMatrix::kDeterminantTolerance,
                           worst_det <= OrthogonalMatrix::kDeterminantTolerance,
                           "max ||det| - 1| over draws"});

  if (p == 1) {
    const auto plus = static_cast<std::size_t>(std::count(g11.begin(), g11.end(), 1.0));
    out.push_back(frequency_test(tag("gamma11_plus_one_frequency", p), plus, n, 0.5, 0.015));
  } else {
    const MarginalLaw law(p);
    out.push_back(ks_one_sample(tag("gamma11_marginal_ks", p), g11,
                                [&](double x) { return law.cdf(x); }, ks));
  }
  const double dp = p;
  out.push_back(moment_test(tag("gamma11_second_moment", p), g11_sq, 1.0 / dp));
  out.push_back(moment_test(tag("gamma11_fourth_moment", p), g11_4, 3.0 / (dp * (dp + 2.0))));
  out.push_back(frequency_test(tag("determinant_sign_split", p), positive, n, 0.5, 0.015));

  // Conditional law of the first column and row given gamma11 in a thin bin.
  if (p >= 3) {
    std::vector<double> col, row;
    for (const auto& d : draws) {
      const auto& g = d.gamma;
      if (std::abs(g(0, 0)) >= 0.05) continue;
      const double s = std::sqrt((1.0 - g(0, 0)) * (1.0 + g(0, 0)));
      col.push_back(g(1, 0) / s);
      row.push_back(g(0, 1) / s);
    }
    if (col.size() >= 100) {
      const MarginalLaw sphere_coord(p - 1);
      const auto cdf = [&](double x) { return sphere_coord.cdf(x); };
      const KsOptions binned{opts.alpha, 2.0};
      out.push_back(ks_one_sample(tag("conditional_gamma21_first_coordinate", p), col, cdf, binned));
      out.push_back(ks_one_sample(tag("conditional_gamma12_first_coordinate", p), row, cdf, binned));
    }
  }

  const MatrixSampler sampler = [&](RngStream& rng) { return draw(opts.method, p, rng).gamma.matrix(); };
  const auto [gl, gr] = fixed_group_pair(p, 0);
  out.push_back(invariance_test(tag("invariance_gamma11", p), sampler, gl, gr,
                                [](const Matrix& m) { return quantize(m(0, 0)); }, n, root.split(2), ks));
  out.push_back(invariance_test(tag("invariance_trace", p), sampler, gl, gr,
                                [](const Matrix& m) { return quantize(m.trace()); }, n, root.split(3), ks));

  const Method other = opts.method == Method::kRecursive ? Method::kQr : Method::kRecursive;
  const auto reference = sample_batch(other, p, n, root.split(4));
  std::vector<double> ref_g11(n), ref_trace(n);
  for (std::size_t i = 0; i < n; ++i) {
    ref_g11[i] = quantize(reference[i].gamma(0, 0));
    ref_trace[i] = quantize(reference[i].gamma.matrix().trace());
  }
  const std::string vs = std::string("_vs_") + std::string(to_string(other));
  std::vector<double> g11_q(n);
  std::transform(g11.begin(), g11.end(), g11_q.begin(), [](double x) { return quantize(x); });
  out.push_back(ks_two_sample(tag("equivalence_gamma11" + vs, p), g11_q, ref_g11, ks));
  out.push_back(ks_two_sample(tag("equivalence_trace" + vs, p), trace, ref_trace, ks));
  return out;
}

}  // namespace orthohaar

#include "orthohaar/sampler.hpp"

#include "orthohaar/sphere.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>

namespace orthohaar {
namespace {

void require_p(int p, int min, const char* where) {
  if (p < min)
    throw std::invalid_argument(std::string(where) + ": p must be >= " + std::to_string(min) +
                                ", got " + std::to_string(p));
}

void check_row_col(double complement, std::span<const double> g21, std::span<const double> g12) {
  if (g21.empty() || g21.size() != g12.size())
    throw std::domain_error("ConditionalInput: Gamma21 and Gamma12 must have equal nonzero length");
  if (!(complement > 0.0)) throw std::domain_error("ConditionalInput: gamma11 outside (-1,1)");
  const double target = complement * complement;
  for (auto v : {g21, g12}) {
    const double n = euclidean_norm(v);
    if (!(std::abs(n * n - target) <= ConditionalInput::kNormTolerance * target))
      throw std::domain_error("ConditionalInput: squared norm does not match 1 - gamma11^2");
  }
}

// h1 diag(-gamma11, delta) h2 for reflectors built from the conditioning value.
Matrix lower_block(const ConditionalInput& cond, const Matrix& delta) {
  const std::size_t m = cond.p() - 1;
  if (delta.rows() != m - 1 || delta.cols() != m - 1)
    throw std::invalid_argument("conditional_gamma22: delta must be " + std::to_string(m - 1) +
                                "x" + std::to_string(m - 1));
  const auto h1 = reflector_from_scaled_e1(cond.gamma21(), cond.complement());
  const auto h2 = reflector_from_scaled_e1(cond.gamma12(), cond.complement());
  Matrix block(m, m);
  block(0, 0) = -cond.gamma11();
  for (std::size_t i = 0; i + 1 < m; ++i)
    std::copy(delta.row(i).begin(), delta.row(i).end(), block.row(i + 1).begin() + 1);
  h2.apply_right(block);
  h1.apply_left(block);
  return block;
}

std::vector<double> scaled(const UnitVector& u, double s) {
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = s * u[i];
  return out;
}

SeedRecord record_of(const RngStream& rng) {
  return {rng.seed(), rng.stream_index(), rng.words_consumed()};
}

Matrix recursive_matrix(int p, RngStream& rng) {
  Matrix delta;
  int k = p % 2;
  if (k == 1) delta = Matrix{{rng.next_uniform() < 0.5 ? 1.0 : -1.0}};
  for (; k + 2 <= p; k += 2) {
    const int m = k + 2;
    const auto g = MarginalLaw(m).draw(rng);
    const auto u1 = sample_uniform_sphere(static_cast<std::size_t>(m - 1), rng);
    const auto u2 = sample_uniform_sphere(static_cast<std::size_t>(m - 1), rng);
    const auto cond =
        ConditionalInput::with_complement(g.value, g.complement, scaled(u1, g.complement),
                                          scaled(u2, g.complement));
    delta = assemble(cond, lower_block(cond, delta));
  }
  return delta;
}

Matrix gaussian_qr(int p, RngStream& rng, bool fix_signs) {
  Eigen::MatrixXd a(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) a(i, j) = rng.next_normal();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  if (fix_signs) {
    const auto diag = qr.matrixQR().diagonal();
    for (int j = 0; j < p; ++j)
      if (diag(j) < 0.0) q.col(j) *= -1.0;
  }
  Matrix out(static_cast<std::size_t>(p), static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) out(i, j) = q(i, j);
  return out;
}

}  // namespace

std::string_view to_string(Method m) {
  switch (m) {
    case Method::kRecursive: return "recursive";
    case Method::kQr: return "qr";
    case Method::kQrNoSign: return "qr-nosign";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "recursive") return Method::kRecursive;
  if (name == "qr") return Method::kQr;
  if (name == "qr-nosign") return Method::kQrNoSign;
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

std::string SeedRecord::str() const {
  return std::to_string(seed) + ":" + std::to_string(stream_index) + ":" + std::to_string(offset);
}

ConditionalInput::ConditionalInput(double gamma11, std::vector<double> gamma21,
                                   std::vector<double> gamma12) {
  if (!(std::abs(gamma11) < 1.0))
    throw std::domain_error("ConditionalInput: |gamma11| must be < 1");
  *this = with_complement(gamma11, std::sqrt((1.0 - gamma11) * (1.0 + gamma11)),
                          std::move(gamma21), std::move(gamma12));
}

ConditionalInput ConditionalInput::with_complement(double gamma11, double complement,
                                                   std::vector<double> gamma21,
                                                   std::vector<double> gamma12) {
  if (!(std::abs(gamma11) <= 1.0)) throw std::domain_error("ConditionalInput: |gamma11| > 1");
  check_row_col(complement, gamma21, gamma12);
  ConditionalInput c;
  c.gamma11_ = gamma11;
  c.complement_ = complement;
  c.gamma21_ = std::move(gamma21);
  c.gamma12_ = std::move(gamma12);
  return c;
}

RowColumn sample_row_col(double gamma11, int p, RngStream& rng) {
  require_p(p, 2, "sample_row_col");
  if (!(std::abs(gamma11) < 1.0)) throw std::domain_error("sample_row_col: |gamma11| must be < 1");
  const double s = std::sqrt((1.0 - gamma11) * (1.0 + gamma11));
  const auto u1 = sample_uniform_sphere(static_cast<std::size_t>(p - 1), rng);
  const auto u2 = sample_uniform_sphere(static_cast<std::size_t>(p - 1), rng);
  return {scaled(u1, s), scaled(u2, s)};
}

Matrix conditional_gamma22(const ConditionalInput& cond, const OrthogonalMatrix& delta) {
  return lower_block(cond, delta.matrix());
}

Matrix conditional_gamma22(const ConditionalInput& cond, RngStream& rng) {
  const auto delta = recursive_matrix(static_cast<int>(cond.p()) - 2, rng);
  return lower_block(cond, delta);
}

Matrix assemble(const ConditionalInput& cond, const Matrix& gamma22) {
  const std::size_t p = cond.p();
  if (gamma22.rows() != p - 1 || gamma22.cols() != p - 1)
    throw std::invalid_argument("assemble: gamma22 must be (p-1)x(p-1)");
  Matrix g(p, p);
  g(0, 0) = cond.gamma11();
  for (std::size_t i = 1; i < p; ++i) {
    g(0, i) = cond.gamma12()[i - 1];
    g(i, 0) = cond.gamma21()[i - 1];
    std::copy(gamma22.row(i - 1).begin(), gamma22.row(i - 1).end(), g.row(i).begin() + 1);
  }
  return g;
}

OrthogonalMatrix cross_section_matrix(double gamma11, int p) {
  require_p(p, 2, "cross_section_matrix");
  if (!(std::abs(gamma11) < 1.0))
    throw std::domain_error("cross_section_matrix: |gamma11| must be < 1");
  const double s = std::sqrt((1.0 - gamma11) * (1.0 + gamma11));
  Matrix m = Matrix::identity(static_cast<std::size_t>(p));
  m(0, 0) = gamma11;
  m(0, 1) = s;
  m(1, 0) = s;
  m(1, 1) = -gamma11;
  return OrthogonalMatrix(std::move(m));
}

HaarSample haar_sample(int p, RngStream& rng) {
  require_p(p, 1, "haar_sample");
  const auto rec = record_of(rng);
  return {OrthogonalMatrix(recursive_matrix(p, rng)), rec};
}

HaarSample qr_oracle(int p, RngStream& rng) {
  require_p(p, 1, "qr_oracle");
  const auto rec = record_of(rng);
  return {OrthogonalMatrix(gaussian_qr(p, rng, true)), rec};
}

HaarSample qr_unsigned(int p, RngStream& rng) {
  require_p(p, 1, "qr_unsigned");
  const auto rec = record_of(rng);
  return {OrthogonalMatrix(gaussian_qr(p, rng, false)), rec};
}

HaarSample draw(Method method, int p, RngStream& rng) {
  switch (method) {
    case Method::kRecursive: return haar_sample(p, rng);
    case Method::kQr: return qr_oracle(p, rng);
    case Method::kQrNoSign: return qr_unsigned(p, rng);
  }
  throw std::invalid_argument("draw: unknown method");
}

std::vector<HaarSample> sample_batch(Method method, int p, std::size_t n, const RngStream& parent,
                                     unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  std::vector<std::optional<HaarSample>> slots(n);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned worker, std::size_t begin, std::size_t end) {
    try {
      for (std::size_t i = begin; i < end; ++i) {
        auto rng = parent.split(i);
        slots[i] = draw(method, p, rng);
      }
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  if (threads <= 1) {
    work(0, 0, n);
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (n + threads - 1) / threads;
    unsigned worker = 0;
    for (std::size_t b = 0; b < n; b += chunk)
      pool.emplace_back(work, worker++, b, std::min(n, b + chunk));
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<HaarSample> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace orthohaar

#include "orthohaar/householder.hpp"

#include "orthohaar/sphere.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace orthohaar {
namespace {

void check_norms(double nu, double nv, const char* where) {
  if (!(nu > 0.0)) throw std::domain_error(std::string(where) + ": zero-norm input");
  if (!(std::abs(nu - nv) <= HouseholderReflector::kNormTolerance * nu))
    throw std::domain_error(std::string(where) + ": norms differ (" + std::to_string(nu) + " vs " +
                            std::to_string(nv) + ")");
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

HouseholderReflector::HouseholderReflector(std::size_t n, std::vector<double> w)
    : n_(n), w_(std::move(w)) {
  if (!w_.empty()) scale_ = 2.0 / dot(w_, w_);
}

HouseholderReflector HouseholderReflector::identity(std::size_t n) { return {n, {}}; }

HouseholderReflector HouseholderReflector::from_vector(std::vector<double> w) {
  if (w.empty() || !(euclidean_norm(w) > 0.0))
    throw std::domain_error("HouseholderReflector: w must be nonzero");
  const std::size_t n = w.size();
  return {n, std::move(w)};
}

void HouseholderReflector::apply_in_place(std::span<double> x) const {
  if (x.size() != n_)
    throw std::invalid_argument("apply_reflector: length " + std::to_string(x.size()) +
                                " does not match reflector size " + std::to_string(n_));
  if (is_identity()) return;
  const double f = scale_ * dot(w_, x);
  for (std::size_t i = 0; i < n_; ++i) x[i] -= f * w_[i];
}

void HouseholderReflector::apply_left(Matrix& m) const {
  if (m.rows() != n_) throw std::invalid_argument("apply_left: row count does not match reflector");
  if (is_identity()) return;
  // m - scale * w (w^T m)
  std::vector<double> wt_m(m.cols(), 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) wt_m[j] += w_[i] * r[j];
  }
  for (std::size_t i = 0; i < n_; ++i) {
    const double f = scale_ * w_[i];
    auto r = m.row(i);
    for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * wt_m[j];
  }
}

void HouseholderReflector::apply_right(Matrix& m) const {
  if (m.cols() != n_) throw std::invalid_argument("apply_right: column count does not match reflector");
  if (is_identity()) return;
  for (std::size_t i = 0; i < m.rows(); ++i) apply_in_place(m.row(i));
}

Matrix HouseholderReflector::dense() const {
  Matrix h = Matrix::identity(n_);
  if (is_identity()) return h;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) h(i, j) -= scale_ * w_[i] * w_[j];
  return h;
}

HouseholderReflector reflector_between(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) throw std::domain_error("reflector_between: length mismatch");
  const double nu = euclidean_norm(u);
  check_norms(nu, euclidean_norm(v), "reflector_between");
  std::vector<double> w(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] - v[i];
  if (euclidean_norm(w) <= HouseholderReflector::kCoincidence * nu)
    return HouseholderReflector::identity(u.size());
  return HouseholderReflector::from_vector(std::move(w));
}

HouseholderReflector reflector_from_scaled_e1(std::span<const double> target, double scale) {
  if (target.empty()) throw std::domain_error("reflector_from_scaled_e1: empty target");
  check_norms(scale, euclidean_norm(target), "reflector_from_scaled_e1");
  const std::size_t n = target.size();
  std::vector<double> w(n);
  double tail = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    w[i] = -target[i];
    tail += target[i] * target[i];
  }
  // scale - t1 = (scale^2 - t1^2) / (scale + t1) = tail / (scale + t1) when the norms agree.
  w[0] = target[0] > 0.0 ? tail / (scale + target[0]) : scale - target[0];
  if (euclidean_norm(w) <= HouseholderReflector::kCoincidence * scale)
    return HouseholderReflector::identity(n);
  return HouseholderReflector::from_vector(std::move(w));
}

HouseholderReflector reflector_to_scaled_e1(std::span<const double> target, double gamma) {
  if (!(std::abs(gamma) < 1.0))
    throw std::domain_error("reflector_to_scaled_e1: |gamma| must be < 1");
  const double scale = std::sqrt((1.0 - gamma) * (1.0 + gamma));
  return reflector_from_scaled_e1(target, scale);
}

std::vector<double> apply_reflector(const HouseholderReflector& h, std::span<const double> x) {
  std::vector<double> out(x.begin(), x.end());
  h.apply_in_place(out);
  return out;
}

}  // namespace orthohaar

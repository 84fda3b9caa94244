#pragma once

#include "orthohaar/householder.hpp"
#include "orthohaar/marginal.hpp"
#include "orthohaar/matrix.hpp"
#include "orthohaar/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace orthohaar {

enum class Method {
  kRecursive,  ///< block decomposition, built up from O_0 / O_1
  kQr,         ///< QR of a Gaussian matrix with R's diagonal signs absorbed into Q
  kQrNoSign,   ///< QR without the sign fix; not Haar, kept as a negative control
};

std::string_view to_string(Method m);
/// Accepts "recursive", "qr", "qr-nosign"; throws std::invalid_argument.
Method parse_method(std::string_view name);

/// Where a draw came from: the stream it was taken from and how many words
/// had been consumed when it started.
struct SeedRecord {
  std::uint64_t seed = 0;
  std::uint64_t stream_index = 0;
  std::uint64_t offset = 0;

  std::string str() const;
  friend bool operator==(const SeedRecord&, const SeedRecord&) = default;
};

struct HaarSample {
  OrthogonalMatrix gamma;
  SeedRecord seed_record;
};

/// The value (gamma11, Gamma21, Gamma12) conditioned on when completing a
/// matrix. Holds ||Gamma21||^2 = ||Gamma12||^2 = 1 - gamma11^2.
class ConditionalInput {
 public:
  static constexpr double kNormTolerance = 1e-10;

  /// Throws std::domain_error unless |gamma11| < 1, both vectors have the same
  /// nonzero length, and their squared norms match 1 - gamma11^2.
  ConditionalInput(double gamma11, std::vector<double> gamma21, std::vector<double> gamma12);

  /// Same checks against an explicitly supplied complement sqrt(1 - gamma11^2).
  /// Used by the sampler, where the complement is drawn without cancellation.
  static ConditionalInput with_complement(double gamma11, double complement,
                                          std::vector<double> gamma21,
                                          std::vector<double> gamma12);

  double gamma11() const { return gamma11_; }
  double complement() const { return complement_; }
  std::span<const double> gamma21() const { return gamma21_; }
  std::span<const double> gamma12() const { return gamma12_; }
  /// Size of the full matrix.
  std::size_t p() const { return gamma21_.size() + 1; }

 private:
  ConditionalInput() = default;

  double gamma11_ = 0.0;
  double complement_ = 0.0;
  std::vector<double> gamma21_;
  std::vector<double> gamma12_;
};

struct RowColumn {
  std::vector<double> gamma21;
  std::vector<double> gamma12;
};

/// sqrt(1 - gamma11^2) * (U1, U2) with U1, U2 iid uniform on the sphere in
/// R^(p-1). Draws U1 then U2. Throws std::domain_error if |gamma11| >= 1 or p < 2.
RowColumn sample_row_col(double gamma11, int p, RngStream& rng);

/// h1 diag(-gamma11, delta) h2^T where h1, h2 are the reflectors taking
/// sqrt(1 - gamma11^2) e1 to Gamma21 and Gamma12^T. `delta` must be of size p - 2.
Matrix conditional_gamma22(const ConditionalInput& cond, const OrthogonalMatrix& delta);
/// As above with delta drawn from the recursive Haar sampler on O_(p-2).
Matrix conditional_gamma22(const ConditionalInput& cond, RngStream& rng);

/// Full p x p matrix [[gamma11, Gamma12], [Gamma21, gamma22]].
Matrix assemble(const ConditionalInput& cond, const Matrix& gamma22);

/// Identity except the leading 2x2 block [[g, s], [s, -g]], s = sqrt(1 - g^2).
OrthogonalMatrix cross_section_matrix(double gamma11, int p);

/// Haar draw on O_p by the block decomposition. The build starts at O_(p mod 2)
/// (for odd p one uniform picks +-1) and grows by two per level; each level
/// consumes, in order, the gamma11 draw, then U1 (p'-1 normals) and U2
/// (p'-1 normals), where p' is that level's size.
HaarSample haar_sample(int p, RngStream& rng);

/// Haar draw via Householder QR of a p x p standard normal matrix (filled row
/// by row), with Q's columns multiplied by sign(R_jj). Zero diagonal maps to +1.
HaarSample qr_oracle(int p, RngStream& rng);

/// QR without the sign correction. Orthogonal but not Haar.
HaarSample qr_unsigned(int p, RngStream& rng);

HaarSample draw(Method method, int p, RngStream& rng);

/// n draws, draw i taken from parent.split(i). Work is spread over `threads`
/// workers (0 = hardware concurrency); the result is ordered by index and is
/// independent of the thread count.
std::vector<HaarSample> sample_batch(Method method, int p, std::size_t n, const RngStream& parent,
                                     unsigned threads = 1);

}  // namespace orthohaar

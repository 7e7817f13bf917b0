#ifndef FRAMELAB_RNG_HPP
#define FRAMELAB_RNG_HPP

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>

namespace framelab {

// SplitMix64 (Steele, Lea, Vigna). Chosen over <random> engines because the
// standard distributions are not bit-reproducible across library
// implementations; this generator plus the explicit mappings below is.
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Index in [0, n).
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  // Standard normal via Box-Muller; one value per call, no caching, so the
  // stream stays a pure function of the call sequence.
  double gaussian() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }

private:
  std::uint64_t state_;
};

inline Eigen::VectorXd random_vector(SplitMix64& rng, Eigen::Index n) {
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.gaussian();
  return v;
}

inline Eigen::MatrixXd random_matrix(SplitMix64& rng, Eigen::Index rows,
                                     Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.gaussian();
  return m;
}

// Haar-ish orthogonal matrix: QR of a Gaussian matrix with the sign of the
// R diagonal fixed so the result is deterministic in the seed.
inline Eigen::MatrixXd random_orthogonal(SplitMix64& rng, Eigen::Index n) {
  if (n == 0) return Eigen::MatrixXd(0, 0);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(random_matrix(rng, n, n));
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace framelab

#endif  // FRAMELAB_RNG_HPP

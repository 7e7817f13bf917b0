#ifndef FRAMELAB_KREIN_HPP
#define FRAMELAB_KREIN_HPP

#include <Eigen/Dense>
#include <utility>

#include "framelab/errors.hpp"

namespace framelab {

// Absolute tolerance for symmetry/involution validation of unit-scaled
// matrices. Constructors symmetrize before validating so that file
// round-trip noise does not reject otherwise valid inputs.
inline constexpr double kSymTolerance = 1e-8;

// Width of the neutral band in vector classification, relative to the
// squared J-norm.
inline constexpr double kDefiniteTolerance = 1e-10;

/// A symmetric involution J (J = J^T, J^2 = 1). Matrices whose spectrum is
/// not contained in {+1, -1} are rejected at construction, never coerced.
class FundamentalSymmetry {
public:
  explicit FundamentalSymmetry(Eigen::MatrixXd m);

  static FundamentalSymmetry identity(Eigen::Index dim);
  static FundamentalSymmetry from_signature(Eigen::Index n_plus,
                                            Eigen::Index n_minus);
  // Q * diag(+1...,-1...) * Q^T for an orthonormal basis Q.
  static FundamentalSymmetry conjugated(Eigen::Index n_plus,
                                        Eigen::Index n_minus,
                                        const Eigen::MatrixXd& basis);

  Eigen::Index dim() const { return mat_.rows(); }
  const Eigen::MatrixXd& matrix() const { return mat_; }
  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

private:
  Eigen::MatrixXd mat_;
};

enum class VectorClass { positive, negative, neutral };

/// Finite-dimensional Krein space: Euclidean R^n carrying the indefinite
/// inner product [x,y] = <x, Jy>. Since J^2 = 1, the associated definite
/// product [x,y]_J coincides with the Euclidean one, so the J-norm is the
/// Euclidean norm.
class KreinSpace {
public:
  explicit KreinSpace(FundamentalSymmetry symmetry);

  Eigen::Index dim() const { return symmetry_.dim(); }
  const FundamentalSymmetry& symmetry() const { return symmetry_; }
  Eigen::Index positive_dim() const { return n_plus_; }
  Eigen::Index negative_dim() const { return n_minus_; }

  double indefinite_inner(const Eigen::VectorXd& x,
                          const Eigen::VectorXd& y) const;
  double j_inner(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  double j_norm(const Eigen::VectorXd& x) const;

  // (P+, P-) = ((1+J)/2, (1-J)/2).
  std::pair<Eigen::MatrixXd, Eigen::MatrixXd> fundamental_projections() const;

  // Sign of [x,x] up to the neutral band; invariant under positive scaling.
  VectorClass classify(const Eigen::VectorXd& x) const;

private:
  FundamentalSymmetry symmetry_;
  Eigen::Index n_plus_ = 0;
  Eigen::Index n_minus_ = 0;
};

}  // namespace framelab

#endif  // FRAMELAB_KREIN_HPP

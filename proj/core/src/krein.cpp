#include "framelab/krein.hpp"

#include <cmath>

namespace framelab {

namespace {

void check_dim(const KreinSpace& space, const Eigen::VectorXd& x,
               const char* what) {
  if (x.size() != space.dim())
    throw DimensionError(std::string(what) + ": vector length " +
                         std::to_string(x.size()) + " does not match space dim " +
                         std::to_string(space.dim()));
}

}  // namespace

FundamentalSymmetry::FundamentalSymmetry(Eigen::MatrixXd m) {
  if (m.rows() != m.cols())
    throw DimensionError("fundamental symmetry must be square, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  const Eigen::Index n = m.rows();
  if (n == 0) {
    mat_ = std::move(m);
    return;
  }
  const double asym = 0.5 * (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymTolerance)
    throw InvariantViolation("symmetry",
                             "matrix deviates from its transpose by " +
                                 std::to_string(asym));
  mat_ = 0.5 * (m + m.transpose());
  const double defect =
      (mat_ * mat_ - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > kSymTolerance)
    throw InvariantViolation(
        "involution", "J*J deviates from the identity by " +
                          std::to_string(defect) +
                          " (spectrum is not contained in {+1,-1})");
}

FundamentalSymmetry FundamentalSymmetry::identity(Eigen::Index dim) {
  FundamentalSymmetry j{Eigen::MatrixXd::Identity(dim, dim)};
  return j;
}

FundamentalSymmetry FundamentalSymmetry::from_signature(Eigen::Index n_plus,
                                                        Eigen::Index n_minus) {
  if (n_plus < 0 || n_minus < 0 || n_plus + n_minus < 1)
    throw DomainError("signature (" + std::to_string(n_plus) + "," +
                      std::to_string(n_minus) + ") must be nonnegative with positive total");
  Eigen::VectorXd d(n_plus + n_minus);
  d.head(n_plus).setOnes();
  d.tail(n_minus).setConstant(-1.0);
  return FundamentalSymmetry{Eigen::MatrixXd(d.asDiagonal())};
}

FundamentalSymmetry FundamentalSymmetry::conjugated(
    Eigen::Index n_plus, Eigen::Index n_minus, const Eigen::MatrixXd& basis) {
  const Eigen::Index n = n_plus + n_minus;
  if (basis.rows() != n || basis.cols() != n)
    throw DimensionError("orthogonal basis must be " + std::to_string(n) +
                         "x" + std::to_string(n));
  const double defect =
      (basis.transpose() * basis - Eigen::MatrixXd::Identity(n, n))
          .cwiseAbs()
          .maxCoeff();
  if (defect > kSymTolerance)
    throw InvariantViolation("orthonormal_basis",
                             "columns fail orthonormality by " +
                                 std::to_string(defect));
  Eigen::VectorXd d(n);
  d.head(n_plus).setOnes();
  d.tail(n_minus).setConstant(-1.0);
  return FundamentalSymmetry{basis * d.asDiagonal() * basis.transpose()};
}

Eigen::VectorXd FundamentalSymmetry::apply(const Eigen::VectorXd& x) const {
  if (x.size() != dim())
    throw DimensionError("symmetry applied to vector of length " +
                         std::to_string(x.size()));
  return mat_ * x;
}

KreinSpace::KreinSpace(FundamentalSymmetry symmetry)
    : symmetry_(std::move(symmetry)) {
  if (dim() == 0) return;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetry_.matrix());
  for (Eigen::Index i = 0; i < dim(); ++i)
    (es.eigenvalues()(i) > 0.0 ? n_plus_ : n_minus_) += 1;
}

double KreinSpace::indefinite_inner(const Eigen::VectorXd& x,
                                    const Eigen::VectorXd& y) const {
  check_dim(*this, x, "indefinite_inner");
  check_dim(*this, y, "indefinite_inner");
  return x.dot(symmetry_.matrix() * y);
}

double KreinSpace::j_inner(const Eigen::VectorXd& x,
                           const Eigen::VectorXd& y) const {
  check_dim(*this, x, "j_inner");
  check_dim(*this, y, "j_inner");
  // [x, Jy] = <x, J*J*y> = <x, y>; J^2 = 1 makes the definite product
  // Euclidean, so it is evaluated directly.
  return x.dot(y);
}

double KreinSpace::j_norm(const Eigen::VectorXd& x) const {
  check_dim(*this, x, "j_norm");
  return x.norm();
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd>
KreinSpace::fundamental_projections() const {
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim(), dim());
  return {0.5 * (id + symmetry_.matrix()), 0.5 * (id - symmetry_.matrix())};
}

VectorClass KreinSpace::classify(const Eigen::VectorXd& x) const {
  check_dim(*this, x, "classify");
  const double norm2 = x.squaredNorm();
  if (norm2 == 0.0) throw DomainError("classify: zero vector");
  const double value = indefinite_inner(x, x);
  const double band = kDefiniteTolerance * norm2;
  if (value > band) return VectorClass::positive;
  if (value < -band) return VectorClass::negative;
  return VectorClass::neutral;
}

}  // namespace framelab

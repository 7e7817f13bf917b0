#ifndef FRAMELAB_WMETRIC_HPP
#define FRAMELAB_WMETRIC_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "framelab/frame.hpp"
#include "framelab/krein.hpp"

namespace framelab {

// Eigenvalues below this fraction of the largest magnitude make the Gram
// operator's kernel numerically nontrivial; such inputs are rejected, not
// regularized.
inline constexpr double kKernelTolerance = 1e-12;
// Condition number kappa = ceiling/floor above which transfers carry a
// conditioning warning.
inline constexpr double kConditionWarning = 1e8;

/// Spectral factorization of a symmetric Gram operator W with trivial
/// kernel, together with its polar parts J, |W|, sqrt|W|, sqrt|W|^{-1}.
/// All derived matrices come from the one shared eigenfactorization.
class GramModel {
public:
  explicit GramModel(Eigen::MatrixXd w);

  Eigen::Index dim() const { return gram_.rows(); }
  const Eigen::MatrixXd& gram() const { return gram_; }
  // Ascending by absolute value; eigenvectors() columns match this order.
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
  const FundamentalSymmetry& symmetry() const { return symmetry_; }
  const Eigen::MatrixXd& abs_gram() const { return abs_gram_; }
  const Eigen::MatrixXd& sqrt_abs() const { return sqrt_abs_; }
  const Eigen::MatrixXd& inv_sqrt_abs() const { return inv_sqrt_abs_; }
  double spectral_floor() const { return floor_; }      // min |eigenvalue|
  double spectral_ceiling() const { return ceiling_; }  // max |eigenvalue|
  double condition() const { return ceiling_ / floor_; }

  // Copy of this model with the magnitude of one eigenvalue replaced
  // (sign kept), slots indexed in the stored |.|-ascending order. Used by
  // degradation sweeps to move a single spectral parameter.
  GramModel with_eigenvalue_magnitude(Eigen::Index slot, double magnitude) const;

private:
  GramModel(Eigen::MatrixXd basis, Eigen::VectorXd eigenvalues);
  void assemble();

  Eigen::MatrixXd gram_;
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
  FundamentalSymmetry symmetry_;
  Eigen::MatrixXd abs_gram_, sqrt_abs_, inv_sqrt_abs_;
  double floor_ = 0.0, ceiling_ = 0.0;
};

inline GramModel build_gram_model(Eigen::MatrixXd w) {
  return GramModel{std::move(w)};
}

/// Euclidean space re-metrized by W: [f,g] = <f, Wg> and
/// [f,g]_J = <f, |W|g>. The embedded KreinSpace carries the polar J, whose
/// fundamental projections are the spectral projections of W onto the
/// positive and negative half-axes.
class WKreinSpace {
public:
  explicit WKreinSpace(GramModel model);

  const GramModel& model() const { return model_; }
  const KreinSpace& space() const { return space_; }
  Eigen::Index dim() const { return model_.dim(); }

  double w_inner(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const;
  double w_j_inner(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const;
  double w_j_norm(const Eigen::VectorXd& f) const;

private:
  GramModel model_;
  KreinSpace space_;
};

// Optimal constants of A [k,k]_J <= sum_n |[g_n,k]|^2 <= B [k,k]_J for the
// columns of `vectors` against the W-metric; eigenvalue route.
BoundsPair wmetric_bounds(const WKreinSpace& ws, const Eigen::MatrixXd& vectors);
// Independent route: squared extreme singular values of the analysis map
// written in sqrt|W|-coordinates.
BoundsPair wmetric_bounds_oracle(const WKreinSpace& ws,
                                 const Eigen::MatrixXd& vectors);

// W-metric bounds of an untransferred family; for a non-regular spectrum
// these degrade away from the family's Euclidean bounds.
BoundsPair naive_frame_bounds(const WKreinSpace& ws, const FrameFamily& family);

struct TransferResult {
  Eigen::MatrixXd vectors;  // sqrt|W|^{-1} k_n
  BoundsPair euclidean;     // bounds of the input family
  BoundsPair w_metric;      // measured bounds of the transfer
  double kappa = 1.0;
  bool conditioning_warning = false;
};
// Moves a Euclidean frame into the W-metric space along the polar unitary;
// bounds are preserved up to conditioning.
TransferResult transfer_frame(const WKreinSpace& ws, const FrameFamily& family);

enum class SweepDirection { floor, ceiling };

struct SweepSample {
  double parameter = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double envelope = 0.0;       // B*p for floor sweeps, A*p for ceiling sweeps
  double witness_j_norm = 0.0; // ||g||_J of the spectral-window witness
  double witness_energy = 0.0; // |||W| g||^2, pinned to the swept window
  double witness_sum = 0.0;    // sum_n |[f_n, g]|^2
};

struct DegradationCurve {
  std::string parameter_name;  // "spectral_floor" or "spectral_ceiling"
  BoundsPair euclidean;        // bounds of the probed family
  std::vector<SweepSample> samples;
};

// Moves one eigenvalue of the base model through `parameters` and records
// the measured naive bounds; throws EnvelopeError if any sample escapes
// its theoretical envelope or the witness identities fail.
DegradationCurve degradation_sweep(const GramModel& base,
                                   const FrameFamily& family,
                                   SweepDirection direction,
                                   const std::vector<double>& parameters);

struct MultiplicationGram {
  GramModel model;
  Eigen::VectorXd points;
  Eigen::VectorXd weights;  // mu
  Eigen::VectorXd symbol;   // phi
};
// Discretized weighted function space with multiplication symbol phi: the
// measure weights are absorbed into coordinates so the Gram operator is
// diag(phi) in an orthonormal basis.
MultiplicationGram build_multiplication_gram(const Eigen::VectorXd& points,
                                             const Eigen::VectorXd& weights,
                                             const Eigen::VectorXd& symbol);

struct CompletenessReport {
  double spectral_floor = 0.0;
  double spectral_ceiling = 0.0;
  double kappa = 0.0;
  double floor_threshold = 0.0;
  double ceiling_threshold = 0.0;
  // At fixed finite dimension completeness always holds; the flags mark
  // the regimes where the infinite-dimensional theory would force a
  // proper completion or a proper domain.
  bool completion_divergent = false;
  bool domain_restriction = false;
};
CompletenessReport completeness_certificate(const GramModel& model,
                                            double floor_threshold = 1e-6,
                                            double ceiling_threshold = 1e6);

}  // namespace framelab

#endif  // FRAMELAB_WMETRIC_HPP

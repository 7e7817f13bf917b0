#include "framelab/wmetric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace framelab {

namespace {

void check_dim(Eigen::Index expected, const Eigen::VectorXd& v,
               const char* what) {
  if (v.size() != expected)
    throw DimensionError(std::string(what) + ": vector length " +
                         std::to_string(v.size()) + " for dim " +
                         std::to_string(expected));
}

BoundsPair eigenvalue_extremes(const Eigen::MatrixXd& symmetric) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (symmetric + symmetric.transpose()), Eigen::EigenvaluesOnly);
  return {es.eigenvalues()(0), es.eigenvalues()(symmetric.rows() - 1)};
}

}  // namespace

GramModel::GramModel(Eigen::MatrixXd w)
    : gram_(std::move(w)), symmetry_(FundamentalSymmetry::identity(0)) {
  if (gram_.rows() != gram_.cols())
    throw DimensionError("Gram operator must be square");
  if (gram_.rows() == 0) throw DomainError("Gram operator must be nonempty");
  const double scale = gram_.cwiseAbs().maxCoeff();
  const double asym = 0.5 * (gram_ - gram_.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymTolerance * std::max(1.0, scale))
    throw InvariantViolation("gram.symmetry",
                             "Gram operator deviates from symmetry by " +
                                 std::to_string(asym));
  gram_ = 0.5 * (gram_ + gram_.transpose()).eval();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram_);
  // Reorder ascending by absolute value.
  std::vector<Eigen::Index> order(static_cast<std::size_t>(gram_.rows()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(es.eigenvalues()(a)) < std::abs(es.eigenvalues()(b));
  });
  eigenvalues_.resize(gram_.rows());
  eigenvectors_.resize(gram_.rows(), gram_.rows());
  for (Eigen::Index i = 0; i < gram_.rows(); ++i) {
    eigenvalues_(i) = es.eigenvalues()(order[static_cast<std::size_t>(i)]);
    eigenvectors_.col(i) =
        es.eigenvectors().col(order[static_cast<std::size_t>(i)]);
  }
  assemble();
}

GramModel::GramModel(Eigen::MatrixXd basis, Eigen::VectorXd eigenvalues)
    : symmetry_(FundamentalSymmetry::identity(0)) {
  // Restore the |.|-ascending storage order; a replaced eigenvalue may have
  // moved past its neighbours.
  const Eigen::Index n = eigenvalues.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return std::abs(eigenvalues(a)) < std::abs(eigenvalues(b));
                   });
  eigenvalues_.resize(n);
  eigenvectors_.resize(basis.rows(), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    eigenvalues_(i) = eigenvalues(order[static_cast<std::size_t>(i)]);
    eigenvectors_.col(i) = basis.col(order[static_cast<std::size_t>(i)]);
  }
  gram_ = eigenvectors_ * eigenvalues_.asDiagonal() * eigenvectors_.transpose();
  gram_ = 0.5 * (gram_ + gram_.transpose()).eval();
  assemble();
}

void GramModel::assemble() {
  const Eigen::Index n = eigenvalues_.size();
  ceiling_ = eigenvalues_.cwiseAbs().maxCoeff();
  floor_ = eigenvalues_.cwiseAbs().minCoeff();
  if (floor_ <= kKernelTolerance * ceiling_)
    throw KernelError("kernel_not_trivial: smallest |eigenvalue| " +
                      std::to_string(floor_) + " is within " +
                      std::to_string(kKernelTolerance) +
                      " of the largest magnitude " + std::to_string(ceiling_));

  Eigen::VectorXd signs(n), magnitudes(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    signs(i) = eigenvalues_(i) > 0.0 ? 1.0 : -1.0;
    magnitudes(i) = std::abs(eigenvalues_(i));
  }
  const auto conjugate = [&](const Eigen::VectorXd& d) {
    return Eigen::MatrixXd(eigenvectors_ * d.asDiagonal() *
                           eigenvectors_.transpose());
  };
  symmetry_ = FundamentalSymmetry{conjugate(signs)};
  abs_gram_ = conjugate(magnitudes);
  sqrt_abs_ = conjugate(magnitudes.cwiseSqrt());
  inv_sqrt_abs_ = conjugate(magnitudes.cwiseSqrt().cwiseInverse());
}

GramModel GramModel::with_eigenvalue_magnitude(Eigen::Index slot,
                                               double magnitude) const {
  if (slot < 0 || slot >= dim()) throw DomainError("eigenvalue slot out of range");
  if (!(magnitude > 0.0)) throw DomainError("eigenvalue magnitude must be positive");
  Eigen::VectorXd lambda = eigenvalues_;
  lambda(slot) = (lambda(slot) > 0.0 ? magnitude : -magnitude);
  return GramModel{eigenvectors_, std::move(lambda)};
}

WKreinSpace::WKreinSpace(GramModel model)
    : model_(std::move(model)), space_(KreinSpace{model_.symmetry()}) {}

double WKreinSpace::w_inner(const Eigen::VectorXd& f,
                            const Eigen::VectorXd& g) const {
  check_dim(dim(), f, "w_inner");
  check_dim(dim(), g, "w_inner");
  return f.dot(model_.gram() * g);
}

double WKreinSpace::w_j_inner(const Eigen::VectorXd& f,
                              const Eigen::VectorXd& g) const {
  check_dim(dim(), f, "w_j_inner");
  check_dim(dim(), g, "w_j_inner");
  return f.dot(model_.abs_gram() * g);
}

double WKreinSpace::w_j_norm(const Eigen::VectorXd& f) const {
  return std::sqrt(std::max(0.0, w_j_inner(f, f)));
}

BoundsPair wmetric_bounds(const WKreinSpace& ws,
                          const Eigen::MatrixXd& vectors) {
  if (vectors.rows() != ws.dim())
    throw DimensionError("wmetric_bounds: vectors have " +
                         std::to_string(vectors.rows()) + " rows for dim " +
                         std::to_string(ws.dim()));
  // Extreme eigenvalues of |W|^{1/2} J G J |W|^{1/2}, assembled from its
  // factor Z = |W|^{1/2} J K. This equals |W|^{-1/2} (W G W) |W|^{-1/2}
  // but carries no inverse spectral powers that would amplify rounding
  // for near-singular W.
  const Eigen::MatrixXd z =
      ws.model().sqrt_abs() * (ws.model().symmetry().matrix() * vectors);
  return eigenvalue_extremes(z * z.transpose());
}

BoundsPair wmetric_bounds_oracle(const WKreinSpace& ws,
                                 const Eigen::MatrixXd& vectors) {
  if (vectors.rows() != ws.dim())
    throw DimensionError("wmetric_bounds_oracle: dimension mismatch");
  // Analysis map k -> (<g_n, W k>)_n written in sqrt|W|-coordinates.
  const Eigen::MatrixXd map =
      vectors.transpose() *
      (ws.model().gram() * ws.model().inv_sqrt_abs());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(map);
  const auto& sv = svd.singularValues();
  double lo = sv(sv.size() - 1);
  if (map.cols() > map.rows()) lo = 0.0;
  return {lo * lo, sv(0) * sv(0)};
}

BoundsPair naive_frame_bounds(const WKreinSpace& ws,
                              const FrameFamily& family) {
  return wmetric_bounds(ws, family.synthesis());
}

TransferResult transfer_frame(const WKreinSpace& ws,
                              const FrameFamily& family) {
  if (family.dim() != ws.dim())
    throw DimensionError("transfer_frame: family dim " +
                         std::to_string(family.dim()) + " vs model dim " +
                         std::to_string(ws.dim()));
  // The frame hypothesis is Euclidean: extreme eigenvalues of the plain
  // frame operator, independent of the family's own symmetry.
  const BoundsPair euclidean = eigenvalue_extremes(
      family.synthesis() * family.synthesis().transpose());
  if (!(euclidean.upper > 0.0) ||
      euclidean.lower <= kFrameRelTolerance * euclidean.upper)
    throw NotAFrameError(
        "transfer_frame requires a Euclidean frame; lower bound " +
        std::to_string(euclidean.lower));

  TransferResult result;
  result.vectors = ws.model().inv_sqrt_abs() * family.synthesis();
  result.euclidean = euclidean;
  result.w_metric = wmetric_bounds(ws, result.vectors);
  result.kappa = ws.model().condition();
  result.conditioning_warning = result.kappa > kConditionWarning;
  return result;
}

DegradationCurve degradation_sweep(const GramModel& base,
                                   const FrameFamily& family,
                                   SweepDirection direction,
                                   const std::vector<double>& parameters) {
  if (family.dim() != base.dim())
    throw DimensionError("degradation_sweep: family dim " +
                         std::to_string(family.dim()) + " vs model dim " +
                         std::to_string(base.dim()));
  if (parameters.empty())
    throw DomainError("degradation_sweep: empty parameter list");
  for (double p : parameters)
    if (!(p > 0.0))
      throw DomainError("degradation_sweep: parameters must be positive");
  if (parameters.size() > 1) {
    const bool increasing = parameters[1] > parameters[0];
    for (std::size_t i = 1; i < parameters.size(); ++i) {
      const bool step_up = parameters[i] > parameters[i - 1];
      if (parameters[i] == parameters[i - 1] || step_up != increasing)
        throw DomainError(
            "degradation_sweep: parameter list must be strictly monotone");
    }
  }

  const BoundsPair euclidean = eigenvalue_extremes(
      family.synthesis() * family.synthesis().transpose());
  if (!(euclidean.upper > 0.0) ||
      euclidean.lower <= kFrameRelTolerance * euclidean.upper)
    throw NotAFrameError("degradation_sweep requires a Euclidean frame");

  const bool floor_sweep = direction == SweepDirection::floor;
  // One fixed spectral slot is moved across the whole sweep; the witness is
  // its (fixed) eigenvector, a unit vector in the swept spectral window.
  const Eigen::Index slot = floor_sweep ? 0 : base.dim() - 1;
  const Eigen::VectorXd witness_source = base.eigenvectors().col(slot);

  DegradationCurve curve;
  curve.parameter_name = floor_sweep ? "spectral_floor" : "spectral_ceiling";
  curve.euclidean = euclidean;
  curve.samples.reserve(parameters.size());

  for (double p : parameters) {
    const GramModel model = base.with_eigenvalue_magnitude(slot, p);
    const WKreinSpace ws{model};
    const BoundsPair measured = naive_frame_bounds(ws, family);

    SweepSample sample;
    sample.parameter = p;
    sample.lower = measured.lower;
    sample.upper = measured.upper;
    sample.envelope = floor_sweep ? euclidean.upper * p : euclidean.lower * p;

    const Eigen::VectorXd g = model.inv_sqrt_abs() * witness_source;
    sample.witness_j_norm = ws.w_j_norm(g);
    sample.witness_energy = (model.abs_gram() * g).squaredNorm();
    sample.witness_sum =
        (family.synthesis().transpose() * (model.gram() * g)).squaredNorm();
    curve.samples.push_back(sample);

    const double slack = 1e-9;
    const bool envelope_ok =
        floor_sweep ? sample.lower <= sample.envelope * (1.0 + slack)
                    : sample.upper >= sample.envelope * (1.0 - slack);
    if (!envelope_ok)
      throw EnvelopeError("envelope_violation at parameter " +
                          std::to_string(p) + ": measured " +
                          std::to_string(floor_sweep ? sample.lower
                                                     : sample.upper) +
                          " vs envelope " + std::to_string(sample.envelope));
    if (std::abs(sample.witness_j_norm - 1.0) > slack)
      throw EnvelopeError("witness J-norm deviates from 1 at parameter " +
                          std::to_string(p));
    if (std::abs(sample.witness_energy - p) > slack * p)
      throw EnvelopeError("witness energy escapes the spectral window at " +
                          std::to_string(p));
    const bool witness_sum_ok =
        floor_sweep ? sample.witness_sum <= sample.envelope * (1.0 + slack)
                    : sample.witness_sum >= sample.envelope * (1.0 - slack);
    if (!witness_sum_ok)
      throw EnvelopeError("witness frame sum escapes the envelope at " +
                          std::to_string(p));
  }
  return curve;
}

MultiplicationGram build_multiplication_gram(const Eigen::VectorXd& points,
                                             const Eigen::VectorXd& weights,
                                             const Eigen::VectorXd& symbol) {
  const Eigen::Index n = points.size();
  if (weights.size() != n || symbol.size() != n)
    throw DimensionError("grid arrays must share one length");
  if (n == 0) throw DomainError("grid must be nonempty");
  for (Eigen::Index i = 1; i < n; ++i)
    if (!(points(i) > points(i - 1)))
      throw DomainError("grid points must be strictly increasing");
  for (Eigen::Index i = 0; i < n; ++i)
    if (!(weights(i) > 0.0))
      throw DomainError("measure weights must be positive");
  const double symbol_scale = symbol.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(symbol(i)) <= kKernelTolerance * symbol_scale)
      throw KernelError("zero_weight: symbol vanishes at grid point " +
                        std::to_string(i));

  // Weighted coordinates f_i -> sqrt(mu_i) f_i turn the measure into the
  // Euclidean product, leaving the diagonal Gram operator diag(phi).
  GramModel model{Eigen::MatrixXd(symbol.asDiagonal())};
  return MultiplicationGram{std::move(model), points, weights, symbol};
}

CompletenessReport completeness_certificate(const GramModel& model,
                                            double floor_threshold,
                                            double ceiling_threshold) {
  CompletenessReport report;
  report.spectral_floor = model.spectral_floor();
  report.spectral_ceiling = model.spectral_ceiling();
  report.kappa = model.condition();
  report.floor_threshold = floor_threshold;
  report.ceiling_threshold = ceiling_threshold;
  report.completion_divergent = model.spectral_floor() < floor_threshold;
  report.domain_restriction = model.spectral_ceiling() > ceiling_threshold;
  return report;
}

}  // namespace framelab

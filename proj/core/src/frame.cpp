#include "framelab/frame.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "framelab/rng.hpp"

namespace framelab {

namespace {

double relative_gap(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

BoundsPair squared_singular_extremes(const Eigen::MatrixXd& analysis_map) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(analysis_map);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return {0.0, 0.0};
  double lo = sv(sv.size() - 1);
  // The analysis map of a rank-deficient family has fewer singular values
  // than ambient directions; the missing ones are zero.
  if (analysis_map.cols() > analysis_map.rows()) lo = 0.0;
  return {lo * lo, sv(0) * sv(0)};
}

Eigen::MatrixXd block_diagonal(const Eigen::MatrixXd& a,
                               const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(a.rows() + b.rows(),
                                              a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

// Orthonormal basis of the span of `vectors` with singular values below
// rel_tol * sigma_max treated as zero.
Eigen::MatrixXd range_basis(const Eigen::MatrixXd& vectors, double rel_tol) {
  if (vectors.cols() == 0 || vectors.rows() == 0)
    return Eigen::MatrixXd(vectors.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(vectors, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return Eigen::MatrixXd(vectors.rows(), 0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > rel_tol * sv(0)) ++rank;
  return svd.matrixU().leftCols(rank);
}

void validate_family(const KreinSpace& space, const Eigen::MatrixXd& synthesis,
                     const FundamentalSymmetry& domain_symmetry) {
  if (synthesis.rows() != space.dim())
    throw DimensionError("frame synthesis has " +
                         std::to_string(synthesis.rows()) +
                         " rows for a space of dim " +
                         std::to_string(space.dim()));
  if (space.dim() > 0 && synthesis.cols() < 1)
    throw DomainError("frame family needs at least one vector");
  if (domain_symmetry.dim() != synthesis.cols())
    throw DimensionError("domain symmetry dim " +
                         std::to_string(domain_symmetry.dim()) +
                         " does not match family size " +
                         std::to_string(synthesis.cols()));
}

}  // namespace

FrameFamily::FrameFamily(KreinSpace space, Eigen::MatrixXd synthesis)
    : space_(std::move(space)),
      synthesis_(std::move(synthesis)),
      domain_symmetry_(FundamentalSymmetry::identity(synthesis_.cols())) {
  validate_family(space_, synthesis_, domain_symmetry_);
}

FrameFamily::FrameFamily(KreinSpace space, Eigen::MatrixXd synthesis,
                         FundamentalSymmetry domain_symmetry)
    : space_(std::move(space)),
      synthesis_(std::move(synthesis)),
      domain_symmetry_(std::move(domain_symmetry)) {
  validate_family(space_, synthesis_, domain_symmetry_);
}

double spectral_norm(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return Eigen::JacobiSVD<Eigen::MatrixXd>(m).singularValues()(0);
}

Eigen::VectorXd preframe_apply(const FrameFamily& family,
                               const Eigen::VectorXd& coefficients) {
  if (coefficients.size() != family.size())
    throw DimensionError("preframe_apply: got " +
                         std::to_string(coefficients.size()) +
                         " coefficients for " + std::to_string(family.size()) +
                         " vectors");
  return family.synthesis() * coefficients;
}

Eigen::VectorXd preframe_adjoint(const FrameFamily& family,
                                 const Eigen::VectorXd& k) {
  if (k.size() != family.dim())
    throw DimensionError("preframe_adjoint: vector length " +
                         std::to_string(k.size()) + " for dim " +
                         std::to_string(family.dim()));
  const Eigen::VectorXd products =
      family.synthesis().transpose() * (family.space().symmetry().matrix() * k);
  return family.domain_symmetry().matrix() * products;
}

FrameAnalysis::FrameAnalysis(FrameFamily family) : family_(std::move(family)) {
  const Eigen::Index n = family_.dim();
  if (n == 0) {
    // Vacuous family on the zero space: every bound pair works, so it
    // counts as a (tight, exact) frame by convention.
    s_ = s0_ = s1_ = s2_ = Eigen::MatrixXd(0, 0);
    s1_basis_ = Eigen::MatrixXd(0, 0);
    s1_spectrum_ = Eigen::VectorXd(0);
    is_frame_ = is_tight_ = is_exact_ = true;
    return;
  }
  const Eigen::MatrixXd& k = family_.synthesis();
  const Eigen::MatrixXd& j = family_.space().symmetry().matrix();
  const Eigen::MatrixXd jk = j * k;

  // Each operator from its own defining sum: S from {k_n} with [.,.],
  // S0 from {Jk_n} with [.,.], S1 from {k_n} with [.,.]_J, S2 from {Jk_n}
  // with [.,.]_J.
  s_ = k * (k.transpose() * j);
  s0_ = jk * (jk.transpose() * j);
  s1_ = k * k.transpose();
  s2_ = jk * jk.transpose();

  // Sanity of the matrix assembly against the defining sum
  // S k = sum_n [k_n, k] k_n on a few deterministic probes.
  {
    SplitMix64 probe_rng{0x5eedu};
    for (int probe = 0; probe < 3; ++probe) {
      const Eigen::VectorXd x = random_vector(probe_rng, n);
      Eigen::VectorXd summed = Eigen::VectorXd::Zero(n);
      const Eigen::VectorXd weights = k.transpose() * (j * x);
      for (Eigen::Index col = 0; col < family_.size(); ++col)
        summed += weights(col) * k.col(col);
      const double scale = s_.cwiseAbs().maxCoeff() * x.norm() + 1.0;
      if ((s_ * x - summed).norm() > 1e-9 * scale)
        throw Error("frame operator disagrees with its defining sum");
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (s1_ + s1_.transpose()));
  s1_basis_ = es.eigenvectors();
  s1_spectrum_ = es.eigenvalues();
  lower_ = s1_spectrum_(0);
  upper_ = s1_spectrum_(n - 1);

  is_frame_ = upper_ > 0.0 && lower_ > kFrameRelTolerance * upper_;
  is_tight_ = is_frame_ && (upper_ - lower_) <= kTightTolerance * upper_;
  // A linearly dependent family always contains a removable vector, so
  // overcomplete families are never exact; the leave-one-out scan is only
  // needed in the square case.
  is_exact_ = is_frame_ && family_.size() == n && exactness_check(family_);
}

Eigen::VectorXd FrameAnalysis::apply_inverse(const Eigen::VectorXd& x) const {
  if (!is_frame_ || is_vacuous())
    throw NotAFrameError("frame operator is singular: lower bound " +
                         std::to_string(lower_));
  const Eigen::VectorXd y =
      s1_basis_ *
      (s1_spectrum_.cwiseInverse().asDiagonal() * (s1_basis_.transpose() * x));
  return family_.space().symmetry().matrix() * y;
}

Eigen::MatrixXd FrameAnalysis::inverse_family() const {
  if (!is_frame_ || is_vacuous())
    throw NotAFrameError("frame operator is singular: lower bound " +
                         std::to_string(lower_));
  const Eigen::MatrixXd y =
      s1_basis_ * (s1_spectrum_.cwiseInverse().asDiagonal() *
                   (s1_basis_.transpose() * family_.synthesis()));
  return family_.space().symmetry().matrix() * y;
}

BoundsPair optimal_bounds_oracle(const FrameFamily& family) {
  if (family.dim() == 0) return {0.0, 0.0};
  const Eigen::MatrixXd analysis_map =
      family.synthesis().transpose() * family.space().symmetry().matrix();
  return squared_singular_extremes(analysis_map);
}

FourWayBounds four_way_bounds(const FrameFamily& family) {
  const Eigen::MatrixXd& k = family.synthesis();
  const Eigen::MatrixXd& j = family.space().symmetry().matrix();
  const Eigen::MatrixXd jk = j * k;

  FourWayBounds out;
  out.family_indefinite = squared_singular_extremes(k.transpose() * j);
  out.flipped_indefinite = squared_singular_extremes(jk.transpose() * j);
  out.family_definite = squared_singular_extremes(k.transpose());
  out.flipped_definite = squared_singular_extremes(jk.transpose());

  const BoundsPair* pairs[] = {&out.family_indefinite, &out.flipped_indefinite,
                               &out.family_definite, &out.flipped_definite};
  for (const auto* a : pairs)
    for (const auto* b : pairs) {
      out.max_relative_spread = std::max(
          out.max_relative_spread,
          std::max(relative_gap(a->lower, b->lower),
                   relative_gap(a->upper, b->upper)));
    }
  return out;
}

Decomposition frame_decompose(const FrameAnalysis& analysis,
                              const Eigen::VectorXd& x) {
  const FrameFamily& family = analysis.family();
  if (x.size() != family.dim())
    throw DimensionError("frame_decompose: vector length " +
                         std::to_string(x.size()));
  if (!analysis.is_frame() || analysis.is_vacuous())
    throw NotAFrameError("frame_decompose requires a frame");

  const Eigen::MatrixXd& k = family.synthesis();
  const Eigen::MatrixXd& j = family.space().symmetry().matrix();
  const Eigen::MatrixXd dual = analysis.inverse_family();

  Decomposition d;
  d.analysis_coefficients = k.transpose() * (j * x);
  d.dual_coefficients = dual.transpose() * (j * x);
  d.reconstruction_via_dual = dual * d.analysis_coefficients;
  d.reconstruction_via_family = k * d.dual_coefficients;
  d.residual = std::max((x - d.reconstruction_via_dual).norm(),
                        (x - d.reconstruction_via_family).norm());
  return d;
}

DualFrame dual_frame(const FrameAnalysis& analysis, DualVariant variant) {
  if (!analysis.is_frame() || analysis.is_vacuous())
    throw NotAFrameError("dual_frame requires a frame");
  const Eigen::MatrixXd inv = analysis.inverse_family();
  const bool flipped = variant == DualVariant::canonical_krein_j ||
                       variant == DualVariant::canonical_hilbert;
  Eigen::MatrixXd vectors =
      flipped ? (analysis.family().space().symmetry().matrix() * inv).eval()
              : inv;
  FrameAnalysis dual_analysis(
      FrameFamily(analysis.family().space(), vectors));
  return DualFrame{variant, std::move(vectors), dual_analysis.bounds()};
}

bool exactness_check(const FrameFamily& family) {
  if (family.dim() == 0) return true;  // vacuous
  const Eigen::Index m = family.size();
  const Eigen::MatrixXd& k = family.synthesis();
  const Eigen::MatrixXd gram = k * k.transpose();
  {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram,
                                                      Eigen::EigenvaluesOnly);
    const double b = es.eigenvalues()(family.dim() - 1);
    if (!(b > 0.0) || es.eigenvalues()(0) <= kFrameRelTolerance * b)
      throw NotAFrameError("exactness_check requires a frame");
  }
  for (Eigen::Index n = 0; n < m; ++n) {
    // Rank-one downdate instead of re-synthesizing the reduced family.
    const Eigen::MatrixXd reduced =
        gram - family.vector(n) * family.vector(n).transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(reduced,
                                                      Eigen::EigenvaluesOnly);
    const double lo = es.eigenvalues()(0);
    const double hi = es.eigenvalues()(family.dim() - 1);
    if (lo > kFrameRelTolerance * hi) return false;  // still a frame
  }
  return true;
}

TightnessReport tight_jonb_check(const FrameFamily& family) {
  TightnessReport report;
  if (family.dim() == 0) return report;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      family.synthesis() * family.synthesis().transpose(),
      Eigen::EigenvaluesOnly);
  const double lower = es.eigenvalues()(0);
  const double upper = es.eigenvalues()(family.dim() - 1);
  report.is_tight_one = std::abs(lower - 1.0) <= kTightTolerance &&
                        std::abs(upper - 1.0) <= kTightTolerance;

  const Eigen::MatrixXd indefinite_gram =
      family.synthesis().transpose() *
      (family.space().symmetry().matrix() * family.synthesis());
  report.self_products_unit = true;
  for (Eigen::Index n = 0; n < family.size(); ++n)
    if (std::abs(std::abs(indefinite_gram(n, n)) - 1.0) > kTightTolerance)
      report.self_products_unit = false;

  bool orthogonal = true;
  for (Eigen::Index n = 0; n < family.size() && orthogonal; ++n)
    for (Eigen::Index q = 0; q < family.size(); ++q)
      if (n != q && std::abs(indefinite_gram(n, q)) > kTightTolerance) {
        orthogonal = false;
        break;
      }
  report.is_jonb = orthogonal && family.size() == family.dim();
  return report;
}

SplitResult split_frame(const FrameFamily& family,
                        const Eigen::MatrixXd& projection) {
  const Eigen::Index n = family.dim();
  if (projection.rows() != n || projection.cols() != n)
    throw DimensionError("projection must be " + std::to_string(n) + "x" +
                         std::to_string(n));
  const Eigen::MatrixXd& j = family.space().symmetry().matrix();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  if ((projection - projection.transpose()).cwiseAbs().maxCoeff() >
          kSymTolerance ||
      (projection * projection - projection).cwiseAbs().maxCoeff() >
          kSymTolerance)
    throw ProjectionError(
        "projection_invalid: matrix is not an orthogonal projection");
  if ((projection * j - j * projection).cwiseAbs().maxCoeff() > kSymTolerance)
    throw ProjectionError(
        "commutation_failure: projection does not commute with J");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      0.5 * (projection + projection.transpose()));
  std::vector<Eigen::Index> in, out;
  for (Eigen::Index i = 0; i < n; ++i)
    (es.eigenvalues()(i) > 0.5 ? in : out).push_back(i);

  auto make_part = [&](const std::vector<Eigen::Index>& idx) {
    Eigen::MatrixXd basis(n, static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c)
      basis.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(idx[c]);
    const Eigen::Index r = basis.cols();
    KreinSpace sub{FundamentalSymmetry{
        Eigen::MatrixXd(basis.transpose() * j * basis)}};
    Eigen::MatrixXd coords = r == 0 ? Eigen::MatrixXd(0, 0)
                                    : Eigen::MatrixXd(basis.transpose() *
                                                      family.synthesis());
    FundamentalSymmetry domain =
        r == 0 ? FundamentalSymmetry::identity(0) : family.domain_symmetry();
    return SubspaceFrame{
        FrameFamily{std::move(sub), std::move(coords), std::move(domain)},
        std::move(basis)};
  };
  return SplitResult{make_part(in), make_part(out)};
}

FrameFamily merge_frames(const FrameFamily& part_a, const FrameFamily& part_b,
                         Eigen::Index expected_dim) {
  if (expected_dim >= 0 && part_a.dim() + part_b.dim() != expected_dim)
    throw DimensionError("merge_frames: subspace dimension mismatch, parts " +
                         std::to_string(part_a.dim()) + "+" +
                         std::to_string(part_b.dim()) + " vs ambient " +
                         std::to_string(expected_dim));
  FundamentalSymmetry merged_symmetry{block_diagonal(
      part_a.space().symmetry().matrix(), part_b.space().symmetry().matrix())};
  Eigen::MatrixXd synthesis =
      block_diagonal(part_a.synthesis(), part_b.synthesis());
  FundamentalSymmetry merged_domain{block_diagonal(
      part_a.domain_symmetry().matrix(), part_b.domain_symmetry().matrix())};
  return FrameFamily{KreinSpace{std::move(merged_symmetry)},
                     std::move(synthesis), std::move(merged_domain)};
}

JFrameSplit jframe_split(const FrameFamily& family) {
  FrameAnalysis analysis{family};
  if (!analysis.is_frame())
    throw NotAFrameError("jframe_split requires a frame");
  if (family.dim() == 0 || family.size() == 0)
    return JFrameSplit{family, 0, 0, true, true, 0, 0, true};

  const auto [p_plus, p_minus] = family.space().fundamental_projections();
  const Eigen::MatrixXd plus_parts = p_plus * family.synthesis();
  const Eigen::MatrixXd minus_parts = p_minus * family.synthesis();
  const double scale =
      std::max(plus_parts.colwise().norm().maxCoeff(),
               minus_parts.colwise().norm().maxCoeff());
  const double drop = kZeroColumnTolerance * scale;

  std::vector<Eigen::Index> keep_plus, keep_minus;
  for (Eigen::Index c = 0; c < family.size(); ++c) {
    if (plus_parts.col(c).norm() > drop) keep_plus.push_back(c);
    if (minus_parts.col(c).norm() > drop) keep_minus.push_back(c);
  }
  const auto m_plus = static_cast<Eigen::Index>(keep_plus.size());
  const auto m_minus = static_cast<Eigen::Index>(keep_minus.size());

  Eigen::MatrixXd synthesis(family.dim(), m_plus + m_minus);
  Eigen::MatrixXd positive_group(family.dim(), m_plus);
  Eigen::MatrixXd negative_group(family.dim(), m_minus);
  for (Eigen::Index i = 0; i < m_plus; ++i) {
    positive_group.col(i) = plus_parts.col(keep_plus[i]);
    synthesis.col(i) = positive_group.col(i);
  }
  for (Eigen::Index i = 0; i < m_minus; ++i) {
    negative_group.col(i) = minus_parts.col(keep_minus[i]);
    synthesis.col(m_plus + i) = negative_group.col(i);
  }

  const Eigen::MatrixXd& j = family.space().symmetry().matrix();
  auto definiteness = [&](const Eigen::MatrixXd& group, double sign,
                          Eigen::Index& rank) {
    const Eigen::MatrixXd basis = range_basis(group, kZeroColumnTolerance);
    rank = basis.cols();
    if (rank == 0) return true;  // vacuously definite
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        Eigen::MatrixXd(sign * basis.transpose() * j * basis),
        Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0) > kDefiniteTolerance;
  };
  Eigen::Index positive_rank = 0, negative_rank = 0;
  const bool positive_ok = definiteness(positive_group, +1.0, positive_rank);
  const bool negative_ok = definiteness(negative_group, -1.0, negative_rank);
  const bool is_jframe = positive_ok && negative_ok &&
                         positive_rank == family.space().positive_dim() &&
                         negative_rank == family.space().negative_dim();

  // The induced coefficient-space symmetry is +1 on the positive group and
  // -1 on the negative group.
  FrameFamily split{family.space(), std::move(synthesis),
                    FundamentalSymmetry::from_signature(m_plus, m_minus)};
  return JFrameSplit{std::move(split), m_plus,        m_minus,
                     positive_ok,      negative_ok,   positive_rank,
                     negative_rank,    is_jframe};
}

}  // namespace framelab

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "framelab/frame.hpp"
#include "framelab/rng.hpp"
#include "support/generators.hpp"

using namespace framelab;
using framelab::testing::mercedes_family;
using framelab::testing::minkowski_basis;
using framelab::testing::rel_gap;

namespace {

Eigen::VectorXd vec2(double a, double b) {
  Eigen::VectorXd v(2);
  v << a, b;
  return v;
}

FrameFamily orthonormal3() {
  return FrameFamily{KreinSpace{FundamentalSymmetry::identity(3)},
                     Eigen::MatrixXd::Identity(3, 3)};
}

// Standard basis of R^2 plus a duplicated first vector; Euclidean frame
// operator diag(2,1).
FrameFamily basis_plus_duplicate() {
  Eigen::MatrixXd synthesis(2, 3);
  synthesis << 1, 0, 1, 0, 1, 0;
  return FrameFamily{KreinSpace{FundamentalSymmetry::identity(2)},
                     std::move(synthesis)};
}

}  // namespace

TEST_CASE("preframe_apply is the synthesis map") {
  const FrameFamily basis{KreinSpace{FundamentalSymmetry::identity(2)},
                          Eigen::MatrixXd::Identity(2, 2)};
  CHECK((preframe_apply(basis, vec2(2, 3)) - vec2(2, 3)).norm() == 0.0);

  const FrameFamily mercedes = mercedes_family();
  Eigen::VectorXd e1(3);
  e1 << 1, 0, 0;
  CHECK((preframe_apply(mercedes, e1) - mercedes.vector(0)).norm() == 0.0);

  // The three unit vectors at 120 degrees sum to zero.
  Eigen::VectorXd ones(3);
  ones.setOnes();
  CHECK(preframe_apply(mercedes, ones).norm() < 1e-15);

  Eigen::VectorXd bad(4);
  bad.setZero();
  CHECK_THROWS_AS(preframe_apply(mercedes, bad), DimensionError);
}

TEST_CASE("preframe_adjoint maps through J and the domain symmetry") {
  const FrameFamily euclid{KreinSpace{FundamentalSymmetry::identity(2)},
                           Eigen::MatrixXd::Identity(2, 2)};
  CHECK((preframe_adjoint(euclid, vec2(3, -2)) - vec2(3, -2)).norm() == 0.0);

  const FrameFamily minkowski = minkowski_basis();
  CHECK((preframe_adjoint(minkowski, vec2(1, 1)) - vec2(1, -1)).norm() == 0.0);
  CHECK(preframe_adjoint(minkowski, vec2(0, 0)).norm() == 0.0);
}

TEST_CASE("adjoint identity [T a, k] = [a, T* k] with nontrivial symmetries") {
  SplitMix64 rng{101};
  for (int trial = 0; trial < 25; ++trial) {
    const auto seeded = framelab::testing::random_space(rng, 5);
    const Eigen::Index count = 9;
    Eigen::MatrixXd synthesis = random_matrix(rng, 5, count);
    const Eigen::MatrixXd dq = random_orthogonal(rng, count);
    const Eigen::Index dplus = 1 + static_cast<Eigen::Index>(rng.below(count));
    FrameFamily family{
        seeded.space, synthesis,
        FundamentalSymmetry::conjugated(dplus, count - dplus, dq)};

    const Eigen::VectorXd alpha = random_vector(rng, count);
    const Eigen::VectorXd k = random_vector(rng, 5);
    const double lhs =
        family.space().indefinite_inner(preframe_apply(family, alpha), k);
    const Eigen::VectorXd adj = preframe_adjoint(family, k);
    const double rhs = alpha.dot(family.domain_symmetry().matrix() * adj);
    CHECK(std::abs(lhs - rhs) <= 1e-10 * (alpha.norm() * k.norm() + 1.0));
  }
}

TEST_CASE("frame operator of an orthonormal basis is the identity") {
  const FrameAnalysis analysis{orthonormal3()};
  CHECK((analysis.frame_operator() - Eigen::MatrixXd::Identity(3, 3)).norm() <
        1e-14);
  CHECK(analysis.lower_bound() == doctest::Approx(1.0));
  CHECK(analysis.upper_bound() == doctest::Approx(1.0));
  CHECK(analysis.is_frame());
  CHECK(analysis.is_tight());
  CHECK(analysis.is_exact());
}

TEST_CASE("frame operator of the Mercedes family") {
  const FrameFamily family = mercedes_family();
  // Oracle: explicit rank-one sum of the three column projectors.
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(2, 2);
  for (Eigen::Index n = 0; n < 3; ++n)
    sum += family.vector(n) * family.vector(n).transpose();
  CHECK((sum - 1.5 * Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <
        1e-15);

  const FrameAnalysis analysis{family};
  CHECK((analysis.frame_operator() - sum).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(analysis.lower_bound() == doctest::Approx(1.5));
  CHECK(analysis.upper_bound() == doctest::Approx(1.5));
  CHECK(analysis.is_tight());
  CHECK_FALSE(analysis.is_exact());
}

TEST_CASE("frame operator of the standard basis in diag(1,-1)") {
  const FrameAnalysis analysis{minkowski_basis()};
  // S k = [e1,k] e1 + [e2,k] e2 = (k1, -k2), i.e. S = J.
  const Eigen::MatrixXd& j = analysis.family().space().symmetry().matrix();
  CHECK((analysis.frame_operator() - j).cwiseAbs().maxCoeff() == 0.0);
  CHECK((analysis.companion_definite() - Eigen::MatrixXd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() == 0.0);
  CHECK(analysis.lower_bound() == doctest::Approx(1.0));
  CHECK(analysis.upper_bound() == doctest::Approx(1.0));
}

TEST_CASE("rank-deficient families are reported, not rejected") {
  Eigen::MatrixXd synthesis(2, 2);
  synthesis << 1, 2, 0, 0;
  const FrameAnalysis analysis{
      FrameFamily{KreinSpace{FundamentalSymmetry::identity(2)}, synthesis}};
  CHECK_FALSE(analysis.is_frame());
  CHECK(analysis.lower_bound() < 1e-12);
  CHECK_THROWS_AS(analysis.apply_inverse(vec2(1, 0)), NotAFrameError);
}

TEST_CASE("bounds oracle on duplicated-column family") {
  const BoundsPair oracle = optimal_bounds_oracle(basis_plus_duplicate());
  CHECK(oracle.lower == doctest::Approx(1.0));
  CHECK(oracle.upper == doctest::Approx(2.0));
}

TEST_CASE("eigenvalue bounds agree with the SVD oracle") {
  SplitMix64 rng{211};
  const FrameFamily family = framelab::testing::random_frame(rng, 8, 20);
  const FrameAnalysis analysis{family};
  const BoundsPair oracle = optimal_bounds_oracle(family);
  CHECK(rel_gap(analysis.lower_bound(), oracle.lower) < 1e-9);
  CHECK(rel_gap(analysis.upper_bound(), oracle.upper) < 1e-9);
}

TEST_CASE("four equivalent bound readings coincide") {
  const FourWayBounds orthonormal = four_way_bounds(orthonormal3());
  CHECK(orthonormal.family_indefinite.lower == doctest::Approx(1.0));
  CHECK(orthonormal.family_indefinite.upper == doctest::Approx(1.0));
  CHECK(orthonormal.max_relative_spread < 1e-12);

  const FourWayBounds minkowski = four_way_bounds(minkowski_basis());
  CHECK(minkowski.family_definite.lower == doctest::Approx(1.0));
  CHECK(minkowski.flipped_indefinite.upper == doctest::Approx(1.0));
  CHECK(minkowski.max_relative_spread < 1e-12);

  SplitMix64 rng{223};
  for (int trial = 0; trial < 20; ++trial) {
    const FrameFamily family = framelab::testing::random_frame(rng, 6, 15);
    CHECK(four_way_bounds(family).max_relative_spread < 1e-9);
  }
}

TEST_CASE("frame decomposition on easy families") {
  const FrameAnalysis orthonormal{orthonormal3()};
  Eigen::VectorXd x(3);
  x << 1, 2, 3;
  const Decomposition d = frame_decompose(orthonormal, x);
  CHECK((d.analysis_coefficients - x).norm() < 1e-14);
  CHECK(d.residual < 1e-14);

  const FrameAnalysis mercedes{mercedes_family()};
  const Decomposition dm = frame_decompose(mercedes, vec2(1, 0));
  CHECK((dm.reconstruction_via_dual - vec2(1, 0)).norm() < 1e-14);
  CHECK((dm.reconstruction_via_family - vec2(1, 0)).norm() < 1e-14);
  // S^{-1} = (2/3) identity scales the dual coefficients.
  CHECK((dm.dual_coefficients - (2.0 / 3.0) * dm.analysis_coefficients).norm() <
        1e-14);

  const Decomposition dz = frame_decompose(mercedes, vec2(0, 0));
  CHECK(dz.analysis_coefficients.norm() == 0.0);
  CHECK(dz.residual == 0.0);
}

TEST_CASE("canonical duals: values, bounds and duality residuals") {
  const FrameAnalysis parseval{orthonormal3()};
  const DualFrame self_dual = dual_frame(parseval, DualVariant::canonical_krein);
  CHECK((self_dual.vectors - Eigen::MatrixXd::Identity(3, 3)).norm() < 1e-14);

  const FrameAnalysis mercedes{mercedes_family()};
  const DualFrame scaled = dual_frame(mercedes, DualVariant::canonical_krein);
  CHECK((scaled.vectors - (2.0 / 3.0) * mercedes.family().synthesis()).norm() <
        1e-14);
  CHECK(scaled.bounds.lower == doctest::Approx(2.0 / 3.0));
  CHECK(scaled.bounds.upper == doctest::Approx(2.0 / 3.0));

  // In diag(1,-1) with the standard basis, S = J, so JS^{-1}k_n = e_n.
  const FrameAnalysis minkowski{minkowski_basis()};
  const DualFrame flipped =
      dual_frame(minkowski, DualVariant::canonical_krein_j);
  CHECK((flipped.vectors - Eigen::MatrixXd::Identity(2, 2)).norm() < 1e-14);
}

TEST_CASE("all four dual variants reconstruct through mixed expansions") {
  SplitMix64 rng{307};
  const FrameFamily family = framelab::testing::random_frame(rng, 6, 14);
  const FrameAnalysis analysis{family};
  const Eigen::MatrixXd& j = family.space().symmetry().matrix();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(6, 6);

  const DualVariant variants[] = {
      DualVariant::canonical_krein, DualVariant::canonical_krein_j,
      DualVariant::canonical_hilbert, DualVariant::canonical_hilbert_j};
  for (DualVariant variant : variants) {
    const DualFrame dual = dual_frame(analysis, variant);
    CHECK(rel_gap(dual.bounds.lower, 1.0 / analysis.upper_bound()) < 1e-8);
    CHECK(rel_gap(dual.bounds.upper, 1.0 / analysis.lower_bound()) < 1e-8);

    const bool flipped_primal = variant == DualVariant::canonical_krein_j ||
                                variant == DualVariant::canonical_hilbert_j;
    const bool definite = variant == DualVariant::canonical_hilbert ||
                          variant == DualVariant::canonical_hilbert_j;
    const Eigen::MatrixXd primal =
        flipped_primal ? Eigen::MatrixXd(j * family.synthesis())
                       : family.synthesis();
    const Eigen::MatrixXd metric = definite ? id : j;
    for (int probe = 0; probe < 50; ++probe) {
      const Eigen::VectorXd x = random_vector(rng, 6);
      const Eigen::VectorXd via_dual =
          primal * (dual.vectors.transpose() * (metric * x));
      const Eigen::VectorXd via_primal =
          dual.vectors * (primal.transpose() * (metric * x));
      CHECK((x - via_dual).norm() <= 1e-8 * x.norm());
      CHECK((x - via_primal).norm() <= 1e-8 * x.norm());
    }
  }
}

TEST_CASE("exactness by leave-one-out") {
  CHECK(exactness_check(orthonormal3()));
  CHECK_FALSE(exactness_check(basis_plus_duplicate()));
  CHECK_FALSE(exactness_check(mercedes_family()));

  Eigen::MatrixXd thin(2, 1);
  thin << 1, 0;
  CHECK_THROWS_AS(
      exactness_check(
          FrameFamily{KreinSpace{FundamentalSymmetry::identity(2)}, thin}),
      NotAFrameError);
}

TEST_CASE("tightness and J-orthonormal basis detection") {
  const TightnessReport minkowski = tight_jonb_check(minkowski_basis());
  CHECK(minkowski.is_tight_one);
  CHECK(minkowski.self_products_unit);
  CHECK(minkowski.is_jonb);

  const TightnessReport mercedes = tight_jonb_check(mercedes_family());
  CHECK_FALSE(mercedes.is_tight_one);  // bounds are (3/2, 3/2)

  const TightnessReport orthonormal = tight_jonb_check(orthonormal3());
  CHECK(orthonormal.is_tight_one);
  CHECK(orthonormal.self_products_unit);
  CHECK(orthonormal.is_jonb);
}

TEST_CASE("unit tight frames with unit self-products are J-orthonormal bases") {
  SplitMix64 rng{401};
  for (int trial = 0; trial < 40; ++trial) {
    const auto seeded = framelab::testing::random_space(rng, 6);
    const TightnessReport report =
        tight_jonb_check(framelab::testing::random_jonb(rng, seeded));
    CHECK(report.is_tight_one);
    CHECK(report.self_products_unit);
    CHECK(report.is_jonb);
  }
  // Parseval counterexamples: tight with bounds one but generically
  // non-unit self-products; the implication stays vacuously true.
  for (int trial = 0; trial < 40; ++trial) {
    const auto seeded = framelab::testing::random_space(rng, 5);
    const TightnessReport report = tight_jonb_check(
        framelab::testing::random_parseval(rng, seeded.space, 9));
    CHECK(report.is_tight_one);
    if (report.self_products_unit) CHECK(report.is_jonb);
  }
}

TEST_CASE("splitting along a commuting projection keeps the bounds") {
  const FrameFamily minkowski = minkowski_basis();
  Eigen::MatrixXd p(2, 2);
  p << 1, 0, 0, 0;
  const SplitResult split = split_frame(minkowski, p);
  const FrameAnalysis plus{split.inside.family};
  const FrameAnalysis minus{split.complement.family};
  CHECK(plus.lower_bound() == doctest::Approx(1.0));
  CHECK(plus.upper_bound() == doctest::Approx(1.0));
  CHECK(minus.lower_bound() == doctest::Approx(1.0));
  CHECK(minus.upper_bound() == doctest::Approx(1.0));

  // Identity projection: ambient content preserved, complement vacuous.
  const SplitResult trivial =
      split_frame(minkowski, Eigen::MatrixXd::Identity(2, 2));
  CHECK((trivial.inside.basis * trivial.inside.family.synthesis() -
         minkowski.synthesis())
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK(trivial.complement.family.dim() == 0);
  CHECK(FrameAnalysis{trivial.complement.family}.is_frame());  // vacuous
}

TEST_CASE("split parts of seeded frames inherit the bound interval") {
  SplitMix64 rng{419};
  for (int trial = 0; trial < 15; ++trial) {
    const auto seeded = framelab::testing::random_space(rng, 6);
    const FrameFamily family =
        framelab::testing::random_family(rng, seeded.space, 14);
    const FrameAnalysis whole{family};
    const Eigen::Index keep_plus =
        seeded.n_plus > 0 ? static_cast<Eigen::Index>(
                                rng.below(seeded.n_plus + 1))
                          : 0;
    const Eigen::Index keep_minus =
        seeded.n_minus > 0 ? static_cast<Eigen::Index>(
                                 rng.below(seeded.n_minus + 1))
                           : 0;
    const Eigen::MatrixXd p = framelab::testing::random_commuting_projection(
        rng, seeded, keep_plus, keep_minus);
    const SplitResult split = split_frame(family, p);
    for (const SubspaceFrame* part : {&split.inside, &split.complement}) {
      if (part->family.dim() == 0) continue;
      const FrameAnalysis sub{part->family};
      CHECK(sub.lower_bound() >= whole.lower_bound() - 1e-9);
      CHECK(sub.upper_bound() <= whole.upper_bound() + 1e-9);
    }
  }
}

TEST_CASE("split rejects invalid projections") {
  const FrameFamily family = minkowski_basis();
  Eigen::MatrixXd not_projection(2, 2);
  not_projection << 1, 0, 0, 2;
  CHECK_THROWS_AS(split_frame(family, not_projection), ProjectionError);

  // Projection onto the span of (1,1) is orthogonal but does not commute
  // with diag(1,-1).
  Eigen::MatrixXd skew(2, 2);
  skew << 0.5, 0.5, 0.5, 0.5;
  CHECK_THROWS_AS(split_frame(family, skew), ProjectionError);
}

TEST_CASE("merging subspace frames") {
  const FrameFamily plus{KreinSpace{FundamentalSymmetry::from_signature(1, 0)},
                         Eigen::MatrixXd::Identity(1, 1)};
  const FrameFamily minus{
      KreinSpace{FundamentalSymmetry::from_signature(0, 1)},
      Eigen::MatrixXd::Identity(1, 1)};
  const FrameFamily merged = merge_frames(plus, minus);
  CHECK((merged.synthesis() - Eigen::MatrixXd::Identity(2, 2)).norm() == 0.0);
  CHECK(merged.space().positive_dim() == 1);
  CHECK(merged.space().negative_dim() == 1);
  const FrameAnalysis analysis{merged};
  CHECK(analysis.lower_bound() == doctest::Approx(1.0));
  CHECK(analysis.upper_bound() == doctest::Approx(1.0));
}

TEST_CASE("merged bounds cover the union of the part spectra") {
  // Parts with bounds (1,2) and (1.5,3); the merged operator is block
  // diagonal, so its spectrum is the union {1,2} u {1.5,3}.
  Eigen::MatrixXd a(2, 2), b(2, 2);
  a << 1, 0, 0, std::sqrt(2.0);
  b << std::sqrt(1.5), 0, 0, std::sqrt(3.0);
  const KreinSpace id2{FundamentalSymmetry::identity(2)};
  const FrameFamily merged =
      merge_frames(FrameFamily{id2, a}, FrameFamily{id2, b});
  const FrameAnalysis analysis{merged};
  CHECK(analysis.lower_bound() == doctest::Approx(1.0));
  CHECK(analysis.upper_bound() == doctest::Approx(3.0));
}

TEST_CASE("split then merge stays inside the original bounds") {
  SplitMix64 rng{433};
  for (int trial = 0; trial < 10; ++trial) {
    const auto seeded = framelab::testing::random_space(rng, 6);
    const FrameFamily family =
        framelab::testing::random_family(rng, seeded.space, 13);
    const FrameAnalysis whole{family};
    const auto [p_plus, p_minus] = seeded.space.fundamental_projections();
    const SplitResult split = split_frame(family, p_plus);
    const FrameAnalysis merged{
        merge_frames(split.inside.family, split.complement.family, 6)};
    CHECK(merged.lower_bound() >= whole.lower_bound() - 1e-9);
    CHECK(merged.upper_bound() <= whole.upper_bound() + 1e-9);
  }
}

TEST_CASE("merge rejects parts that do not fill the ambient space") {
  const FrameFamily part{KreinSpace{FundamentalSymmetry::from_signature(1, 0)},
                         Eigen::MatrixXd::Identity(1, 1)};
  CHECK_THROWS_AS(merge_frames(part, part, 3), DimensionError);
}

TEST_CASE("jframe split of the Minkowski basis keeps the family") {
  const JFrameSplit result = jframe_split(minkowski_basis());
  CHECK(result.positive_count == 1);
  CHECK(result.negative_count == 1);
  CHECK((result.family.synthesis() - Eigen::MatrixXd::Identity(2, 2)).norm() <
        1e-15);
  CHECK(result.positive_uniformly_definite);
  CHECK(result.negative_uniformly_definite);
  CHECK(result.is_jframe);
  // Induced coefficient symmetry: +1 on the positive group, -1 after.
  CHECK(result.family.domain_symmetry().matrix()(0, 0) == 1.0);
  CHECK(result.family.domain_symmetry().matrix()(1, 1) == -1.0);
}

TEST_CASE("jframe split separates a neutral family") {
  Eigen::MatrixXd neutral(2, 2);
  neutral << 1, 1, 1, -1;
  const FrameFamily family{KreinSpace{FundamentalSymmetry::from_signature(1, 1)},
                           neutral};
  const JFrameSplit result = jframe_split(family);
  CHECK(result.positive_count == 2);
  CHECK(result.negative_count == 2);
  const FrameAnalysis analysis{result.family};
  // Oracle: the split columns are {(1,0),(1,0),(0,1),(0,-1)}, whose
  // Euclidean frame operator is diag(2,2).
  CHECK(analysis.lower_bound() == doctest::Approx(2.0));
  CHECK(analysis.upper_bound() == doctest::Approx(2.0));
  CHECK(analysis.is_frame());
  CHECK(result.is_jframe);

  const FrameAnalysis original{family};
  CHECK(analysis.lower_bound() >= original.lower_bound() - 1e-9);
  CHECK(analysis.upper_bound() <= original.upper_bound() + 1e-9);
}

TEST_CASE("jframe split drops exact zero parts") {
  // Both basis vectors are definite, so each loses one projection.
  const JFrameSplit result = jframe_split(minkowski_basis());
  CHECK(result.family.size() == 2);

  SplitMix64 rng{439};
  for (int trial = 0; trial < 10; ++trial) {
    const auto seeded = framelab::testing::random_space(rng, 5);
    const FrameFamily family =
        framelab::testing::random_family(rng, seeded.space, 12);
    const FrameAnalysis whole{family};
    const JFrameSplit split = jframe_split(family);
    const FrameAnalysis after{split.family};
    CHECK(after.is_frame());
    CHECK(after.lower_bound() >= whole.lower_bound() - 1e-9);
    CHECK(after.upper_bound() <= whole.upper_bound() + 1e-9);
    CHECK(split.is_jframe);
  }
}

TEST_CASE("spectral sandwich on seeded probes") {
  SplitMix64 rng{503};
  const FrameFamily family = framelab::testing::random_frame(rng, 7, 18);
  const FrameAnalysis analysis{family};
  const Eigen::MatrixXd& j = family.space().symmetry().matrix();
  for (int probe = 0; probe < 100; ++probe) {
    const Eigen::VectorXd k = random_vector(rng, 7);
    const double energy = k.dot(analysis.frame_operator() * (j * k));
    const double norm2 = k.squaredNorm();
    CHECK(energy >= analysis.lower_bound() * norm2 - 1e-9 * norm2);
    CHECK(energy <= analysis.upper_bound() * norm2 + 1e-9 * norm2);
  }
}

TEST_CASE("inverse sandwich through an independent inversion route") {
  SplitMix64 rng{509};
  const FrameFamily family = framelab::testing::random_frame(rng, 6, 15);
  const FrameAnalysis analysis{family};
  const Eigen::MatrixXd& j = family.space().symmetry().matrix();
  // Invert the nonsymmetric S by LU, independently of the eigenroute used
  // inside FrameAnalysis.
  const Eigen::MatrixXd s_inverse =
      analysis.frame_operator().partialPivLu().solve(
          Eigen::MatrixXd::Identity(6, 6));
  const Eigen::MatrixXd js_inverse = 0.5 * (j * s_inverse +
                                            (j * s_inverse).transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(js_inverse);
  CHECK(rel_gap(es.eigenvalues()(0), 1.0 / analysis.upper_bound()) < 1e-9);
  CHECK(rel_gap(es.eigenvalues()(5), 1.0 / analysis.lower_bound()) < 1e-9);
}

TEST_CASE("operator relations among the four frame operators") {
  SplitMix64 rng{521};
  for (int trial = 0; trial < 10; ++trial) {
    const FrameFamily family = framelab::testing::random_frame(rng, 8, 20);
    const FrameAnalysis analysis{family};
    const Eigen::MatrixXd& j = family.space().symmetry().matrix();
    const Eigen::MatrixXd& s = analysis.frame_operator();
    CHECK(spectral_norm(analysis.companion_flipped() - j * s * j) <= 1e-10);
    CHECK(spectral_norm(analysis.companion_definite() - s * j) <= 1e-10);
    CHECK(spectral_norm(analysis.companion_mixed() - j * s) <= 1e-10);
  }
}

TEST_CASE("reconstruction is invariant under column permutations") {
  SplitMix64 rng{541};
  const FrameFamily family = framelab::testing::random_frame(rng, 6, 14);
  const FrameAnalysis baseline{family};
  const Eigen::VectorXd x = random_vector(rng, 6);
  const Decomposition reference = frame_decompose(baseline, x);

  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Eigen::Index> perm(14);
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    for (std::size_t i = perm.size(); i > 1; --i)
      std::swap(perm[i - 1], perm[rng.below(i)]);
    Eigen::MatrixXd shuffled(6, 14);
    for (Eigen::Index c = 0; c < 14; ++c)
      shuffled.col(c) = family.synthesis().col(perm[static_cast<std::size_t>(c)]);
    const FrameAnalysis permuted{FrameFamily{family.space(), shuffled}};
    const Decomposition d = frame_decompose(permuted, x);
    CHECK((d.reconstruction_via_dual - reference.reconstruction_via_dual)
              .norm() <= 1e-10);
    CHECK((d.reconstruction_via_family - reference.reconstruction_via_family)
              .norm() <= 1e-10);
  }
}

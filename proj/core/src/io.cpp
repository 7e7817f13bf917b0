#include "framelab/io.hpp"

#include <json.hpp>

#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "framelab/rng.hpp"

namespace framelab {

using nlohmann::json;

namespace {

json matrix_json(const std::string& name, const Eigen::MatrixXd& m) {
  json j;
  j["name"] = name;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  j["data"] = data;
  return j;
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

Eigen::MatrixXd parse_matrix(const json& node, const std::string& path) {
  if (!node.is_object())
    throw ParseError(path + " must be a matrix object");
  if (!node.contains("rows") || !node.contains("cols") ||
      !node.contains("data"))
    throw ParseError(path + " needs rows, cols and data fields");
  if (!node["rows"].is_number_integer() || !node["cols"].is_number_integer())
    throw ParseError(path + ": rows and cols must be integers");
  const auto rows = node["rows"].get<Eigen::Index>();
  const auto cols = node["cols"].get<Eigen::Index>();
  if (rows < 1 || cols < 1)
    throw InvariantViolation(path + ".shape", "rows and cols must be positive");
  if (!node["data"].is_array())
    throw ParseError(path + ".data must be an array");
  if (static_cast<Eigen::Index>(node["data"].size()) != rows * cols)
    throw InvariantViolation(
        path + ".data", "length " + std::to_string(node["data"].size()) +
                            " does not equal rows*cols = " +
                            std::to_string(rows * cols));
  Eigen::MatrixXd m(rows, cols);
  Eigen::Index i = 0;
  for (const auto& value : node["data"]) {
    if (!value.is_number())
      throw ParseError(path + ".data must contain only numbers");
    const double x = value.get<double>();
    if (!std::isfinite(x))
      throw InvariantViolation(path + ".finite", "entry " + std::to_string(i) +
                                                     " is not finite");
    m(i / cols, i % cols) = x;
    ++i;
  }
  return m;
}

Eigen::VectorXd parse_array(const json& node, const std::string& path) {
  if (!node.is_array()) throw ParseError(path + " must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(node.size()));
  Eigen::Index i = 0;
  for (const auto& value : node) {
    if (!value.is_number()) throw ParseError(path + " must contain numbers");
    const double x = value.get<double>();
    if (!std::isfinite(x))
      throw InvariantViolation(path + ".finite", "entry is not finite");
    v(i++) = x;
  }
  return v;
}

json bounds_json(const BoundsPair& b) {
  json j;
  j["lower"] = b.lower;
  j["upper"] = b.upper;
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

MatrixFile MatrixFile::from_matrix(std::string name, const Eigen::MatrixXd& m) {
  MatrixFile mf;
  mf.name = std::move(name);
  mf.rows = m.rows();
  mf.cols = m.cols();
  mf.data.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) mf.data.push_back(m(r, c));
  return mf;
}

Eigen::MatrixXd MatrixFile::to_matrix() const {
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw InvariantViolation("matrix.data", "length does not equal rows*cols");
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c)
      m(r, c) = data[static_cast<std::size_t>(r * cols + c)];
  return m;
}

std::string format_double(double value) {
  char buf[40];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string digest(const Eigen::MatrixXd& m) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t word) {
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (word >> (8 * byte)) & 0xffULL;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<std::uint64_t>(m.rows()));
  mix(static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      mix(std::bit_cast<std::uint64_t>(m(r, c)));
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

DualVariant parse_dual_variant(const std::string& name) {
  if (name == "canonical_krein") return DualVariant::canonical_krein;
  if (name == "canonical_krein_j") return DualVariant::canonical_krein_j;
  if (name == "canonical_hilbert") return DualVariant::canonical_hilbert;
  if (name == "canonical_hilbert_j") return DualVariant::canonical_hilbert_j;
  throw DomainError("unknown dual variant '" + name + "'");
}

std::string dual_variant_name(DualVariant variant) {
  switch (variant) {
    case DualVariant::canonical_krein: return "canonical_krein";
    case DualVariant::canonical_krein_j: return "canonical_krein_j";
    case DualVariant::canonical_hilbert: return "canonical_hilbert";
    case DualVariant::canonical_hilbert_j: return "canonical_hilbert_j";
  }
  throw DomainError("unknown dual variant");
}

Problem load_problem_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("space") || !doc.contains("frame"))
    throw ParseError("problem file needs space and frame fields");
  if (!doc["space"].is_object() || !doc["space"].contains("J"))
    throw ParseError("space needs a J matrix");

  const Eigen::MatrixXd j_matrix = parse_matrix(doc["space"]["J"], "space.J");
  if (j_matrix.rows() != j_matrix.cols())
    throw InvariantViolation("space.J.shape", "J must be square");
  KreinSpace space = [&] {
    try {
      return KreinSpace{FundamentalSymmetry{j_matrix}};
    } catch (const InvariantViolation& e) {
      throw InvariantViolation("space.J." + e.invariant(), e.what());
    }
  }();

  Eigen::MatrixXd synthesis = parse_matrix(doc["frame"], "frame");
  if (synthesis.rows() != space.dim())
    throw DimensionError("frame has " + std::to_string(synthesis.rows()) +
                         " rows for a space of dim " +
                         std::to_string(space.dim()));
  const Eigen::MatrixXd frame_as_loaded = synthesis;

  if (doc.contains("gram") && doc.contains("grid"))
    throw ParseError("gram and grid are mutually exclusive Gram sources");

  std::optional<GramModel> gram;
  std::optional<GridSpec> grid;
  if (doc.contains("gram")) {
    const Eigen::MatrixXd w = parse_matrix(doc["gram"], "gram");
    if (w.rows() != space.dim() || w.cols() != space.dim())
      throw DimensionError("gram must be " + std::to_string(space.dim()) +
                           "x" + std::to_string(space.dim()));
    gram.emplace(build_gram_model(w));
  } else if (doc.contains("grid")) {
    const auto& g = doc["grid"];
    if (!g.is_object() || !g.contains("points") || !g.contains("mu") ||
        !g.contains("phi"))
      throw ParseError("grid needs points, mu and phi arrays");
    GridSpec spec{parse_array(g["points"], "grid.points"),
                  parse_array(g["mu"], "grid.mu"),
                  parse_array(g["phi"], "grid.phi")};
    if (spec.points.size() != space.dim())
      throw DimensionError("grid length " + std::to_string(spec.points.size()) +
                           " does not match space dim " +
                           std::to_string(space.dim()));
    MultiplicationGram mult =
        build_multiplication_gram(spec.points, spec.weights, spec.symbol);
    // Absorb the measure into coordinates: f_i -> sqrt(mu_i) f_i.
    for (Eigen::Index r = 0; r < synthesis.rows(); ++r)
      synthesis.row(r) *= std::sqrt(spec.weights(r));
    gram.emplace(std::move(mult.model));
    grid.emplace(std::move(spec));
  }

  FrameFamily frame{space, std::move(synthesis)};
  return Problem{std::move(space), std::move(frame), std::move(gram),
                 std::move(grid), frame_as_loaded};
}

Problem load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_problem_text(buffer.str());
}

std::string serialize_problem(const Problem& problem) {
  json doc;
  doc["space"]["J"] = matrix_json("J", problem.space.symmetry().matrix());
  doc["frame"] = matrix_json("frame", problem.frame_as_loaded);
  if (problem.grid) {
    doc["grid"]["points"] = to_std(problem.grid->points);
    doc["grid"]["mu"] = to_std(problem.grid->weights);
    doc["grid"]["phi"] = to_std(problem.grid->symbol);
  } else if (problem.gram) {
    doc["gram"] = matrix_json("gram", problem.gram->gram());
  }
  return dump(doc);
}

AnalyzeOutput run_analyze(const Problem& problem, std::uint64_t seed) {
  const FrameFamily& family = problem.frame;
  const Eigen::MatrixXd& j = family.space().symmetry().matrix();
  FrameAnalysis analysis{family};
  const FourWayBounds four_way = four_way_bounds(family);
  const TightnessReport tightness = tight_jonb_check(family);

  json report;
  report["digests"]["space_j"] = digest(j);
  report["digests"]["frame"] = digest(family.synthesis());
  if (problem.gram) report["digests"]["gram"] = digest(problem.gram->gram());
  report["space"]["dim"] = family.dim();
  report["space"]["signature"] = {family.space().positive_dim(),
                                  family.space().negative_dim()};
  report["family"]["count"] = family.size();
  report["seed"] = seed;

  report["bounds"] = bounds_json(analysis.bounds());
  report["four_way"]["family_indefinite"] =
      bounds_json(four_way.family_indefinite);
  report["four_way"]["flipped_indefinite"] =
      bounds_json(four_way.flipped_indefinite);
  report["four_way"]["family_definite"] = bounds_json(four_way.family_definite);
  report["four_way"]["flipped_definite"] =
      bounds_json(four_way.flipped_definite);
  report["four_way"]["max_relative_spread"] = four_way.max_relative_spread;

  report["flags"]["is_frame"] = analysis.is_frame();
  report["flags"]["is_tight"] = analysis.is_tight();
  report["flags"]["is_exact"] = analysis.is_exact();
  report["flags"]["is_tight_one"] = tightness.is_tight_one;
  report["flags"]["self_products_unit"] = tightness.self_products_unit;
  report["flags"]["is_jonb"] = tightness.is_jonb;

  report["operator_residuals"]["s0_vs_jsj"] =
      spectral_norm(analysis.companion_flipped() -
                    j * analysis.frame_operator() * j);
  report["operator_residuals"]["s1_vs_sj"] =
      spectral_norm(analysis.companion_definite() -
                    analysis.frame_operator() * j);
  report["operator_residuals"]["s2_vs_js"] = spectral_norm(
      analysis.companion_mixed() - j * analysis.frame_operator());

  std::vector<std::string> warnings;
  if (analysis.is_frame()) {
    const DualFrame dual = dual_frame(analysis, DualVariant::canonical_krein);
    report["dual_bounds"] = bounds_json(dual.bounds);

    SplitMix64 rng{seed};
    double max_residual = 0.0;
    const int probes = 50;
    for (int p = 0; p < probes; ++p) {
      Eigen::VectorXd x = random_vector(rng, family.dim());
      const double norm = x.norm();
      if (norm == 0.0) continue;
      const Decomposition d = frame_decompose(analysis, x);
      max_residual = std::max(max_residual, d.residual / norm);
    }
    report["reconstruction"]["probes"] = probes;
    report["reconstruction"]["max_relative_residual"] = max_residual;
  } else {
    warnings.push_back(
        "family is not a frame: optimal lower bound is below threshold");
  }
  report["warnings"] = warnings;
  return AnalyzeOutput{dump(report), analysis.is_frame()};
}

std::string run_dual(const Problem& problem, DualVariant variant,
                     std::uint64_t seed) {
  const FrameFamily& family = problem.frame;
  FrameAnalysis analysis{family};
  if (!analysis.is_frame())
    throw NotAFrameError("dual requires a frame; lower bound " +
                         std::to_string(analysis.lower_bound()));
  const DualFrame dual = dual_frame(analysis, variant);

  // Mixed expansions of the duality identity, probed in the inner product
  // and against the primal family appropriate to the variant.
  const Eigen::MatrixXd& j = family.space().symmetry().matrix();
  const bool flipped_primal = variant == DualVariant::canonical_krein_j ||
                              variant == DualVariant::canonical_hilbert_j;
  const bool definite_product = variant == DualVariant::canonical_hilbert ||
                                variant == DualVariant::canonical_hilbert_j;
  const Eigen::MatrixXd primal =
      flipped_primal ? Eigen::MatrixXd(j * family.synthesis())
                     : family.synthesis();
  const Eigen::MatrixXd metric =
      definite_product ? Eigen::MatrixXd::Identity(family.dim(), family.dim())
                       : j;

  SplitMix64 rng{seed};
  double max_residual = 0.0;
  for (int p = 0; p < 50; ++p) {
    const Eigen::VectorXd x = random_vector(rng, family.dim());
    const double norm = x.norm();
    if (norm == 0.0) continue;
    const Eigen::VectorXd via_dual =
        primal * (dual.vectors.transpose() * (metric * x));
    const Eigen::VectorXd via_primal =
        dual.vectors * (primal.transpose() * (metric * x));
    max_residual = std::max(
        max_residual,
        std::max((x - via_dual).norm(), (x - via_primal).norm()) / norm);
  }

  json report;
  report["variant"] = dual_variant_name(variant);
  report["vectors"] = matrix_json("dual", dual.vectors);
  report["bounds"] = bounds_json(dual.bounds);
  report["primal_bounds"] = bounds_json(analysis.bounds());
  report["duality"]["probes"] = 50;
  report["duality"]["max_relative_residual"] = max_residual;
  report["seed"] = seed;
  return dump(report);
}

std::string run_reconstruct(const Problem& problem, const Eigen::VectorXd& x) {
  FrameAnalysis analysis{problem.frame};
  if (!analysis.is_frame())
    throw NotAFrameError("reconstruct requires a frame; lower bound " +
                         std::to_string(analysis.lower_bound()));
  const Decomposition d = frame_decompose(analysis, x);
  const double norm = x.norm();

  json report;
  report["vector"] = to_std(x);
  report["analysis_coefficients"] = to_std(d.analysis_coefficients);
  report["dual_coefficients"] = to_std(d.dual_coefficients);
  report["reconstruction_via_dual"] = to_std(d.reconstruction_via_dual);
  report["reconstruction_via_family"] = to_std(d.reconstruction_via_family);
  report["residual"] = d.residual;
  report["residual_relative"] = norm > 0.0 ? d.residual / norm : 0.0;
  report["bounds"] = bounds_json(analysis.bounds());
  return dump(report);
}

std::string run_transfer(const Problem& problem) {
  if (!problem.gram)
    throw DomainError("transfer requires a gram matrix or grid in the file");
  const WKreinSpace ws{*problem.gram};
  const TransferResult t = transfer_frame(ws, problem.frame);
  const CompletenessReport cert = completeness_certificate(ws.model());

  json report;
  report["vectors"] = matrix_json("transferred", t.vectors);
  report["euclidean_bounds"] = bounds_json(t.euclidean);
  report["w_bounds"] = bounds_json(t.w_metric);
  report["kappa"] = t.kappa;
  report["certificate"]["spectral_floor"] = cert.spectral_floor;
  report["certificate"]["spectral_ceiling"] = cert.spectral_ceiling;
  report["certificate"]["completion_divergent"] = cert.completion_divergent;
  report["certificate"]["domain_restriction"] = cert.domain_restriction;
  std::vector<std::string> warnings;
  if (t.conditioning_warning)
    warnings.push_back("kappa exceeds 1e8; transferred bounds may degrade");
  report["warnings"] = warnings;
  return dump(report);
}

SweepOutput run_sweep(const Problem& problem, SweepDirection direction,
                      const std::vector<double>& parameters) {
  if (!problem.gram)
    throw DomainError("sweep requires a gram matrix or grid in the file");
  const DegradationCurve curve =
      degradation_sweep(*problem.gram, problem.frame, direction, parameters);

  std::string csv = "parameter,lower_bound,upper_bound,envelope\n";
  for (const SweepSample& s : curve.samples) {
    csv += format_double(s.parameter);
    csv += ',';
    csv += format_double(s.lower);
    csv += ',';
    csv += format_double(s.upper);
    csv += ',';
    csv += format_double(s.envelope);
    csv += '\n';
  }

  double max_norm_error = 0.0;
  for (const SweepSample& s : curve.samples)
    max_norm_error = std::max(max_norm_error,
                              std::abs(s.witness_j_norm - 1.0));
  json summary;
  summary["direction"] = curve.parameter_name;
  summary["euclidean_bounds"] = bounds_json(curve.euclidean);
  summary["samples"] = curve.samples.size();
  summary["envelope_satisfied"] = true;  // violations throw
  summary["max_witness_norm_error"] = max_norm_error;
  return SweepOutput{std::move(csv), dump(summary)};
}

}  // namespace framelab

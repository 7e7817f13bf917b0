#ifndef FRAMELAB_IO_HPP
#define FRAMELAB_IO_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "framelab/frame.hpp"
#include "framelab/wmetric.hpp"

namespace framelab {

/// Row-major matrix payload of the problem file schema.
struct MatrixFile {
  std::string name;
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  std::vector<double> data;

  static MatrixFile from_matrix(std::string name, const Eigen::MatrixXd& m);
  Eigen::MatrixXd to_matrix() const;
};

struct GridSpec {
  Eigen::VectorXd points;
  Eigen::VectorXd weights;  // mu
  Eigen::VectorXd symbol;   // phi
};

/// One loaded problem: ambient space, frame family, and an optional Gram
/// model coming either from an explicit "gram" matrix or from a "grid"
/// block (in which case the frame is mapped into measure-weighted
/// coordinates at load).
struct Problem {
  KreinSpace space;
  FrameFamily frame;
  std::optional<GramModel> gram;
  std::optional<GridSpec> grid;
  Eigen::MatrixXd frame_as_loaded;  // file content, before any weighting
};

Problem load_problem(const std::string& path);
Problem load_problem_text(const std::string& text);

// Inverse of load: reproduces the numeric content of the original file
// (shortest round-trip float rendering, keys sorted).
std::string serialize_problem(const Problem& problem);

// Shortest representation that parses back to the same double.
std::string format_double(double value);

// FNV-1a 64-bit digest over the dimensions and raw entry bits, as a hex
// string; used to tie reports to their inputs.
std::string digest(const Eigen::MatrixXd& m);

DualVariant parse_dual_variant(const std::string& name);
std::string dual_variant_name(DualVariant variant);

struct AnalyzeOutput {
  std::string json;
  bool is_frame = false;
};
AnalyzeOutput run_analyze(const Problem& problem, std::uint64_t seed);

std::string run_dual(const Problem& problem, DualVariant variant,
                     std::uint64_t seed);
std::string run_reconstruct(const Problem& problem, const Eigen::VectorXd& x);
std::string run_transfer(const Problem& problem);

struct SweepOutput {
  std::string csv;
  std::string summary_json;
};
SweepOutput run_sweep(const Problem& problem, SweepDirection direction,
                      const std::vector<double>& parameters);

}  // namespace framelab

#endif  // FRAMELAB_IO_HPP

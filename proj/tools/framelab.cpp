#include <CLI11.hpp>

#include <Eigen/Dense>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "framelab/errors.hpp"
#include "framelab/io.hpp"

namespace {

// Exit codes: 0 success/frame, 1 usage or input errors, 2 not a frame,
// 3 nontrivial Gram kernel, 4 envelope violation in a sweep.
constexpr int kExitError = 1;
constexpr int kExitNotAFrame = 2;
constexpr int kExitKernel = 3;
constexpr int kExitEnvelope = 4;

std::vector<double> parse_number_list(const std::string& text,
                                      const char* what) {
  std::vector<double> values;
  std::string token;
  std::istringstream stream(text);
  while (std::getline(stream, token, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw framelab::DomainError(std::string(what) + ": cannot parse '" +
                                  token + "' as a number");
    }
  }
  if (values.empty())
    throw framelab::DomainError(std::string(what) + ": empty list");
  return values;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out)
    throw framelab::Error("cannot write to '" + out_path + "'");
  out << text;
}

int dispatch(const std::string& command, const std::string& path,
             std::uint64_t seed, const std::string& out_path,
             const std::string& variant_name, const std::string& vector_text,
             const std::string& direction_name, const std::string& params_text) {
  const framelab::Problem problem = framelab::load_problem(path);

  if (command == "analyze") {
    const auto output = framelab::run_analyze(problem, seed);
    emit(output.json, out_path);
    return output.is_frame ? 0 : kExitNotAFrame;
  }
  if (command == "dual") {
    const auto variant = framelab::parse_dual_variant(variant_name);
    emit(framelab::run_dual(problem, variant, seed), out_path);
    return 0;
  }
  if (command == "reconstruct") {
    const std::vector<double> entries =
        parse_number_list(vector_text, "--vector");
    Eigen::VectorXd x(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i)
      x(static_cast<Eigen::Index>(i)) = entries[i];
    emit(framelab::run_reconstruct(problem, x), out_path);
    return 0;
  }
  if (command == "transfer") {
    emit(framelab::run_transfer(problem), out_path);
    return 0;
  }
  if (command == "sweep") {
    framelab::SweepDirection direction;
    if (direction_name == "floor")
      direction = framelab::SweepDirection::floor;
    else if (direction_name == "ceiling")
      direction = framelab::SweepDirection::ceiling;
    else
      throw framelab::DomainError("--direction must be floor or ceiling");
    const auto params = parse_number_list(params_text, "--params");
    const auto output = framelab::run_sweep(problem, direction, params);
    // CSV goes to --out when given (stdout otherwise); the JSON summary is
    // printed to stdout only when the CSV went to a file, keeping stdout a
    // single well-formed document either way.
    emit(output.csv, out_path);
    if (!out_path.empty()) std::cout << output.summary_json;
    return 0;
  }
  throw framelab::DomainError("unknown command '" + command + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"frame analysis for finite-dimensional indefinite metrics"};
  app.require_subcommand(1);

  std::string path, out_path, variant_name = "canonical_krein";
  std::string vector_text, direction_name, params_text;
  std::uint64_t seed = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("file", path, "problem JSON file")->required();
    cmd->add_option("--seed", seed, "seed for deterministic probe generation");
    cmd->add_option("--out", out_path, "write the primary output to a file");
  };

  add_common(app.add_subcommand(
      "analyze", "optimal bounds, flags and operator residuals"));
  auto* dual = app.add_subcommand("dual", "canonical dual family");
  add_common(dual);
  dual->add_option("--variant", variant_name,
                   "canonical_krein | canonical_krein_j | canonical_hilbert | "
                   "canonical_hilbert_j");
  auto* reconstruct =
      app.add_subcommand("reconstruct", "expand a vector through the frame");
  add_common(reconstruct);
  reconstruct->add_option("--vector", vector_text, "comma-separated entries")
      ->required();
  add_common(app.add_subcommand(
      "transfer", "move the frame into the W-metric space"));
  auto* sweep = app.add_subcommand(
      "sweep", "frame-bound degradation curve over a spectral parameter");
  add_common(sweep);
  sweep->add_option("--direction", direction_name, "floor | ceiling")
      ->required();
  sweep->add_option("--params", params_text, "comma-separated parameter list")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return dispatch(command, path, seed, out_path, variant_name, vector_text,
                    direction_name, params_text);
  } catch (const framelab::NotAFrameError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNotAFrame;
  } catch (const framelab::KernelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    // The dedicated kernel code belongs to transfer; elsewhere a defective
    // Gram operator is an ordinary input error.
    return command == "transfer" ? kExitKernel : kExitError;
  } catch (const framelab::EnvelopeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEnvelope;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "igr/model.hpp"
#include "igr/timestep.hpp"

namespace igr {

// Flat key = value run configuration; every default reproduces the reference
// shock-tube experiment (IGR, N = 512, gamma = 1.4, alpha = 5 h^2, CFL 0.95).
// Unknown keys are rejected.
struct Config {
  ModelKind model = ModelKind::Igr;
  int n_cells = 512;
  double gamma = 1.4;
  double alpha_coefficient = 5.0;  // alpha = coefficient * h^2
  double cfl = 0.95;
  double t_end = 0.5;
  std::vector<double> output_times = {0.125, 0.25, 0.375, 0.5};
  double x1 = 0.25;
  double x2 = 0.75;
  double delta = 0.02;
  double c_penalty = 20.0;
  double flux_dissipation_scale = 1.0;
  std::uint64_t seed = 12345;  // opcheck replay seed

  static Config parse(const std::string& text);
  static Config parse_file(const std::filesystem::path& path);

  // Fully-resolved key = value echo (sorted keys), written into run metadata.
  std::string echo() const;

  double h() const { return 1.0 / n_cells; }
  double alpha() const { return alpha_coefficient * h() * h(); }

  Mesh1D make_mesh() const { return Mesh1D(n_cells); }
  ModelParams make_model_params() const;
  RunConfig make_run_config() const;
  SodParams make_sod_params() const;

  void validate() const;
};

}  // namespace igr

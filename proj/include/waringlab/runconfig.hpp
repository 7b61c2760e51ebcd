#ifndef WARINGLAB_RUNCONFIG_HPP
#define WARINGLAB_RUNCONFIG_HPP

#include <string>

#include "waringlab/randbasis.hpp"

namespace wlab {

// Experiment configuration with a versioned JSON form ("schema": 1).
// Unknown keys are rejected; the textual form round-trips losslessly.
struct RunConfig {
  int schema = 1;
  int k = 2;
  int s = 9;
  double eta = 0.5;
  double psi_c = 1.0;
  double psi_gamma = 1.0;
  double phi_c = 1.0;
  double phi_gamma = 1.0;
  double delta = 0.25;
  std::uint64_t seed = 0;
  std::uint64_t x_max = 1000000;
  std::string interval = "short";  // "short" | "dyadic"
  std::uint64_t big_n = 1000000;
  double big_c = 1.0;
  double small_c = 1.0;
  int workers = 1;

  static RunConfig from_json_text(const std::string& text);
  std::string to_json_text() const;
  ExperimentConfig to_experiment() const;
};

// Named presets for the verify flow.
RunConfig preset_config(const std::string& name);

// Temp-file-plus-rename write; no partial output on failure.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace wlab

#endif

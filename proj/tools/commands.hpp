#pragma once

#include <cstdint>
#include <string>

namespace ryd::cli {

struct CommonOptions {
  std::string config_path;
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool seed_given = false;
  int threads = 1;
};

void run_exponents(int d, int p);

struct EosGrid {
  int d = 3, p = 6;
  double alpha_min = 1e-6, alpha_max = 1e-2;
  int alpha_points = 25;
  double delta_min = 0.0, delta_max = 0.0;
  int delta_points = 1;
};
void run_eos(const EosGrid& grid, const std::string& out_dir);

void run_simulate(const CommonOptions& options);
void run_sweep(const CommonOptions& options);
void run_collapse(const CommonOptions& options, const std::string& data_path);
void run_lda(const CommonOptions& options);

}  // namespace ryd::cli

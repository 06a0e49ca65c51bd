#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "rydscale/disorder.hpp"
#include "rydscale/ensemble.hpp"
#include "rydscale/scaling.hpp"

namespace ryd {

// Shortest round-trip decimal representation (stable across runs).
std::string format_double(double value);

void write_configuration_csv(const std::string& path, const AtomConfiguration& config);
void write_trajectory_csv(const std::string& path, const ExcitationTrajectory& trajectory);
void write_scaling_csv(const std::string& path, std::span<const ScalingPoint> points);

// Run manifest: the resolved configuration (feeding it back as --config
// reproduces the run), plus provenance.
struct RunManifest {
  std::string command;
  std::map<std::string, std::string> config;
  std::vector<std::string> outputs;
};

void write_manifest(const std::string& path, const RunManifest& manifest);

// External excitation curves for the collapse pipeline. CSV schema:
//   header row:  n,omega,N,time,N_R
//   units row:   e.g.  m^-3,kHz,1,us,1
// Rows sharing (n, omega, N) form one curve, in order of first appearance.
struct ExternalRun {
  double density = 0.0;         // SI, m^-d
  double rabi_frequency = 0.0;  // rad/s
  double atom_number = 0.0;
  std::vector<double> times;    // s
  std::vector<double> counts;
};

std::vector<ExternalRun> read_external_runs(const std::string& path, int dimension);

}  // namespace ryd

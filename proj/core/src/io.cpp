#include "rydscale/io.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

#include "rydscale/config.hpp"
#include "rydscale/errors.hpp"

namespace ryd {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream stream(line);
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

}  // namespace

std::string format_double(double value) {
  char buffer[32];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void write_configuration_csv(const std::string& path, const AtomConfiguration& config) {
  auto out = open_out(path);
  out << "# atom configuration, positions in units of a = n^{-1/d}\n";
  switch (config.geometry.kind) {
    case GeometryKind::periodic_box:
      out << "# geometry: periodic_box L=" << format_double(config.geometry.box_side) << "\n";
      break;
    case GeometryKind::open_gaussian:
      out << "# geometry: open_gaussian sigmas=" << format_double(config.geometry.sigmas[0]);
      for (int c = 1; c < config.dimension; ++c)
        out << "," << format_double(config.geometry.sigmas[c]);
      out << "\n";
      break;
    case GeometryKind::open_line:
      out << "# geometry: open_line L=" << format_double(config.geometry.box_side) << "\n";
      break;
  }
  out << "# seed: " << config.seed << "\n";
  out << "index";
  const char* axis[] = {"x", "y", "z"};
  for (int c = 0; c < config.dimension; ++c) out << "," << axis[c];
  out << "\n";
  for (int i = 0; i < config.atom_count(); ++i) {
    out << i;
    for (int c = 0; c < config.dimension; ++c)
      out << "," << format_double(config.positions[i][c]);
    out << "\n";
  }
}

void write_trajectory_csv(const std::string& path, const ExcitationTrajectory& trajectory) {
  auto out = open_out(path);
  out << "# excitation trajectory, tau in units of hbar/E_c\n";
  out << "tau,f_R_mean,f_R_stderr,realization_count\n";
  for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
    out << format_double(trajectory.times[i]) << "," << format_double(trajectory.f_mean[i])
        << "," << format_double(trajectory.f_stderr[i]) << "," << trajectory.realization_count
        << "\n";
  }
}

void write_scaling_csv(const std::string& path, std::span<const ScalingPoint> points) {
  auto out = open_out(path);
  out << "# rescaled excitation data (dimensionless)\n";
  out << "alpha,g_R,f_R,run_id,density,rabi_frequency\n";
  for (const ScalingPoint& point : points) {
    out << format_double(point.alpha) << "," << format_double(point.g_R) << ","
        << format_double(point.f_R) << "," << point.run_id << ","
        << format_double(point.density) << "," << format_double(point.rabi_frequency) << "\n";
  }
}

void write_manifest(const std::string& path, const RunManifest& manifest) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = 1;
  doc["command"] = manifest.command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  for (const auto& [key, value] : manifest.config) config[key] = value;
  doc["config"] = std::move(config);
  doc["outputs"] = manifest.outputs;
  auto out = open_out(path);
  out << doc.dump(2) << "\n";
}

std::vector<ExternalRun> read_external_runs(const std::string& path, int dimension) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    header = split_csv(line);
    break;
  }
  const std::vector<std::string> expected = {"n", "omega", "N", "time", "N_R"};
  if (header != expected)
    throw ConfigError(path + ": expected header n,omega,N,time,N_R");

  if (!std::getline(in, line)) throw ConfigError(path + ": missing units row");
  const auto units = split_csv(line);
  if (units.size() != 5) throw ConfigError(path + ": units row needs 5 fields");

  const auto density_of = [&](const std::string& v) {
    return parse_density_si(v + " " + units[0], dimension);
  };
  const auto omega_of = [&](const std::string& v) {
    return parse_angular_frequency(v + " " + units[1]);
  };
  const auto time_of = [&](const std::string& v) { return parse_time_s(v + " " + units[3]); };
  const auto plain = [&](const std::string& v, const char* what) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size())
      throw ConfigError(path + ": cannot parse " + std::string(what) + " value '" + v + "'");
    return out;
  };

  std::vector<ExternalRun> runs;
  int line_number = 2;
  while (std::getline(in, line)) {
    ++line_number;
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split_csv(line);
    if (fields.size() != 5)
      throw ConfigError(path + ":" + std::to_string(line_number) + ": expected 5 fields");
    const double n = density_of(fields[0]);
    const double omega = omega_of(fields[1]);
    const double atoms = plain(fields[2], "N");
    const double t = time_of(fields[3]);
    const double count = plain(fields[4], "N_R");

    ExternalRun* run = nullptr;
    for (ExternalRun& candidate : runs) {
      if (candidate.density == n && candidate.rabi_frequency == omega &&
          candidate.atom_number == atoms) {
        run = &candidate;
        break;
      }
    }
    if (!run) {
      runs.emplace_back();
      run = &runs.back();
      run->density = n;
      run->rabi_frequency = omega;
      run->atom_number = atoms;
    }
    run->times.push_back(t);
    run->counts.push_back(count);
  }
  if (runs.empty()) throw ConfigError(path + ": no data rows");
  return runs;
}

}  // namespace ryd

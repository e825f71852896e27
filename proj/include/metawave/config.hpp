#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "metawave/circuit.hpp"
#include "metawave/disorder.hpp"
#include "metawave/qubit.hpp"

namespace metawave {

// Malformed, incomplete, or over-specified run configuration.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Evenly spaced sweep grid (inclusive endpoints).
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int points = 0;

  std::vector<double> values() const;
};

// Unit cell plus the finite-chain context used by the transmission and
// dispersion commands.  q_i = 0 means lossless resonators.
struct DeviceBlock {
  CapacitiveCell cell;
  int n_cells = 9;
  double q_i = 0.0;
};

// Transmon and its waveguide environment.  cq absent in the file means
// "calibrate so the linearized mode matches the zero-flux transition".
struct QubitBlock {
  TransmonParams params;
  int n_cells = 9;
  double r_load = 50.0;
  double q_i = 0.0;
  double t_int = std::numeric_limits<double>::infinity();
};

// Parsed and resolved run configuration.  `canonical` is the normalized
// serialized form (sorted keys, CLI overrides applied) that the manifest
// hash is computed from.
struct RunConfig {
  std::optional<DeviceBlock> device;
  std::optional<DisorderConfig> disorder;
  double disorder_q_i = 0.0;
  std::vector<double> disorder_freq_ghz;  // empty: derive from band edges
  std::optional<QubitBlock> qubit;
  GridSpec frequency{0.0, 0.0, 0};  // zero points: derive from band edges
  GridSpec flux{0.0, 0.35, 351};
  int k_points = 1001;
  std::map<std::string, std::uint64_t> seeds;
  std::string output_dir = "out";
  std::string canonical;

  // Seed for one command: CLI override, then the seeds block, then 1.
  std::uint64_t seed_for(const std::string& command,
                         std::optional<std::uint64_t> cli_override) const;
};

// Internal loss rate omega_c+/q_i of the cell's resonators (0 at q_i = 0).
double internal_rate(const CapacitiveCell& cell, double q_i);

// Parse a configuration document (JSON).  Unknown keys anywhere, missing
// required companions, or out-of-domain values raise config_error.  The
// optional overrides replace output_dir and add/replace the seed entry for
// `seed_command` before the canonical form is fixed.
RunConfig parse_config(const std::string& text,
                       const std::optional<std::string>& out_override =
                           std::nullopt,
                       const std::optional<std::uint64_t>& seed_override =
                           std::nullopt,
                       const std::string& seed_command = "");

// Read and parse; an unreadable file is a configuration error.
RunConfig load_config(const std::string& path,
                      const std::optional<std::string>& out_override =
                          std::nullopt,
                      const std::optional<std::uint64_t>& seed_override =
                          std::nullopt,
                      const std::string& seed_command = "");

}  // namespace metawave

#include "metawave/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "metawave/bandstructure.hpp"
#include "metawave/constants.hpp"

namespace metawave {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw config_error("config: " + where + ": " + what);
}

void check_object(const json& node, const std::string& where) {
  if (!node.is_object()) fail(where, "expected an object");
}

// Rejects any key outside the allowed list.
void check_keys(const json& node, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : node.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) fail(where, "unknown key '" + item.key() + "'");
  }
}

bool has(const json& node, const char* key) { return node.contains(key); }

double get_num(const json& node, const std::string& where, const char* key) {
  if (!has(node, key)) fail(where, std::string("missing key '") + key + "'");
  const json& v = node.at(key);
  if (!v.is_number()) fail(where, std::string("'") + key + "' must be a number");
  return v.get<double>();
}

double opt_num(const json& node, const std::string& where, const char* key,
               double fallback) {
  return has(node, key) ? get_num(node, where, key) : fallback;
}

long long get_int(const json& node, const std::string& where, const char* key,
                  long long fallback) {
  if (!has(node, key)) return fallback;
  const json& v = node.at(key);
  if (!v.is_number_integer()) {
    fail(where, std::string("'") + key + "' must be an integer");
  }
  return v.get<long long>();
}

void require_positive(double value, const std::string& where,
                      const char* key) {
  if (!(value > 0.0)) fail(where, std::string("'") + key + "' must be > 0");
}

DeviceBlock parse_device(const json& node) {
  const std::string where = "device";
  check_object(node, where);
  DeviceBlock block;
  const bool spec_form = has(node, "midgap_ghz") || has(node, "span_ghz") ||
                         has(node, "z0_ohm") || has(node, "n_index") ||
                         has(node, "coupling_fraction");
  if (spec_form) {
    check_keys(node, where,
               {"z0_ohm", "n_index", "d_um", "midgap_ghz", "span_ghz",
                "coupling_fraction", "n_cells", "q_i"});
    WaveguideSpec spec;
    spec.z0 = get_num(node, where, "z0_ohm");
    spec.n = get_num(node, where, "n_index");
    spec.d = get_num(node, where, "d_um") * 1e-6;
    const double midgap = get_num(node, where, "midgap_ghz");
    const double span = get_num(node, where, "span_ghz");
    const double u = opt_num(node, where, "coupling_fraction", 0.95);
    require_positive(spec.z0, where, "z0_ohm");
    require_positive(spec.n, where, "n_index");
    require_positive(spec.d, where, "d_um");
    block.cell = cell_from_spec(spec, midgap, span, u);
  } else {
    check_keys(node, where,
               {"c0_ff", "l0_ph", "cr_ff", "lr_ph", "ck_ff", "d_um",
                "n_cells", "q_i"});
    block.cell.c0 = get_num(node, where, "c0_ff") * 1e-15;
    block.cell.l0 = get_num(node, where, "l0_ph") * 1e-12;
    block.cell.cr = get_num(node, where, "cr_ff") * 1e-15;
    block.cell.lr = get_num(node, where, "lr_ph") * 1e-12;
    block.cell.ck = get_num(node, where, "ck_ff") * 1e-15;
    block.cell.d = get_num(node, where, "d_um") * 1e-6;
    require_positive(block.cell.c0, where, "c0_ff");
    require_positive(block.cell.l0, where, "l0_ph");
    require_positive(block.cell.cr, where, "cr_ff");
    require_positive(block.cell.lr, where, "lr_ph");
    require_positive(block.cell.d, where, "d_um");
    if (block.cell.ck < 0.0) fail(where, "'ck_ff' must be >= 0");
  }
  block.n_cells = static_cast<int>(get_int(node, where, "n_cells", 9));
  if (block.n_cells < 1) fail(where, "'n_cells' must be >= 1");
  block.q_i = opt_num(node, where, "q_i", 0.0);
  if (block.q_i < 0.0) fail(where, "'q_i' must be >= 0");
  return block;
}

void parse_disorder(const json& node, RunConfig& config) {
  const std::string where = "disorder";
  check_object(node, where);
  check_keys(node, where,
             {"sigma_rel", "n_cells", "realizations", "q_i",
              "frequencies_ghz"});
  DisorderConfig d;
  d.sigma_rel = opt_num(node, where, "sigma_rel", 0.005);
  if (d.sigma_rel < 0.0) fail(where, "'sigma_rel' must be >= 0");
  d.n_cells = static_cast<int>(get_int(node, where, "n_cells", 100));
  if (d.n_cells < 1) fail(where, "'n_cells' must be >= 1");
  d.n_realizations = get_int(node, where, "realizations", 100000);
  if (d.n_realizations < 1) fail(where, "'realizations' must be >= 1");
  config.disorder_q_i = opt_num(node, where, "q_i", 0.0);
  if (config.disorder_q_i < 0.0) fail(where, "'q_i' must be >= 0");
  if (has(node, "frequencies_ghz")) {
    const json& list = node.at("frequencies_ghz");
    if (!list.is_array() || list.empty()) {
      fail(where, "'frequencies_ghz' must be a non-empty array");
    }
    for (const json& v : list) {
      if (!v.is_number() || !(v.get<double>() > 0.0)) {
        fail(where, "'frequencies_ghz' entries must be positive numbers");
      }
      config.disorder_freq_ghz.push_back(v.get<double>());
    }
  }
  config.disorder = d;
}

QubitBlock parse_qubit(const json& node) {
  const std::string where = "qubit";
  check_object(node, where);
  check_keys(node, where,
             {"ej_max_ghz", "ec_ghz", "cg_ff", "cq_ff", "flux", "n_cells",
              "r_load_ohm", "q_i", "t_int_us"});
  QubitBlock block;
  block.params.ej_max = h_planck * get_num(node, where, "ej_max_ghz") * 1e9;
  block.params.ec = h_planck * get_num(node, where, "ec_ghz") * 1e9;
  block.params.cg = get_num(node, where, "cg_ff") * 1e-15;
  block.params.flux = opt_num(node, where, "flux", 0.0);
  require_positive(block.params.ej_max, where, "ej_max_ghz");
  require_positive(block.params.ec, where, "ec_ghz");
  require_positive(block.params.cg, where, "cg_ff");
  if (has(node, "cq_ff")) {
    block.params.cq = get_num(node, where, "cq_ff") * 1e-15;
    require_positive(block.params.cq, where, "cq_ff");
  } else {
    block.params.cq = calibrate_cq(block.params);
  }
  block.n_cells = static_cast<int>(get_int(node, where, "n_cells", 9));
  if (block.n_cells < 0) fail(where, "'n_cells' must be >= 0");
  block.r_load = opt_num(node, where, "r_load_ohm", 50.0);
  require_positive(block.r_load, where, "r_load_ohm");
  block.q_i = opt_num(node, where, "q_i", 0.0);
  if (block.q_i < 0.0) fail(where, "'q_i' must be >= 0");
  if (has(node, "t_int_us")) {
    block.t_int = get_num(node, where, "t_int_us") * 1e-6;
    require_positive(block.t_int, where, "t_int_us");
  }
  return block;
}

GridSpec parse_grid(const json& node, const std::string& where) {
  check_object(node, where);
  check_keys(node, where, {"start", "stop", "points"});
  GridSpec grid;
  grid.start = get_num(node, where, "start");
  grid.stop = get_num(node, where, "stop");
  grid.points = static_cast<int>(get_int(node, where, "points", 0));
  if (grid.points < 2) fail(where, "'points' must be >= 2");
  if (!(grid.stop > grid.start)) fail(where, "'stop' must exceed 'start'");
  return grid;
}

void parse_sweeps(const json& node, RunConfig& config) {
  const std::string where = "sweeps";
  check_object(node, where);
  check_keys(node, where, {"k_points", "frequency_ghz", "flux"});
  config.k_points = static_cast<int>(get_int(node, where, "k_points", 1001));
  if (config.k_points < 2) fail(where, "'k_points' must be >= 2");
  if (has(node, "frequency_ghz")) {
    config.frequency =
        parse_grid(node.at("frequency_ghz"), "sweeps.frequency_ghz");
  }
  if (has(node, "flux")) {
    config.flux = parse_grid(node.at("flux"), "sweeps.flux");
  }
}

void parse_seeds(const json& node, RunConfig& config) {
  const std::string where = "seeds";
  check_object(node, where);
  check_keys(node, where,
             {"dispersion", "transmission", "localization", "qubit-sweep",
              "fano"});
  for (const auto& item : node.items()) {
    if (!item.value().is_number_integer() || item.value().get<long long>() < 0) {
      fail(where, "'" + item.key() + "' must be a non-negative integer");
    }
    config.seeds[item.key()] = item.value().get<std::uint64_t>();
  }
}

}  // namespace

std::vector<double> GridSpec::values() const {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    out.push_back(start + (stop - start) * static_cast<double>(i) /
                              static_cast<double>(points - 1));
  }
  return out;
}

std::uint64_t RunConfig::seed_for(
    const std::string& command,
    std::optional<std::uint64_t> cli_override) const {
  if (cli_override) return *cli_override;
  const auto found = seeds.find(command);
  return found == seeds.end() ? 1 : found->second;
}

double internal_rate(const CapacitiveCell& cell, double q_i) {
  if (q_i <= 0.0) return 0.0;
  return band_edges(cell).omega_c_plus / q_i;
}

RunConfig parse_config(const std::string& text,
                       const std::optional<std::string>& out_override,
                       const std::optional<std::uint64_t>& seed_override,
                       const std::string& seed_command) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& err) {
    throw config_error(std::string("config: not parseable: ") + err.what());
  }
  check_object(root, "top level");
  if (out_override) root["output_dir"] = *out_override;
  if (seed_override) {
    if (seed_command.empty()) {
      throw config_error("config: seed override without a command");
    }
    root["seeds"][seed_command] = *seed_override;
  }
  check_keys(root, "top level",
             {"device", "disorder", "qubit", "sweeps", "seeds", "output_dir"});

  RunConfig config;
  try {
    if (has(root, "device")) config.device = parse_device(root.at("device"));
    if (has(root, "disorder")) parse_disorder(root.at("disorder"), config);
    if (has(root, "qubit")) config.qubit = parse_qubit(root.at("qubit"));
    if (has(root, "sweeps")) parse_sweeps(root.at("sweeps"), config);
    if (has(root, "seeds")) parse_seeds(root.at("seeds"), config);
  } catch (const config_error&) {
    throw;
  } catch (const std::invalid_argument& err) {
    // domain failures while realizing the blocks (e.g. unrealizable band
    // targets, non-transmon energy ratios) are configuration errors
    throw config_error(std::string("config: ") + err.what());
  }
  if (has(root, "output_dir")) {
    const json& dir = root.at("output_dir");
    if (!dir.is_string() || dir.get<std::string>().empty()) {
      throw config_error("config: 'output_dir' must be a non-empty string");
    }
    config.output_dir = dir.get<std::string>();
  }
  // the hash covers what is computed, not where it lands
  root.erase("output_dir");
  config.canonical = root.dump();
  return config;
}

RunConfig load_config(const std::string& path,
                      const std::optional<std::string>& out_override,
                      const std::optional<std::uint64_t>& seed_override,
                      const std::string& seed_command) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("config: cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), out_override, seed_override,
                      seed_command);
}

}  // namespace metawave

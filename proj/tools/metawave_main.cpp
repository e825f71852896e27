// Command-line driver: dispersion, transmission (with optional model fit),
// disorder localization, qubit flux sweeps, and Fano lineshape fits, all
// steered by one JSON configuration and emitted as manifest-stamped CSVs.
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "metawave/bandstructure.hpp"
#include "metawave/circuit.hpp"
#include "metawave/config.hpp"
#include "metawave/constants.hpp"
#include "metawave/disorder.hpp"
#include "metawave/fits.hpp"
#include "metawave/manifest.hpp"
#include "metawave/parallel.hpp"
#include "metawave/qubit.hpp"
#include "metawave/sparams_io.hpp"
#include "metawave/transmission.hpp"

namespace {

using namespace metawave;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", value);
  return buf;
}

// Everything one command needs beyond its own options.
struct CommandContext {
  RunConfig config;
  RunManifest manifest;
  std::string out_dir;
};

const DeviceBlock& require_device(const RunConfig& config) {
  if (!config.device) throw config_error("config: missing 'device' block");
  return *config.device;
}

const QubitBlock& require_qubit(const RunConfig& config) {
  if (!config.qubit) throw config_error("config: missing 'qubit' block");
  return *config.qubit;
}

const DisorderConfig& require_disorder(const RunConfig& config) {
  if (!config.disorder) throw config_error("config: missing 'disorder' block");
  return *config.disorder;
}

void emit_csv(const CommandContext& ctx, const std::string& name,
              const std::string& header, const std::string& rows,
              const std::string& footer = "") {
  std::string text = "# manifest: " + ctx.manifest.config_hash + "\n";
  text += header + "\n" + rows + footer;
  atomic_write_text(ctx.out_dir + "/" + name, text);
}

std::vector<double> frequency_grid_ghz(const RunConfig& config,
                                       const CapacitiveCell& cell) {
  if (config.frequency.points >= 2) return config.frequency.values();
  const BandEdges edges = band_edges(cell);
  const double span = rad_to_ghz(edges.delta());
  GridSpec grid{rad_to_ghz(edges.omega_c_minus) - 0.75 * span,
                rad_to_ghz(edges.omega_c_plus) + 0.75 * span, 1201};
  return grid.values();
}

int run_dispersion(const CommandContext& ctx) {
  const DeviceBlock& dev = require_device(ctx.config);
  const int n = ctx.config.k_points;
  std::string rows;
  for (int j = 0; j < n; ++j) {
    const double frac = static_cast<double>(j) / static_cast<double>(n - 1);
    const double k = frac * pi / dev.cell.d;
    const BandPoint bands = exact_bands(k, dev.cell);
    rows += fmt(frac) + "," + fmt(rad_to_ghz(bands.omega_plus)) + "," +
            fmt(rad_to_ghz(bands.omega_minus)) + "," +
            fmt(rad_to_ghz(bare_dispersion(k, dev.cell))) + "\n";
  }
  emit_csv(ctx, "dispersion.csv",
           "k_over_pi_d,omega_plus_ghz,omega_minus_ghz,omega_bare_ghz", rows);
  const BandEdges edges = band_edges(dev.cell);
  std::printf("wrote %s/dispersion.csv (%d rows)\n", ctx.out_dir.c_str(), n);
  std::printf("band edges: %.4f GHz / %.4f GHz\n",
              rad_to_ghz(edges.omega_c_minus),
              rad_to_ghz(edges.omega_c_plus));
  return kExitOk;
}

int run_transmission(CommandContext& ctx, const std::string& fit_path) {
  const DeviceBlock& dev = require_device(ctx.config);
  const FiniteWaveguide guide{dev.cell, dev.n_cells,
                              internal_rate(dev.cell, dev.q_i), 50.0, 50.0};
  const std::vector<double> grid_ghz = frequency_grid_ghz(ctx.config, dev.cell);
  std::vector<double> freq_hz;
  freq_hz.reserve(grid_ghz.size());
  for (const double nu : grid_ghz) freq_hz.push_back(nu * 1e9);
  const SParamTrace trace = simulate_trace(freq_hz, guide);

  double min_db = 1e300;
  double min_ghz = 0.0;
  for (std::size_t i = 0; i < trace.freq_hz.size(); ++i) {
    const double db = 20.0 * std::log10(std::abs(trace.s21[i]));
    if (db < min_db) {
      min_db = db;
      min_ghz = trace.freq_hz[i] / 1e9;
    }
  }
  write_trace_csv(ctx.out_dir + "/transmission.csv", trace,
                  "manifest: " + ctx.manifest.config_hash);
  std::printf("wrote %s/transmission.csv (%zu rows)\n", ctx.out_dir.c_str(),
              trace.freq_hz.size());
  std::printf("deepest transmission: %.2f dB at %.4f GHz\n", min_db, min_ghz);

  if (!fit_path.empty()) {
    const SParamTrace data = read_trace(fit_path);
    ctx.manifest.input_digests[fit_path] = digest_file(fit_path);
    LumpedFit init;
    init.cell = dev.cell;
    init.gamma_i = internal_rate(dev.cell, dev.q_i);
    const LumpedFit fit = fit_lumped_model(data, init, dev.n_cells);
    write_lumped_report(ctx.out_dir + "/fit_report.txt", fit,
                        "manifest: " + ctx.manifest.config_hash);
    const BandEdges fitted = band_edges(fit.cell);
    std::printf("fit residual: %.3e dB (RMS)\n", fit.residual);
    std::printf("fitted band edges: %.4f GHz / %.4f GHz\n",
                rad_to_ghz(fitted.omega_c_minus),
                rad_to_ghz(fitted.omega_c_plus));
  }
  return kExitOk;
}

int run_localization(const CommandContext& ctx) {
  const DeviceBlock& dev = require_device(ctx.config);
  DisorderConfig disorder = require_disorder(ctx.config);
  disorder.seed = ctx.manifest.seed;

  std::vector<double> grid_ghz = ctx.config.disorder_freq_ghz;
  if (grid_ghz.empty()) {
    const BandEdges edges = band_edges(dev.cell);
    const double span = rad_to_ghz(edges.delta());
    const GridSpec grid{rad_to_ghz(edges.omega_c_minus) - 0.5 * span,
                        rad_to_ghz(edges.omega_c_plus) + 0.5 * span, 400};
    grid_ghz = grid.values();
  }
  std::vector<double> omegas;
  omegas.reserve(grid_ghz.size());
  for (const double nu : grid_ghz) omegas.push_back(ghz_to_rad(nu));

  const double gamma_i = internal_rate(dev.cell, ctx.config.disorder_q_i);
  const LocalizationProfile profile =
      monte_carlo_localization(dev.cell, disorder, omegas, gamma_i);

  std::string rows;
  for (std::size_t i = 0; i < profile.freq.size(); ++i) {
    rows += fmt(rad_to_ghz(profile.freq[i])) + "," +
            fmt(profile.ell_disorder[i] / dev.cell.d) + "," +
            fmt(profile.ell_loss[i] / dev.cell.d) + "," +
            fmt(profile.ell_total[i] / dev.cell.d) + "," +
            fmt(profile.mc_stderr[i]) + "\n";
  }
  emit_csv(ctx, "localization.csv",
           "freq_ghz,ell_disorder_periods,ell_loss_periods,"
           "ell_total_periods,mc_stderr_inv_m",
           rows);
  std::printf("wrote %s/localization.csv (%zu rows)\n", ctx.out_dir.c_str(),
              profile.freq.size());
  return kExitOk;
}

int run_qubit_sweep(const CommandContext& ctx) {
  const DeviceBlock& dev = require_device(ctx.config);
  const QubitBlock& qubit = require_qubit(ctx.config);
  const QubitEnvironment env{dev.cell, qubit.n_cells, qubit.r_load,
                             internal_rate(dev.cell, qubit.q_i)};
  std::string rows;
  bool flagged = false;
  for (const double flux : ctx.config.flux.values()) {
    TransmonParams p = qubit.params;
    p.flux = flux;
    const double ej = p.ej_max * std::cos(two_pi * flux);
    if (!(ej >= 20.0 * p.ec)) {
      rows += fmt(flux) + ",nan,nan,nan,nan,nan,nan\n";
      flagged = true;
      continue;
    }
    const QubitPrediction q = predict_qubit(p, env, qubit.t_int);
    rows += fmt(flux) + "," + fmt(rad_to_ghz(q.omega_q_bare)) + "," +
            fmt(q.lamb_raw / two_pi / 1e6) + "," +
            fmt(q.lamb_anomalous / two_pi / 1e6) + "," +
            fmt(q.kappa / two_pi / 1e6) + "," + fmt(q.t_rad * 1e6) + "," +
            fmt(q.t1_total * 1e6) + "\n";
  }
  const std::string footer =
      flagged ? "# note: nan rows mark flux bias outside the transmon "
                "regime (e_j < 20 e_c)\n"
              : "";
  emit_csv(ctx, "qubit_sweep.csv",
           "flux,freq_ghz,lamb_shift_mhz,lamb_anomalous_mhz,kappa_mhz,"
           "t_rad_us,t1_us",
           rows, footer);
  std::printf("wrote %s/qubit_sweep.csv (%d rows)\n", ctx.out_dir.c_str(),
              ctx.config.flux.points);
  return kExitOk;
}

int run_fano(CommandContext& ctx, const std::string& window,
             const std::string& data_path) {
  const std::size_t colon = window.find(':');
  double f_lo_ghz = 0.0;
  double f_hi_ghz = 0.0;
  try {
    std::size_t used_lo = 0;
    std::size_t used_hi = 0;
    f_lo_ghz = std::stod(window.substr(0, colon), &used_lo);
    f_hi_ghz = std::stod(window.substr(colon + 1), &used_hi);
    if (colon == std::string::npos || used_lo != colon ||
        used_hi != window.size() - colon - 1) {
      throw std::invalid_argument(window);
    }
  } catch (const std::exception&) {
    throw config_error("config: --window expects 'f1:f2' in GHz");
  }
  if (!(f_lo_ghz > 0.0) || !(f_hi_ghz > f_lo_ghz)) {
    throw config_error("config: --window needs 0 < f1 < f2");
  }

  SParamTrace trace;
  if (!data_path.empty()) {
    trace = read_trace(data_path);
    ctx.manifest.input_digests[data_path] = digest_file(data_path);
  } else {
    // Self-generated input: simulate the chain and normalize by the same
    // chain with the resonators decoupled (a thru calibration), so the
    // lineshape sits on a unit background as the fit model expects.
    const DeviceBlock& dev = require_device(ctx.config);
    const FiniteWaveguide guide{dev.cell, dev.n_cells,
                                internal_rate(dev.cell, dev.q_i), 50.0, 50.0};
    FiniteWaveguide thru = guide;
    thru.cell.ck = 0.0;
    const double margin = 0.5 * (f_hi_ghz - f_lo_ghz);
    const GridSpec grid{f_lo_ghz - margin, f_hi_ghz + margin, 1501};
    std::vector<double> freq_hz;
    for (const double nu : grid.values()) freq_hz.push_back(nu * 1e9);
    trace = simulate_trace(freq_hz, guide);
    const SParamTrace baseline = simulate_trace(freq_hz, thru);
    for (std::size_t i = 0; i < trace.s21.size(); ++i) {
      trace.s21[i] /= baseline.s21[i];
    }
    trace.s11.clear();
  }

  FanoFit fit;
  try {
    fit = fit_fano(trace, f_lo_ghz * 1e9, f_hi_ghz * 1e9);
  } catch (const std::invalid_argument& err) {
    throw config_error(std::string("config: ") + err.what());
  }
  write_fano_report(ctx.out_dir + "/fano_report.txt", fit,
                    "manifest: " + ctx.manifest.config_hash);
  std::printf("wrote %s/fano_report.txt\n", ctx.out_dir.c_str());
  std::printf("resonance: %.6f GHz  q_i %.4g  q_e %.4g  residual %.3e\n",
              rad_to_ghz(fit.omega0), fit.omega0 / fit.gamma_i,
              fit.omega0 / fit.gamma_e, fit.residual);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Band structure, transmission, localization, and qubit "
               "predictions for resonator-loaded waveguides"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "run configuration (JSON)")
      ->required();
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "override the command's RNG seed");
  std::optional<std::string> out_dir;
  app.add_option("--out", out_dir, "override the output directory");
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (default: hardware)");

  CLI::App* cmd_dispersion =
      app.add_subcommand("dispersion", "band structure over the Bloch zone");
  CLI::App* cmd_transmission = app.add_subcommand(
      "transmission", "finite-chain scattering sweep, optional model fit");
  std::string fit_path;
  cmd_transmission->add_option("--fit", fit_path,
                               "trace to fit (.s2p or .csv)");
  CLI::App* cmd_localization = app.add_subcommand(
      "localization", "Monte Carlo localization lengths under disorder");
  CLI::App* cmd_qubit = app.add_subcommand(
      "qubit-sweep", "qubit shift and lifetime across a flux sweep");
  CLI::App* cmd_fano =
      app.add_subcommand("fano", "fit a single resonance lineshape");
  std::string window;
  cmd_fano->add_option("--window", window, "fit window 'f1:f2' in GHz")
      ->required();
  std::string fano_data;
  cmd_fano->add_option("--data", fano_data,
                       "measured trace (.s2p or .csv); default: simulate");
  for (CLI::App* sub :
       {cmd_dispersion, cmd_transmission, cmd_localization, cmd_qubit,
        cmd_fano}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (threads > 0) set_worker_threads(threads);

    CommandContext ctx{load_config(config_path, out_dir, seed, command),
                       RunManifest{}, ""};
    ctx.out_dir = ctx.config.output_dir;
    std::error_code dir_err;
    std::filesystem::create_directories(ctx.out_dir, dir_err);
    if (dir_err) {
      throw io_error("cannot create output directory '" + ctx.out_dir +
                     "': " + dir_err.message());
    }
    ctx.manifest.config_hash = fnv1a64_hex(ctx.config.canonical);
    ctx.manifest.seed = ctx.config.seed_for(command, std::nullopt);
    ctx.manifest.version = tool_version();
    ctx.manifest.command = command;
    ctx.manifest.started_utc = utc_timestamp_now();

    int status = kExitOk;
    if (command == "dispersion") {
      status = run_dispersion(ctx);
    } else if (command == "transmission") {
      status = run_transmission(ctx, fit_path);
    } else if (command == "localization") {
      status = run_localization(ctx);
    } else if (command == "qubit-sweep") {
      status = run_qubit_sweep(ctx);
    } else {
      status = run_fano(ctx, window, fano_data);
    }

    ctx.manifest.finished_utc = utc_timestamp_now();
    write_manifest(ctx.out_dir, ctx.manifest);
    return status;
  } catch (const config_error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitConfig;
  } catch (const io_error& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitIo;
  } catch (const std::exception& err) {
    std::fprintf(stderr, "error: %s\n", err.what());
    return kExitNumeric;
  }
}

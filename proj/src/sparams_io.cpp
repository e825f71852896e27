#include "metawave/sparams_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "metawave/bandstructure.hpp"
#include "metawave/constants.hpp"

namespace metawave {

namespace {

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.15g", value);
  return buf;
}

std::string to_upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  return s;
}

std::string strip(const std::string& s) {
  const size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& token, const std::string& path) {
  const std::string t = strip(token);
  char* end = nullptr;
  const double value = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size()) {
    throw io_error(path + ": malformed number '" + token + "'");
  }
  return value;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

double unit_factor(const std::string& unit, const std::string& path) {
  const std::string u = to_upper(unit);
  if (u == "HZ") return 1.0;
  if (u == "KHZ") return 1e3;
  if (u == "MHZ") return 1e6;
  if (u == "GHZ") return 1e9;
  throw io_error(path + ": unknown frequency unit '" + unit + "'");
}

}  // namespace

void validate_trace(const SParamTrace& trace) {
  if (trace.freq_hz.size() != trace.s21.size()) {
    throw io_error("trace columns have mismatched lengths");
  }
  if (!trace.s11.empty() && trace.s11.size() != trace.freq_hz.size()) {
    throw io_error("reflection column length does not match frequency grid");
  }
  for (size_t i = 1; i < trace.freq_hz.size(); ++i) {
    if (!(trace.freq_hz[i] > trace.freq_hz[i - 1])) {
      throw io_error("trace frequencies must be strictly increasing");
    }
  }
}

void atomic_write_text(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot open '" + tmp + "' for writing");
    out << content;
    out.flush();
    if (!out) {
      std::remove(tmp.c_str());
      throw io_error("failed while writing '" + tmp + "'");
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw io_error("cannot move '" + tmp + "' into place");
  }
}

SParamTrace read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  SParamTrace trace;
  bool have_header = false;
  bool with_s11 = false;
  std::string line;
  while (std::getline(in, line)) {
    const std::string body = strip(line);
    if (body.empty() || body[0] == '#') continue;
    if (!have_header) {
      std::string compact;
      for (char c : body) {
        if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
      }
      if (compact == "freq_ghz,s21_re,s21_im") {
        with_s11 = false;
      } else if (compact == "freq_ghz,s21_re,s21_im,s11_re,s11_im") {
        with_s11 = true;
      } else {
        throw io_error(path + ": unrecognized header '" + body + "'");
      }
      have_header = true;
      continue;
    }
    const std::vector<std::string> fields = split_csv(body);
    const size_t expected = with_s11 ? 5 : 3;
    if (fields.size() != expected) {
      throw io_error(path + ": expected " + std::to_string(expected) +
                     " columns, got " + std::to_string(fields.size()));
    }
    trace.freq_hz.push_back(parse_number(fields[0], path) * 1e9);
    trace.s21.emplace_back(parse_number(fields[1], path),
                           parse_number(fields[2], path));
    if (with_s11) {
      trace.s11.emplace_back(parse_number(fields[3], path),
                             parse_number(fields[4], path));
    }
  }
  if (!have_header || trace.freq_hz.empty()) {
    throw io_error(path + ": no data rows found");
  }
  validate_trace(trace);
  return trace;
}

void write_trace_csv(const std::string& path, const SParamTrace& trace,
                     const std::string& comment) {
  validate_trace(trace);
  const bool with_s11 = !trace.s11.empty();
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  out += with_s11 ? "freq_ghz,s21_re,s21_im,s11_re,s11_im\n"
                  : "freq_ghz,s21_re,s21_im\n";
  for (size_t i = 0; i < trace.freq_hz.size(); ++i) {
    out += fmt(trace.freq_hz[i] / 1e9) + "," + fmt(trace.s21[i].real()) + "," +
           fmt(trace.s21[i].imag());
    if (with_s11) {
      out += "," + fmt(trace.s11[i].real()) + "," + fmt(trace.s11[i].imag());
    }
    out += "\n";
  }
  atomic_write_text(path, out);
}

SParamTrace read_touchstone(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  double factor = 1e9;  // default GHz
  std::string format = "MA";
  bool have_options = false;
  std::vector<double> numbers;
  std::string line;
  while (std::getline(in, line)) {
    const size_t bang = line.find('!');
    if (bang != std::string::npos) line.erase(bang);
    const std::string body = strip(line);
    if (body.empty()) continue;
    if (body[0] == '#') {
      if (have_options) continue;  // only the first option line counts
      have_options = true;
      std::stringstream ss(body.substr(1));
      std::string token;
      while (ss >> token) {
        const std::string t = to_upper(token);
        if (t == "HZ" || t == "KHZ" || t == "MHZ" || t == "GHZ") {
          factor = unit_factor(t, path);
        } else if (t == "RI" || t == "MA" || t == "DB") {
          format = t;
        } else if (t == "R") {
          ss >> token;  // reference impedance; value not needed here
        } else if (t == "S") {
          // parameter type marker
        } else {
          throw io_error(path + ": unknown option token '" + token + "'");
        }
      }
      continue;
    }
    std::stringstream ss(body);
    std::string token;
    while (ss >> token) numbers.push_back(parse_number(token, path));
  }
  if (numbers.empty() || numbers.size() % 9 != 0) {
    throw io_error(path + ": two-port data must come in rows of 9 values");
  }

  const auto to_complex = [&](double a, double b) {
    const double phase = b * pi / 180.0;
    if (format == "RI") return cplx(a, b);
    const double mag = format == "MA" ? a : std::pow(10.0, a / 20.0);
    return cplx(mag * std::cos(phase), mag * std::sin(phase));
  };

  SParamTrace trace;
  for (size_t i = 0; i < numbers.size(); i += 9) {
    trace.freq_hz.push_back(numbers[i] * factor);
    trace.s11.push_back(to_complex(numbers[i + 1], numbers[i + 2]));
    trace.s21.push_back(to_complex(numbers[i + 3], numbers[i + 4]));
    // S12 and S22 complete the row but are not retained.
  }
  validate_trace(trace);
  return trace;
}

void write_touchstone(const std::string& path, const SParamTrace& trace,
                      const std::string& freq_unit, const std::string& format) {
  validate_trace(trace);
  const double factor = unit_factor(freq_unit, path);
  const std::string f = to_upper(format);
  if (f != "RI" && f != "MA" && f != "DB") {
    throw io_error(path + ": unknown data format '" + format + "'");
  }
  const auto pair_of = [&](cplx s) {
    if (f == "RI") return std::pair<double, double>(s.real(), s.imag());
    const double mag = std::abs(s);
    const double ang = std::arg(s) * 180.0 / pi;
    if (f == "MA") return std::pair<double, double>(mag, ang);
    return std::pair<double, double>(
        mag > 0.0 ? 20.0 * std::log10(mag) : -400.0, ang);
  };

  std::string out = "! two-port scattering data\n# " + to_upper(freq_unit) +
                    " S " + f + " R 50\n";
  for (size_t i = 0; i < trace.freq_hz.size(); ++i) {
    const cplx s11 = trace.s11.empty() ? cplx(0.0, 0.0) : trace.s11[i];
    const cplx s21 = trace.s21[i];
    // Symmetric reciprocal structure: S12 = S21 and S22 = S11.
    const std::pair<double, double> p11 = pair_of(s11);
    const std::pair<double, double> p21 = pair_of(s21);
    out += fmt(trace.freq_hz[i] / factor);
    for (const auto& p : {p11, p21, p21, p11}) {
      out += " " + fmt(p.first) + " " + fmt(p.second);
    }
    out += "\n";
  }
  atomic_write_text(path, out);
}

SParamTrace read_trace(const std::string& path) {
  const size_t dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot);
  ext = to_upper(ext);
  if (ext == ".S2P") return read_touchstone(path);
  return read_trace_csv(path);
}

void write_fano_report(const std::string& path, const FanoFit& fit,
                       const std::string& comment) {
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  out += "f0_ghz = " + fmt(fit.omega0 / two_pi / 1e9) + "\n";
  out += "gamma_i_over_2pi_mhz = " + fmt(fit.gamma_i / two_pi / 1e6) + "\n";
  out += "gamma_e_over_2pi_mhz = " + fmt(fit.gamma_e / two_pi / 1e6) + "\n";
  out += "q_i = " + fmt(fit.omega0 / fit.gamma_i) + "\n";
  out += "q_e = " + fmt(fit.omega0 / fit.gamma_e) + "\n";
  out += "phi0_rad = " + fmt(fit.phi0) + "\n";
  out += "residual_rms = " + fmt(fit.residual) + "\n";
  atomic_write_text(path, out);
}

void write_lumped_report(const std::string& path, const LumpedFit& fit,
                         const std::string& comment) {
  const BandEdges edges = band_edges(fit.cell);
  std::string out;
  if (!comment.empty()) out += "# " + comment + "\n";
  out += "c0_ff = " + fmt(fit.cell.c0 / femto) + "\n";
  out += "l0_ph = " + fmt(fit.cell.l0 / pico) + "\n";
  out += "ck_ff = " + fmt(fit.cell.ck / femto) + "\n";
  out += "cr_ff = " + fmt(fit.cell.cr / femto) + "\n";
  out += "lr_nh = " + fmt(fit.cell.lr / nano) + "\n";
  out += "gamma_i_over_2pi_mhz = " + fmt(fit.gamma_i / two_pi / 1e6) + "\n";
  out += "scale = " + fmt(fit.scale) + "\n";
  out += "residual_db_rms = " + fmt(fit.residual) + "\n";
  out += "lower_edge_ghz = " +
         fmt(fit.scale * edges.omega_c_minus / two_pi / 1e9) + "\n";
  out += "upper_edge_ghz = " +
         fmt(fit.scale * edges.omega_c_plus / two_pi / 1e9) + "\n";
  out += "midgap_ghz = " + fmt(fit.scale * edges.midgap() / two_pi / 1e9) +
         "\n";
  out += "span_ghz = " + fmt(fit.scale * edges.delta() / two_pi / 1e9) + "\n";
  atomic_write_text(path, out);
}

}  // namespace metawave

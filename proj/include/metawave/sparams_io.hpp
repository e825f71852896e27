#pragma once

#include <stdexcept>
#include <string>

#include "metawave/fits.hpp"
#include "metawave/transmission.hpp"

namespace metawave {

// Unreadable, malformed, or unwritable data files.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Checks the trace invariants: strictly increasing frequencies, matching
// column lengths (s11 may be absent). Throws io_error on violation.
void validate_trace(const SParamTrace& trace);

// Writes content to a temporary file in the target directory and renames it
// over the destination, so readers never observe a partial file.
void atomic_write_text(const std::string& path, const std::string& content);

// CSV with header `freq_ghz,s21_re,s21_im` and optional `s11_re,s11_im`
// columns; lines starting with '#' are comments.
SParamTrace read_trace_csv(const std::string& path);
void write_trace_csv(const std::string& path, const SParamTrace& trace,
                     const std::string& comment = "");

// Touchstone v1 two-port files: option line `# <unit> S <format> R <z>`
// (case-insensitive, defaults GHz/MA/50), '!' comments, data rows ordered
// S11 S21 S12 S22. Formats RI, MA (magnitude/angle-degrees), DB
// (dB-magnitude/angle-degrees).
SParamTrace read_touchstone(const std::string& path);
void write_touchstone(const std::string& path, const SParamTrace& trace,
                      const std::string& freq_unit = "GHz",
                      const std::string& format = "RI");

// Dispatch on the file extension: `.s2p` as Touchstone, anything else as CSV.
SParamTrace read_trace(const std::string& path);

// Fit results as `key = value` text documents.
void write_fano_report(const std::string& path, const FanoFit& fit,
                       const std::string& comment = "");
void write_lumped_report(const std::string& path, const LumpedFit& fit,
                         const std::string& comment = "");

}  // namespace metawave

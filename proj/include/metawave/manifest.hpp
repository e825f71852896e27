#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

namespace metawave {

// Provenance record emitted with every command's outputs.  Timestamps live
// only here, never in the numeric CSVs, so reruns stay byte-identical.
struct RunManifest {
  std::string config_hash;  // 16 hex digits of the canonical config
  std::uint64_t seed = 0;
  std::string version;
  std::string command;
  std::string started_utc;
  std::string finished_utc;
  std::map<std::string, std::string> input_digests;  // path -> hash

  std::string to_json() const;
};

// 64-bit FNV-1a of a byte string, and its fixed-width hex form.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

// Digest of a file's bytes; throws io_error when unreadable.
std::string digest_file(const std::string& path);

// Current time as ISO-8601 UTC (second resolution).
std::string utc_timestamp_now();

// Tool version string recorded in every manifest.
std::string tool_version();

// Serializes the manifest to <dir>/run_manifest.json (atomic write).
void write_manifest(const std::string& dir, const RunManifest& manifest);

}  // namespace metawave

#include "metawave/manifest.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "metawave/sparams_io.hpp"

namespace metawave {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ULL;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ULL;
  }
  return hash;
}

std::string fnv1a64_hex(std::string_view bytes) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(fnv1a64(bytes)));
  return buffer;
}

std::string digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return fnv1a64_hex(buffer.str());
}

std::string utc_timestamp_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm parts{};
  gmtime_r(&now, &parts);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &parts);
  return buffer;
}

std::string tool_version() { return "metawave 1.0.0"; }

std::string RunManifest::to_json() const {
  nlohmann::json doc;
  doc["config_hash"] = config_hash;
  doc["seed"] = seed;
  doc["version"] = version;
  doc["command"] = command;
  doc["started_utc"] = started_utc;
  doc["finished_utc"] = finished_utc;
  doc["input_digests"] = nlohmann::json::object();
  for (const auto& [path, digest] : input_digests) {
    doc["input_digests"][path] = digest;
  }
  return doc.dump(2) + "\n";
}

void write_manifest(const std::string& dir, const RunManifest& manifest) {
  atomic_write_text(dir + "/run_manifest.json", manifest.to_json());
}

}  // namespace metawave

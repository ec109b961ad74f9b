#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ergm {

inline constexpr const char* kArtifactVersion = "0.1.0";

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

struct ManifestEntry {
  std::string path;  // relative to the output directory
  std::uint64_t bytes = 0;
  std::string checksum;
};

struct RunManifest {
  std::string command;
  std::string config_hash;
  std::uint64_t seed = 0;
  std::string version = kArtifactVersion;
  std::string started;
  std::string finished;
  std::vector<ManifestEntry> outputs;

  /// Hashes `dir/relative` and appends it.
  void add_output(const std::string& dir, const std::string& relative);
  std::string to_json() const;
};

/// UTC time as 2024-01-01T00:00:00Z.
std::string utc_timestamp();

}  // namespace ergm

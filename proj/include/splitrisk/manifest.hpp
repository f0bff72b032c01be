#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace splitrisk {

inline constexpr const char* kVersion = "0.1.0";

// Run record written alongside every CLI output. Re-running the recorded
// subcommand with the recorded configuration and seed reproduces the output
// files byte for byte (timestamps describe the run, not the outputs).
struct RunManifest {
  std::string subcommand;
  std::map<std::string, std::string> config;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string started_utc;
  std::string finished_utc;
  std::vector<std::string> outputs;

  void mark_started();
  void mark_finished();
  void add_output(const std::string& path);
  std::string to_json() const;
  void write(const std::string& path) const;
};

std::uint64_t fnv1a64(const std::string& data);

}  // namespace splitrisk

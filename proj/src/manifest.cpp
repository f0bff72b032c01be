#include "splitrisk/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include <json.hpp>

#include "splitrisk/errors.hpp"

namespace splitrisk {

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void RunManifest::mark_started() { started_utc = utc_now(); }
void RunManifest::mark_finished() { finished_utc = utc_now(); }
void RunManifest::add_output(const std::string& path) { outputs.push_back(path); }

std::string RunManifest::to_json() const {
  nlohmann::json j;
  j["tool"] = "splitrisk";
  j["version"] = kVersion;
  j["subcommand"] = subcommand;
  j["config"] = config;
  j["seed"] = seed;
  j["workers"] = workers;
  j["started_utc"] = started_utc;
  j["finished_utc"] = finished_utc;
  nlohmann::json outs = nlohmann::json::array();
  for (const std::string& path : outputs) {
    nlohmann::json o;
    o["path"] = path;
    std::ifstream in(path, std::ios::binary);
    if (in) {
      std::string content((std::istreambuf_iterator<char>(in)),
                          std::istreambuf_iterator<char>());
      o["bytes"] = content.size();
      char hex[19];
      std::snprintf(hex, sizeof(hex), "%016llx",
                    static_cast<unsigned long long>(fnv1a64(content)));
      o["fnv1a64"] = hex;
    }
    outs.push_back(o);
  }
  j["outputs"] = outs;
  return j.dump(2) + "\n";
}

void RunManifest::write(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write manifest '" + path + "'");
  out << to_json();
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace splitrisk

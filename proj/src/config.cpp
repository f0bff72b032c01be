#include "splitrisk/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "splitrisk/errors.hpp"

namespace splitrisk {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

const char* const kKnownKeys[] = {
    "distribution", "train_distribution", "estimators", "transform",
    "n",            "p",                  "replicates", "unlabeled",
    "unlabeled_ratio", "seed",            "workers",
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, sep)) out.push_back(trim(tok));
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": bad number '" + s + "'");
  }
}

long to_long(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(what + ": bad integer '" + s + "'");
  }
}

}  // namespace

KeyValueFile KeyValueFile::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_text(buffer.str());
}

KeyValueFile KeyValueFile::parse_text(const std::string& text) {
  KeyValueFile file;
  std::stringstream ss(text);
  std::string line;
  long lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": empty key or value");
    if (std::find(std::begin(kKnownKeys), std::end(kKnownKeys), key) ==
        std::end(kKnownKeys))
      throw ConfigError("config: unknown key '" + key + "'");
    if (file.values_.count(key))
      throw ConfigError("config: duplicate key '" + key + "'");
    file.values_[key] = value;
  }
  return file;
}

const std::string& KeyValueFile::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("config: missing key '" + key + "'");
  return it->second;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& tok : split(text, ',')) {
    if (tok.empty()) continue;
    const auto c1 = tok.find(':');
    if (c1 == std::string::npos) {
      out.push_back(to_double(tok, "list"));
      continue;
    }
    const auto c2 = tok.find(':', c1 + 1);
    if (c2 == std::string::npos)
      throw ConfigError("range '" + tok + "' must be start:stop:step");
    const double start = to_double(tok.substr(0, c1), "range start");
    const double stop = to_double(tok.substr(c1 + 1, c2 - c1 - 1), "range stop");
    const double step = to_double(tok.substr(c2 + 1), "range step");
    if (!(step > 0.0)) throw ConfigError("range step must be positive");
    // Integer stepping avoids accumulated rounding in the grid values.
    const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(start + i * step);
  }
  if (out.empty()) throw ConfigError("empty numeric list");
  return out;
}

std::vector<long> parse_long_list(const std::string& text) {
  std::vector<long> out;
  for (const std::string& tok : split(text, ','))
    if (!tok.empty()) out.push_back(to_long(tok, "list"));
  if (out.empty()) throw ConfigError("empty integer list");
  return out;
}

SimulationSpec simulation_from_config(const KeyValueFile& file) {
  SimulationSpec spec;
  ExperimentConfig& cfg = spec.config;
  try {
    if (file.has("distribution")) cfg.distribution = Dist::parse(file.get("distribution"));
    if (file.has("train_distribution"))
      cfg.train_distribution = Dist::parse(file.get("train_distribution"));
    if (file.has("transform")) cfg.transform = parse_transform(file.get("transform"));
    if (file.has("estimators")) {
      cfg.kinds.clear();
      for (const std::string& tok : split(file.get("estimators"), ','))
        if (!tok.empty()) cfg.kinds.push_back(parse_estimator(tok));
    }
    if (file.has("n")) cfg.n_list = parse_long_list(file.get("n"));
    if (file.has("p")) cfg.p_grid = parse_double_list(file.get("p"));
    if (file.has("replicates")) cfg.replicates = to_long(file.get("replicates"), "replicates");
    if (file.has("seed"))
      cfg.seed = static_cast<std::uint64_t>(std::stoull(file.get("seed")));
    if (file.has("workers"))
      cfg.workers = static_cast<int>(to_long(file.get("workers"), "workers"));
    if (file.has("unlabeled") && file.has("unlabeled_ratio"))
      throw ConfigError("set either 'unlabeled' or 'unlabeled_ratio', not both");
    if (file.has("unlabeled")) cfg.unlabeled = to_long(file.get("unlabeled"), "unlabeled");
    if (file.has("unlabeled_ratio")) {
      spec.unlabeled_is_ratio = true;
      spec.unlabeled_ratio = to_double(file.get("unlabeled_ratio"), "unlabeled_ratio");
      if (spec.unlabeled_ratio < 0.0) throw ConfigError("unlabeled_ratio must be >= 0");
    }
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

}  // namespace splitrisk

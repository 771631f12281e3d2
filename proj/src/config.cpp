#include "relcheck/config.hpp"

#include <cstdlib>
#include <fstream>
#include <iterator>
#include <set>

#include <nlohmann/json.hpp>

#include "relcheck/error.hpp"
#include "relcheck/hash.hpp"

namespace relcheck {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorCode::ConfigError, where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw Error(ErrorCode::ConfigError, "unknown key '" + where + "." + key + "'");
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj[key].get<T>();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

Config parse_config(std::string_view text, const fs::path& base_dir) {
  Config c;
  try {
    const json doc = json::parse(text);
    reject_unknown(doc, {"endpoint", "extraction", "metrics", "io", "sources"}, "config");
    if (doc.contains("endpoint")) {
      const json& e = doc["endpoint"];
      reject_unknown(e, {"url", "model", "key_env", "key", "max_attempts", "max_in_flight", "backoff_ms",
                         "temperature", "timeout_s"},
                     "endpoint");
      read(e, "url", c.endpoint.url);
      read(e, "model", c.endpoint.model);
      read(e, "key_env", c.key_env);
      read(e, "key", c.endpoint.api_key);
      read(e, "max_attempts", c.endpoint.max_attempts);
      read(e, "max_in_flight", c.endpoint.max_in_flight);
      if (e.contains("backoff_ms")) c.endpoint.initial_backoff = std::chrono::milliseconds(e["backoff_ms"].get<long>());
      if (e.contains("timeout_s")) c.endpoint.timeout = std::chrono::seconds(e["timeout_s"].get<long>());
      if (e.contains("temperature")) {
        c.endpoint.temperature = e["temperature"].is_null() ? std::nullopt
                                                            : std::optional<double>(e["temperature"].get<double>());
      }
    }
    if (doc.contains("extraction")) {
      const json& x = doc["extraction"];
      reject_unknown(x, {"exact_case", "aliases", "longest_match"}, "extraction");
      read(x, "exact_case", c.extraction.exact_case);
      read(x, "aliases", c.extraction.aliases);
      read(x, "longest_match", c.extraction.longest_match);
    }
    if (doc.contains("metrics")) {
      const json& m = doc["metrics"];
      reject_unknown(m, {"semsim_mode", "louvain_seed", "pagerank_damping"}, "metrics");
      if (m.contains("semsim_mode")) c.metrics.coverage_mode = parse_coverage_mode(m["semsim_mode"].get<std::string>());
      read(m, "louvain_seed", c.metrics.louvain_seed);
      read(m, "pagerank_damping", c.metrics.pagerank_damping);
    }
    if (doc.contains("io")) {
      const json& io = doc["io"];
      reject_unknown(io, {"cache_dir", "out_dir"}, "io");
      if (io.contains("cache_dir")) c.cache_dir = resolve(base_dir, io["cache_dir"].get<std::string>());
      if (io.contains("out_dir")) c.out_dir = resolve(base_dir, io["out_dir"].get<std::string>());
    }
    if (doc.contains("sources")) {
      if (!doc["sources"].is_array()) throw Error(ErrorCode::ConfigError, "sources must be an array");
      for (const json& s : doc["sources"]) {
        reject_unknown(s, {"lexicon", "edges"}, "sources[]");
        c.sources.push_back({resolve(base_dir, s.at("lexicon").get<std::string>()),
                             resolve(base_dir, s.at("edges").get<std::string>())});
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigError, e.what());
  }
  if (!(c.metrics.pagerank_damping > 0.0 && c.metrics.pagerank_damping < 1.0)) {
    throw Error(ErrorCode::ConfigError, "pagerank_damping must lie in (0,1)");
  }
  return c;
}

Config load_config(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + file.string());
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_config(text, file.parent_path());
}

void resolve_api_key(Config& config) {
  if (!config.endpoint.api_key.empty() || config.key_env.empty()) return;
  if (const char* key = std::getenv(config.key_env.c_str())) config.endpoint.api_key = key;
}

std::string config_hash(const Config& c) {
  const json canonical{
      {"endpoint",
       {{"url", c.endpoint.url},
        {"model", c.endpoint.model},
        {"temperature", c.endpoint.temperature ? json(*c.endpoint.temperature) : json(nullptr)}}},
      {"extraction",
       {{"exact_case", c.extraction.exact_case},
        {"aliases", c.extraction.aliases},
        {"longest_match", c.extraction.longest_match}}},
      {"metrics",
       {{"semsim_mode", std::string(to_string(c.metrics.coverage_mode))},
        {"louvain_seed", c.metrics.louvain_seed},
        {"pagerank_damping", c.metrics.pagerank_damping}}},
  };
  return sha256_hex(canonical.dump());
}

}  // namespace relcheck

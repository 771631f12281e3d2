#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "relcheck/extract.hpp"
#include "relcheck/harvest.hpp"
#include "relcheck/report.hpp"

namespace relcheck {

struct SourceConfig {
  std::filesystem::path lexicon;
  std::filesystem::path edges;
};

struct Config {
  EndpointConfig endpoint;
  std::string key_env = "RELCHECK_API_KEY";
  ExtractionOptions extraction;
  EvaluationConfig metrics;
  std::filesystem::path cache_dir = "cache";
  std::filesystem::path out_dir = "out";
  std::vector<SourceConfig> sources;
};

/// Parses the JSON config. Relative paths are resolved against `base_dir`.
/// Unknown keys are rejected with ConfigError.
Config parse_config(std::string_view text, const std::filesystem::path& base_dir);
Config load_config(const std::filesystem::path& file);

/// Fills endpoint.api_key from the environment variable named by key_env
/// when the config does not carry a key.
void resolve_api_key(Config& config);

/// Hash of every setting that can change a report: endpoint model, url
/// and decoding settings, extraction flags, metric settings. Paths,
/// transport knobs and the API key are excluded.
std::string config_hash(const Config& config);

}  // namespace relcheck

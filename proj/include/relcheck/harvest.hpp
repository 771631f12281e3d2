#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "relcheck/lexicon.hpp"

namespace relcheck {

inline constexpr std::string_view kPromptTemplate =
    "Given the term \"[TERM]\". If you were to create a lexicon or encyclopedia, which other "
    "entities would you reference? Give me a list of them.";

/// Substitutes the term verbatim (no escaping). Throws EmptyTerm.
std::string render_prompt(std::string_view term);

/// SHA-256 of the prompt template; part of report provenance.
std::string prompt_template_hash();

struct ResponseRecord {
  std::string term;
  std::string prompt;
  std::string response;
  std::string model_id;
  std::string timestamp;  // ISO-8601 UTC, e.g. 2026-01-31T12:00:00Z
  int attempt = 1;
  std::optional<double> temperature;

  bool operator==(const ResponseRecord&) const = default;
};

std::string serialize_record(const ResponseRecord& record);
/// Throws CacheCorruption naming `origin` on malformed input.
ResponseRecord parse_record(std::string_view text, const std::string& origin);

struct ResponseCorpus {
  std::string source_name;
  std::map<std::string, ResponseRecord> records;  // canonical term -> record

  const ResponseRecord* find(std::string_view term) const;
  /// Latest record timestamp, empty for an empty corpus.
  std::string latest_timestamp() const;
  /// Model of the records (first in term order), empty for an empty corpus.
  std::string model_id() const;

  bool operator==(const ResponseCorpus&) const = default;
};

struct EndpointConfig {
  std::string url;  // full chat-completions URL
  std::string model;
  std::string api_key;
  int max_attempts = 3;
  std::chrono::milliseconds initial_backoff{500};
  int max_in_flight = 4;
  std::optional<double> temperature = 0.0;
  std::chrono::seconds timeout{120};
};

struct ChatReply {
  int status = 0;  // HTTP status, 0 for transport failure
  std::string text;
  std::string error;

  bool ok() const { return status >= 200 && status < 300 && error.empty(); }
};

/// One single-turn completion. Implementations must be callable from
/// several threads at once.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  virtual ChatReply complete(const std::string& prompt) = 0;
};

/// OpenAI-compatible chat-completions client over HTTP(S).
std::unique_ptr<ChatClient> make_http_client(const EndpointConfig& config);

/// Request body sent for `prompt`; exposed for wire-format tests.
std::string chat_request_body(const EndpointConfig& config, const std::string& prompt);
/// Extracts choices[0].message.content; error string set on malformed bodies.
ChatReply parse_chat_response(int status, std::string_view body);

struct HarvestFailure {
  std::string term;
  int status = 0;
  std::string message;
  int attempts = 0;
};

struct HarvestResult {
  ResponseCorpus corpus;
  std::vector<HarvestFailure> failures;  // sorted by term
  std::size_t cache_hits = 0;
  std::size_t requests = 0;
};

/// `<sha256(model_id + '\n' + prompt)>.json`
std::string cache_file_name(std::string_view model_id, std::string_view prompt);

/// Queries every lexicon term not already cached. Failed terms are left
/// out of the corpus and listed in `failures`; a malformed cache file
/// throws CacheCorruption.
HarvestResult harvest(const Lexicon& lex, const EndpointConfig& endpoint,
                      const std::filesystem::path& cache_dir, ChatClient& client);
HarvestResult harvest(const Lexicon& lex, const EndpointConfig& endpoint,
                      const std::filesystem::path& cache_dir);

/// Corpus assembled from the cache alone; uncached terms are absent.
ResponseCorpus load_cached_corpus(const Lexicon& lex, std::string_view model_id,
                                  const std::filesystem::path& cache_dir);

/// Current UTC time, or SOURCE_DATE_EPOCH when that variable is set.
std::string utc_timestamp();

}  // namespace relcheck

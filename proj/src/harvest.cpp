#include "relcheck/harvest.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <ctime>
#include <exception>
#include <fstream>
#include <iterator>
#include <mutex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "relcheck/error.hpp"
#include "relcheck/hash.hpp"

namespace relcheck {

namespace fs = std::filesystem;
using nlohmann::json;

std::string render_prompt(std::string_view term) {
  if (term.empty()) throw Error(ErrorCode::EmptyTerm, "cannot render a prompt for an empty term");
  std::string out(kPromptTemplate);
  const auto at = out.find("[TERM]");
  out.replace(at, 6, term);
  return out;
}

std::string prompt_template_hash() { return sha256_hex(kPromptTemplate); }

std::string serialize_record(const ResponseRecord& r) {
  json j{{"term", r.term},           {"prompt", r.prompt},       {"response", r.response},
         {"model_id", r.model_id},   {"timestamp", r.timestamp}, {"attempt", r.attempt},
         {"settings", json::object()}};
  if (r.temperature) j["settings"]["temperature"] = *r.temperature;
  return j.dump(2) + "\n";
}

ResponseRecord parse_record(std::string_view text, const std::string& origin) {
  try {
    const json j = json::parse(text);
    ResponseRecord r;
    r.term = j.at("term").get<std::string>();
    r.prompt = j.at("prompt").get<std::string>();
    r.response = j.at("response").get<std::string>();
    r.model_id = j.at("model_id").get<std::string>();
    r.timestamp = j.at("timestamp").get<std::string>();
    r.attempt = j.at("attempt").get<int>();
    if (j.contains("settings") && j["settings"].contains("temperature")) {
      r.temperature = j["settings"]["temperature"].get<double>();
    }
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::CacheCorruption, origin + ": " + e.what());
  }
}

const ResponseRecord* ResponseCorpus::find(std::string_view term) const {
  auto it = records.find(std::string(term));
  return it == records.end() ? nullptr : &it->second;
}

std::string ResponseCorpus::latest_timestamp() const {
  std::string latest;
  for (const auto& [term, r] : records) latest = std::max(latest, r.timestamp);
  return latest;
}

std::string ResponseCorpus::model_id() const {
  return records.empty() ? std::string() : records.begin()->second.model_id;
}

std::string utc_timestamp() {
  std::time_t t = std::time(nullptr);
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch) {
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string chat_request_body(const EndpointConfig& config, const std::string& prompt) {
  json body{{"model", config.model},
            {"messages", json::array({json{{"role", "user"}, {"content", prompt}}})}};
  if (config.temperature) body["temperature"] = *config.temperature;
  return body.dump();
}

ChatReply parse_chat_response(int status, std::string_view body) {
  ChatReply reply;
  reply.status = status;
  if (status < 200 || status >= 300) {
    reply.error = "HTTP " + std::to_string(status);
    return reply;
  }
  try {
    const json j = json::parse(body);
    reply.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    reply.error = std::string("malformed completion body: ") + e.what();
  }
  return reply;
}

namespace {

class HttpChatClient final : public ChatClient {
 public:
  explicit HttpChatClient(EndpointConfig config) : config_(std::move(config)) {
    const auto scheme_end = config_.url.find("://");
    if (scheme_end == std::string::npos) {
      throw Error(ErrorCode::ConfigError, "endpoint url needs a scheme: " + config_.url);
    }
    const auto path_start = config_.url.find('/', scheme_end + 3);
    base_ = config_.url.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : config_.url.substr(path_start);
  }

  ChatReply complete(const std::string& prompt) override {
    httplib::Client client(base_);
    client.set_connection_timeout(config_.timeout);
    client.set_read_timeout(config_.timeout);
    client.set_write_timeout(config_.timeout);
    httplib::Headers headers;
    if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);
    auto res = client.Post(path_, headers, chat_request_body(config_, prompt), "application/json");
    if (!res) {
      ChatReply reply;
      reply.error = "transport error: " + httplib::to_string(res.error());
      return reply;
    }
    return parse_chat_response(res->status, res->body);
  }

 private:
  EndpointConfig config_;
  std::string base_;
  std::string path_;
};

bool retryable(const ChatReply& reply) {
  return reply.status == 0 || reply.status == 429 || reply.status >= 500 ||
         (reply.status >= 200 && reply.status < 300);
}

std::string trim_trailing_whitespace(std::string s) {
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\n' || s.back() == '\r')) {
    s.pop_back();
  }
  return s;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_atomically(const fs::path& path, const std::string& payload) {
  std::ostringstream suffix;
  suffix << ".tmp." << std::this_thread::get_id();
  fs::path tmp = path;
  tmp += suffix.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + tmp.string());
    out << payload;
    if (!out.flush()) throw Error(ErrorCode::IoError, "short write to " + tmp.string());
  }
  fs::rename(tmp, path);
}

std::optional<ResponseRecord> read_cached(const fs::path& file, const std::string& term,
                                          std::string_view model, const std::string& prompt) {
  std::error_code ec;
  if (!fs::exists(file, ec)) return std::nullopt;
  ResponseRecord r = parse_record(read_file(file), file.string());
  if (r.prompt != prompt || r.model_id != model || r.term != term) {
    throw Error(ErrorCode::CacheCorruption, file.string() + ": record does not match its key");
  }
  return r;
}

}  // namespace

std::unique_ptr<ChatClient> make_http_client(const EndpointConfig& config) {
  return std::make_unique<HttpChatClient>(config);
}

std::string cache_file_name(std::string_view model_id, std::string_view prompt) {
  std::string key(model_id);
  key += '\n';
  key += prompt;
  return sha256_hex(key) + ".json";
}

HarvestResult harvest(const Lexicon& lex, const EndpointConfig& endpoint,
                      const fs::path& cache_dir, ChatClient& client) {
  fs::create_directories(cache_dir);
  const std::size_t n = lex.size();

  struct Slot {
    std::optional<ResponseRecord> record;
    std::optional<HarvestFailure> failure;
    bool from_cache = false;
    int sent = 0;
  };
  std::vector<Slot> slots(n);
  std::atomic<std::size_t> next{0};
  std::exception_ptr fatal;
  std::mutex fatal_mutex;

  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        const std::string& term = lex.terms()[i];
        const std::string prompt = render_prompt(term);
        const fs::path file = cache_dir / cache_file_name(endpoint.model, prompt);
        Slot& slot = slots[i];
        if (auto cached = read_cached(file, term, endpoint.model, prompt)) {
          slot.record = std::move(cached);
          slot.from_cache = true;
          continue;
        }
        ChatReply reply;
        int attempt = 0;
        while (attempt < std::max(1, endpoint.max_attempts)) {
          if (attempt > 0) std::this_thread::sleep_for(endpoint.initial_backoff * (1 << (attempt - 1)));
          ++attempt;
          ++slot.sent;
          reply = client.complete(prompt);
          if (reply.ok() || !retryable(reply)) break;
        }
        if (!reply.ok()) {
          slot.failure = HarvestFailure{term, reply.status, reply.error, attempt};
          continue;
        }
        ResponseRecord record{term,        prompt,         trim_trailing_whitespace(std::move(reply.text)),
                              endpoint.model, utc_timestamp(), attempt, endpoint.temperature};
        write_atomically(file, serialize_record(record));
        slot.record = std::move(record);
      } catch (...) {
        std::lock_guard lock(fatal_mutex);
        if (!fatal) fatal = std::current_exception();
        next = n;
      }
    }
  };

  const std::size_t workers = std::clamp<std::size_t>(endpoint.max_in_flight, 1, std::max<std::size_t>(n, 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
  }
  if (fatal) std::rethrow_exception(fatal);

  HarvestResult result;
  result.corpus.source_name = lex.source_name();
  for (Slot& slot : slots) {
    result.requests += slot.sent;
    if (slot.from_cache) ++result.cache_hits;
    if (slot.record) {
      std::string term = slot.record->term;
      result.corpus.records.emplace(std::move(term), std::move(*slot.record));
    }
    if (slot.failure) result.failures.push_back(std::move(*slot.failure));
  }
  return result;
}

HarvestResult harvest(const Lexicon& lex, const EndpointConfig& endpoint, const fs::path& cache_dir) {
  auto client = make_http_client(endpoint);
  return harvest(lex, endpoint, cache_dir, *client);
}

ResponseCorpus load_cached_corpus(const Lexicon& lex, std::string_view model_id, const fs::path& cache_dir) {
  ResponseCorpus corpus;
  corpus.source_name = lex.source_name();
  for (const std::string& term : lex.terms()) {
    const std::string prompt = render_prompt(term);
    if (auto r = read_cached(cache_dir / cache_file_name(model_id, prompt), term, model_id, prompt)) {
      corpus.records.emplace(term, std::move(*r));
    }
  }
  return corpus;
}

}  // namespace relcheck

#include "relcheck/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <stdexcept>

namespace relcheck {

namespace {

const icu::Normalizer2& nfkc() {
  static const icu::Normalizer2* instance = [] {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* n = icu::Normalizer2::getNFKCInstance(status);
    if (U_FAILURE(status)) throw std::runtime_error("ICU NFKC normalizer unavailable");
    return n;
  }();
  return *instance;
}

// Returns the codepoint at `pos` and advances `pos` past it.
UChar32 next_codepoint(std::string_view s, std::size_t& pos) {
  UChar32 c;
  int32_t i = static_cast<int32_t>(pos);
  U8_NEXT(reinterpret_cast<const uint8_t*>(s.data()), i, static_cast<int32_t>(s.size()), c);
  pos = static_cast<std::size_t>(i);
  return c < 0 ? 0xFFFD : c;
}

bool is_space(UChar32 c) { return u_isUWhiteSpace(c) != 0; }

class Collapser {
 public:
  explicit Collapser(NormalizedText& out) : out_(out) {}

  void push(UChar32 c, std::size_t raw_begin, std::size_t raw_end) {
    if (is_space(c)) {
      if (!pending_space_) ws_begin_ = raw_begin;
      pending_space_ = true;
      ws_end_ = raw_end;
      return;
    }
    if (pending_space_ && !out_.text.empty()) emit_byte(' ', ws_begin_, ws_end_);
    pending_space_ = false;
    char buf[4];
    int32_t len = 0;
    U8_APPEND_UNSAFE(reinterpret_cast<uint8_t*>(buf), len, c);
    for (int32_t k = 0; k < len; ++k) emit_byte(buf[k], raw_begin, raw_end);
  }

 private:
  void emit_byte(char b, std::size_t raw_begin, std::size_t raw_end) {
    out_.text.push_back(b);
    out_.raw_begin.push_back(raw_begin);
    out_.raw_end.push_back(raw_end);
  }

  NormalizedText& out_;
  bool pending_space_ = false;
  std::size_t ws_begin_ = 0;
  std::size_t ws_end_ = 0;
};

}  // namespace

NormalizedText normalize_with_offsets(std::string_view raw, NormalizeOptions options) {
  NormalizedText out;
  out.text.reserve(raw.size());
  out.raw_begin.reserve(raw.size());
  out.raw_end.reserve(raw.size());
  Collapser collapse(out);
  const icu::Normalizer2& norm = nfkc();

  std::size_t pos = 0;
  while (pos < raw.size()) {
    const std::size_t seg_begin = pos;
    UChar32 first = next_codepoint(raw, pos);
    // Extend the segment until the next codepoint starts a new
    // normalization unit (combining marks and the like stay attached).
    std::size_t seg_end = pos;
    while (seg_end < raw.size()) {
      std::size_t peek = seg_end;
      UChar32 c = next_codepoint(raw, peek);
      if (norm.hasBoundaryBefore(c)) break;
      seg_end = peek;
    }
    pos = seg_end;

    if (first < 0x80 && seg_end == seg_begin + 1) {
      UChar32 c = first;
      if (options.case_fold && c >= 'A' && c <= 'Z') c += 'a' - 'A';
      collapse.push(c, seg_begin, seg_end);
      continue;
    }

    UErrorCode status = U_ZERO_ERROR;
    icu::UnicodeString segment = icu::UnicodeString::fromUTF8(
        icu::StringPiece(raw.data() + seg_begin, static_cast<int32_t>(seg_end - seg_begin)));
    icu::UnicodeString normalized = norm.normalize(segment, status);
    if (options.case_fold && U_SUCCESS(status)) {
      normalized.foldCase(U_FOLD_CASE_DEFAULT);
      normalized = norm.normalize(normalized, status);
    }
    if (U_FAILURE(status)) normalized = segment;
    for (int32_t i = 0; i < normalized.length();) {
      UChar32 c = normalized.char32At(i);
      collapse.push(c, seg_begin, seg_end);
      i += U16_LENGTH(c);
    }
  }
  return out;
}

std::string normalize(std::string_view raw, NormalizeOptions options) {
  return normalize_with_offsets(raw, options).text;
}

bool is_word_codepoint(char32_t c) { return c != 0 && u_isalnum(static_cast<UChar32>(c)) != 0; }

char32_t codepoint_before(std::string_view s, std::size_t pos) {
  if (pos == 0) return 0;
  UChar32 c;
  int32_t i = static_cast<int32_t>(pos);
  U8_PREV(reinterpret_cast<const uint8_t*>(s.data()), 0, i, c);
  return c < 0 ? 0xFFFD : static_cast<char32_t>(c);
}

char32_t codepoint_at(std::string_view s, std::size_t pos) {
  if (pos >= s.size()) return 0;
  return static_cast<char32_t>(next_codepoint(s, pos));
}

bool word_boundary_before(std::string_view s, std::size_t pos) {
  return !is_word_codepoint(codepoint_before(s, pos));
}

bool word_boundary_after(std::string_view s, std::size_t pos) {
  return !is_word_codepoint(codepoint_at(s, pos));
}

}  // namespace relcheck

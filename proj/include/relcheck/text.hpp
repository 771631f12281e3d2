#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace relcheck {

struct NormalizeOptions {
  bool case_fold = true;
};

/// NFKC, then case folding (unless disabled), then whitespace runs
/// collapsed to one ASCII space with leading/trailing whitespace removed.
/// Input is UTF-8; malformed bytes become U+FFFD.
std::string normalize(std::string_view raw, NormalizeOptions options = {});

/// Normalized text together with, for every byte of `text`, the half-open
/// byte range of the raw input it was produced from. Ranges never split
/// a normalization segment, so normalizing raw[raw_begin[i], raw_end[j])
/// reproduces text[i, j+1) whenever i and j+1 are codepoint boundaries
/// in `text` not adjacent to collapsed whitespace.
struct NormalizedText {
  std::string text;
  std::vector<std::size_t> raw_begin;
  std::vector<std::size_t> raw_end;
};

NormalizedText normalize_with_offsets(std::string_view raw, NormalizeOptions options = {});

/// Letter or digit according to Unicode general category.
bool is_word_codepoint(char32_t c);

/// Decodes the codepoint ending just before `pos` / starting at `pos`.
/// Returns a sentinel (0) at string ends.
char32_t codepoint_before(std::string_view s, std::size_t pos);
char32_t codepoint_at(std::string_view s, std::size_t pos);

/// True when `pos` in `s` sits between a non-word codepoint (or an end)
/// on the side given.
bool word_boundary_before(std::string_view s, std::size_t pos);
bool word_boundary_after(std::string_view s, std::size_t pos);

}  // namespace relcheck

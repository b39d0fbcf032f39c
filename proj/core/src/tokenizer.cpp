#include "coderet/tokenizer.hpp"

#include <algorithm>
#include <iterator>
#include <cctype>
#include <unordered_set>

namespace coderet {
namespace {

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_lower(char c) { return std::islower(static_cast<unsigned char>(c)) != 0; }

bool starts_with_at(std::string_view text, std::size_t pos, std::string_view prefix) {
  return text.substr(pos, prefix.size()) == prefix;
}

// Committed English stop list. Words like "doesn" or "work" are deliberately
// absent: they carry meaning in bug-report titles.
constexpr std::string_view kStopWords[] = {
    "a",       "about",    "above",      "after",    "again",   "against", "all",
    "am",      "an",       "and",        "any",      "are",     "as",      "at",
    "be",      "because",  "been",       "before",   "being",   "below",   "between",
    "both",    "but",      "by",         "can",      "could",   "did",     "do",
    "does",    "doing",    "down",       "during",   "each",    "few",     "for",
    "from",    "further",  "had",        "has",      "have",    "having",  "he",
    "her",     "here",     "hers",       "herself",  "him",     "himself", "his",
    "how",     "if",       "in",         "into",     "is",      "it",      "its",
    "itself",  "just",     "me",         "more",     "most",    "my",      "myself",
    "no",      "nor",      "not",        "now",      "of",      "off",     "on",
    "once",    "only",     "or",         "other",    "our",     "ours",    "ourselves",
    "out",     "over",     "own",        "same",     "she",     "should",  "so",
    "some",    "such",     "than",       "that",     "the",     "their",   "theirs",
    "them",    "themselves", "then",     "there",    "these",   "they",    "this",
    "those",   "through",  "to",         "too",      "under",   "until",   "up",
    "very",    "was",      "we",         "were",     "what",    "when",    "where",
    "which",   "while",    "who",        "whom",     "why",     "will",    "with",
    "would",   "you",      "your",       "yours",    "yourself", "yourselves"};

const std::unordered_set<std::string_view>& stop_set() {
  static const std::unordered_set<std::string_view> set(std::begin(kStopWords), std::end(kStopWords));
  return set;
}

void append_filtered(std::vector<std::string>& out, std::vector<std::string> parts) {
  for (auto& part : parts) {
    if (part.size() < 2 || is_stop_word(part)) continue;
    out.push_back(std::move(part));
  }
}

// Finds the close marker of a string literal starting after `open`, honouring
// escapes. Literals never span lines; an unterminated one ends at the newline.
std::size_t string_end(std::string_view text, std::size_t pos, std::string_view delim, char escape) {
  while (pos < text.size()) {
    if (text[pos] == escape) {
      pos += 2;
      continue;
    }
    if (text[pos] == '\n') return pos;
    if (starts_with_at(text, pos, delim)) return pos + delim.size();
    ++pos;
  }
  return text.size();
}

}  // namespace

bool is_stop_word(std::string_view word) { return stop_set().contains(word); }

std::vector<std::string> split_identifier(std::string_view id) {
  std::vector<std::string> parts;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) parts.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < id.size(); ++i) {
    const char c = id[i];
    if (!std::isalnum(static_cast<unsigned char>(c))) {
      flush();
      continue;
    }
    if (!current.empty()) {
      const char prev = id[i - 1];
      const bool digit_edge = is_digit(prev) != is_digit(c);
      const bool camel = is_lower(prev) && is_upper(c);
      const bool acronym_end =
          is_upper(prev) && is_upper(c) && i + 1 < id.size() && is_lower(id[i + 1]);
      if (digit_edge || camel || acronym_end) flush();
    }
    current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  flush();
  return parts;
}

std::vector<std::string> text_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_ident_char(text[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < text.size() && is_ident_char(text[i])) ++i;
    append_filtered(out, split_identifier(text.substr(start, i - start)));
  }
  return out;
}

std::vector<std::string> identifier_tokens(std::string_view identifier,
                                           const LanguageProfile& profile) {
  std::vector<std::string> out;
  if (profile.is_keyword(identifier)) return out;
  append_filtered(out, split_identifier(identifier));
  return out;
}

ScannedSource scan_source(std::string_view src, const LanguageProfile& profile,
                          Diagnostics* diagnostics) {
  ScannedSource out;
  out.code.reserve(src.size());
  out.code_with_strings.reserve(src.size());

  auto emit = [&](std::string_view s) {
    out.code.append(s);
    out.code_with_strings.append(s);
  };

  std::size_t i = 0;
  while (i < src.size()) {
    // Block comments.
    bool consumed = false;
    for (const auto& marker : profile.block_comments) {
      if (!starts_with_at(src, i, marker.open)) continue;
      const std::size_t body = i + marker.open.size();
      const std::size_t close = src.find(marker.close, body);
      if (close == std::string_view::npos) {
        if (diagnostics)
          diagnostics->warn("unterminated block comment at offset " + std::to_string(i) +
                            "; rest of file treated as comment");
        out.comments.emplace_back(src.substr(body));
        i = src.size();
      } else {
        out.comments.emplace_back(src.substr(body, close - body));
        i = close + marker.close.size();
      }
      emit(" ");
      consumed = true;
      break;
    }
    if (consumed) continue;

    for (const auto& marker : profile.line_comments) {
      if (!starts_with_at(src, i, marker)) continue;
      const std::size_t body = i + marker.size();
      std::size_t eol = src.find('\n', body);
      if (eol == std::string_view::npos) eol = src.size();
      out.comments.emplace_back(src.substr(body, eol - body));
      i = eol;
      emit(" ");
      consumed = true;
      break;
    }
    if (consumed) continue;

    for (const auto& delim : profile.string_delimiters) {
      if (!starts_with_at(src, i, delim)) continue;
      const std::size_t end = string_end(src, i + delim.size(), delim, profile.escape);
      out.code.append("<str>");
      out.code_with_strings.append(src.substr(i, end - i));
      i = end;
      consumed = true;
      break;
    }
    if (consumed) continue;

    const char c = src[i];
    if (is_ident_start(c)) {
      const std::size_t start = i;
      while (i < src.size() && is_ident_char(src[i])) ++i;
      const auto ident = src.substr(start, i - start);
      out.identifiers.emplace_back(ident);
      emit(ident);
      continue;
    }
    if (is_digit(c)) {
      // Numeric literal, including suffixes and hex digits, so that 0x1F is
      // not mistaken for the identifier x1F.
      const std::size_t start = i;
      while (i < src.size() && (is_ident_char(src[i]) || src[i] == '.')) ++i;
      emit(src.substr(start, i - start));
      continue;
    }
    emit(src.substr(i, 1));
    ++i;
  }
  return out;
}

std::vector<std::string> extract_tokens(std::string_view source, const LanguageProfile& profile,
                                        Diagnostics* diagnostics) {
  const auto scanned = scan_source(source, profile, diagnostics);
  std::vector<std::string> tokens;
  for (const auto& comment : scanned.comments) {
    auto words = text_tokens(comment);
    tokens.insert(tokens.end(), std::make_move_iterator(words.begin()),
                  std::make_move_iterator(words.end()));
  }
  for (const auto& ident : scanned.identifiers) {
    auto words = identifier_tokens(ident, profile);
    tokens.insert(tokens.end(), std::make_move_iterator(words.begin()),
                  std::make_move_iterator(words.end()));
  }
  return tokens;
}

}  // namespace coderet

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "coderet/errors.hpp"
#include "coderet/language_profile.hpp"

namespace coderet {

/// A source file split into its lexical layers.
struct ScannedSource {
  /// Source with comments blanked and every string literal replaced by `<str>`.
  std::string code;
  /// Source with comments blanked; string literals kept verbatim.
  std::string code_with_strings;
  /// Comment bodies without their markers, in file order.
  std::vector<std::string> comments;
  /// Raw identifiers found outside comments and strings, in file order.
  std::vector<std::string> identifiers;
};

ScannedSource scan_source(std::string_view source, const LanguageProfile& profile,
                          Diagnostics* diagnostics = nullptr);

/// Splits one identifier on `_`, lower->upper transitions, acronym ends
/// (`IOException` -> io, exception) and letter/digit boundaries. Lowercases.
/// No filtering.
std::vector<std::string> split_identifier(std::string_view identifier);

bool is_stop_word(std::string_view word);

/// Tokenizes natural-language text (queries, comment bodies). Words shorter
/// than two characters and stop words are dropped.
std::vector<std::string> text_tokens(std::string_view text);

/// Word tokens contributed by one code identifier; empty for keywords.
std::vector<std::string> identifier_tokens(std::string_view identifier,
                                           const LanguageProfile& profile);

/// Comment words followed by identifier words, as a multiset in file order.
std::vector<std::string> extract_tokens(std::string_view source, const LanguageProfile& profile,
                                        Diagnostics* diagnostics = nullptr);

}  // namespace coderet

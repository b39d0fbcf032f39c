#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "coderet/language_profile.hpp"

namespace coderet::detail {

enum class LexKind { space, identifier, number, string, placeholder, symbol };

struct Lexeme {
  LexKind kind;
  std::string_view text;
};

/// Lexes a single statement. `<num>`, `<str>` and `<id:...>` are atoms so
/// that normalization is a fixed point.
std::vector<Lexeme> lex_statement(std::string_view text, const LanguageProfile& profile);

bool is_non_type_keyword(std::string_view word);

std::string to_lower(std::string_view text);

}  // namespace coderet::detail

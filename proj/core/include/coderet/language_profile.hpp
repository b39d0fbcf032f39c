#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace coderet {

struct BlockCommentMarker {
  std::string open;
  std::string close;

  bool operator==(const BlockCommentMarker&) const = default;
};

/// Lexical conventions of a source language. Everything the tokenizer, the
/// block-tree builder and the relationship extractor know about a language
/// lives here, so supporting a new curly-brace language is a config change.
struct LanguageProfile {
  std::string name;
  std::vector<std::string> extensions;

  std::string block_open = "{";
  std::string block_close = "}";
  std::string statement_terminator = ";";

  std::vector<std::string> line_comments;
  std::vector<BlockCommentMarker> block_comments;
  std::vector<std::string> string_delimiters;
  char escape = '\\';

  // Identifiers spelled exactly like a keyword never become word tokens.
  std::vector<std::string> keywords;

  // Relationship extraction.
  std::vector<std::string> inherit_keywords;
  std::vector<std::string> implement_keywords;
  std::vector<std::string> import_keywords;
  bool colon_inheritance = false;
  std::string qualifier = ".";

  /// Throws Error(usage) when the delimiter or comment invariants are broken.
  void validate() const;

  bool is_keyword(std::string_view word) const;
  bool matches_extension(const std::filesystem::path& path) const;

  bool operator==(const LanguageProfile&) const = default;
};

LanguageProfile java_profile();
LanguageProfile c_profile();

/// Resolves "java" / "c" to the built-in profiles, otherwise treats the
/// argument as a path to a JSON profile file.
LanguageProfile resolve_language_profile(const std::string& name_or_path);

LanguageProfile parse_language_profile(std::string_view json_text);
LanguageProfile load_language_profile(const std::filesystem::path& path);
std::string language_profile_to_json(const LanguageProfile& profile);

}  // namespace coderet

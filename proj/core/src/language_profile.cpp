#include "coderet/language_profile.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "coderet/errors.hpp"
#include "json.hpp"

namespace coderet {

using nlohmann::json;

void LanguageProfile::validate() const {
  if (name.empty()) throw_usage("language profile has no name");
  if (block_open.empty() || block_close.empty())
    throw_usage("language profile '" + name + "': block delimiters must be non-empty");
  if (block_open == block_close)
    throw_usage("language profile '" + name + "': block open and close delimiters must differ");
  if (statement_terminator.empty())
    throw_usage("language profile '" + name + "': statement terminator must be non-empty");
  if (line_comments.empty() && block_comments.empty())
    throw_usage("language profile '" + name + "': needs at least one comment marker");
  for (const auto& marker : line_comments)
    if (marker.empty()) throw_usage("language profile '" + name + "': empty line-comment marker");
  for (const auto& marker : block_comments)
    if (marker.open.empty() || marker.close.empty())
      throw_usage("language profile '" + name + "': empty block-comment marker");
  for (const auto& delim : string_delimiters)
    if (delim.empty()) throw_usage("language profile '" + name + "': empty string delimiter");
  if (qualifier.empty()) throw_usage("language profile '" + name + "': qualifier must be non-empty");
}

bool LanguageProfile::is_keyword(std::string_view word) const {
  return std::find(keywords.begin(), keywords.end(), word) != keywords.end();
}

bool LanguageProfile::matches_extension(const std::filesystem::path& path) const {
  const auto ext = path.extension().string();
  return std::find(extensions.begin(), extensions.end(), ext) != extensions.end();
}

LanguageProfile java_profile() {
  LanguageProfile p;
  p.name = "java";
  p.extensions = {".java"};
  p.line_comments = {"//"};
  p.block_comments = {{"/*", "*/"}};
  p.string_delimiters = {"\"", "'"};
  p.keywords = {"abstract", "assert", "boolean", "break", "byte", "case", "catch", "char",
                "class", "const", "continue", "default", "do", "double", "else", "enum",
                "extends", "false", "final", "finally", "float", "for", "goto", "if",
                "implements", "import", "instanceof", "int", "interface", "long", "native",
                "new", "null", "package", "private", "protected", "public", "return", "short",
                "static", "strictfp", "super", "switch", "synchronized", "this", "throw",
                "throws", "transient", "true", "try", "var", "void", "volatile", "while"};
  p.inherit_keywords = {"extends"};
  p.implement_keywords = {"implements"};
  p.import_keywords = {"import"};
  p.qualifier = ".";
  return p;
}

LanguageProfile c_profile() {
  LanguageProfile p;
  p.name = "c";
  p.extensions = {".c", ".h", ".cc", ".cpp", ".cxx", ".hpp", ".hh", ".hxx"};
  p.line_comments = {"//"};
  p.block_comments = {{"/*", "*/"}};
  p.string_delimiters = {"\"", "'"};
  p.keywords = {"auto", "bool", "break", "case", "catch", "char", "class", "const",
                "const_cast", "continue", "default", "define", "delete", "do", "double",
                "dynamic_cast", "else", "endif", "enum", "explicit", "extern", "false",
                "float", "for", "friend", "goto", "if", "ifdef", "ifndef", "include",
                "inline", "int", "long", "mutable", "namespace", "new", "nullptr",
                "operator", "override", "pragma", "private", "protected", "public",
                "register", "reinterpret_cast", "restrict", "return", "short", "signed",
                "sizeof", "static", "static_cast", "struct", "switch", "template", "this",
                "throw", "true", "try", "typedef", "typename", "union", "unsigned", "using",
                "virtual", "void", "volatile", "while"};
  p.import_keywords = {"#include"};
  p.colon_inheritance = true;
  p.qualifier = "::";
  return p;
}

namespace {

const std::set<std::string>& known_profile_keys() {
  static const std::set<std::string> keys = {
      "name",          "extensions",       "block_open",         "block_close",
      "statement_terminator", "line_comments", "block_comments",  "string_delimiters",
      "escape",        "keywords",         "inherit_keywords",   "implement_keywords",
      "import_keywords", "colon_inheritance", "qualifier"};
  return keys;
}

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw_usage(std::string("language profile field '") + key + "': " + e.what());
  }
}

}  // namespace

LanguageProfile parse_language_profile(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw_usage(std::string("language profile is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw_usage("language profile must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known_profile_keys().contains(key))
      throw_usage("language profile: unknown key '" + key + "'");
  }

  LanguageProfile p;
  read_field(j, "name", p.name);
  read_field(j, "extensions", p.extensions);
  read_field(j, "block_open", p.block_open);
  read_field(j, "block_close", p.block_close);
  read_field(j, "statement_terminator", p.statement_terminator);
  read_field(j, "line_comments", p.line_comments);
  read_field(j, "string_delimiters", p.string_delimiters);
  read_field(j, "keywords", p.keywords);
  read_field(j, "inherit_keywords", p.inherit_keywords);
  read_field(j, "implement_keywords", p.implement_keywords);
  read_field(j, "import_keywords", p.import_keywords);
  read_field(j, "colon_inheritance", p.colon_inheritance);
  read_field(j, "qualifier", p.qualifier);
  if (j.contains("escape")) {
    std::string escape;
    read_field(j, "escape", escape);
    if (escape.size() != 1) throw_usage("language profile field 'escape' must be one character");
    p.escape = escape[0];
  }
  if (j.contains("block_comments")) {
    std::vector<std::vector<std::string>> pairs;
    read_field(j, "block_comments", pairs);
    for (const auto& pair : pairs) {
      if (pair.size() != 2)
        throw_usage("language profile field 'block_comments' expects [open, close] pairs");
      p.block_comments.push_back({pair[0], pair[1]});
    }
  }
  p.validate();
  return p;
}

LanguageProfile load_language_profile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw_usage("cannot read language profile '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_language_profile(buffer.str());
}

LanguageProfile resolve_language_profile(const std::string& name_or_path) {
  if (name_or_path == "java") return java_profile();
  if (name_or_path == "c" || name_or_path == "cpp") return c_profile();
  if (!std::filesystem::exists(name_or_path))
    throw_usage("unknown language profile '" + name_or_path +
                "' (expected 'java', 'c' or a profile file path)");
  return load_language_profile(name_or_path);
}

std::string language_profile_to_json(const LanguageProfile& p) {
  json j;
  j["name"] = p.name;
  j["extensions"] = p.extensions;
  j["block_open"] = p.block_open;
  j["block_close"] = p.block_close;
  j["statement_terminator"] = p.statement_terminator;
  j["line_comments"] = p.line_comments;
  json pairs = json::array();
  for (const auto& m : p.block_comments) pairs.push_back({m.open, m.close});
  j["block_comments"] = pairs;
  j["string_delimiters"] = p.string_delimiters;
  j["escape"] = std::string(1, p.escape);
  j["keywords"] = p.keywords;
  j["inherit_keywords"] = p.inherit_keywords;
  j["implement_keywords"] = p.implement_keywords;
  j["import_keywords"] = p.import_keywords;
  j["colon_inheritance"] = p.colon_inheritance;
  j["qualifier"] = p.qualifier;
  return j.dump(2);
}

}  // namespace coderet

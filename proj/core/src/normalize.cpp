#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "coderet/code_features.hpp"
#include "statement_lexer.hpp"

namespace coderet {
namespace detail {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::size_t placeholder_length(std::string_view text, std::size_t pos) {
  const auto rest = text.substr(pos);
  if (rest.starts_with("<num>") || rest.starts_with("<str>")) return 5;
  if (!rest.starts_with("<id:")) return 0;
  std::size_t i = 4;
  while (i < rest.size() && ident_char(rest[i])) ++i;
  if (i > 4 && i < rest.size() && rest[i] == '>') return i + 1;
  return 0;
}

}  // namespace

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_non_type_keyword(std::string_view word) {
  static const std::unordered_set<std::string_view> words = {
      "abstract", "assert",   "await",     "break",     "case",       "catch",    "class",
      "const",    "continue", "default",   "delete",    "do",         "else",     "enum",
      "explicit", "extends",  "extern",    "final",     "finally",    "for",      "friend",
      "goto",     "if",       "implements", "import",   "inline",     "instanceof", "interface",
      "namespace", "new",     "operator",  "package",   "private",    "protected", "public",
      "return",   "sizeof",   "static",    "struct",    "switch",     "synchronized", "template",
      "throw",    "throws",   "try",       "typedef",   "typename",   "union",    "using",
      "virtual",  "volatile", "while",     "yield"};
  return words.contains(word);
}

std::vector<Lexeme> lex_statement(std::string_view text, const LanguageProfile& profile) {
  std::vector<Lexeme> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    const std::size_t start = i;
    if (std::isspace(static_cast<unsigned char>(c))) {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      out.push_back({LexKind::space, text.substr(start, i - start)});
      continue;
    }
    if (c == '<') {
      if (const auto len = placeholder_length(text, i)) {
        i += len;
        out.push_back({LexKind::placeholder, text.substr(start, len)});
        continue;
      }
    }
    bool matched = false;
    for (const auto& delim : profile.string_delimiters) {
      if (text.substr(i, delim.size()) != delim) continue;
      i += delim.size();
      while (i < text.size()) {
        if (text[i] == profile.escape) {
          i += 2;
          continue;
        }
        if (text.substr(i, delim.size()) == delim) {
          i += delim.size();
          break;
        }
        ++i;
      }
      i = std::min(i, text.size());
      out.push_back({LexKind::string, text.substr(start, i - start)});
      matched = true;
      break;
    }
    if (matched) continue;
    if (ident_start(c)) {
      while (i < text.size() && ident_char(text[i])) ++i;
      out.push_back({LexKind::identifier, text.substr(start, i - start)});
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < text.size() && (ident_char(text[i]) || text[i] == '.')) ++i;
      out.push_back({LexKind::number, text.substr(start, i - start)});
      continue;
    }
    ++i;
    out.push_back({LexKind::symbol, text.substr(start, 1)});
  }
  return out;
}

}  // namespace detail

namespace {

using detail::Lexeme;
using detail::LexKind;

bool is_symbol(const Lexeme& lex, std::string_view s) {
  return lex.kind == LexKind::symbol && lex.text == s;
}

// Finds `Type name` pairs and reports them as (name, lowercase type).
template <typename Sink>
void scan_declarations(const std::vector<Lexeme>& all, const LanguageProfile& profile, Sink&& sink) {
  std::vector<Lexeme> lex;
  for (const auto& l : all)
    if (l.kind != LexKind::space) lex.push_back(l);

  for (std::size_t i = 0; i < lex.size(); ++i) {
    if (lex[i].kind != LexKind::identifier || detail::is_non_type_keyword(lex[i].text)) continue;
    std::size_t j = i + 1;
    if (j < lex.size() && is_symbol(lex[j], "<")) {
      int depth = 0;
      for (; j < lex.size(); ++j) {
        if (is_symbol(lex[j], "<")) ++depth;
        else if (is_symbol(lex[j], ">") && --depth == 0) break;
        else if (lex[j].kind == LexKind::symbol && lex[j].text != "," && lex[j].text != "." &&
                 lex[j].text != "?" && lex[j].text != "*" && lex[j].text != "&" &&
                 lex[j].text != ":") {
          j = lex.size();
          break;
        }
      }
      if (j >= lex.size()) continue;
      ++j;
    }
    while (j < lex.size() && (is_symbol(lex[j], "[") || is_symbol(lex[j], "]") ||
                              is_symbol(lex[j], "*") || is_symbol(lex[j], "&")))
      ++j;
    if (j >= lex.size() || lex[j].kind != LexKind::identifier) continue;
    const auto name = lex[j].text;
    if (profile.is_keyword(name) || detail::is_non_type_keyword(name)) continue;
    const bool at_end = j + 1 == lex.size();
    if (!at_end) {
      const auto& next = lex[j + 1];
      if (next.kind != LexKind::symbol) continue;
      static constexpr std::string_view kFollowers[] = {"=", ";", ",", ")", "[", ":"};
      if (std::find(std::begin(kFollowers), std::end(kFollowers), next.text) == std::end(kFollowers))
        continue;
    }
    sink(std::string(name), detail::to_lower(lex[i].text));
  }
}

}  // namespace

void collect_declarations(std::string_view statement, const LanguageProfile& profile,
                          SymbolTable& symbols) {
  scan_declarations(detail::lex_statement(statement, profile), profile,
                    [&](std::string name, std::string type) {
                      symbols.emplace(std::move(name), std::move(type));
                    });
}

std::string normalize_statement(std::string_view statement, const LanguageProfile& profile,
                                const SymbolTable* symbols) {
  const auto lexemes = detail::lex_statement(statement, profile);
  SymbolTable local;
  scan_declarations(lexemes, profile,
                    [&](std::string name, std::string type) { local.emplace(std::move(name), std::move(type)); });

  std::string out;
  out.reserve(statement.size());
  // Member names (`a.name`, `p->name`, `ns::name`) belong to another scope
  // and are left as written.
  const Lexeme* prev = nullptr;
  const Lexeme* prev2 = nullptr;
  auto after_member_access = [&] {
    if (!prev || prev->kind != LexKind::symbol) return false;
    if (prev->text == ".") return true;
    if (!prev2 || prev2->kind != LexKind::symbol) return false;
    return (prev->text == ">" && prev2->text == "-") || (prev->text == ":" && prev2->text == ":");
  };
  for (const auto& lex : lexemes) {
    switch (lex.kind) {
      case LexKind::space:
        if (!out.empty() && out.back() != ' ') out.push_back(' ');
        break;
      case LexKind::identifier: {
        const std::string name(lex.text);
        const std::string* type = nullptr;
        if (!after_member_access()) {
          if (const auto it = local.find(name); it != local.end()) {
            type = &it->second;
          } else if (symbols) {
            if (const auto sym = symbols->find(name); sym != symbols->end()) type = &sym->second;
          }
        }
        out += type ? "<id:" + *type + ">" : name;
        break;
      }
      case LexKind::number:
        out += "<num>";
        break;
      case LexKind::string:
        out += "<str>";
        break;
      case LexKind::placeholder:
      case LexKind::symbol:
        out += lex.text;
        break;
    }
    if (lex.kind != LexKind::space) {
      prev2 = prev;
      prev = &lex;
    }
  }
  // Strip trailing terminators and surrounding whitespace.
  const auto& term = profile.statement_terminator;
  while (true) {
    while (!out.empty() && out.back() == ' ') out.pop_back();
    if (!term.empty() && out.size() >= term.size() &&
        out.compare(out.size() - term.size(), term.size(), term) == 0) {
      out.erase(out.size() - term.size());
      continue;
    }
    break;
  }
  const auto first = out.find_first_not_of(' ');
  return first == std::string::npos ? std::string{} : out.substr(first);
}

}  // namespace coderet

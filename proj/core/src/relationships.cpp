#include <algorithm>
#include <cctype>

#include "coderet/code_features.hpp"
#include "coderet/tokenizer.hpp"
#include "statement_lexer.hpp"

namespace coderet {
namespace {

enum class TokKind { name, string, symbol };

struct Tok {
  TokKind kind;
  std::string text;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool contains(const std::vector<std::string>& list, std::string_view word) {
  return std::find(list.begin(), list.end(), word) != list.end();
}

// Lexes code into qualified names, string literals and single-character
// symbols. `#include <a/b.h>` yields the include path as a string token.
std::vector<Tok> lex_code(std::string_view code, const LanguageProfile& profile) {
  std::vector<Tok> out;
  const auto& q = profile.qualifier;
  std::size_t i = 0;
  auto read_ident = [&](std::size_t pos) {
    std::size_t e = pos;
    while (e < code.size() && ident_char(code[e])) ++e;
    return e;
  };
  while (i < code.size()) {
    const char c = code[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    bool is_string = false;
    for (const auto& delim : profile.string_delimiters) {
      if (code.substr(i, delim.size()) != delim) continue;
      std::size_t e = i + delim.size();
      while (e < code.size() && code.substr(e, delim.size()) != delim && code[e] != '\n') {
        if (code[e] == profile.escape) ++e;
        ++e;
      }
      out.push_back({TokKind::string, std::string(code.substr(i + delim.size(), e - i - delim.size()))});
      i = std::min(code.size(), e + delim.size());
      is_string = true;
      break;
    }
    if (is_string) continue;

    if (ident_start(c) || (c == '#' && i + 1 < code.size() && ident_start(code[i + 1]))) {
      std::size_t e = read_ident(i + 1);
      // Join qualified segments: a.b.C, ns::Type, java.io.*
      while (code.substr(e, q.size()) == q) {
        const std::size_t next = e + q.size();
        if (next < code.size() && ident_start(code[next])) {
          e = read_ident(next);
        } else if (next < code.size() && code[next] == '*') {
          e = next + 1;
          break;
        } else {
          break;
        }
      }
      std::string name(code.substr(i, e - i));
      i = e;
      const bool is_import = contains(profile.import_keywords, name);
      out.push_back({TokKind::name, std::move(name)});
      if (is_import) {
        std::size_t p = i;
        while (p < code.size() && (code[p] == ' ' || code[p] == '\t')) ++p;
        if (p < code.size() && code[p] == '<') {
          const auto close = code.find('>', p);
          if (close != std::string_view::npos) {
            out.push_back({TokKind::string, std::string(code.substr(p + 1, close - p - 1))});
            i = close + 1;
          }
        }
      }
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < code.size() && (ident_char(code[i]) || code[i] == '.')) ++i;
      continue;
    }
    out.push_back({TokKind::symbol, std::string(1, c)});
    ++i;
  }
  return out;
}

bool is_symbol(const Tok& t, char c) { return t.kind == TokKind::symbol && t.text.size() == 1 && t.text[0] == c; }

// Skips a balanced <...> group starting at `i`, returning the index after it.
std::size_t skip_generic(const std::vector<Tok>& toks, std::size_t i) {
  if (i >= toks.size() || !is_symbol(toks[i], '<')) return i;
  int depth = 0;
  for (; i < toks.size(); ++i) {
    if (is_symbol(toks[i], '<')) ++depth;
    else if (is_symbol(toks[i], '>') && --depth == 0) return i + 1;
    else if (is_symbol(toks[i], '{') || is_symbol(toks[i], ';')) return i;
  }
  return i;
}

bool starts_lower(std::string_view s) { return !s.empty() && std::islower(static_cast<unsigned char>(s[0])); }
bool starts_upper(std::string_view s) { return !s.empty() && std::isupper(static_cast<unsigned char>(s[0])); }

CodeFeature make_relationship(std::string_view tag, std::string_view target) {
  CodeFeature f;
  f.kind = FeatureKind::relationship;
  f.key = std::string(tag) + ":" + detail::to_lower(target);
  for (auto& w : text_tokens(target)) f.surface_words.insert(std::move(w));
  return f;
}

bool is_access_word(std::string_view w) {
  return w == "public" || w == "protected" || w == "private" || w == "virtual";
}

}  // namespace

std::vector<CodeFeature> extract_relationships(const CodeDocument& doc, const LanguageProfile& profile) {
  const auto scanned = scan_source(doc.source, profile);
  const auto toks = lex_code(scanned.code_with_strings, profile);
  std::vector<CodeFeature> out;
  std::vector<bool> consumed(toks.size(), false);

  auto collect_list = [&](std::size_t i, std::string_view tag) {
    // Comma-separated type list after `extends` / `implements` / ':'.
    while (i < toks.size()) {
      while (i < toks.size() && toks[i].kind == TokKind::name && is_access_word(toks[i].text)) ++i;
      if (i >= toks.size() || toks[i].kind != TokKind::name || profile.is_keyword(toks[i].text)) break;
      out.push_back(make_relationship(tag, toks[i].text));
      consumed[i] = true;
      i = skip_generic(toks, i + 1);
      if (i < toks.size() && is_symbol(toks[i], ',')) {
        ++i;
        continue;
      }
      break;
    }
  };

  for (std::size_t i = 0; i < toks.size(); ++i) {
    const auto& t = toks[i];
    if (t.kind != TokKind::name) continue;
    if (contains(profile.import_keywords, t.text)) {
      std::size_t j = i + 1;
      if (j < toks.size() && toks[j].kind == TokKind::name && toks[j].text == "static") ++j;
      if (j < toks.size() && (toks[j].kind == TokKind::name || toks[j].kind == TokKind::string) &&
          !toks[j].text.empty()) {
        out.push_back(make_relationship("refs", toks[j].text));
        consumed[j] = true;
      }
      continue;
    }
    if (t.text == "package") {
      if (i + 1 < toks.size()) consumed[i + 1] = true;
      continue;
    }
    if (contains(profile.inherit_keywords, t.text)) {
      collect_list(i + 1, "inherits");
      continue;
    }
    if (contains(profile.implement_keywords, t.text)) {
      collect_list(i + 1, "implements");
      continue;
    }
    if (profile.colon_inheritance && (t.text == "class" || t.text == "struct") && i + 2 < toks.size() &&
        toks[i + 1].kind == TokKind::name) {
      std::size_t j = skip_generic(toks, i + 2);
      if (j < toks.size() && is_symbol(toks[j], ':')) collect_list(j + 1, "inherits");
      continue;
    }
  }

  // Qualified type names used in the body: lowercase package, Capitalized type.
  const auto& q = profile.qualifier;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (consumed[i] || toks[i].kind != TokKind::name) continue;
    const auto& name = toks[i].text;
    const auto last = name.rfind(q);
    if (last == std::string::npos) continue;
    if (!starts_lower(name) || !starts_upper(std::string_view(name).substr(last + q.size()))) continue;
    out.push_back(make_relationship("refs", name));
  }
  return out;
}

}  // namespace coderet

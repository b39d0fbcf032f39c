#include <algorithm>
#include <optional>
#include <variant>

#include "coderet/code_features.hpp"
#include "coderet/tokenizer.hpp"
#include "statement_lexer.hpp"

namespace coderet {
namespace {

struct RawNode {
  std::size_t begin = 0;
  std::size_t end = 0;
  // Statement text or index into `children`, in source order.
  std::vector<std::variant<std::string, std::size_t>> items;
  std::vector<RawNode> children;
};

bool at(std::string_view text, std::size_t pos, std::string_view token) {
  return !token.empty() && text.substr(pos, token.size()) == token;
}

void collect_all(const RawNode& node, const LanguageProfile& profile, SymbolTable& symbols) {
  for (const auto& item : node.items) {
    if (const auto* stmt = std::get_if<std::string>(&item)) {
      collect_declarations(*stmt, profile, symbols);
    } else {
      collect_all(node.children[std::get<std::size_t>(item)], profile, symbols);
    }
  }
}

std::set<std::string> statement_words(std::string_view statement, const LanguageProfile& profile) {
  std::set<std::string> words;
  for (const auto& lex : detail::lex_statement(statement, profile)) {
    if (lex.kind != detail::LexKind::identifier) continue;
    for (auto& w : identifier_tokens(lex.text, profile)) words.insert(std::move(w));
  }
  return words;
}

struct Finalized {
  BlockNode node;
  std::set<std::string> subtree_words;  // own words of this node and all descendants
};

std::optional<Finalized> finalize(const RawNode& raw, int depth, const LanguageProfile& profile,
                                  const SymbolTable& symbols) {
  Finalized out;
  out.node.begin = raw.begin;
  out.node.end = raw.end;
  out.node.depth = depth;
  std::set<std::string> descendant_words;
  std::string key;
  auto append_key = [&key](std::string_view part) {
    if (!key.empty()) key.push_back(' ');
    key.append(part);
  };

  for (const auto& item : raw.items) {
    if (const auto* stmt = std::get_if<std::string>(&item)) {
      auto normalized = normalize_statement(*stmt, profile, &symbols);
      if (normalized.empty()) continue;
      append_key(normalized + profile.statement_terminator);
      out.node.statements.push_back(std::move(normalized));
      auto words = statement_words(*stmt, profile);
      out.node.own_words.insert(words.begin(), words.end());
      continue;
    }
    auto child = finalize(raw.children[std::get<std::size_t>(item)], depth + 1, profile, symbols);
    if (!child) continue;
    append_key(profile.block_open + " " + child->node.key + " " + profile.block_close);
    descendant_words.insert(child->subtree_words.begin(), child->subtree_words.end());
    out.node.children.push_back(std::move(child->node));
  }

  if (depth > 0 && out.node.statements.empty() && out.node.children.empty()) return std::nullopt;

  out.node.key = std::move(key);
  std::set_difference(out.node.own_words.begin(), out.node.own_words.end(),
                      descendant_words.begin(), descendant_words.end(),
                      std::inserter(out.node.surface_words, out.node.surface_words.end()));
  out.subtree_words = std::move(descendant_words);
  out.subtree_words.insert(out.node.own_words.begin(), out.node.own_words.end());
  return out;
}

std::size_t count_nodes(const BlockNode& node) {
  std::size_t n = 1;
  for (const auto& child : node.children) n += count_nodes(child);
  return n;
}

}  // namespace

std::size_t BlockTree::node_count() const { return count_nodes(root); }

BlockTree build_block_tree(std::string_view code, const LanguageProfile& profile) {
  BlockTree tree;
  std::vector<RawNode> stack(1);
  std::string buffer;

  auto flush = [&] {
    const auto first = buffer.find_first_not_of(" \t\r\n");
    if (first != std::string::npos) stack.back().items.emplace_back(buffer.substr(first));
    buffer.clear();
  };
  auto close_top = [&](std::size_t end) {
    RawNode node = std::move(stack.back());
    stack.pop_back();
    node.end = end;
    auto& parent = stack.back();
    parent.items.emplace_back(parent.children.size());
    parent.children.push_back(std::move(node));
  };

  std::size_t i = 0;
  while (i < code.size()) {
    if (at(code, i, profile.block_open)) {
      flush();
      RawNode child;
      child.begin = i;
      stack.push_back(std::move(child));
      i += profile.block_open.size();
    } else if (at(code, i, profile.block_close)) {
      flush();
      if (stack.size() == 1) {
        tree.recovered = true;
        tree.warnings.push_back("unmatched '" + profile.block_close + "' at offset " +
                                std::to_string(i) + " ignored");
      } else {
        close_top(i + profile.block_close.size());
      }
      i += profile.block_close.size();
    } else if (at(code, i, profile.statement_terminator)) {
      flush();
      i += profile.statement_terminator.size();
    } else {
      buffer.push_back(code[i]);
      ++i;
    }
  }
  flush();
  if (stack.size() > 1) {
    tree.recovered = true;
    tree.warnings.push_back(std::to_string(stack.size() - 1) +
                            " unclosed block(s) closed at end of file");
    while (stack.size() > 1) close_top(code.size());
  }
  stack.back().begin = 0;
  stack.back().end = code.size();

  SymbolTable symbols;
  collect_all(stack.back(), profile, symbols);
  tree.root = finalize(stack.back(), 0, profile, symbols)->node;
  return tree;
}

}  // namespace coderet

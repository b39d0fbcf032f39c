#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coderet/corpus.hpp"
#include "coderet/errors.hpp"
#include "coderet/language_profile.hpp"

namespace coderet {

/// A delimiter-bounded region of a program. `statements` are the normalized
/// statements owned directly at this level; nested blocks are `children`.
struct BlockNode {
  std::size_t begin = 0;  // offset of the opening delimiter (0 for the root)
  std::size_t end = 0;    // offset one past the closing delimiter
  int depth = 0;
  std::vector<std::string> statements;
  std::vector<BlockNode> children;
  /// Normalized text of the whole subtree; the snippet feature key.
  std::string key;
  /// Words of this level's own statements.
  std::set<std::string> own_words;
  /// `own_words` minus every word owned by a descendant.
  std::set<std::string> surface_words;
};

struct BlockTree {
  BlockNode root;
  /// True when unbalanced delimiters were repaired.
  bool recovered = false;
  std::vector<std::string> warnings;

  std::size_t node_count() const;
};

/// Splits comment- and string-stripped code into a tree of blocks. Empty
/// blocks are dropped; unbalanced delimiters are repaired and flagged.
BlockTree build_block_tree(std::string_view code, const LanguageProfile& profile);

/// Declared-name -> lowercase type name, collected from a document.
using SymbolTable = std::map<std::string, std::string>;

/// Collects `Type name` declarations from one statement into `symbols`.
void collect_declarations(std::string_view statement, const LanguageProfile& profile,
                          SymbolTable& symbols);

/// Rewrites declared names to `<id:type>`, numbers to `<num>`, string
/// literals to `<str>`, collapses whitespace and strips the terminator.
/// Names from `symbols` are rewritten too; in-statement declarations always are.
std::string normalize_statement(std::string_view statement, const LanguageProfile& profile,
                                const SymbolTable* symbols = nullptr);

enum class FeatureKind { relationship, snippet };

std::string_view to_string(FeatureKind kind);
FeatureKind parse_feature_kind(std::string_view text);

struct CodeFeature {
  FeatureKind kind = FeatureKind::snippet;
  std::string key;
  std::set<std::string> surface_words;
  std::size_t document_frequency = 0;
};

/// Feature occurrences per document, with multiplicity.
using DocumentFeatureMap = std::map<std::string, std::map<std::string, std::size_t>>;

/// The candidate set F together with the document map M.
struct FeatureSet {
  std::map<std::string, CodeFeature> features;
  DocumentFeatureMap occurrences;
  /// Documents whose block structure had to be repaired.
  std::vector<std::string> warnings;

  bool contains(const std::string& key) const { return features.contains(key); }
  void add_occurrence(const std::string& doc_id, CodeFeature feature);
  /// Recounts document frequencies from `occurrences`.
  void refresh_document_frequencies();
};

FeatureSet extract_snippet_candidates(std::span<const CodeDocument> corpus,
                                      const LanguageProfile& profile);

/// `inherits:`, `implements:` and `refs:` features of one document, one per
/// occurrence.
std::vector<CodeFeature> extract_relationships(const CodeDocument& doc,
                                               const LanguageProfile& profile);

/// Snippets and relationships of the whole corpus.
FeatureSet extract_features(std::span<const CodeDocument> corpus, const LanguageProfile& profile);

struct FrequencyBounds {
  std::size_t lower = 2;
  std::optional<std::size_t> upper;  // unbounded when empty

  bool admits(std::size_t document_frequency) const {
    return document_frequency >= lower && (!upper || document_frequency <= *upper);
  }
  void validate() const;
  /// lower = 2, upper = half the corpus (never below `lower`).
  static FrequencyBounds defaults_for(std::size_t corpus_size);
};

/// Keeps features whose document frequency lies within the bounds;
/// relationship features use `relationship_bounds` when given.
FeatureSet filter_by_frequency(const FeatureSet& features, const FrequencyBounds& bounds,
                               const std::optional<FrequencyBounds>& relationship_bounds = std::nullopt);

/// `kind<TAB>key<TAB>document-frequency`, one feature per line, sorted by key.
std::string dump_features(const FeatureSet& features);

}  // namespace coderet

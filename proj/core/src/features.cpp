#include <algorithm>
#include <sstream>

#include "coderet/code_features.hpp"
#include "coderet/tokenizer.hpp"

namespace coderet {

std::string_view to_string(FeatureKind kind) {
  return kind == FeatureKind::relationship ? "relationship" : "snippet";
}

FeatureKind parse_feature_kind(std::string_view text) {
  if (text == "relationship") return FeatureKind::relationship;
  if (text == "snippet") return FeatureKind::snippet;
  throw_runtime("unknown feature kind '" + std::string(text) + "'");
}

void FeatureSet::add_occurrence(const std::string& doc_id, CodeFeature feature) {
  auto [it, inserted] = features.try_emplace(feature.key);
  if (inserted) {
    it->second.kind = feature.kind;
    it->second.key = feature.key;
  }
  it->second.surface_words.merge(feature.surface_words);
  ++occurrences[doc_id][feature.key];
}

void FeatureSet::refresh_document_frequencies() {
  for (auto& [key, feature] : features) feature.document_frequency = 0;
  for (const auto& [doc, counts] : occurrences) {
    for (const auto& [key, count] : counts) {
      if (count == 0) continue;
      if (auto it = features.find(key); it != features.end()) ++it->second.document_frequency;
    }
  }
}

namespace {

// Post-order: leaves first, the root last. Nodes that own no statement of
// their own (a bare wrapper around nested blocks) are not snippets.
void emit_snippets(const BlockNode& node, const std::string& doc_id, FeatureSet& out) {
  for (const auto& child : node.children) emit_snippets(child, doc_id, out);
  if (node.statements.empty()) return;
  CodeFeature feature;
  feature.kind = FeatureKind::snippet;
  feature.key = node.key;
  feature.surface_words = node.surface_words;
  out.add_occurrence(doc_id, std::move(feature));
}

}  // namespace

FeatureSet extract_snippet_candidates(std::span<const CodeDocument> corpus,
                                      const LanguageProfile& profile) {
  FeatureSet out;
  for (const auto& doc : corpus) {
    const auto scanned = scan_source(doc.source, profile);
    const auto tree = build_block_tree(scanned.code, profile);
    if (tree.recovered) {
      for (const auto& w : tree.warnings) out.warnings.push_back(doc.id + ": " + w);
    }
    emit_snippets(tree.root, doc.id, out);
  }
  out.refresh_document_frequencies();
  return out;
}

FeatureSet extract_features(std::span<const CodeDocument> corpus, const LanguageProfile& profile) {
  auto out = extract_snippet_candidates(corpus, profile);
  for (const auto& doc : corpus) {
    for (auto& feature : extract_relationships(doc, profile)) out.add_occurrence(doc.id, std::move(feature));
  }
  out.refresh_document_frequencies();
  return out;
}

void FrequencyBounds::validate() const {
  if (lower < 1) throw_usage("feature frequency lower bound must be >= 1");
  if (upper && *upper < lower)
    throw_usage("feature frequency upper bound " + std::to_string(*upper) +
                " is below lower bound " + std::to_string(lower));
}

FrequencyBounds FrequencyBounds::defaults_for(std::size_t corpus_size) {
  FrequencyBounds b;
  b.upper = std::max(b.lower, corpus_size / 2);
  return b;
}

FeatureSet filter_by_frequency(const FeatureSet& input, const FrequencyBounds& bounds,
                               const std::optional<FrequencyBounds>& relationship_bounds) {
  bounds.validate();
  if (relationship_bounds) relationship_bounds->validate();

  FeatureSet out;
  out.warnings = input.warnings;
  for (const auto& [key, feature] : input.features) {
    const auto& b = feature.kind == FeatureKind::relationship && relationship_bounds
                        ? *relationship_bounds
                        : bounds;
    if (b.admits(feature.document_frequency)) out.features.emplace(key, feature);
  }
  if (out.features.empty() && !input.features.empty()) {
    throw_runtime("frequency bounds [" + std::to_string(bounds.lower) + ", " +
                  (bounds.upper ? std::to_string(*bounds.upper) : std::string("inf")) +
                  "] removed all " + std::to_string(input.features.size()) +
                  " code features; widen the bounds");
  }
  for (const auto& [doc, counts] : input.occurrences) {
    for (const auto& [key, count] : counts) {
      if (out.features.contains(key)) out.occurrences[doc][key] = count;
    }
  }
  return out;
}

std::string dump_features(const FeatureSet& features) {
  std::ostringstream out;
  for (const auto& [key, f] : features.features) {
    out << to_string(f.kind) << '\t' << key << '\t' << f.document_frequency << '\n';
  }
  return out.str();
}

}  // namespace coderet

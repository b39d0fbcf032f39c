#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coderet/code_features.hpp"
#include "coderet/corpus.hpp"
#include "coderet/hmlcr.hpp"
#include "coderet/indices.hpp"
#include "coderet/vectorize.hpp"

namespace coderet {

struct FeatureOptions {
  /// Defaults to FrequencyBounds::defaults_for(corpus size) when empty.
  std::optional<FrequencyBounds> bounds;
  std::optional<FrequencyBounds> relationship_bounds;
  Weighting weighting = Weighting::tfidf;
};

/// A corpus together with everything derived from it: filtered features,
/// indices, X, Y and R over all documents.
struct CorpusModel {
  std::vector<CodeDocument> documents;
  FeatureSet features;
  Vocabulary vocab;
  FeatureIndex feature_index;
  DataMatrices data;
  SparseMatrix content;  // R

  std::vector<std::string> doc_ids() const;
  std::vector<std::string> labels() const;
};

CorpusModel build_corpus_model(std::vector<CodeDocument> documents, const LanguageProfile& profile,
                               const FeatureOptions& options = {});

/// X, Y and the label graph restricted to the given documents; R is shared.
TrainingData make_training_data(const CorpusModel& corpus, std::span<const std::size_t> documents);

/// Every document index, in order.
std::vector<std::size_t> all_documents(const CorpusModel& corpus);

}  // namespace coderet

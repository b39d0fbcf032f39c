#include "coderet/corpus_model.hpp"

#include <numeric>

#include "coderet/content_matrix.hpp"

namespace coderet {

std::vector<std::string> CorpusModel::doc_ids() const {
  std::vector<std::string> ids;
  ids.reserve(documents.size());
  for (const auto& d : documents) ids.push_back(d.id);
  return ids;
}

std::vector<std::string> CorpusModel::labels() const {
  std::vector<std::string> out;
  out.reserve(documents.size());
  for (const auto& d : documents) out.push_back(d.label);
  return out;
}

CorpusModel build_corpus_model(std::vector<CodeDocument> documents, const LanguageProfile& profile,
                               const FeatureOptions& options) {
  CorpusModel model;
  model.documents = std::move(documents);
  const auto bounds = options.bounds.value_or(FrequencyBounds::defaults_for(model.documents.size()));
  model.features = filter_by_frequency(extract_features(model.documents, profile), bounds,
                                       options.relationship_bounds);
  model.vocab = build_vocabulary(model.documents);
  model.feature_index = build_feature_index(model.features);
  model.data = build_matrices(model.documents, model.features.occurrences, model.vocab,
                              model.feature_index, options.weighting);
  model.content = build_content_matrix(model.vocab, model.feature_index, model.features);
  return model;
}

TrainingData make_training_data(const CorpusModel& corpus, std::span<const std::size_t> documents) {
  TrainingData data;
  data.x = select_columns(corpus.data.x, documents);
  data.y = select_columns(corpus.data.y, documents);
  data.r = corpus.content;
  std::vector<std::string> labels;
  labels.reserve(documents.size());
  for (const auto d : documents) labels.push_back(corpus.documents.at(d).label);
  data.graph = build_label_graph(labels);
  return data;
}

std::vector<std::size_t> all_documents(const CorpusModel& corpus) {
  std::vector<std::size_t> out(corpus.documents.size());
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

}  // namespace coderet

#include "coderet/indices.hpp"

namespace coderet {

Vocabulary build_vocabulary(std::span<const CodeDocument> corpus) {
  std::vector<std::string> words;
  for (const auto& doc : corpus) words.insert(words.end(), doc.tokens.begin(), doc.tokens.end());
  return Vocabulary(std::move(words));
}

FeatureIndex build_feature_index(const FeatureSet& features) {
  std::vector<std::string> keys;
  keys.reserve(features.features.size());
  for (const auto& [key, feature] : features.features) keys.push_back(key);
  return FeatureIndex(std::move(keys));
}

}  // namespace coderet

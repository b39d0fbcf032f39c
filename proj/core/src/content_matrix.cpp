#include "coderet/content_matrix.hpp"

namespace coderet {

SparseMatrix build_content_matrix(const Vocabulary& vocab, const FeatureIndex& index,
                                  const FeatureSet& features) {
  std::vector<Eigen::Triplet<double>> entries;
  for (std::size_t j = 0; j < index.size(); ++j) {
    const auto it = features.features.find(index.at(j));
    if (it == features.features.end())
      throw_runtime("feature index entry '" + index.at(j) + "' missing from the feature set");
    for (const auto& word : it->second.surface_words) {
      if (const auto i = vocab.find(word))
        entries.emplace_back(static_cast<int>(*i), static_cast<int>(j), 1.0);
    }
  }
  SparseMatrix r(static_cast<Eigen::Index>(vocab.size()), static_cast<Eigen::Index>(index.size()));
  r.setFromTriplets(entries.begin(), entries.end());
  return r;
}

}  // namespace coderet

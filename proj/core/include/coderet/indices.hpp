#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coderet/code_features.hpp"
#include "coderet/corpus.hpp"

namespace coderet {

/// Dense, sorted, bijective string <-> index map. Vocabulary and FeatureIndex
/// are both instances; the tag only keeps them from being mixed up.
template <typename Tag>
class SortedIndex {
 public:
  SortedIndex() = default;

  /// Entries are sorted and de-duplicated.
  explicit SortedIndex(std::vector<std::string> entries) : entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end());
    entries_.erase(std::unique(entries_.begin(), entries_.end()), entries_.end());
    for (std::size_t i = 0; i < entries_.size(); ++i) positions_.emplace(entries_[i], i);
  }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }

  std::optional<std::size_t> find(const std::string& entry) const {
    const auto it = positions_.find(entry);
    if (it == positions_.end()) return std::nullopt;
    return it->second;
  }
  const std::string& at(std::size_t index) const { return entries_.at(index); }
  const std::vector<std::string>& entries() const noexcept { return entries_; }

  bool operator==(const SortedIndex& other) const { return entries_ == other.entries_; }

 private:
  std::vector<std::string> entries_;
  std::map<std::string, std::size_t> positions_;
};

struct VocabularyTag {};
struct FeatureIndexTag {};

/// Word feature space; row index of X and R.
using Vocabulary = SortedIndex<VocabularyTag>;
/// Code feature space; row index of Y and column index of R.
using FeatureIndex = SortedIndex<FeatureIndexTag>;

Vocabulary build_vocabulary(std::span<const CodeDocument> corpus);
FeatureIndex build_feature_index(const FeatureSet& features);

}  // namespace coderet

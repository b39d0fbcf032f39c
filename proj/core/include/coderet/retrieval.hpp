#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coderet/corpus.hpp"
#include "coderet/hmlcr.hpp"
#include "coderet/indices.hpp"
#include "coderet/vectorize.hpp"

namespace coderet {

struct ScoredResult {
  std::string doc_id;
  double text_text = 0.0;
  double text_code = 0.0;
  double score = 0.0;
};

/// A query mapped into the corpus word space.
struct QueryVector {
  Eigen::VectorXd weights;
  std::size_t out_of_vocabulary = 0;
};

/// The learned text and code projections.
struct Projection {
  Matrix u;
  Matrix v;
};

/// Immutable ranking structure over a corpus:
///   score = (1 - alpha) * cos(q, x_j) + alpha * cos(U^T q, V^T y_j).
/// Without a projection the text-code component is zero.
class RetrievalIndex {
 public:
  RetrievalIndex(std::vector<std::string> doc_ids, const DataMatrices& data, Vocabulary vocab,
                 std::optional<Projection> projection, double alpha);

  QueryVector vectorize(std::span<const std::string> tokens) const;

  double text_text_similarity(const QueryVector& query, std::size_t doc) const;
  double text_code_similarity(const QueryVector& query, std::size_t doc) const;

  /// Scores of every document, in document order.
  std::vector<ScoredResult> score_all(const QueryVector& query) const;

  /// Top-n documents by ensemble score; ties broken by ascending doc id.
  std::vector<ScoredResult> rank(const QueryVector& query, std::size_t n) const;
  std::vector<ScoredResult> rank(const Query& query, std::size_t n) const;

  std::size_t size() const noexcept { return doc_ids_.size(); }
  double alpha() const noexcept { return alpha_; }
  const std::vector<std::string>& doc_ids() const noexcept { return doc_ids_; }
  const Vocabulary& vocabulary() const noexcept { return vocab_; }
  bool has_projection() const noexcept { return projection_.has_value(); }
  /// V^T Y, one column per document.
  const Matrix& code_projections() const noexcept { return code_proj_; }

 private:
  Eigen::VectorXd project_query(const QueryVector& query) const;
  std::vector<ScoredResult> score_with(const QueryVector& query, const Eigen::VectorXd* latent) const;

  std::vector<std::string> doc_ids_;
  SparseMatrix x_;
  Eigen::VectorXd x_norms_;
  Eigen::VectorXd word_idf_;
  Weighting weighting_;
  Vocabulary vocab_;
  std::optional<Projection> projection_;
  Matrix code_proj_;
  Eigen::VectorXd code_norms_;
  double alpha_;
};

/// Orders results by descending score, then ascending doc id, and truncates.
void sort_and_truncate(std::vector<ScoredResult>& results, std::size_t n);

/// The t words most related to a code feature: the feature's column of U V^T.
std::vector<std::pair<std::string, double>> top_words_for_feature(const std::string& feature_key,
                                                                  const Projection& projection,
                                                                  const Vocabulary& vocab,
                                                                  const FeatureIndex& features,
                                                                  std::size_t t);

}  // namespace coderet

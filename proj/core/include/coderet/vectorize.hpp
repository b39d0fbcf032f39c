#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "coderet/code_features.hpp"
#include "coderet/corpus.hpp"
#include "coderet/indices.hpp"

namespace coderet {

using SparseMatrix = Eigen::SparseMatrix<double>;

enum class Weighting { count, tfidf };

std::string_view to_string(Weighting weighting);
Weighting parse_weighting(std::string_view text);

/// Column j of `x` (words) and `y` (code features) describe document j.
struct DataMatrices {
  SparseMatrix x;
  SparseMatrix y;
  Weighting weighting = Weighting::tfidf;
  /// log(m / df) per word / feature; all ones under count weighting.
  Eigen::VectorXd word_idf;
  Eigen::VectorXd feature_idf;
  /// Documents that contributed no word (resp. no code feature).
  std::vector<std::size_t> empty_text_columns;
  std::vector<std::size_t> empty_code_columns;

  std::size_t documents() const { return static_cast<std::size_t>(x.cols()); }
};

/// Builds X and Y. Under tf-idf every non-empty column is L2-normalized.
DataMatrices build_matrices(std::span<const CodeDocument> corpus, const DocumentFeatureMap& occurrences,
                            const Vocabulary& vocab, const FeatureIndex& features, Weighting weighting);

/// Applies the corpus weighting to a bag of words. Tokens outside the
/// vocabulary are dropped and counted in `out_of_vocabulary`.
Eigen::VectorXd weigh_tokens(std::span<const std::string> tokens, const Vocabulary& vocab,
                             const Eigen::VectorXd& word_idf, Weighting weighting,
                             std::size_t* out_of_vocabulary = nullptr);

SparseMatrix select_columns(const SparseMatrix& matrix, std::span<const std::size_t> columns);

/// Label-equality graph over the text views (first m vertices) and the code
/// views (last m vertices) of the same documents.
struct LabelGraph {
  std::size_t documents = 0;
  SparseMatrix adjacency;  // W, 2m x 2m, symmetric, zero diagonal
  Eigen::VectorXd degree;  // diagonal of D
  SparseMatrix laplacian;  // I - D^-1/2 W D^-1/2
  SparseMatrix xx, xy, yx, yy;
};

LabelGraph build_label_graph(std::span<const std::string> labels);

}  // namespace coderet

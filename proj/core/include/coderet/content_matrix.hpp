#pragma once

#include "coderet/code_features.hpp"
#include "coderet/indices.hpp"
#include "coderet/vectorize.hpp"

namespace coderet {

/// Binary d^x x d^y matrix: r(i, j) = 1 iff word i is a surface word of code
/// feature j. Snippet surface words follow the lowest-snippet rule; a
/// relationship feature's surface words are the fragments of its target name.
SparseMatrix build_content_matrix(const Vocabulary& vocab, const FeatureIndex& index,
                                  const FeatureSet& features);

}  // namespace coderet

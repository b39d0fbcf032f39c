#include "coderet/vectorize.hpp"

#include <cmath>
#include <map>

namespace coderet {

std::string_view to_string(Weighting weighting) {
  return weighting == Weighting::count ? "count" : "tfidf";
}

Weighting parse_weighting(std::string_view text) {
  if (text == "count") return Weighting::count;
  if (text == "tfidf" || text == "tf-idf") return Weighting::tfidf;
  throw_usage("unknown weighting '" + std::string(text) + "' (expected 'count' or 'tfidf')");
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

Eigen::VectorXd idf_from_df(const std::vector<std::size_t>& df, std::size_t m, Weighting weighting) {
  Eigen::VectorXd idf = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(df.size()));
  if (weighting == Weighting::count) return idf;
  for (std::size_t i = 0; i < df.size(); ++i) {
    idf[static_cast<Eigen::Index>(i)] =
        df[i] == 0 ? 0.0 : std::log(static_cast<double>(m) / static_cast<double>(df[i]));
  }
  return idf;
}

SparseMatrix assemble(std::size_t rows, std::size_t cols,
                      const std::vector<std::map<std::size_t, double>>& columns,
                      const Eigen::VectorXd& idf, Weighting weighting, std::vector<std::size_t>& empty) {
  Triplets entries;
  for (std::size_t j = 0; j < cols; ++j) {
    double norm2 = 0.0;
    for (const auto& [i, count] : columns[j]) {
      const double w = count * idf[static_cast<Eigen::Index>(i)];
      norm2 += w * w;
    }
    if (norm2 == 0.0) {
      empty.push_back(j);
      continue;
    }
    const double scale = weighting == Weighting::tfidf ? 1.0 / std::sqrt(norm2) : 1.0;
    for (const auto& [i, count] : columns[j]) {
      const double w = count * idf[static_cast<Eigen::Index>(i)] * scale;
      if (w != 0.0) entries.emplace_back(static_cast<int>(i), static_cast<int>(j), w);
    }
  }
  SparseMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

}  // namespace

DataMatrices build_matrices(std::span<const CodeDocument> corpus, const DocumentFeatureMap& occurrences,
                            const Vocabulary& vocab, const FeatureIndex& features, Weighting weighting) {
  const std::size_t m = corpus.size();
  std::vector<std::map<std::size_t, double>> text_columns(m), code_columns(m);
  std::vector<std::size_t> word_df(vocab.size(), 0), feature_df(features.size(), 0);

  std::map<std::string, std::size_t> column_of;
  for (std::size_t j = 0; j < m; ++j) {
    if (!column_of.emplace(corpus[j].id, j).second)
      throw_runtime("duplicate document id '" + corpus[j].id + "'");
    for (const auto& token : corpus[j].tokens) {
      const auto i = vocab.find(token);
      if (!i) throw_runtime("token '" + token + "' of document '" + corpus[j].id + "' is not in the vocabulary");
      text_columns[j][*i] += 1.0;
    }
    for (const auto& [i, count] : text_columns[j]) ++word_df[i];
  }
  for (const auto& [doc, counts] : occurrences) {
    const auto col = column_of.find(doc);
    if (col == column_of.end()) throw_runtime("feature map references unknown document '" + doc + "'");
    for (const auto& [key, count] : counts) {
      const auto i = features.find(key);
      if (!i) throw_runtime("feature '" + key + "' is not in the feature index");
      if (count == 0) continue;
      code_columns[col->second][*i] += static_cast<double>(count);
    }
  }
  for (const auto& column : code_columns)
    for (const auto& [i, count] : column) ++feature_df[i];

  DataMatrices out;
  out.weighting = weighting;
  out.word_idf = idf_from_df(word_df, m, weighting);
  out.feature_idf = idf_from_df(feature_df, m, weighting);
  out.x = assemble(vocab.size(), m, text_columns, out.word_idf, weighting, out.empty_text_columns);
  out.y = assemble(features.size(), m, code_columns, out.feature_idf, weighting, out.empty_code_columns);
  return out;
}

Eigen::VectorXd weigh_tokens(std::span<const std::string> tokens, const Vocabulary& vocab,
                             const Eigen::VectorXd& word_idf, Weighting weighting,
                             std::size_t* out_of_vocabulary) {
  Eigen::VectorXd q = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(vocab.size()));
  std::size_t oov = 0;
  for (const auto& token : tokens) {
    if (const auto i = vocab.find(token)) {
      q[static_cast<Eigen::Index>(*i)] += 1.0;
    } else {
      ++oov;
    }
  }
  if (out_of_vocabulary) *out_of_vocabulary = oov;
  if (weighting == Weighting::tfidf) {
    q = q.cwiseProduct(word_idf);
    const double norm = q.norm();
    if (norm > 0.0) q /= norm;
  }
  return q;
}

SparseMatrix select_columns(const SparseMatrix& matrix, std::span<const std::size_t> columns) {
  SparseMatrix out(matrix.rows(), static_cast<Eigen::Index>(columns.size()));
  std::vector<Eigen::Triplet<double>> entries;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (SparseMatrix::InnerIterator it(matrix, static_cast<Eigen::Index>(columns[c])); it; ++it)
      entries.emplace_back(static_cast<int>(it.row()), static_cast<int>(c), it.value());
  }
  out.setFromTriplets(entries.begin(), entries.end());
  return out;
}

}  // namespace coderet

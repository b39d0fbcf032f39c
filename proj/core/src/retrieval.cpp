#include "coderet/retrieval.hpp"

#include <algorithm>
#include <numeric>

namespace coderet {
namespace {

double cosine(double dot, double a, double b) {
  if (a == 0.0 || b == 0.0) return 0.0;
  return dot / (a * b);
}

}  // namespace

RetrievalIndex::RetrievalIndex(std::vector<std::string> doc_ids, const DataMatrices& data, Vocabulary vocab,
                               std::optional<Projection> projection, double alpha)
    : doc_ids_(std::move(doc_ids)),
      x_(data.x),
      word_idf_(data.word_idf),
      weighting_(data.weighting),
      vocab_(std::move(vocab)),
      projection_(std::move(projection)),
      alpha_(alpha) {
  if (!(alpha_ >= 0.0 && alpha_ <= 1.0)) throw_usage("ensemble weight alpha must lie in [0, 1]");
  if (static_cast<Eigen::Index>(doc_ids_.size()) != x_.cols())
    throw_runtime("retrieval index: document ids do not match the data matrices");
  if (static_cast<Eigen::Index>(vocab_.size()) != x_.rows())
    throw_runtime("retrieval index: vocabulary does not match X");

  x_norms_.resize(x_.cols());
  for (Eigen::Index j = 0; j < x_.cols(); ++j) x_norms_[j] = x_.col(j).norm();

  if (projection_) {
    if (projection_->u.rows() != x_.rows() || projection_->v.rows() != data.y.rows() ||
        projection_->u.cols() != projection_->v.cols())
      throw_runtime("retrieval index: model dimensions do not match the corpus");
    code_proj_ = projection_->v.transpose() * data.y;
    code_norms_ = code_proj_.colwise().norm().transpose();
  }
}

QueryVector RetrievalIndex::vectorize(std::span<const std::string> tokens) const {
  QueryVector q;
  q.weights = weigh_tokens(tokens, vocab_, word_idf_, weighting_, &q.out_of_vocabulary);
  return q;
}

Eigen::VectorXd RetrievalIndex::project_query(const QueryVector& query) const {
  return projection_->u.transpose() * query.weights;
}

double RetrievalIndex::text_text_similarity(const QueryVector& query, std::size_t doc) const {
  const auto j = static_cast<Eigen::Index>(doc);
  const double dot = x_.col(j).dot(query.weights);
  return cosine(dot, query.weights.norm(), x_norms_[j]);
}

double RetrievalIndex::text_code_similarity(const QueryVector& query, std::size_t doc) const {
  if (!projection_) return 0.0;
  const auto j = static_cast<Eigen::Index>(doc);
  const Eigen::VectorXd latent = project_query(query);
  return cosine(latent.dot(code_proj_.col(j)), latent.norm(), code_norms_[j]);
}

std::vector<ScoredResult> RetrievalIndex::score_with(const QueryVector& query,
                                                     const Eigen::VectorXd* latent) const {
  std::vector<ScoredResult> out(doc_ids_.size());
  const double qnorm = query.weights.norm();
  const Eigen::VectorXd dots = x_.transpose() * query.weights;
  Eigen::VectorXd latent_dots;
  double lnorm = 0.0;
  if (latent) {
    latent_dots = code_proj_.transpose() * *latent;
    lnorm = latent->norm();
  }
  for (std::size_t d = 0; d < doc_ids_.size(); ++d) {
    const auto j = static_cast<Eigen::Index>(d);
    auto& r = out[d];
    r.doc_id = doc_ids_[d];
    r.text_text = cosine(dots[j], qnorm, x_norms_[j]);
    r.text_code = latent ? cosine(latent_dots[j], lnorm, code_norms_[j]) : 0.0;
    r.score = (1.0 - alpha_) * r.text_text + alpha_ * r.text_code;
  }
  return out;
}

std::vector<ScoredResult> RetrievalIndex::score_all(const QueryVector& query) const {
  if (!projection_) return score_with(query, nullptr);
  const Eigen::VectorXd latent = project_query(query);
  return score_with(query, &latent);
}

void sort_and_truncate(std::vector<ScoredResult>& results, std::size_t n) {
  std::sort(results.begin(), results.end(), [](const ScoredResult& a, const ScoredResult& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc_id < b.doc_id;
  });
  if (results.size() > n) results.resize(n);
}

std::vector<ScoredResult> RetrievalIndex::rank(const QueryVector& query, std::size_t n) const {
  if (n == 0) throw_usage("rank cutoff n must be >= 1");
  auto results = score_all(query);
  sort_and_truncate(results, n);
  return results;
}

std::vector<ScoredResult> RetrievalIndex::rank(const Query& query, std::size_t n) const {
  return rank(vectorize(query.tokens), n);
}

std::vector<std::pair<std::string, double>> top_words_for_feature(const std::string& feature_key,
                                                                  const Projection& projection,
                                                                  const Vocabulary& vocab,
                                                                  const FeatureIndex& features,
                                                                  std::size_t t) {
  const auto j = features.find(feature_key);
  if (!j) throw_usage("unknown code feature '" + feature_key + "'");
  const Eigen::VectorXd scores = projection.u * projection.v.row(static_cast<Eigen::Index>(*j)).transpose();

  std::vector<std::size_t> order(vocab.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t take = std::min(t, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(take), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      const double sa = scores[static_cast<Eigen::Index>(a)];
                      const double sb = scores[static_cast<Eigen::Index>(b)];
                      if (sa != sb) return sa > sb;
                      return vocab.at(a) < vocab.at(b);
                    });
  std::vector<std::pair<std::string, double>> out;
  out.reserve(take);
  for (std::size_t i = 0; i < take; ++i)
    out.emplace_back(vocab.at(order[i]), scores[static_cast<Eigen::Index>(order[i])]);
  return out;
}

}  // namespace coderet

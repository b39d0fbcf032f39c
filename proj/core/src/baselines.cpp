#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

#include "coderet/eval.hpp"

namespace coderet {

namespace {

std::vector<double> scores_of(const RetrievalIndex& index, const Query& query) {
  const auto results = index.score_all(index.vectorize(query.tokens));
  std::vector<double> out;
  out.reserve(results.size());
  for (const auto& r : results) out.push_back(r.score);
  return out;
}

double cosine(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

}  // namespace

CosRanker::CosRanker(const CorpusModel& corpus)
    : index_(corpus.doc_ids(), corpus.data, corpus.vocab, std::nullopt, 0.0) {}

std::vector<double> CosRanker::score(const Query& query) const { return scores_of(index_, query); }

LmRanker::LmRanker(const CorpusModel& corpus, double smoothing) : smoothing_(smoothing) {
  if (!(smoothing > 0.0 && smoothing < 1.0)) throw_usage("LM smoothing weight must lie in (0, 1)");
  for (const auto& d : corpus.documents) {
    auto& counts = doc_counts_.emplace_back();
    for (const auto& t : d.tokens) {
      ++counts[t];
      ++collection_counts_[t];
    }
    doc_lengths_.push_back(d.tokens.size());
    collection_length_ += d.tokens.size();
  }
}

std::vector<double> LmRanker::score(const Query& query) const {
  const double total = static_cast<double>(collection_length_);
  const double floor = 1.0 / (total + 1.0);
  std::vector<double> out(doc_counts_.size(), 0.0);
  for (const auto& t : query.tokens) {
    const auto cf = collection_counts_.find(t);
    const double background = cf == collection_counts_.end() ? floor : static_cast<double>(cf->second) / total;
    for (std::size_t j = 0; j < out.size(); ++j) {
      double ml = 0.0;
      if (doc_lengths_[j] > 0) {
        const auto tf = doc_counts_[j].find(t);
        if (tf != doc_counts_[j].end()) {
          ml = static_cast<double>(tf->second) / static_cast<double>(doc_lengths_[j]);
        }
      }
      out[j] += std::log((1.0 - smoothing_) * ml + smoothing_ * background);
    }
  }
  return out;
}

LsiRanker::LsiRanker(const CorpusModel& corpus, std::size_t k, Diagnostics* diagnostics) : corpus_(&corpus) {
  if (k == 0) throw_usage("LSI rank must be positive");
  const Matrix x = Matrix(corpus.data.x);
  Eigen::BDCSVD<Matrix> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double cutoff = sigma.size() ? sigma(0) * static_cast<double>(std::max(x.rows(), x.cols())) *
                                           std::numeric_limits<double>::epsilon()
                                     : 0.0;
  std::size_t rank = 0;
  while (rank < static_cast<std::size_t>(sigma.size()) && sigma(static_cast<Eigen::Index>(rank)) > cutoff) ++rank;
  std::size_t use = k;
  if (k > rank) {
    use = rank;
    if (diagnostics) {
      diagnostics->warn("LSI rank " + std::to_string(k) + " exceeds rank(X) = " + std::to_string(rank) +
                        "; using " + std::to_string(rank));
    }
  }
  const auto cols = static_cast<Eigen::Index>(use);
  basis_ = svd.matrixU().leftCols(cols);
  doc_latent_ = basis_.transpose() * x;
  double tail = 0.0;
  for (Eigen::Index i = cols; i < sigma.size(); ++i) tail += sigma(i) * sigma(i);
  residual_ = std::sqrt(tail);
}

std::vector<double> LsiRanker::score(const Query& query) const {
  const Eigen::VectorXd q =
      weigh_tokens(query.tokens, corpus_->vocab, corpus_->data.word_idf, corpus_->data.weighting);
  const Eigen::VectorXd latent = basis_.transpose() * q;
  std::vector<double> out(static_cast<std::size_t>(doc_latent_.cols()));
  for (Eigen::Index j = 0; j < doc_latent_.cols(); ++j) {
    out[static_cast<std::size_t>(j)] = cosine(latent, doc_latent_.col(j));
  }
  return out;
}

ProjectionRanker::ProjectionRanker(const CorpusModel& corpus, Projection projection, double alpha)
    : index_(corpus.doc_ids(), corpus.data, corpus.vocab, std::move(projection), alpha) {}

std::vector<double> ProjectionRanker::score(const Query& query) const { return scores_of(index_, query); }

Hyperparams clamp_rank(Hyperparams hyper, std::size_t dx, std::size_t dy, Diagnostics& diagnostics) {
  const std::size_t limit = std::min(dx, dy);
  if (hyper.k > limit) {
    diagnostics.warn("latent dimension k = " + std::to_string(hyper.k) + " exceeds min(d^x, d^y) = " +
                     std::to_string(limit) + "; using " + std::to_string(limit));
    hyper.k = limit;
  }
  return hyper;
}

namespace {

enum class Learner { cfa, cfa_cr, hmlcr };

MethodSpec learned_method(std::string name, Learner learner, Hyperparams hyper, double alpha) {
  return {std::move(name), [=](const CorpusModel& corpus, std::span<const std::size_t> docs, Diagnostics& diag) {
            if (docs.empty()) throw_runtime("no training documents for this fold");
            const auto data = make_training_data(corpus, docs);
            const auto h = clamp_rank(hyper, static_cast<std::size_t>(data.x.rows()),
                                      static_cast<std::size_t>(data.y.rows()), diag);
            Projection projection;
            if (learner == Learner::cfa) {
              auto init = cfa_init(data.x, data.y, h.k, h.seed);
              for (auto& w : init.warnings) diag.warn(std::move(w));
              projection = {std::move(init.u), std::move(init.v)};
            } else {
              auto model = learner == Learner::cfa_cr ? train_cfa_plus_cr(data, h) : train(data, h);
              for (auto& w : model.warnings) diag.warn(std::move(w));
              projection = {std::move(model.u), std::move(model.v)};
            }
            return std::make_unique<ProjectionRanker>(corpus, std::move(projection), alpha);
          }};
}

}  // namespace

MethodSpec cos_method() {
  return {"cos", [](const CorpusModel& corpus, std::span<const std::size_t>, Diagnostics&) {
            return std::make_unique<CosRanker>(corpus);
          }};
}

MethodSpec lm_method(double smoothing) {
  return {"lm", [=](const CorpusModel& corpus, std::span<const std::size_t>, Diagnostics&) {
            return std::make_unique<LmRanker>(corpus, smoothing);
          }};
}

MethodSpec lsi_method(std::size_t k) {
  return {"lsi", [=](const CorpusModel& corpus, std::span<const std::size_t>, Diagnostics& diag) {
            return std::make_unique<LsiRanker>(corpus, k, &diag);
          }};
}

MethodSpec cfa_method(Hyperparams hyper, double alpha) {
  return learned_method("cfa", Learner::cfa, hyper, alpha);
}
MethodSpec cfa_cr_method(Hyperparams hyper, double alpha) {
  return learned_method("cfa+cr", Learner::cfa_cr, hyper, alpha);
}
MethodSpec hmlcr_method(Hyperparams hyper, double alpha) {
  return learned_method("hmlcr", Learner::hmlcr, hyper, alpha);
}

MethodSpec method_by_name(const std::string& name, const Hyperparams& hyper, double alpha, std::size_t lsi_k,
                          double lm_smoothing) {
  if (name == "cos") return cos_method();
  if (name == "lm") return lm_method(lm_smoothing);
  if (name == "lsi") return lsi_method(lsi_k);
  if (name == "cfa") return cfa_method(hyper, alpha);
  if (name == "cfa+cr") return cfa_cr_method(hyper, alpha);
  if (name == "hmlcr") return hmlcr_method(hyper, alpha);
  throw_usage("unknown method '" + name + "' (expected cos, lm, lsi, cfa, cfa+cr or hmlcr)");
}

}  // namespace coderet

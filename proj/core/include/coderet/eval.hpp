#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "coderet/corpus.hpp"
#include "coderet/corpus_model.hpp"
#include "coderet/errors.hpp"
#include "coderet/hmlcr.hpp"
#include "coderet/retrieval.hpp"

namespace coderet {

using RelevantSet = std::set<std::string>;

// Rankings are lists of doc ids, best first. Positions past the end of the
// ranking count as non-relevant.
double precision_at_n(std::span<const std::string> ranking, const RelevantSet& relevant, std::size_t n);
/// Throws a usage error when `relevant` is empty.
double recall_at_n(std::span<const std::string> ranking, const RelevantSet& relevant, std::size_t n);
/// rel_1 + sum_{i=2..p} rel_i / log2(i).
double dcg_at_p(std::span<const double> gains, std::size_t p);
/// 0 when the ideal DCG is 0.
double ndcg_at_p(std::span<const std::string> ranking, const RelevantSet& relevant, std::size_t p);

/// Documents sharing the query's label.
RelevantSet relevant_documents(const Query& query, const CorpusModel& corpus);

class Ranker {
 public:
  virtual ~Ranker() = default;
  /// One score per corpus document, higher is better.
  virtual std::vector<double> score(const Query& query) const = 0;
};

/// Every document id ordered by descending score, ties by ascending id.
std::vector<std::string> rank_documents(const Ranker& ranker, const Query& query,
                                        std::span<const std::string> doc_ids);

class CosRanker : public Ranker {
 public:
  explicit CosRanker(const CorpusModel& corpus);
  std::vector<double> score(const Query& query) const override;

 private:
  RetrievalIndex index_;
};

/// Query likelihood with Jelinek-Mercer smoothing:
///   log P(q|d) = sum_t log((1 - lambda) tf(t,d)/|d| + lambda P(t|C)).
/// Words unseen in the corpus take P(t|C) = 1 / (|C| + 1).
class LmRanker : public Ranker {
 public:
  LmRanker(const CorpusModel& corpus, double smoothing = 0.5);
  std::vector<double> score(const Query& query) const override;

 private:
  std::vector<std::map<std::string, std::size_t>> doc_counts_;
  std::vector<std::size_t> doc_lengths_;
  std::map<std::string, std::size_t> collection_counts_;
  std::size_t collection_length_ = 0;
  double smoothing_;
};

/// Rank-k truncated SVD of X. Queries are folded in as U_k^T q and compared
/// to U_k^T x_j by cosine.
class LsiRanker : public Ranker {
 public:
  LsiRanker(const CorpusModel& corpus, std::size_t k, Diagnostics* diagnostics = nullptr);
  std::vector<double> score(const Query& query) const override;

  std::size_t rank() const noexcept { return static_cast<std::size_t>(basis_.cols()); }
  /// ||X - X_k||_F.
  double residual() const noexcept { return residual_; }

 private:
  const CorpusModel* corpus_;
  Matrix basis_;
  Matrix doc_latent_;
  double residual_ = 0.0;
};

/// Ensemble ranking with a learned projection.
class ProjectionRanker : public Ranker {
 public:
  ProjectionRanker(const CorpusModel& corpus, Projection projection, double alpha);
  std::vector<double> score(const Query& query) const override;
  const RetrievalIndex& index() const noexcept { return index_; }

 private:
  RetrievalIndex index_;
};

/// Builds a ranker for a fold given the documents it may learn from.
struct MethodSpec {
  std::string name;
  std::function<std::unique_ptr<Ranker>(const CorpusModel&, std::span<const std::size_t> training_docs,
                                        Diagnostics&)>
      build;
};

MethodSpec cos_method();
MethodSpec lm_method(double smoothing = 0.5);
MethodSpec lsi_method(std::size_t k);
MethodSpec cfa_method(Hyperparams hyper, double alpha);
MethodSpec cfa_cr_method(Hyperparams hyper, double alpha);
MethodSpec hmlcr_method(Hyperparams hyper, double alpha);
/// Resolves "cos", "lm", "lsi", "cfa", "cfa+cr", "hmlcr".
MethodSpec method_by_name(const std::string& name, const Hyperparams& hyper, double alpha,
                          std::size_t lsi_k, double lm_smoothing);

/// Clamps k to the feature dimensions, warning when it changes.
Hyperparams clamp_rank(Hyperparams hyper, std::size_t dx, std::size_t dy, Diagnostics& diagnostics);

struct Cutoffs {
  std::vector<std::size_t> precision{1, 2, 4, 5};
  std::vector<std::size_t> recall{1, 3, 5, 20};
  std::vector<std::size_t> ndcg{2, 4, 10, 20};
};

enum class FoldOrientation {
  /// Each fold in turn trains; the other folds are tested.
  train_on_one,
  /// Each fold in turn is tested; the other folds train.
  test_on_one,
};

struct CrossValidationOptions {
  std::size_t folds = 5;
  std::uint64_t seed = 0;
  FoldOrientation orientation = FoldOrientation::train_on_one;
  Cutoffs cutoffs;
};

/// Fold of each query (same order as `query_ids`). Ids are sorted, shuffled
/// with a seeded Fisher-Yates pass, then dealt round-robin.
std::vector<std::size_t> assign_folds(std::span<const std::string> query_ids, std::size_t folds,
                                      std::uint64_t seed);

struct MetricRow {
  std::string method;
  std::string metric;  // "P", "R" or "nDCG"
  std::size_t cutoff = 0;
  std::size_t fold = 0;
  std::optional<double> value;  // empty when the method failed on the fold
};

struct MetricReport {
  std::vector<MetricRow> rows;
  std::vector<std::size_t> query_folds;
  /// Queries with no relevant document in the corpus.
  std::vector<std::string> excluded_queries;
  std::vector<std::string> warnings;

  /// Mean of the per-fold values that did not fail.
  std::optional<double> mean(const std::string& method, const std::string& metric, std::size_t cutoff) const;
  std::string to_tsv() const;
  std::string summary_tsv() const;
};

MetricReport cross_validate(std::span<const Query> queries, const CorpusModel& corpus,
                            std::span<const MethodSpec> methods, const CrossValidationOptions& options = {});

}  // namespace coderet

#include "coderet/eval.hpp"

#include <algorithm>
#include <cmath>

namespace coderet {

namespace {

std::size_t hits_at(std::span<const std::string> ranking, const RelevantSet& relevant, std::size_t n) {
  std::size_t hits = 0;
  for (std::size_t i = 0; i < std::min(n, ranking.size()); ++i) hits += relevant.count(ranking[i]);
  return hits;
}

}  // namespace

double precision_at_n(std::span<const std::string> ranking, const RelevantSet& relevant, std::size_t n) {
  if (n == 0) throw_usage("precision cutoff must be positive");
  return static_cast<double>(hits_at(ranking, relevant, n)) / static_cast<double>(n);
}

double recall_at_n(std::span<const std::string> ranking, const RelevantSet& relevant, std::size_t n) {
  if (n == 0) throw_usage("recall cutoff must be positive");
  if (relevant.empty()) throw_usage("recall is undefined for a query with no relevant documents");
  return static_cast<double>(hits_at(ranking, relevant, n)) / static_cast<double>(relevant.size());
}

double dcg_at_p(std::span<const double> gains, std::size_t p) {
  double dcg = 0.0;
  for (std::size_t i = 0; i < std::min(p, gains.size()); ++i) {
    dcg += i == 0 ? gains[i] : gains[i] / std::log2(static_cast<double>(i + 1));
  }
  return dcg;
}

double ndcg_at_p(std::span<const std::string> ranking, const RelevantSet& relevant, std::size_t p) {
  if (p == 0) throw_usage("nDCG cutoff must be positive");
  std::vector<double> gains;
  gains.reserve(std::min(p, ranking.size()));
  for (std::size_t i = 0; i < std::min(p, ranking.size()); ++i) {
    gains.push_back(relevant.count(ranking[i]) ? 1.0 : 0.0);
  }
  const std::vector<double> ideal(std::min(p, relevant.size()), 1.0);
  const double idcg = dcg_at_p(ideal, p);
  if (idcg == 0.0) return 0.0;
  return dcg_at_p(gains, p) / idcg;
}

RelevantSet relevant_documents(const Query& query, const CorpusModel& corpus) {
  RelevantSet out;
  if (!query.label) return out;
  for (const auto& d : corpus.documents) {
    if (d.label == *query.label) out.insert(d.id);
  }
  return out;
}

std::vector<std::string> rank_documents(const Ranker& ranker, const Query& query,
                                        std::span<const std::string> doc_ids) {
  const auto scores = ranker.score(query);
  std::vector<std::size_t> order(doc_ids.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return doc_ids[a] < doc_ids[b];
  });
  std::vector<std::string> out;
  out.reserve(order.size());
  for (const auto i : order) out.push_back(doc_ids[i]);
  return out;
}

}  // namespace coderet

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "coderet/eval.hpp"

namespace coderet {

std::vector<std::size_t> assign_folds(std::span<const std::string> query_ids, std::size_t folds,
                                      std::uint64_t seed) {
  if (folds == 0) throw_usage("fold count must be positive");
  std::vector<std::size_t> order(query_ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return query_ids[a] < query_ids[b]; });
  std::mt19937_64 rng(seed);
  for (std::size_t i = order.size(); i-- > 1;) {
    const auto j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(order[i], order[j]);
  }
  std::vector<std::size_t> fold_of(query_ids.size());
  for (std::size_t pos = 0; pos < order.size(); ++pos) fold_of[order[pos]] = pos % folds;
  return fold_of;
}

namespace {

std::string format_value(const std::optional<double>& v) {
  if (!v) return "failed";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", *v);
  return buf;
}

struct MetricSlot {
  std::string metric;
  std::size_t cutoff;
};

std::vector<MetricSlot> slots_of(const Cutoffs& cutoffs) {
  std::vector<MetricSlot> out;
  for (auto n : cutoffs.precision) out.push_back({"P", n});
  for (auto n : cutoffs.recall) out.push_back({"R", n});
  for (auto n : cutoffs.ndcg) out.push_back({"nDCG", n});
  return out;
}

double evaluate(const MetricSlot& slot, std::span<const std::string> ranking, const RelevantSet& relevant) {
  if (slot.metric == "P") return precision_at_n(ranking, relevant, slot.cutoff);
  if (slot.metric == "R") return recall_at_n(ranking, relevant, slot.cutoff);
  return ndcg_at_p(ranking, relevant, slot.cutoff);
}

}  // namespace

std::optional<double> MetricReport::mean(const std::string& method, const std::string& metric,
                                         std::size_t cutoff) const {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& row : rows) {
    if (row.method == method && row.metric == metric && row.cutoff == cutoff && row.value) {
      sum += *row.value;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

std::string MetricReport::to_tsv() const {
  std::ostringstream out;
  out << "method\tmetric\tcutoff\tfold\tvalue\n";
  for (const auto& row : rows) {
    out << row.method << '\t' << row.metric << '\t' << row.cutoff << '\t' << row.fold << '\t'
        << format_value(row.value) << '\n';
  }
  return out.str();
}

std::string MetricReport::summary_tsv() const {
  std::ostringstream out;
  out << "method\tmetric\tcutoff\tmean\n";
  std::set<std::tuple<std::string, std::string, std::size_t>> seen;
  for (const auto& row : rows) {
    if (!seen.emplace(row.method, row.metric, row.cutoff).second) continue;
    out << row.method << '\t' << row.metric << '\t' << row.cutoff << '\t'
        << format_value(mean(row.method, row.metric, row.cutoff)) << '\n';
  }
  return out.str();
}

MetricReport cross_validate(std::span<const Query> queries, const CorpusModel& corpus,
                            std::span<const MethodSpec> methods, const CrossValidationOptions& options) {
  if (options.folds < 2) throw_usage("cross-validation needs at least 2 folds");
  std::vector<std::string> ids;
  for (const auto& q : queries) {
    if (!q.label) throw_usage("evaluation requires labeled queries (query '" + q.id + "' has no label)");
    ids.push_back(q.id);
  }
  if (queries.size() < options.folds) {
    throw_usage("cross-validation needs at least " + std::to_string(options.folds) + " labeled queries, got " +
                std::to_string(queries.size()));
  }

  MetricReport report;
  report.query_folds = assign_folds(ids, options.folds, options.seed);

  std::vector<RelevantSet> relevant;
  for (const auto& q : queries) {
    relevant.push_back(relevant_documents(q, corpus));
    if (relevant.back().empty()) {
      report.excluded_queries.push_back(q.id);
      report.warnings.push_back("query '" + q.id + "' has no relevant document and is excluded");
    }
  }

  const auto doc_ids = corpus.doc_ids();
  const auto slots = slots_of(options.cutoffs);

  for (std::size_t fold = 0; fold < options.folds; ++fold) {
    std::vector<std::size_t> test;
    std::set<std::string> training_labels;
    for (std::size_t i = 0; i < queries.size(); ++i) {
      const bool in_fold = report.query_folds[i] == fold;
      const bool trains = options.orientation == FoldOrientation::train_on_one ? in_fold : !in_fold;
      if (trains) {
        training_labels.insert(*queries[i].label);
      } else if (!relevant[i].empty()) {
        test.push_back(i);
      }
    }
    std::vector<std::size_t> training_docs;
    for (std::size_t d = 0; d < corpus.documents.size(); ++d) {
      if (training_labels.count(corpus.documents[d].label)) training_docs.push_back(d);
    }

    for (const auto& method : methods) {
      std::vector<std::optional<double>> values(slots.size());
      Diagnostics diag;
      try {
        if (test.empty()) throw_runtime("no evaluable test queries");
        const auto ranker = method.build(corpus, training_docs, diag);
        std::vector<double> sums(slots.size(), 0.0);
        for (const auto qi : test) {
          const auto ranking = rank_documents(*ranker, queries[qi], doc_ids);
          for (std::size_t s = 0; s < slots.size(); ++s) sums[s] += evaluate(slots[s], ranking, relevant[qi]);
        }
        for (std::size_t s = 0; s < slots.size(); ++s) values[s] = sums[s] / static_cast<double>(test.size());
      } catch (const Error& e) {
        report.warnings.push_back(method.name + " failed on fold " + std::to_string(fold) + ": " + e.what());
      }
      for (auto& w : diag.warnings) {
        report.warnings.push_back(method.name + " fold " + std::to_string(fold) + ": " + w);
      }
      for (std::size_t s = 0; s < slots.size(); ++s) {
        report.rows.push_back({method.name, slots[s].metric, slots[s].cutoff, fold, values[s]});
      }
    }
  }
  return report;
}

}  // namespace coderet

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "coderet/config.hpp"
#include "coderet/corpus_model.hpp"
#include "coderet/errors.hpp"
#include "coderet/eval.hpp"
#include "coderet/persistence.hpp"

namespace coderet {

// On-disk layout under the output directory:
//   index/manifest.txt        format, fingerprint, weighting, dimensions
//   index/documents.tsv       index, doc id, label
//   index/vocabulary.tsv      index, word, idf
//   index/features.tsv        index, kind, key, document frequency, idf
//   index/X.mat, index/Y.mat  dense matrix text format
//   index/R.tsv               sparsity dump of R
//   index/ingestion_report.tsv
//   model/model.txt, model/loss_trace.tsv
//   eval/report.tsv, eval/summary.tsv, eval/warnings.txt

struct IndexArtifacts {
  std::string fingerprint;
  Weighting weighting = Weighting::tfidf;
  std::vector<std::string> doc_ids;
  std::vector<std::string> labels;
  Vocabulary vocab;
  FeatureIndex features;
  DataMatrices data;
  SparseMatrix content;
};

std::filesystem::path index_dir(const PipelineConfig& config);
std::filesystem::path model_path(const PipelineConfig& config);

/// Ingests the configured corpus; returns it with its fingerprint.
struct LoadedCorpus {
  CorpusModel model;
  IngestionReport report;
  std::string fingerprint;
};
LoadedCorpus load_corpus(const PipelineConfig& config);

IndexArtifacts load_index(const std::filesystem::path& dir);

struct IndexSummary {
  std::size_t documents = 0;
  std::size_t words = 0;
  std::size_t features = 0;
  std::size_t skipped = 0;
};

IndexSummary cmd_index(const PipelineConfig& config, Diagnostics& diagnostics);
Model cmd_train(const PipelineConfig& config, Diagnostics& diagnostics);

enum class QueryMethod { hmlcr, cos };

/// `rank<TAB>doc_id<TAB>score<TAB>text_text<TAB>text_code` records.
std::string format_results(std::span<const ScoredResult> results);
std::string cmd_query(const PipelineConfig& config, const std::string& text, std::size_t n, QueryMethod method,
                      Diagnostics& diagnostics);

MetricReport cmd_eval(const PipelineConfig& config, Diagnostics& diagnostics);

/// `word<TAB>score` for the top t words, or `word<TAB>score<TAB>cfa_word<TAB>cfa_score`
/// when comparing against the CFA projection.
std::string cmd_explain(const PipelineConfig& config, const std::string& feature_key, std::size_t t,
                        bool compare_cfa, Diagnostics& diagnostics);

std::size_t edit_distance(std::string_view a, std::string_view b);
/// The `count` keys closest to `key` by edit distance, ties by key.
std::vector<std::string> nearest_keys(const std::string& key, const std::vector<std::string>& keys,
                                      std::size_t count = 3);

}  // namespace coderet

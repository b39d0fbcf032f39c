#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "coderet/eval.hpp"
#include "coderet/hmlcr.hpp"
#include "coderet/vectorize.hpp"

namespace coderet {

/// Settings shared by every subcommand. JSON layout:
///   { "corpus", "language", "labels", "queries", "output", "seed",
///     "weighting", "alpha",
///     "features":    { "lower", "upper", "relationship_lower", "relationship_upper" },
///     "hyperparams": { "lambda1", "lambda2", "lambda3", "k", "eta", "eta_search",
///                      "max_iter", "tol", "backtracking" },
///     "eval":        { "methods", "folds", "orientation", "lsi_k", "lm_smoothing",
///                      "precision", "recall", "ndcg" } }
/// Every key is optional; unknown keys are rejected.
struct PipelineConfig {
  std::filesystem::path corpus;
  std::string language = "java";
  /// `path<TAB>label` manifest; without one every file is its own label.
  std::optional<std::filesystem::path> labels;
  std::optional<std::filesystem::path> queries;
  std::filesystem::path output = "coderet-out";
  std::uint64_t seed = 0;
  Weighting weighting = Weighting::tfidf;
  double alpha = 0.5;

  std::size_t feature_lower = 2;
  std::optional<std::size_t> feature_upper;
  std::optional<std::size_t> relationship_lower;
  std::optional<std::size_t> relationship_upper;

  Hyperparams hyper;
  /// Replace eta by the sufficient-decrease search before training.
  bool eta_search = false;

  std::vector<std::string> methods{"cos", "lm", "lsi", "cfa", "cfa+cr", "hmlcr"};
  std::size_t folds = 5;
  FoldOrientation orientation = FoldOrientation::train_on_one;
  std::size_t lsi_k = 64;
  double lm_smoothing = 0.5;
  Cutoffs cutoffs;

  void validate() const;
  /// The frequency bounds for a corpus of the given size.
  FeatureOptions feature_options(std::size_t corpus_size) const;
};

/// Environment variable naming the config file when --config is absent.
inline constexpr const char* kConfigEnvironmentVariable = "CODERET_CONFIG";

PipelineConfig parse_config(const std::string& json_text);
PipelineConfig load_config_file(const std::filesystem::path& path);
/// `explicit_path`, else $CODERET_CONFIG, else defaults.
PipelineConfig resolve_config(const std::optional<std::filesystem::path>& explicit_path);

std::string_view to_string(FoldOrientation orientation);
FoldOrientation parse_fold_orientation(std::string_view text);

}  // namespace coderet

#include "coderet/config.hpp"

#include <cstdlib>
#include <set>

#include "coderet/errors.hpp"
#include "coderet/persistence.hpp"
#include "json.hpp"

namespace coderet {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& known, const std::string& where) {
  if (!j.is_object()) throw_usage("config: '" + where + "' must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw_usage("config: unknown key '" + where + key + "'");
  }
}

template <typename T>
void read(const json& j, const char* key, T& out, const std::string& where = "") {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw_usage("config: bad value for '" + where + key + "'");
  }
}

template <typename T>
void read(const json& j, const char* key, std::optional<T>& out, const std::string& where = "") {
  if (!j.contains(key) || j.at(key).is_null()) return;
  T value{};
  read(j, key, value, where);
  out = value;
}

void read_path(const json& j, const char* key, std::filesystem::path& out) {
  std::string text;
  if (!j.contains(key)) return;
  read(j, key, text);
  out = text;
}

void read_path(const json& j, const char* key, std::optional<std::filesystem::path>& out) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  std::filesystem::path p;
  read_path(j, key, p);
  out = p;
}

}  // namespace

std::string_view to_string(FoldOrientation orientation) {
  return orientation == FoldOrientation::train_on_one ? "train-on-one" : "test-on-one";
}

FoldOrientation parse_fold_orientation(std::string_view text) {
  if (text == "train-on-one") return FoldOrientation::train_on_one;
  if (text == "test-on-one") return FoldOrientation::test_on_one;
  throw_usage("unknown fold orientation '" + std::string(text) + "' (expected train-on-one or test-on-one)");
}

void PipelineConfig::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw_usage("config: alpha must lie in [0, 1]");
  if (feature_lower < 1) throw_usage("config: features.lower must be at least 1");
  if (feature_upper && *feature_upper < feature_lower) throw_usage("config: features.upper is below features.lower");
  if (relationship_upper && *relationship_upper < relationship_lower.value_or(feature_lower))
    throw_usage("config: features.relationship_upper is below the lower bound");
  if (hyper.lambda1 < 0 || hyper.lambda2 < 0 || hyper.lambda3 < 0) throw_usage("config: lambdas must be non-negative");
  if (hyper.k == 0) throw_usage("config: k must be positive");
  if (!(hyper.eta > 0)) throw_usage("config: eta must be positive");
  if (!(hyper.tol >= 0)) throw_usage("config: tol must be non-negative");
  if (folds < 2) throw_usage("config: eval.folds must be at least 2");
  if (lsi_k == 0) throw_usage("config: eval.lsi_k must be positive");
  if (!(lm_smoothing > 0 && lm_smoothing < 1)) throw_usage("config: eval.lm_smoothing must lie in (0, 1)");
  if (methods.empty()) throw_usage("config: eval.methods is empty");
  for (const auto& m : methods) method_by_name(m, hyper, alpha, lsi_k, lm_smoothing);
  for (const auto* list : {&cutoffs.precision, &cutoffs.recall, &cutoffs.ndcg}) {
    for (auto n : *list) {
      if (n == 0) throw_usage("config: metric cutoffs must be positive");
    }
  }
}

FeatureOptions PipelineConfig::feature_options(std::size_t corpus_size) const {
  FeatureOptions options;
  options.weighting = weighting;
  FrequencyBounds bounds = FrequencyBounds::defaults_for(corpus_size);
  bounds.lower = feature_lower;
  if (feature_upper) bounds.upper = feature_upper;
  if (bounds.upper && *bounds.upper < bounds.lower) bounds.upper = bounds.lower;
  options.bounds = bounds;
  if (relationship_lower || relationship_upper) {
    FrequencyBounds rel = bounds;
    if (relationship_lower) rel.lower = *relationship_lower;
    if (relationship_upper) rel.upper = relationship_upper;
    options.relationship_bounds = rel;
  }
  return options;
}

PipelineConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw_usage(std::string("config: invalid JSON: ") + e.what());
  }
  reject_unknown(j, {"corpus", "language", "labels", "queries", "output", "seed", "weighting", "alpha", "features",
                     "hyperparams", "eval"},
                 "");
  PipelineConfig c;
  read_path(j, "corpus", c.corpus);
  read(j, "language", c.language);
  read_path(j, "labels", c.labels);
  read_path(j, "queries", c.queries);
  read_path(j, "output", c.output);
  read(j, "seed", c.seed);
  c.hyper.seed = c.seed;
  if (j.contains("weighting")) {
    std::string w;
    read(j, "weighting", w);
    c.weighting = parse_weighting(w);
  }
  read(j, "alpha", c.alpha);

  if (j.contains("features")) {
    const auto& f = j.at("features");
    reject_unknown(f, {"lower", "upper", "relationship_lower", "relationship_upper"}, "features.");
    read(f, "lower", c.feature_lower, "features.");
    read(f, "upper", c.feature_upper, "features.");
    read(f, "relationship_lower", c.relationship_lower, "features.");
    read(f, "relationship_upper", c.relationship_upper, "features.");
  }
  if (j.contains("hyperparams")) {
    const auto& h = j.at("hyperparams");
    reject_unknown(h, {"lambda1", "lambda2", "lambda3", "k", "eta", "eta_search", "max_iter", "tol", "backtracking"},
                   "hyperparams.");
    read(h, "lambda1", c.hyper.lambda1, "hyperparams.");
    read(h, "lambda2", c.hyper.lambda2, "hyperparams.");
    read(h, "lambda3", c.hyper.lambda3, "hyperparams.");
    read(h, "k", c.hyper.k, "hyperparams.");
    read(h, "eta", c.hyper.eta, "hyperparams.");
    read(h, "eta_search", c.eta_search, "hyperparams.");
    read(h, "max_iter", c.hyper.max_iter, "hyperparams.");
    read(h, "tol", c.hyper.tol, "hyperparams.");
    read(h, "backtracking", c.hyper.backtracking, "hyperparams.");
  }
  if (j.contains("eval")) {
    const auto& e = j.at("eval");
    reject_unknown(e, {"methods", "folds", "orientation", "lsi_k", "lm_smoothing", "precision", "recall", "ndcg"},
                   "eval.");
    read(e, "methods", c.methods, "eval.");
    read(e, "folds", c.folds, "eval.");
    if (e.contains("orientation")) {
      std::string o;
      read(e, "orientation", o, "eval.");
      c.orientation = parse_fold_orientation(o);
    }
    read(e, "lsi_k", c.lsi_k, "eval.");
    read(e, "lm_smoothing", c.lm_smoothing, "eval.");
    read(e, "precision", c.cutoffs.precision, "eval.");
    read(e, "recall", c.cutoffs.recall, "eval.");
    read(e, "ndcg", c.cutoffs.ndcg, "eval.");
  }
  c.validate();
  return c;
}

PipelineConfig load_config_file(const std::filesystem::path& path) {
  try {
    return parse_config(read_text_file(path));
  } catch (const Error& e) {
    throw_usage(path.string() + ": " + e.what());
  }
}

PipelineConfig resolve_config(const std::optional<std::filesystem::path>& explicit_path) {
  if (explicit_path) return load_config_file(*explicit_path);
  if (const char* env = std::getenv(kConfigEnvironmentVariable); env && *env) return load_config_file(env);
  return PipelineConfig{};
}

}  // namespace coderet

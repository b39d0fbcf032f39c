// coderet: index a code corpus, learn the text/code projections, and query,
// evaluate or inspect the result. Exit codes: 0 ok, 1 runtime failure,
// 2 usage or configuration error.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "coderet/pipeline.hpp"

namespace {

// Flags that override the config file. Empty optionals mean "not given".
struct Overrides {
  std::optional<std::string> config;
  std::optional<std::string> corpus, language, labels, queries, output, weighting, orientation;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha, lambda1, lambda2, lambda3, eta, tol;
  std::optional<std::size_t> k, max_iter, feature_lower, feature_upper, folds, lsi_k;
  std::optional<std::vector<std::string>> methods;
  bool eta_search = false;
  bool backtracking = false;
};

coderet::PipelineConfig build_config(const Overrides& o) {
  auto c = coderet::resolve_config(o.config ? std::optional<std::filesystem::path>(*o.config) : std::nullopt);
  if (o.corpus) c.corpus = *o.corpus;
  if (o.language) c.language = *o.language;
  if (o.labels) c.labels = std::filesystem::path(*o.labels);
  if (o.queries) c.queries = std::filesystem::path(*o.queries);
  if (o.output) c.output = *o.output;
  if (o.weighting) c.weighting = coderet::parse_weighting(*o.weighting);
  if (o.orientation) c.orientation = coderet::parse_fold_orientation(*o.orientation);
  if (o.seed) c.seed = *o.seed;
  c.hyper.seed = c.seed;
  if (o.alpha) c.alpha = *o.alpha;
  if (o.lambda1) c.hyper.lambda1 = *o.lambda1;
  if (o.lambda2) c.hyper.lambda2 = *o.lambda2;
  if (o.lambda3) c.hyper.lambda3 = *o.lambda3;
  if (o.eta) c.hyper.eta = *o.eta;
  if (o.tol) c.hyper.tol = *o.tol;
  if (o.k) c.hyper.k = *o.k;
  if (o.max_iter) c.hyper.max_iter = *o.max_iter;
  if (o.feature_lower) c.feature_lower = *o.feature_lower;
  if (o.feature_upper) c.feature_upper = *o.feature_upper;
  if (o.folds) c.folds = *o.folds;
  if (o.lsi_k) c.lsi_k = *o.lsi_k;
  if (o.methods) c.methods = *o.methods;
  if (o.eta_search) c.eta_search = true;
  if (o.backtracking) c.hyper.backtracking = true;
  c.validate();
  return c;
}

void print_warnings(const coderet::Diagnostics& diag) {
  for (const auto& w : diag.warnings) std::cerr << "coderet: warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Code retrieval with learned text/code projections"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config, "JSON config file (default: $CODERET_CONFIG)");
  app.add_option("--corpus", o.corpus, "Corpus root directory");
  app.add_option("--language", o.language, "Language profile name (java, c, cpp) or JSON file");
  app.add_option("--labels", o.labels, "path<TAB>label manifest");
  app.add_option("--queries", o.queries, "id<TAB>label<TAB>text query file");
  app.add_option("--output", o.output, "Output directory");
  app.add_option("--seed", o.seed, "Random seed");
  app.add_option("--weighting", o.weighting, "tfidf or count");
  app.add_option("--alpha", o.alpha, "Ensemble weight of the text-code score");
  app.add_option("--lambda1", o.lambda1, "Pull loss weight");
  app.add_option("--lambda2", o.lambda2, "Graph regularizer weight");
  app.add_option("--lambda3", o.lambda3, "Content regularizer weight");
  app.add_option("--k", o.k, "Latent dimension");
  app.add_option("--eta", o.eta, "Learning rate");
  app.add_flag("--eta-search", o.eta_search, "Pick eta by the sufficient-decrease search");
  app.add_flag("--backtracking", o.backtracking, "Halve eta whenever an iteration increases the loss");
  app.add_option("--max-iter", o.max_iter, "Iteration cap");
  app.add_option("--tol", o.tol, "Relative convergence tolerance");
  app.add_option("--feature-lower", o.feature_lower, "Minimum feature document frequency");
  app.add_option("--feature-upper", o.feature_upper, "Maximum feature document frequency");
  app.add_option("--methods", o.methods, "Methods to evaluate");
  app.add_option("--folds", o.folds, "Cross-validation folds");
  app.add_option("--orientation", o.orientation, "train-on-one or test-on-one");
  app.add_option("--lsi-k", o.lsi_k, "LSI rank");

  auto* index = app.add_subcommand("index", "Build the index artifacts");
  auto* train = app.add_subcommand("train", "Train the model on the index");

  auto* query = app.add_subcommand("query", "Rank documents for a query");
  std::string query_text;
  std::size_t top_n = 10;
  std::string query_method = "hmlcr";
  query->add_option("text", query_text, "Query text")->required();
  query->add_option("-n,--top", top_n, "Number of results");
  query->add_option("--method", query_method, "hmlcr or cos")->check(CLI::IsMember({"hmlcr", "cos"}));

  auto* eval = app.add_subcommand("eval", "Cross-validate the configured methods");

  auto* explain = app.add_subcommand("explain", "Top words of a code feature");
  std::string feature_key;
  std::size_t top_t = 10;
  bool compare_cfa = false;
  explain->add_option("feature", feature_key, "Feature key, e.g. refs:java.io.ioexception")->required();
  explain->add_option("-t,--top", top_t, "Number of words");
  explain->add_flag("--compare-cfa", compare_cfa, "Show the CFA projection's words alongside");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "coderet: error: " << e.what() << '\n';
    return 2;
  }

  coderet::Diagnostics diag;
  try {
    const auto config = build_config(o);
    if (index->parsed()) {
      const auto s = coderet::cmd_index(config, diag);
      std::cerr << "indexed " << s.documents << " documents, " << s.words << " words, " << s.features
                << " code features (" << s.skipped << " files skipped)\n";
    } else if (train->parsed()) {
      const auto model = coderet::cmd_train(config, diag);
      const double final_total = model.trace.empty() ? model.initial.total : model.trace.back().total;
      std::cerr << "trained " << model.trace.size() << " iterations, loss " << model.initial.total << " -> "
                << final_total << '\n';
    } else if (query->parsed()) {
      const auto method = query_method == "cos" ? coderet::QueryMethod::cos : coderet::QueryMethod::hmlcr;
      std::cout << coderet::cmd_query(config, query_text, top_n, method, diag);
    } else if (eval->parsed()) {
      const auto report = coderet::cmd_eval(config, diag);
      std::cout << report.summary_tsv();
    } else if (explain->parsed()) {
      std::cout << coderet::cmd_explain(config, feature_key, top_t, compare_cfa, diag);
    }
  } catch (const coderet::Error& e) {
    print_warnings(diag);
    std::cerr << "coderet: error: " << e.what() << '\n';
    return e.kind() == coderet::ErrorKind::usage ? 2 : 1;
  } catch (const std::exception& e) {
    print_warnings(diag);
    std::cerr << "coderet: error: " << e.what() << '\n';
    return 1;
  }
  print_warnings(diag);
  return 0;
}

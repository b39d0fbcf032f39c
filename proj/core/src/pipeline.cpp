#include "coderet/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numeric>
#include <sstream>

#include "coderet/language_profile.hpp"

namespace coderet {

namespace fs = std::filesystem;

namespace {

constexpr const char* kIndexMagic = "coderet-index 1";

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fixed6(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto tab = line.find('\t', start);
    out.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

/// Data lines of a TSV file with a header row; each must have `fields` columns.
std::vector<std::vector<std::string>> read_table(const fs::path& path, std::size_t fields) {
  std::istringstream in(read_text_file(path));
  std::string line;
  std::getline(in, line);
  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    auto row = split_tabs(line);
    if (row.size() != fields) throw_usage(path.string() + ": malformed row '" + line + "'");
    rows.push_back(std::move(row));
  }
  return rows;
}

double parse_double(const std::string& text, const fs::path& where) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw_usage(where.string() + ": bad number '" + text + "'");
}

std::string current_fingerprint(const PipelineConfig& config) {
  if (config.corpus.empty()) throw_usage("no corpus root configured (use --corpus)");
  if (!fs::is_directory(config.corpus)) throw_usage("corpus root '" + config.corpus.string() + "' does not exist");
  const auto profile = resolve_language_profile(config.language);
  return corpus_fingerprint(config.corpus, list_source_files(config.corpus, profile));
}

ModelFile load_matching_model(const PipelineConfig& config, const IndexArtifacts& index) {
  auto model = read_model_file(model_path(config));
  if (model.fingerprint != index.fingerprint) {
    throw_usage("model was trained on a different corpus than the index (fingerprint " +
                model.fingerprint.substr(0, 12) + " vs " + index.fingerprint.substr(0, 12) + ")");
  }
  if (!(model.vocab == index.vocab) || !(model.features == index.features)) {
    throw_usage("model vocabulary or feature index does not match the index; retrain the model");
  }
  return model;
}

}  // namespace

fs::path index_dir(const PipelineConfig& config) { return config.output / "index"; }
fs::path model_path(const PipelineConfig& config) { return config.output / "model" / "model.txt"; }

LoadedCorpus load_corpus(const PipelineConfig& config) {
  if (config.corpus.empty()) throw_usage("no corpus root configured (use --corpus)");
  const auto profile = resolve_language_profile(config.language);
  const auto rule = config.labels ? load_label_manifest(*config.labels) : LabelRule::per_file();
  auto ingested = ingest_corpus(config.corpus, profile, rule);
  LoadedCorpus out;
  out.fingerprint = corpus_fingerprint(config.corpus, list_source_files(config.corpus, profile));
  const auto size = ingested.documents.size();
  out.model = build_corpus_model(std::move(ingested.documents), profile, config.feature_options(size));
  out.report = std::move(ingested.report);
  return out;
}

IndexSummary cmd_index(const PipelineConfig& config, Diagnostics& diagnostics) {
  config.validate();
  auto loaded = load_corpus(config);
  const auto& model = loaded.model;
  const auto dir = index_dir(config);

  std::ostringstream manifest;
  manifest << kIndexMagic << '\n'
           << "fingerprint " << loaded.fingerprint << '\n'
           << "weighting " << to_string(model.data.weighting) << '\n'
           << "documents " << model.documents.size() << '\n'
           << "words " << model.vocab.size() << '\n'
           << "features " << model.feature_index.size() << '\n';
  write_text_file(dir / "manifest.txt", manifest.str());

  std::ostringstream docs;
  docs << "index\tdoc_id\tlabel\n";
  for (std::size_t i = 0; i < model.documents.size(); ++i) {
    docs << i << '\t' << model.documents[i].id << '\t' << model.documents[i].label << '\n';
  }
  write_text_file(dir / "documents.tsv", docs.str());

  std::ostringstream vocab;
  vocab << "index\tword\tidf\n";
  for (std::size_t i = 0; i < model.vocab.size(); ++i) {
    vocab << i << '\t' << model.vocab.at(i) << '\t' << exact(model.data.word_idf[static_cast<Eigen::Index>(i)])
          << '\n';
  }
  write_text_file(dir / "vocabulary.tsv", vocab.str());

  std::ostringstream features;
  features << "index\tkind\tkey\tdf\tidf\n";
  for (std::size_t i = 0; i < model.feature_index.size(); ++i) {
    const auto& f = model.features.features.at(model.feature_index.at(i));
    features << i << '\t' << to_string(f.kind) << '\t' << f.key << '\t' << f.document_frequency << '\t'
             << exact(model.data.feature_idf[static_cast<Eigen::Index>(i)]) << '\n';
  }
  write_text_file(dir / "features.tsv", features.str());

  write_dense_file(dir / "X.mat", Matrix(model.data.x));
  write_dense_file(dir / "Y.mat", Matrix(model.data.y));
  write_text_file(dir / "R.tsv", sparsity_dump(model.content));

  std::ostringstream report;
  report << "status\tpath\tdetail\n";
  for (const auto& s : loaded.report.skipped) report << "skipped\t" << s.path << '\t' << s.reason << '\n';
  for (const auto& w : loaded.report.warnings) {
    report << "warning\t-\t" << w << '\n';
    diagnostics.warn(w);
  }
  for (const auto& w : model.features.warnings) {
    report << "warning\t-\t" << w << '\n';
    diagnostics.warn(w);
  }
  for (const auto j : model.data.empty_code_columns) {
    const auto message = "document '" + model.documents[j].id + "' has no code feature within the bounds";
    report << "warning\t" << model.documents[j].id << '\t' << "no code features" << '\n';
    diagnostics.warn(message);
  }
  write_text_file(dir / "ingestion_report.tsv", report.str());

  return {model.documents.size(), model.vocab.size(), model.feature_index.size(), loaded.report.skipped.size()};
}

IndexArtifacts load_index(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw_usage("index directory '" + dir.string() + "' not found; run 'coderet index'");
  IndexArtifacts out;
  std::istringstream manifest(read_text_file(dir / "manifest.txt"));
  std::string line;
  std::getline(manifest, line);
  if (line != kIndexMagic) throw_usage((dir / "manifest.txt").string() + ": not a coderet index");
  std::map<std::string, std::string> fields;
  while (std::getline(manifest, line)) {
    const auto space = line.find(' ');
    if (space != std::string::npos) fields[line.substr(0, space)] = line.substr(space + 1);
  }
  out.fingerprint = fields["fingerprint"];
  out.weighting = parse_weighting(fields["weighting"]);

  for (const auto& row : read_table(dir / "documents.tsv", 3)) {
    out.doc_ids.push_back(row[1]);
    out.labels.push_back(row[2]);
  }
  std::vector<std::string> words;
  std::vector<double> word_idf;
  for (const auto& row : read_table(dir / "vocabulary.tsv", 3)) {
    words.push_back(row[1]);
    word_idf.push_back(parse_double(row[2], dir / "vocabulary.tsv"));
  }
  std::vector<std::string> keys;
  std::vector<double> feature_idf;
  for (const auto& row : read_table(dir / "features.tsv", 5)) {
    keys.push_back(row[2]);
    feature_idf.push_back(parse_double(row[4], dir / "features.tsv"));
  }
  out.vocab = Vocabulary(words);
  out.features = FeatureIndex(keys);
  if (out.vocab.entries() != words || out.features.entries() != keys) {
    throw_usage(dir.string() + ": vocabulary or feature listing is not sorted");
  }

  out.data.weighting = out.weighting;
  out.data.word_idf = Eigen::Map<const Eigen::VectorXd>(word_idf.data(), static_cast<Eigen::Index>(word_idf.size()));
  out.data.feature_idf =
      Eigen::Map<const Eigen::VectorXd>(feature_idf.data(), static_cast<Eigen::Index>(feature_idf.size()));
  out.data.x = read_dense_file(dir / "X.mat").sparseView();
  out.data.y = read_dense_file(dir / "Y.mat").sparseView();
  std::istringstream r(read_text_file(dir / "R.tsv"));
  out.content = parse_sparsity_dump(r);

  const auto m = static_cast<Eigen::Index>(out.doc_ids.size());
  const auto dx = static_cast<Eigen::Index>(words.size());
  const auto dy = static_cast<Eigen::Index>(keys.size());
  if (out.data.x.rows() != dx || out.data.x.cols() != m || out.data.y.rows() != dy || out.data.y.cols() != m ||
      out.content.rows() != dx || out.content.cols() != dy) {
    throw_usage(dir.string() + ": index files disagree on dimensions");
  }
  return out;
}

Model cmd_train(const PipelineConfig& config, Diagnostics& diagnostics) {
  config.validate();
  const auto index = load_index(index_dir(config));
  const auto fingerprint = current_fingerprint(config);
  if (fingerprint != index.fingerprint) {
    throw_usage("corpus fingerprint mismatch: the index was built from a different corpus than '" +
                config.corpus.string() + "'; rerun 'coderet index'");
  }
  TrainingData data{index.data.x, index.data.y, index.content, build_label_graph(index.labels)};
  auto hyper = clamp_rank(config.hyper, index.vocab.size(), index.features.size(), diagnostics);
  hyper.seed = config.seed;
  if (config.eta_search) hyper.eta = find_descent_step(data, hyper);
  auto model = train(data, hyper);
  for (const auto& w : model.warnings) diagnostics.warn(w);
  if (!model.converged) {
    diagnostics.warn("training stopped at max_iter = " + std::to_string(hyper.max_iter) + " before converging");
  }

  ModelFile file;
  file.hyper = model.hyper;
  file.fingerprint = index.fingerprint;
  file.converged = model.converged;
  file.vocab = index.vocab;
  file.features = index.features;
  file.u = model.u;
  file.v = model.v;
  write_model_file(model_path(config), file);

  std::ostringstream trace;
  trace << "iteration\ttotal\n0\t" << exact(model.initial.total) << '\n';
  for (std::size_t i = 0; i < model.trace.size(); ++i) trace << i + 1 << '\t' << exact(model.trace[i].total) << '\n';
  write_text_file(model_path(config).parent_path() / "loss_trace.tsv", trace.str());
  return model;
}

std::string format_results(std::span<const ScoredResult> results) {
  std::string out;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    out += std::to_string(i + 1) + '\t' + r.doc_id + '\t' + fixed6(r.score) + '\t' + fixed6(r.text_text) + '\t' +
           fixed6(r.text_code) + '\n';
  }
  return out;
}

std::string cmd_query(const PipelineConfig& config, const std::string& text, std::size_t n, QueryMethod method,
                      Diagnostics& diagnostics) {
  config.validate();
  auto index = load_index(index_dir(config));
  std::optional<Projection> projection;
  double alpha = 0.0;
  if (method == QueryMethod::hmlcr) {
    auto model = load_matching_model(config, index);
    projection = Projection{std::move(model.u), std::move(model.v)};
    alpha = config.alpha;
  }
  const RetrievalIndex retrieval(index.doc_ids, index.data, index.vocab, std::move(projection), alpha);
  const auto query = make_query("query", text);
  const auto vector = retrieval.vectorize(query.tokens);
  if (vector.out_of_vocabulary > 0) {
    diagnostics.warn(std::to_string(vector.out_of_vocabulary) + " query token(s) outside the vocabulary were dropped");
  }
  return format_results(retrieval.rank(vector, n));
}

MetricReport cmd_eval(const PipelineConfig& config, Diagnostics& diagnostics) {
  config.validate();
  if (!config.queries) throw_usage("no query file configured (use --queries)");
  const auto queries = load_queries(*config.queries, QueryMode::evaluation, &diagnostics);
  const auto loaded = load_corpus(config);

  auto hyper = config.hyper;
  hyper.seed = config.seed;
  std::vector<MethodSpec> methods;
  for (const auto& name : config.methods) {
    methods.push_back(method_by_name(name, hyper, config.alpha, config.lsi_k, config.lm_smoothing));
  }
  CrossValidationOptions options;
  options.folds = config.folds;
  options.seed = config.seed;
  options.orientation = config.orientation;
  options.cutoffs = config.cutoffs;
  auto report = cross_validate(queries, loaded.model, methods, options);

  const auto dir = config.output / "eval";
  write_text_file(dir / "report.tsv", report.to_tsv());
  write_text_file(dir / "summary.tsv", report.summary_tsv());
  std::string warnings;
  for (const auto& w : report.warnings) {
    warnings += w + '\n';
    diagnostics.warn(w);
  }
  write_text_file(dir / "warnings.txt", warnings);
  return report;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diagonal = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t above = row[j];
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diagonal + (a[i - 1] == b[j - 1] ? 0 : 1)});
      diagonal = above;
    }
  }
  return row[b.size()];
}

std::vector<std::string> nearest_keys(const std::string& key, const std::vector<std::string>& keys,
                                      std::size_t count) {
  std::vector<std::pair<std::size_t, std::string>> scored;
  scored.reserve(keys.size());
  for (const auto& k : keys) scored.emplace_back(edit_distance(key, k), k);
  std::sort(scored.begin(), scored.end());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < std::min(count, scored.size()); ++i) out.push_back(scored[i].second);
  return out;
}

std::string cmd_explain(const PipelineConfig& config, const std::string& feature_key, std::size_t t,
                        bool compare_cfa, Diagnostics& /*diagnostics*/) {
  config.validate();
  const auto index = load_index(index_dir(config));
  auto model = load_matching_model(config, index);
  if (!model.features.find(feature_key)) {
    std::string message = "unknown feature key '" + feature_key + "'; nearest:";
    const auto near = nearest_keys(feature_key, model.features.entries());
    for (std::size_t i = 0; i < near.size(); ++i) message += (i ? ", '" : " '") + near[i] + "'";
    throw_usage(message);
  }
  if (t == 0) return {};
  const Projection learned{std::move(model.u), std::move(model.v)};
  const auto words = top_words_for_feature(feature_key, learned, model.vocab, model.features, t);
  std::vector<std::pair<std::string, double>> cfa_words;
  if (compare_cfa) {
    auto init = cfa_init(index.data.x, index.data.y, model.hyper.k, model.hyper.seed);
    cfa_words = top_words_for_feature(feature_key, {std::move(init.u), std::move(init.v)}, model.vocab,
                                      model.features, t);
  }
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    out += words[i].first + '\t' + fixed6(words[i].second);
    if (compare_cfa) out += '\t' + cfa_words[i].first + '\t' + fixed6(cfa_words[i].second);
    out += '\n';
  }
  return out;
}

}  // namespace coderet

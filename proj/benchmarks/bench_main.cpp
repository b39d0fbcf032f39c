#include <random>
#include <string>

#include <benchmark/benchmark.h>

#include "coderet/corpus_model.hpp"
#include "coderet/eval.hpp"
#include "coderet/hmlcr.hpp"
#include "coderet/tokenizer.hpp"

namespace {

using namespace coderet;

// A deterministic Java-ish source of roughly `methods` small methods.
std::string synthetic_source(int methods, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const char* words[] = {"buffer", "socket", "retry", "parse", "config", "stream", "cache", "handler"};
  std::string s = "import java.io.InputStream;\n// Generated fixture for timing\nclass Sample {\n";
  for (int m = 0; m < methods; ++m) {
    const std::string a = words[rng() % 8], b = words[rng() % 8];
    s += "  /* " + a + " then " + b + " */\n  int " + a + "To" + b + std::to_string(m) + "(int countValue) {\n";
    s += "    int " + a + "Size = countValue * 2;\n    if (" + a + "Size > 3) { return " + a + "Size; }\n";
    s += "    return \"" + b + "\".length();\n  }\n";
  }
  return s + "}\n";
}

std::vector<CodeDocument> synthetic_corpus(int docs) {
  const auto java = java_profile();
  std::vector<CodeDocument> out;
  for (int d = 0; d < docs; ++d) {
    out.push_back(make_document("D" + std::to_string(d) + ".java", synthetic_source(20, d % 7),
                                "l" + std::to_string(d % 5), java));
  }
  return out;
}

void BM_ExtractTokens(benchmark::State& state) {
  const auto java = java_profile();
  const auto source = synthetic_source(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(extract_tokens(source, java));
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * source.size()));
}
BENCHMARK(BM_ExtractTokens)->Arg(10)->Arg(100);

void BM_ExtractFeatures(benchmark::State& state) {
  const auto java = java_profile();
  const auto docs = synthetic_corpus(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(extract_features(docs, java));
}
BENCHMARK(BM_ExtractFeatures)->Arg(20);

struct Problem {
  CorpusModel corpus;
  TrainingData data;
  Hyperparams hyper;
};

const Problem& problem() {
  static const Problem p = [] {
    Problem out{build_corpus_model(synthetic_corpus(40), java_profile()), {}, {}};
    const auto all = all_documents(out.corpus);
    out.data = make_training_data(out.corpus, all);
    out.hyper.k = std::min<std::size_t>(8, static_cast<std::size_t>(out.data.y.rows()));
    return out;
  }();
  return p;
}

void BM_Gradients(benchmark::State& state) {
  const auto& p = problem();
  const auto init = cfa_init(p.data.x, p.data.y, p.hyper.k);
  for (auto _ : state) {
    benchmark::DoNotOptimize(grad_u(init.u, init.v, p.data, p.hyper));
    benchmark::DoNotOptimize(grad_v(init.u, init.v, p.data, p.hyper));
  }
}
BENCHMARK(BM_Gradients);

void BM_CfaInit(benchmark::State& state) {
  const auto& p = problem();
  for (auto _ : state) benchmark::DoNotOptimize(cfa_init(p.data.x, p.data.y, p.hyper.k));
}
BENCHMARK(BM_CfaInit);

void BM_Train50(benchmark::State& state) {
  const auto& p = problem();
  auto h = p.hyper;
  h.max_iter = 50;
  h.tol = 0;
  for (auto _ : state) benchmark::DoNotOptimize(train(p.data, h));
}
BENCHMARK(BM_Train50)->Unit(benchmark::kMillisecond);

void BM_CosRanking(benchmark::State& state) {
  const auto& p = problem();
  const CosRanker cos(p.corpus);
  const auto q = make_query("q", "retry the socket buffer parse");
  const auto ids = p.corpus.doc_ids();
  for (auto _ : state) benchmark::DoNotOptimize(rank_documents(cos, q, ids));
}
BENCHMARK(BM_CosRanking);

}  // namespace

BENCHMARK_MAIN();

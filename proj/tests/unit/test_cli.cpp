#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>

#include "coderet/pipeline.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace coderet;
using namespace coderet::testing;
namespace fs = std::filesystem;
using Strings = std::vector<std::string>;

namespace {

const fs::path kFixtures = CODERET_FIXTURES;
const std::string kBin = CODERET_BIN;

// A private copy of the fixture tree, so tests may edit it.
fs::path fixture_copy(const std::string& name) {
  const auto dir = fresh_temp_dir(name);
  fs::copy(kFixtures, dir / "fixtures", fs::copy_options::recursive);
  return dir;
}

std::string flags(const fs::path& dir) {
  const auto f = dir / "fixtures";
  return " --corpus " + (f / "corpus").string() + " --labels " + (f / "labels.tsv").string() + " --queries " +
         (f / "queries.tsv").string() + " --output " + (dir / "out").string();
}

CommandResult coderet_cli(const std::string& args) { return run_command(kBin + args + " 2>&1"); }

Strings lines(const std::string& text) {
  Strings out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::string column_cut(const std::string& records, std::size_t columns) {
  std::string out;
  for (const auto& l : lines(records)) {
    std::size_t pos = 0;
    for (std::size_t c = 0; c < columns && pos != std::string::npos; ++c) pos = l.find('\t', pos + (c ? 1 : 0));
    out += l.substr(0, pos) + '\n';
  }
  return out;
}

PipelineConfig fixture_config(const fs::path& dir) {
  PipelineConfig c;
  c.corpus = dir / "fixtures" / "corpus";
  c.labels = dir / "fixtures" / "labels.tsv";
  c.queries = dir / "fixtures" / "queries.tsv";
  c.output = dir / "out";
  return c;
}

void write(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p, std::ios::binary) << text;
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("config parsing") {
    const auto c = parse_config(R"({"corpus": "src", "alpha": 0.25, "seed": 7,
        "features": {"lower": 3, "upper": 9},
        "hyperparams": {"lambda3": 0.3, "k": 16, "backtracking": true},
        "eval": {"methods": ["cos", "hmlcr"], "folds": 4, "orientation": "test-on-one", "ndcg": [5]}})");
    CHECK(c.corpus == "src");
    CHECK(c.alpha == 0.25);
    CHECK(c.seed == 7);
    CHECK(c.feature_lower == 3);
    CHECK(c.feature_upper == 9u);
    CHECK(c.hyper.lambda3 == 0.3);
    CHECK(c.hyper.k == 16);
    CHECK(c.hyper.backtracking);
    CHECK(c.methods == Strings{"cos", "hmlcr"});
    CHECK(c.folds == 4);
    CHECK(c.orientation == FoldOrientation::test_on_one);
    CHECK(c.cutoffs.ndcg == std::vector<std::size_t>{5});

    const PipelineConfig defaults;
    CHECK(defaults.hyper.lambda1 == 1.0);
    CHECK(defaults.hyper.lambda2 == 0.1);
    CHECK(defaults.hyper.lambda3 == 0.2);
    CHECK(defaults.hyper.k == 64);
    CHECK(defaults.hyper.eta == 1e-3);
    CHECK(defaults.hyper.max_iter == 500);
    CHECK(defaults.alpha == 0.5);
  }

  TEST_CASE("config rejects unknown keys and bad values") {
    for (const auto* text : {R"({"corpse": "x"})", R"({"hyperparams": {"lambda4": 1}})", R"({"alpha": 2})",
                             R"({"alpha": "high"})", R"({"features": {"lower": 5, "upper": 2}})", "{not json",
                             R"({"eval": {"orientation": "sideways"}})"}) {
      CAPTURE(text);
      try {
        parse_config(text);
        FAIL("expected an error");
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::usage);
      }
    }
  }

  TEST_CASE("config path from the environment") {
    const auto dir = fresh_temp_dir("cli-env");
    write(dir / "c.json", R"({"alpha": 0.125})");
    ::setenv(kConfigEnvironmentVariable, (dir / "c.json").c_str(), 1);
    CHECK(resolve_config(std::nullopt).alpha == 0.125);
    write(dir / "d.json", R"({"alpha": 0.75})");
    CHECK(resolve_config(dir / "d.json").alpha == 0.75);
    ::unsetenv(kConfigEnvironmentVariable);
    CHECK(resolve_config(std::nullopt).alpha == 0.5);
  }

  TEST_CASE("dense matrices round-trip exactly") {
    std::mt19937_64 rng(71);
    const Matrix m = random_normal(4, 3, rng) * 1e7;
    std::stringstream s;
    write_dense(s, m);
    CHECK(read_dense(s) == m);
    std::stringstream bad("2 2\n1 2\n3\n");
    CHECK_THROWS_AS(read_dense(bad), Error);
  }

  TEST_CASE("sparsity dumps round-trip") {
    std::mt19937_64 rng(72);
    const auto r = to_sparse(random_binary(5, 4, 0.4, rng));
    const auto text = sparsity_dump(r);
    std::istringstream in(text);
    CHECK(Matrix(parse_sparsity_dump(in)) == Matrix(r));
    CHECK(text.rfind("5 4 " + std::to_string(r.nonZeros()) + "\n", 0) == 0);
  }

  TEST_CASE("model files round-trip") {
    std::mt19937_64 rng(73);
    ModelFile m;
    m.hyper.k = 2;
    m.hyper.lambda3 = 0.3;
    m.hyper.backtracking = true;
    m.hyper.seed = 99;
    m.fingerprint = sha256_hex("x");
    m.converged = true;
    m.vocab = Vocabulary(Strings{"alpha", "beta", "gamma"});
    m.features = FeatureIndex(Strings{"refs:a.b", "int <id:int> = <num>"});
    m.u = random_normal(3, 2, rng);
    m.v = random_normal(2, 2, rng);
    std::stringstream s;
    write_model(s, m);
    const auto back = read_model(s);
    CHECK(back.u == m.u);
    CHECK(back.v == m.v);
    CHECK(back.vocab == m.vocab);
    CHECK(back.features == m.features);
    CHECK(back.fingerprint == m.fingerprint);
    CHECK(back.converged);
    CHECK(back.hyper.lambda3 == 0.3);
    CHECK(back.hyper.seed == 99);
    CHECK(back.hyper.backtracking);

    std::stringstream wrong("coderet-model 99\n");
    CHECK_THROWS_AS(read_model(wrong), Error);
  }

  TEST_CASE("hashing and files") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    const auto dir = fresh_temp_dir("cli-files");
    write_text_file(dir / "a" / "b.txt", "hello");
    CHECK(read_text_file(dir / "a" / "b.txt") == "hello");
    try {
      read_text_file(dir / "missing.txt");
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::usage);
      CHECK(std::string(e.what()).find("missing.txt") != std::string::npos);
    }
    write(dir / "c" / "x.java", "1");
    write(dir / "c" / "y.java", "2");
    const auto before = corpus_fingerprint(dir / "c", {"y.java", "x.java"});
    CHECK(before == corpus_fingerprint(dir / "c", {"x.java", "y.java"}));
    write(dir / "c" / "y.java", "3");
    CHECK(before != corpus_fingerprint(dir / "c", {"x.java", "y.java"}));
  }

  TEST_CASE("edit distance suggestions") {
    CHECK(edit_distance("kitten", "sitting") == 3);
    CHECK(edit_distance("", "abc") == 3);
    CHECK(nearest_keys("refs:java.io.file", {"refs:java.io.files", "refs:java.net.url", "inherits:thread",
                                             "refs:java.io.reader", "zzz"}) ==
          Strings{"refs:java.io.files", "refs:java.io.reader", "refs:java.net.url"});
  }

  TEST_CASE("index artifacts of the committed fixture") {
    const auto dir = fixture_copy("cli-index");
    Diagnostics diag;
    const auto summary = cmd_index(fixture_config(dir), diag);
    CHECK(summary.documents == 10);
    CHECK(summary.words == 93);
    CHECK(summary.features == 4);
    CHECK(summary.skipped == 2);
    const auto index = load_index(dir / "out" / "index");
    CHECK(index.data.x.rows() == 93);
    CHECK(index.data.x.cols() == 10);
    CHECK(index.data.y.rows() == 4);
    CHECK(index.content.rows() == 93);
    CHECK(index.content.cols() == 4);
    CHECK(index.features.find("refs:java.io.inputstream"));
    const auto report = read_text_file(dir / "out" / "index" / "ingestion_report.tsv");
    CHECK(report.find("Blob.java") != std::string::npos);
  }

  TEST_CASE("CLI index is deterministic and reports a missing root") {
    const auto dir = fixture_copy("cli-det");
    REQUIRE(coderet_cli(flags(dir) + " index").status == 0);
    const auto first = slurp(dir / "out" / "index" / "X.mat") + slurp(dir / "out" / "index" / "features.tsv") +
                       slurp(dir / "out" / "index" / "R.tsv") + slurp(dir / "out" / "index" / "manifest.txt");
    REQUIRE(coderet_cli(flags(dir) + " index").status == 0);
    const auto second = slurp(dir / "out" / "index" / "X.mat") + slurp(dir / "out" / "index" / "features.tsv") +
                        slurp(dir / "out" / "index" / "R.tsv") + slurp(dir / "out" / "index" / "manifest.txt");
    CHECK(first == second);

    const auto missing = coderet_cli(" --corpus " + (dir / "nowhere").string() + " index");
    CHECK(missing.status == 2);
    CHECK(missing.out.find("nowhere") != std::string::npos);
    CHECK(coderet_cli(" frobnicate").status == 2);
  }

  TEST_CASE("training writes a reproducible model and guards the fingerprint") {
    const auto dir = fixture_copy("cli-train");
    REQUIRE(coderet_cli(flags(dir) + " index").status == 0);
    const auto train = coderet_cli(flags(dir) + " --k 3 --max-iter 100 train");
    REQUIRE(train.status == 0);
    const auto model = slurp(dir / "out" / "model" / "model.txt");
    REQUIRE(coderet_cli(flags(dir) + " --k 3 --max-iter 100 train").status == 0);
    CHECK(slurp(dir / "out" / "model" / "model.txt") == model);

    const auto trace = lines(slurp(dir / "out" / "model" / "loss_trace.tsv"));
    REQUIRE(trace.size() >= 3);
    CHECK(trace[0] == "iteration\ttotal");
    const double initial = std::stod(trace[1].substr(trace[1].find('\t') + 1));
    const double last = std::stod(trace.back().substr(trace.back().find('\t') + 1));
    CHECK(last < initial);

    // The default k exceeds d^y here; it is clamped with a warning.
    const auto clamped = coderet_cli(flags(dir) + " --max-iter 5 train");
    CHECK(clamped.status == 0);
    CHECK(clamped.out.find("warning") != std::string::npos);

    write(dir / "fixtures" / "corpus" / "src" / "app" / "Main.java", "class Main { int changed; }");
    const auto refused = coderet_cli(flags(dir) + " train");
    CHECK(refused.status == 2);
    CHECK(refused.out.find("fingerprint") != std::string::npos);

    const auto diverged = run_command(kBin + flags(dir) + " index >/dev/null 2>&1 && " + kBin + flags(dir) +
                                      " --k 3 --eta 1e6 train 2>&1");
    CHECK(diverged.status == 1);
    CHECK(diverged.out.find("eta") != std::string::npos);
  }

  TEST_CASE("query output") {
    const auto dir = fixture_copy("cli-query");
    REQUIRE(coderet_cli(flags(dir) + " index").status == 0);
    REQUIRE(coderet_cli(flags(dir) + " --k 3 --max-iter 50 train").status == 0);

    const auto cos = coderet_cli(flags(dir) + " query 'retry the read' --method cos");
    const auto zero = coderet_cli(flags(dir) + " --alpha 0 query 'retry the read'");
    REQUIRE(cos.status == 0);
    REQUIRE(zero.status == 0);
    CHECK(column_cut(cos.out, 3) == column_cut(zero.out, 3));

    const auto all = coderet_cli(flags(dir) + " query 'retry the read' -n 50");
    CHECK(lines(all.out).size() == 10);

    // Exhaustive oracle over the stored index and model.
    const auto index = load_index(dir / "out" / "index");
    const auto model = read_model_file(dir / "out" / "model" / "model.txt");
    const Matrix x(index.data.x), y(index.data.y);
    Eigen::VectorXd q = Eigen::VectorXd::Zero(x.rows());
    for (const auto* w : {"retry", "read"}) q[static_cast<Eigen::Index>(*index.vocab.find(w))] += 1.0;
    q = q.cwiseProduct(index.data.word_idf);
    auto cosine = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
      return a.norm() == 0 || b.norm() == 0 ? 0.0 : a.dot(b) / (a.norm() * b.norm());
    };
    std::vector<ScoredResult> expected;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      ScoredResult r;
      r.doc_id = index.doc_ids[static_cast<std::size_t>(j)];
      r.text_text = cosine(q, x.col(j));
      r.text_code = cosine(model.u.transpose() * q, model.v.transpose() * y.col(j));
      r.score = 0.5 * r.text_text + 0.5 * r.text_code;
      expected.push_back(r);
    }
    std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
      return a.score != b.score ? a.score > b.score : a.doc_id < b.doc_id;
    });
    expected.resize(3);
    const auto top = coderet_cli(flags(dir) + " query 'retry the read' -n 3");
    CHECK(top.out == format_results(expected));
  }

  TEST_CASE("COS query matches the committed golden output") {
    const auto dir = fixture_copy("cli-golden");
    REQUIRE(coderet_cli(flags(dir) + " index").status == 0);
    const auto out = run_command(kBin + flags(dir) + " query 'line reader retry' --method cos -n 5");
    CHECK(out.status == 0);
    CHECK(out.out == slurp(kFixtures / "golden" / "query_cos.tsv"));
  }

  TEST_CASE("evaluation on a hand-scored corpus") {
    // Each label's words appear only in its own two documents, so COS ranks
    // both relevant documents first for every query.
    const auto dir = fresh_temp_dir("cli-eval");
    const Strings topics[] = {{"alpha", "amber"}, {"bravo", "beryl"}, {"charlie", "cobalt"}};
    std::string labels, queries;
    for (int t = 0; t < 3; ++t) {
      for (int d = 0; d < 2; ++d) {
        const auto name = "T" + std::to_string(t) + "D" + std::to_string(d) + ".java";
        write(dir / "c" / name, "// " + topics[t][0] + " " + topics[t][1] + "\nclass Holder { }\n");
        labels += name + "\tl" + std::to_string(t) + "\n";
      }
      for (int q = 0; q < 2; ++q)
        queries += "q" + std::to_string(t) + std::to_string(q) + "\tl" + std::to_string(t) + "\t" + topics[t][q] + "\n";
    }
    write(dir / "labels.tsv", labels);
    write(dir / "queries.tsv", queries);
    const std::string args = " --corpus " + (dir / "c").string() + " --labels " + (dir / "labels.tsv").string() +
                             " --queries " + (dir / "queries.tsv").string() + " --output " + (dir / "out").string() +
                             " --methods cos --folds 2 --feature-lower 1 --feature-upper 6 eval";
    const auto run = run_command(kBin + args + " 2>/dev/null");
    REQUIRE(run.status == 0);
    const std::string expected =
        "method\tmetric\tcutoff\tmean\n"
        "cos\tP\t1\t1.000000\ncos\tP\t2\t1.000000\ncos\tP\t4\t0.500000\ncos\tP\t5\t0.400000\n"
        "cos\tR\t1\t0.500000\ncos\tR\t3\t1.000000\ncos\tR\t5\t1.000000\ncos\tR\t20\t1.000000\n"
        "cos\tnDCG\t2\t1.000000\ncos\tnDCG\t4\t1.000000\ncos\tnDCG\t10\t1.000000\ncos\tnDCG\t20\t1.000000\n";
    CHECK(run.out == expected);
    CHECK(slurp(dir / "out" / "eval" / "summary.tsv") == expected);
    const auto report = slurp(dir / "out" / "eval" / "report.tsv");
    CHECK(run_command(kBin + args + " >/dev/null 2>&1").status == 0);
    CHECK(slurp(dir / "out" / "eval" / "report.tsv") == report);
  }

  TEST_CASE("explain") {
    const auto dir = fixture_copy("cli-explain");
    REQUIRE(coderet_cli(flags(dir) + " index").status == 0);
    REQUIRE(coderet_cli(flags(dir) + " --k 3 --max-iter 50 train").status == 0);

    const auto empty = run_command(kBin + flags(dir) + " explain refs:java.io.inputstream -t 0 2>/dev/null");
    CHECK(empty.status == 0);
    CHECK(empty.out.empty());

    const auto some = run_command(kBin + flags(dir) + " explain refs:java.io.inputstream -t 4 2>/dev/null");
    CHECK(some.status == 0);
    CHECK(lines(some.out).size() == 4);
    const auto side = run_command(kBin + flags(dir) + " explain refs:java.io.inputstream -t 2 --compare-cfa 2>/dev/null");
    for (const auto& l : lines(side.out)) CHECK(std::count(l.begin(), l.end(), '\t') == 3);

    const auto unknown = coderet_cli(flags(dir) + " explain refs:java.io.inputstrem");
    CHECK(unknown.status == 2);
    CHECK(unknown.out.find("'refs:java.io.inputstream'") != std::string::npos);
    const auto nearest = lines(unknown.out).back();
    CHECK(std::count(nearest.begin(), nearest.end(), '\'') >= 8);
  }
}

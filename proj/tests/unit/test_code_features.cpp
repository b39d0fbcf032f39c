#include <random>

#include "coderet/code_features.hpp"
#include "coderet/content_matrix.hpp"
#include "coderet/indices.hpp"
#include "coderet/tokenizer.hpp"
#include "doctest.h"

using namespace coderet;
using Strings = std::vector<std::string>;

namespace {

const LanguageProfile kJava = java_profile();

CodeDocument doc(std::string id, std::string source) {
  return make_document(std::move(id), std::move(source), "x", kJava);
}

void visit(const BlockNode& node, const std::function<void(const BlockNode&)>& f) {
  f(node);
  for (const auto& c : node.children) visit(c, f);
}

std::size_t nodes_with_statements(const BlockTree& tree) {
  std::size_t n = 0;
  visit(tree.root, [&](const BlockNode& node) { n += !node.statements.empty(); });
  return n;
}

// Random brace-structured source: statements and nested blocks.
std::string random_source(std::mt19937_64& rng, int depth = 0) {
  std::string out;
  const int items = static_cast<int>(rng() % 4);
  for (int i = 0; i < items; ++i) {
    if (depth < 3 && rng() % 3 == 0) {
      out += "{ " + random_source(rng, depth + 1) + "} ";
    } else {
      out += "v" + std::to_string(rng() % 5) + "Name = w" + std::to_string(rng() % 7) + "; ";
    }
  }
  return out;
}

// Builds a feature set with a given document frequency per key.
FeatureSet with_frequencies(const std::map<std::string, std::size_t>& df) {
  FeatureSet fs;
  for (const auto& [key, n] : df) {
    for (std::size_t d = 0; d < n; ++d) {
      CodeFeature f;
      f.key = key;
      fs.add_occurrence("doc" + std::to_string(d), f);
    }
  }
  fs.refresh_document_frequencies();
  return fs;
}

Strings keys(const FeatureSet& fs) {
  Strings out;
  for (const auto& [k, f] : fs.features) out.push_back(k);
  return out;
}

}  // namespace

TEST_SUITE("code_features") {
  TEST_CASE("block tree nesting") {
    const auto tree = build_block_tree("a; { b; { c; } d; }", kJava);
    CHECK_FALSE(tree.recovered);
    CHECK(tree.root.statements == Strings{"a"});
    REQUIRE(tree.root.children.size() == 1);
    const auto& child = tree.root.children[0];
    CHECK(child.statements == Strings{"b", "d"});
    REQUIRE(child.children.size() == 1);
    CHECK(child.children[0].statements == Strings{"c"});
    CHECK(child.children[0].children.empty());
    CHECK(tree.node_count() == 3);
  }

  TEST_CASE("block tree without delimiters is a single node") {
    const auto tree = build_block_tree("a = 1; b = 2; c();", kJava);
    CHECK(tree.root.children.empty());
    CHECK(tree.root.statements.size() == 3);
    CHECK(tree.node_count() == 1);
  }

  TEST_CASE("empty block is dropped") {
    const auto tree = build_block_tree("{ }", kJava);
    CHECK(tree.root.children.empty());
    CHECK(tree.root.statements.empty());
  }

  TEST_CASE("unbalanced delimiters are repaired and flagged") {
    const auto open = build_block_tree("a; { b; { c;", kJava);
    CHECK(open.recovered);
    CHECK_FALSE(open.warnings.empty());
    REQUIRE(open.root.children.size() == 1);
    CHECK(open.root.children[0].children.size() == 1);

    const auto close = build_block_tree("a; } b;", kJava);
    CHECK(close.recovered);
    CHECK(close.root.statements == Strings{"a", "b"});
  }

  TEST_CASE("normalization examples") {
    CHECK(normalize_statement("int maxRetry = 5;", kJava) == "int <id:int> = <num>");
    CHECK(normalize_statement(";", kJava).empty());
    CHECK(normalize_statement("String   s =\n  \"hi\";", kJava) == "String <id:string> = <str>");
    // Member names are not the declared variable.
    CHECK(normalize_statement("int n = in.read(buf);", kJava) == "int <id:int> = in.read(buf)");
  }

  TEST_CASE("normalization uses the document symbol table") {
    SymbolTable symbols;
    collect_declarations("InputStream in = open()", kJava, symbols);
    CHECK(symbols.at("in") == "inputstream");
    CHECK(normalize_statement("in.close()", kJava, &symbols) == "<id:inputstream>.close()");
    CHECK(normalize_statement("in.close()", kJava) == "in.close()");
  }

  TEST_CASE("normalization is idempotent") {
    const Strings inputs = {"int maxRetry = 5;", "String s = \"a;b\";", "for (int i = 0; i < n; ++i)",
                            "List<String> names = new ArrayList<>();", "x = y + 3.5e2;",
                            "return a.b(c, \"d\");"};
    for (const auto& in : inputs) {
      const auto once = normalize_statement(in, kJava);
      CAPTURE(in);
      CHECK(normalize_statement(once, kJava) == once);
    }
  }

  TEST_CASE("snippet candidates of a four-node tree") {
    const std::vector<CodeDocument> corpus = {doc("A.java", "a; { b; } { c; { d; } }")};
    const auto fs = extract_snippet_candidates(corpus, kJava);
    CHECK(fs.features.size() == 4);
    REQUIRE(fs.occurrences.contains("A.java"));
    CHECK(fs.occurrences.at("A.java").size() == 4);
    for (const auto& [k, f] : fs.features) CHECK(f.kind == FeatureKind::snippet);
  }

  TEST_CASE("identical documents share features") {
    const std::string src = "x; { y; { z; } }";
    const std::vector<CodeDocument> one = {doc("A.java", src)};
    const std::vector<CodeDocument> two = {doc("A.java", src), doc("B.java", src)};
    const auto f1 = extract_snippet_candidates(one, kJava);
    const auto f2 = extract_snippet_candidates(two, kJava);
    CHECK(keys(f1) == keys(f2));
    CHECK(f2.occurrences.size() == 2);
    for (const auto& [k, f] : f2.features) CHECK(f.document_frequency == 2);
  }

  TEST_CASE("multiplicity is recorded") {
    const std::vector<CodeDocument> corpus = {doc("A.java", "f() { a = b; } g() { a = b; }")};
    const auto fs = extract_snippet_candidates(corpus, kJava);
    CHECK(fs.occurrences.at("A.java").at("a = b;") == 2);
    CHECK(fs.features.at("a = b;").document_frequency == 1);
  }

  TEST_CASE("empty corpus") {
    const auto fs = extract_features(std::span<const CodeDocument>{}, kJava);
    CHECK(fs.features.empty());
    CHECK(fs.occurrences.empty());
  }

  TEST_CASE("property: bottom-up completeness") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
      const auto src = random_source(rng);
      const auto tree = build_block_tree(src, kJava);
      const std::vector<CodeDocument> corpus = {doc("R.java", src)};
      const auto fs = extract_snippet_candidates(corpus, kJava);
      std::size_t emitted = 0;
      if (fs.occurrences.contains("R.java"))
        for (const auto& [k, n] : fs.occurrences.at("R.java")) emitted += n;
      CAPTURE(src);
      CHECK(emitted == nodes_with_statements(tree));
    }
  }

  TEST_CASE("property: surface words never repeat in an ancestor") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
      const auto src = random_source(rng);
      const auto tree = build_block_tree(src, kJava);
      std::function<void(const BlockNode&, std::set<std::string>)> walk =
          [&](const BlockNode& node, std::set<std::string> above) {
            for (const auto& w : node.surface_words) CHECK_FALSE(above.contains(w));
            above.insert(node.surface_words.begin(), node.surface_words.end());
            for (const auto& c : node.children) walk(c, above);
          };
      walk(tree.root, {});
    }
  }

  TEST_CASE("relationships") {
    const auto cls = extract_relationships(doc("A.java", "class A extends B implements C { }"), kJava);
    Strings got;
    for (const auto& f : cls) {
      CHECK(f.kind == FeatureKind::relationship);
      got.push_back(f.key);
    }
    std::sort(got.begin(), got.end());
    CHECK(got == Strings{"implements:c", "inherits:b"});

    const auto imp = extract_relationships(doc("B.java", "import java.io.InputStream;\nclass B { }"), kJava);
    REQUIRE(imp.size() == 1);
    CHECK(imp[0].key == "refs:java.io.inputstream");
    CHECK(imp[0].surface_words == std::set<std::string>{"input", "io", "java", "stream"});

    CHECK(extract_relationships(doc("C.java", "int x = 1;"), kJava).empty());
  }

  TEST_CASE("frequency filter examples") {
    const auto fs = with_frequencies({{"a", 1}, {"b", 3}, {"c", 9}});
    CHECK(keys(filter_by_frequency(fs, {2, 5})) == Strings{"b"});

    const auto same = filter_by_frequency(fs, {1, std::nullopt});
    CHECK(keys(same) == keys(fs));
    CHECK(same.occurrences == fs.occurrences);

    const auto low = filter_by_frequency(fs, {2, std::nullopt});
    CHECK_FALSE(low.contains("a"));
    for (const auto& [d, counts] : low.occurrences) CHECK_FALSE(counts.contains("a"));
  }

  TEST_CASE("filtering everything is fatal") {
    const auto fs = with_frequencies({{"a", 1}, {"b", 1}});
    try {
      filter_by_frequency(fs, {2, 5});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::runtime);
      CHECK(std::string(e.what()).find("bounds") != std::string::npos);
    }
    CHECK_THROWS_AS(filter_by_frequency(fs, {3, 2}), Error);
    CHECK_THROWS_AS(filter_by_frequency(fs, {0, 2}), Error);
  }

  TEST_CASE("property: filter is monotone in its bounds") {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 100; ++trial) {
      std::map<std::string, std::size_t> df;
      for (int i = 0; i < 12; ++i) df["f" + std::to_string(i)] = 1 + rng() % 10;
      const auto fs = with_frequencies(df);
      const std::size_t lo = 1 + rng() % 3, hi = 6 + rng() % 5;
      auto kept = [&](std::size_t l, std::size_t u) {
        try {
          return keys(filter_by_frequency(fs, {l, u}));
        } catch (const Error&) {
          return Strings{};
        }
      };
      const auto base = kept(lo, hi);
      for (const auto& tighter : {kept(lo + 1, hi), kept(lo, hi - 1)}) {
        for (const auto& k : tighter) CHECK(std::find(base.begin(), base.end(), k) != base.end());
      }
    }
  }

  TEST_CASE("content matrix links a reference to its name words") {
    const std::vector<CodeDocument> corpus = {
        doc("A.java", "import java.io.IOException;\n// may raise an exception\nclass A { }")};
    const auto fs = extract_features(corpus, kJava);
    const auto vocab = build_vocabulary(corpus);
    const auto index = build_feature_index(fs);
    const auto r = build_content_matrix(vocab, index, fs);
    const auto w = vocab.find("exception");
    const auto f = index.find("refs:java.io.ioexception");
    REQUIRE(w);
    REQUIRE(f);
    CHECK(r.coeff(static_cast<int>(*w), static_cast<int>(*f)) == 1.0);
  }

  TEST_CASE("content matrix follows the lowest snippet") {
    // root owns alphaOne; its child owns betaTwo; the grandchild owns
    // gammaThree and alphaOne again.
    const std::string src = "alphaOne; { betaTwo; { gammaThree; alphaOne; } }";
    const std::vector<CodeDocument> corpus = {doc("A.java", src)};
    const auto fs = extract_snippet_candidates(corpus, kJava);
    const auto vocab = build_vocabulary(corpus);
    const auto index = build_feature_index(fs);
    const auto r = build_content_matrix(vocab, index, fs);
    REQUIRE(vocab.entries() == Strings{"alpha", "beta", "gamma", "one", "three", "two"});
    REQUIRE(index.size() == 3);

    const auto tree = build_block_tree(src, kJava);
    const auto& child = tree.root.children.at(0);
    const auto& grandchild = child.children.at(0);
    auto column = [&](const std::string& key) {
      const auto j = static_cast<int>(*index.find(key));
      Strings words;
      for (std::size_t i = 0; i < vocab.size(); ++i)
        if (r.coeff(static_cast<int>(i), j) != 0.0) words.push_back(vocab.at(i));
      return words;
    };
    CHECK(column(tree.root.key).empty());
    CHECK(column(child.key) == Strings{"beta", "two"});
    CHECK(column(grandchild.key) == Strings{"alpha", "gamma", "one", "three"});
  }

  TEST_CASE("property: R is binary and equals the surface-word relation") {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<CodeDocument> corpus;
      for (int d = 0; d < 3; ++d) corpus.push_back(doc("D" + std::to_string(d) + ".java", random_source(rng)));
      const auto fs = extract_features(corpus, kJava);
      const auto vocab = build_vocabulary(corpus);
      const auto index = build_feature_index(fs);
      const auto r = build_content_matrix(vocab, index, fs);
      for (std::size_t j = 0; j < index.size(); ++j) {
        const auto& surface = fs.features.at(index.at(j)).surface_words;
        for (std::size_t i = 0; i < vocab.size(); ++i) {
          const double v = r.coeff(static_cast<int>(i), static_cast<int>(j));
          CHECK((v == 0.0 || v == 1.0));
          CHECK((v == 1.0) == surface.contains(vocab.at(i)));
        }
      }
    }
  }

  TEST_CASE("disjoint vocabularies give an empty content matrix") {
    const std::vector<CodeDocument> corpus = {doc("A.java", "// words here\nclass A { }")};
    const auto fs = extract_snippet_candidates(corpus, kJava);
    const Vocabulary vocab(Strings{"unrelated", "zebra"});
    const auto r = build_content_matrix(vocab, build_feature_index(fs), fs);
    CHECK(r.nonZeros() == 0);
  }

  TEST_CASE("dump format") {
    const auto fs = with_frequencies({{"b", 2}, {"a", 1}});
    CHECK(dump_features(fs) == "snippet\ta\t1\nsnippet\tb\t2\n");
  }
}

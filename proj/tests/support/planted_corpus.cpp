#include "planted_corpus.hpp"

#include <algorithm>
#include <random>

#include "coderet/tokenizer.hpp"

namespace coderet::testing {

namespace {

std::string capitalized(std::string w) {
  w[0] = static_cast<char>(w[0] - 'a' + 'A');
  return w;
}

std::string camel(const std::string& a, const std::string& b) { return a + capitalized(b); }

template <typename T>
const T& pick(const std::vector<T>& v, std::mt19937_64& rng) {
  return v[rng() % v.size()];
}

std::vector<std::string> sample(const std::vector<std::string>& v, std::size_t n, std::mt19937_64& rng) {
  std::vector<std::string> copy = v;
  std::shuffle(copy.begin(), copy.end(), rng);
  copy.resize(std::min(n, copy.size()));
  return copy;
}

std::string join(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
  return out;
}

// The block shared by every document of a label. `a` and `b` are variable
// names, which normalize away in the block's key but stay in its raw words.
std::string label_block(const std::string& type, const std::string& a, const std::string& b) {
  const auto t = capitalized(type);
  return "  void apply() {\n    " + t + " " + a + " = new " + t + "();\n    " + t + " " + b + " = " + a +
         ".copy();\n    " + a + ".merge(" + b + ");\n  }\n";
}

std::string noise_block(const std::string& type, const std::string& var, std::size_t index) {
  const auto t = capitalized(type);
  return "  void step" + std::string(1, static_cast<char>('A' + index % 26)) + "() {\n    " + t + " " + var +
         " = new " + t + "();\n    " + var + ".tick(" + std::to_string(index + 2) + ");\n  }\n";
}

}  // namespace

std::vector<std::string> pseudo_words(std::size_t count, std::uint64_t seed, std::set<std::string>& taken) {
  static const std::string consonants = "bdfgklmnprstvz";
  static const std::string vowels = "aeiou";
  const auto java = java_profile();
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  while (out.size() < count) {
    std::string w;
    for (int s = 0; s < 3; ++s) {
      w += consonants[rng() % consonants.size()];
      w += vowels[rng() % vowels.size()];
    }
    if (is_stop_word(w) || java.is_keyword(w) || !taken.insert(w).second) continue;
    out.push_back(w);
  }
  return out;
}

PlantedCorpus make_planted_corpus(const PlantedOptions& o, const LanguageProfile& profile) {
  std::mt19937_64 rng(o.seed * 7919 + 17);
  std::set<std::string> taken;
  const auto filler = pseudo_words(o.filler_pool, rng(), taken);
  const auto noise_types = pseudo_words(o.noise_blocks, rng(), taken);
  const std::size_t labels = o.visible_labels + o.hidden_labels;
  const auto label_types = pseudo_words(labels, rng(), taken);
  const std::size_t total_docs = labels * o.docs_per_label + o.hidden_labels + o.background_docs;
  const auto names = pseudo_words(total_docs, rng(), taken);

  PlantedCorpus out;
  std::size_t next_name = 0;

  auto comment = [&](std::vector<std::string> words) {
    std::string text = "// ";
    for (std::size_t i = 0; i < o.comment_length; ++i) words.push_back(pick(filler, rng));
    std::shuffle(words.begin(), words.end(), rng);
    return text + join(words) + "\n";
  };
  auto filler_var = [&] { return camel(pick(filler, rng), pick(filler, rng)); };
  auto noise = [&] {
    std::string body;
    std::vector<std::size_t> chosen;
    while (chosen.size() < o.noise_blocks_per_doc) {
      const auto n = static_cast<std::size_t>(rng() % o.noise_blocks);
      if (std::find(chosen.begin(), chosen.end(), n) == chosen.end()) chosen.push_back(n);
    }
    std::sort(chosen.begin(), chosen.end());
    for (const auto n : chosen) body += noise_block(noise_types[n], filler_var(), n);
    return body;
  };
  auto add_doc = [&](const std::string& label, const std::string& comments, const std::string& body) {
    const auto& name = names[next_name++];
    const std::string source = comments + "public class " + capitalized(name) + " {\n" + body + "}\n";
    out.documents.push_back(make_document(name + ".java", source, label, profile));
  };

  for (std::size_t l = 0; l < labels; ++l) {
    const bool hidden = l >= o.visible_labels;
    const std::string label = (hidden ? "hidden" : "visible") + std::to_string(l);
    const auto words = pseudo_words(o.words_per_label, rng(), taken);
    out.label_words[label] = words;
    if (hidden) out.hidden_labels.insert(label);

    for (std::size_t d = 0; d < o.docs_per_label; ++d) {
      const auto described = hidden ? std::vector<std::string>{} : sample(words, words.size() - 1, rng);
      add_doc(label, comment(described), label_block(label_types[l], filler_var(), filler_var()) + noise());
    }
    if (hidden) {
      const auto bridge_body = label_block(label_types[l], camel(words[0], words[1 % words.size()]),
                                           camel(words[2 % words.size()], words[3 % words.size()]));
      add_doc("bridge" + std::to_string(l), comment({}), bridge_body + noise());
    }
    for (std::size_t q = 0; q < o.queries_per_label; ++q) {
      out.queries.push_back(make_query("q" + std::to_string(l) + "_" + std::to_string(q),
                                       join(sample(words, o.query_length, rng)), label));
    }
  }
  for (std::size_t b = 0; b < o.background_docs; ++b) {
    add_doc("background" + std::to_string(b), comment({}), noise());
  }
  std::sort(out.documents.begin(), out.documents.end(),
            [](const CodeDocument& a, const CodeDocument& b) { return a.id < b.id; });
  return out;
}

}  // namespace coderet::testing

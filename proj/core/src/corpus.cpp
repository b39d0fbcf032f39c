#include "coderet/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "coderet/tokenizer.hpp"

namespace coderet {
namespace fs = std::filesystem;

namespace {

std::optional<std::string> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buffer.str();
}

bool looks_binary(std::string_view content) {
  const auto probe = content.substr(0, 8192);
  return probe.find('\0') != std::string_view::npos;
}

std::vector<std::string> split_tabs(std::string_view line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    if (tab == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      return fields;
    }
    fields.emplace_back(line.substr(start, tab - start));
    start = tab + 1;
  }
}

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

}  // namespace

CodeDocument make_document(std::string id, std::string source, std::string label,
                           const LanguageProfile& profile, Diagnostics* diagnostics) {
  CodeDocument doc;
  doc.path = id;
  doc.id = std::move(id);
  doc.tokens = extract_tokens(source, profile, diagnostics);
  doc.source = std::move(source);
  doc.label = std::move(label);
  return doc;
}

LabelRule load_label_manifest(const fs::path& path) {
  const auto content = read_file(path);
  if (!content) throw_usage("cannot read label manifest '" + path.string() + "'");
  std::map<std::string, std::string> entries;
  std::istringstream in(*content);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = strip_cr(line);
    if (view.empty()) continue;
    const auto fields = split_tabs(view);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      throw_usage("label manifest '" + path.string() + "' line " + std::to_string(line_no) +
                  ": expected 'path<TAB>label'");
    if (!entries.emplace(fields[0], fields[1]).second)
      throw_usage("label manifest '" + path.string() + "' line " + std::to_string(line_no) +
                  ": duplicate entry '" + fields[0] + "'");
  }
  return LabelRule::from_manifest(std::move(entries));
}

std::vector<fs::path> list_source_files(const fs::path& root, const LanguageProfile& profile) {
  if (!fs::is_directory(root)) throw_usage("corpus root '" + root.string() + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    if (!profile.matches_extension(entry.path())) continue;
    files.push_back(fs::relative(entry.path(), root));
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.generic_string() < b.generic_string(); });
  return files;
}

IngestedCorpus ingest_corpus(const fs::path& root, const LanguageProfile& profile,
                             const LabelRule& label_rule) {
  profile.validate();
  if (!fs::exists(root)) throw_usage("corpus root '" + root.string() + "' does not exist");
  const auto files = list_source_files(root, profile);

  IngestedCorpus out;
  std::set<std::string> seen;
  for (const auto& rel : files) {
    const auto id = rel.generic_string();
    seen.insert(id);
    const auto content = read_file(root / rel);
    if (!content) {
      out.report.skipped.push_back({id, "unreadable"});
      continue;
    }
    if (looks_binary(*content)) {
      out.report.skipped.push_back({id, "binary"});
      continue;
    }
    std::string label = id;
    if (label_rule.kind == LabelRule::Kind::manifest) {
      const auto it = label_rule.manifest.find(id);
      if (it == label_rule.manifest.end()) {
        out.report.skipped.push_back({id, "no manifest label"});
        continue;
      }
      label = it->second;
    }
    Diagnostics diag;
    auto doc = make_document(id, *content, std::move(label), profile, &diag);
    doc.path = root / rel;
    for (auto& w : diag.warnings) out.report.warnings.push_back(id + ": " + w);
    out.documents.push_back(std::move(doc));
  }

  if (label_rule.kind == LabelRule::Kind::manifest) {
    for (const auto& [path, label] : label_rule.manifest) {
      if (!seen.contains(path)) throw_usage("manifest entry missing on disk: '" + path + "'");
    }
  }
  if (out.documents.empty()) throw_runtime("empty corpus: no readable source files under '" +
                                           root.string() + "'");
  return out;
}

Query make_query(std::string id, std::string text, std::optional<std::string> label) {
  Query q;
  q.id = std::move(id);
  q.tokens = text_tokens(text);
  q.text = std::move(text);
  q.label = std::move(label);
  return q;
}

std::vector<Query> parse_queries(std::string_view content, QueryMode mode, Diagnostics* diagnostics) {
  std::vector<Query> queries;
  std::set<std::string> ids;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    auto eol = content.find('\n', pos);
    if (eol == std::string_view::npos) eol = content.size();
    const auto line = strip_cr(content.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;
    if (line.empty()) {
      if (eol == content.size()) break;
      continue;
    }
    const auto fields = split_tabs(line);
    const auto where = "query file line " + std::to_string(line_no);
    if (fields.size() != 3) throw_usage(where + ": expected 'id<TAB>label<TAB>text'");
    if (fields[0].empty()) throw_usage(where + ": empty query id");
    if (!ids.insert(fields[0]).second) throw_usage(where + ": duplicate query id '" + fields[0] + "'");

    std::optional<std::string> label;
    if (!fields[1].empty()) label = fields[1];
    if (mode == QueryMode::evaluation && !label)
      throw_usage(where + ": evaluation requires labeled queries");

    auto query = make_query(fields[0], fields[2], std::move(label));
    if (query.tokens.empty()) {
      if (diagnostics)
        diagnostics->warn(where + ": query '" + query.id + "' has no usable text; skipped");
      continue;
    }
    queries.push_back(std::move(query));
    if (eol == content.size()) break;
  }
  return queries;
}

std::vector<Query> load_queries(const fs::path& file, QueryMode mode, Diagnostics* diagnostics) {
  const auto content = read_file(file);
  if (!content) throw_usage("cannot read query file '" + file.string() + "'");
  return parse_queries(*content, mode, diagnostics);
}

}  // namespace coderet

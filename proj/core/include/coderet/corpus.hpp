#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coderet/errors.hpp"
#include "coderet/language_profile.hpp"

namespace coderet {

/// One program file of the corpus.
struct CodeDocument {
  std::string id;  // path relative to the corpus root, '/'-separated
  std::filesystem::path path;
  std::string source;
  std::vector<std::string> tokens;
  std::string label;
};

/// A natural-language query. Training and evaluation queries carry a label
/// drawn from the document label vocabulary; serving-time queries do not.
struct Query {
  std::string id;
  std::string text;
  std::vector<std::string> tokens;
  std::optional<std::string> label;
};

/// How labels are assigned to ingested files.
struct LabelRule {
  enum class Kind { per_file, manifest };

  Kind kind = Kind::per_file;
  std::map<std::string, std::string> manifest;  // relative path -> label

  static LabelRule per_file() { return {}; }
  static LabelRule from_manifest(std::map<std::string, std::string> entries) {
    return {Kind::manifest, std::move(entries)};
  }
};

/// Parses a `path<TAB>label` manifest file.
LabelRule load_label_manifest(const std::filesystem::path& path);

struct IngestionReport {
  struct Skip {
    std::string path;
    std::string reason;
  };
  std::vector<Skip> skipped;
  std::vector<std::string> warnings;
};

struct IngestedCorpus {
  std::vector<CodeDocument> documents;  // sorted by id
  IngestionReport report;
};

/// Builds a document from in-memory source; used by ingestion and by tests
/// that synthesize corpora.
CodeDocument make_document(std::string id, std::string source, std::string label,
                           const LanguageProfile& profile, Diagnostics* diagnostics = nullptr);

/// Reads every file under `root` whose extension the profile accepts.
/// Binary and unreadable files are skipped and reported; an empty result or
/// a manifest entry without a file is fatal.
IngestedCorpus ingest_corpus(const std::filesystem::path& root, const LanguageProfile& profile,
                             const LabelRule& label_rule);

/// Relative ids of the files `ingest_corpus` would consider, sorted.
std::vector<std::filesystem::path> list_source_files(const std::filesystem::path& root,
                                                     const LanguageProfile& profile);

enum class QueryMode { serving, evaluation };

/// Loads `id<TAB>label<TAB>text` records. Blank lines are ignored; records
/// with no usable text are skipped with a warning.
std::vector<Query> load_queries(const std::filesystem::path& file, QueryMode mode,
                                Diagnostics* diagnostics = nullptr);
std::vector<Query> parse_queries(std::string_view content, QueryMode mode,
                                 Diagnostics* diagnostics = nullptr);

Query make_query(std::string id, std::string text, std::optional<std::string> label = std::nullopt);

}  // namespace coderet

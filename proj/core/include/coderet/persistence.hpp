#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "coderet/hmlcr.hpp"
#include "coderet/indices.hpp"
#include "coderet/vectorize.hpp"

namespace coderet {

// Dense matrix text format:
//   <rows> <cols>
//   one line per row, entries separated by single spaces, %.17g
// Reading it back reproduces every double exactly.
void write_dense(std::ostream& out, const Matrix& m);
Matrix read_dense(std::istream& in);
void write_dense_file(const std::filesystem::path& path, const Matrix& m);
Matrix read_dense_file(const std::filesystem::path& path);

/// Nonzero pattern of a sparse matrix: a `<rows> <cols> <nnz>` header, then
/// `row<TAB>col` per nonzero in column-major order.
std::string sparsity_dump(const SparseMatrix& m);
/// Inverse of sparsity_dump; every stored entry becomes 1.
SparseMatrix parse_sparsity_dump(std::istream& in);

inline constexpr int kModelFormatVersion = 1;

struct ModelFile {
  Hyperparams hyper;
  std::string fingerprint;
  bool converged = false;
  Vocabulary vocab;
  FeatureIndex features;
  Matrix u;
  Matrix v;
};

void write_model(std::ostream& out, const ModelFile& model);
ModelFile read_model(std::istream& in);
void write_model_file(const std::filesystem::path& path, const ModelFile& model);
ModelFile read_model_file(const std::filesystem::path& path);

std::string sha256_hex(std::string_view data);

/// Hash over the sorted (relative path, file hash) pairs of the given files.
std::string corpus_fingerprint(const std::filesystem::path& root,
                               const std::vector<std::filesystem::path>& relative_files);

/// Reads a whole file; throws a usage error naming the path on failure.
std::string read_text_file(const std::filesystem::path& path);
/// Writes a whole file, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace coderet

#include <cstdio>
#include <fstream>
#include <sstream>

#include "coderet/errors.hpp"
#include "coderet/persistence.hpp"

namespace coderet {

namespace {

void put_double(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

void write_dense(std::ostream& out, const Matrix& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      put_double(out, m(i, j));
    }
    out << '\n';
  }
}

Matrix read_dense(std::istream& in) {
  long long rows = -1;
  long long cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) throw_usage("malformed matrix header");
  Matrix m(rows, cols);
  std::string token;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (!(in >> token)) throw_usage("matrix ends early");
      try {
        std::size_t used = 0;
        m(i, j) = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw_usage("malformed matrix entry '" + token + "'");
      }
    }
  }
  return m;
}

void write_dense_file(const std::filesystem::path& path, const Matrix& m) {
  std::ostringstream out;
  write_dense(out, m);
  write_text_file(path, out.str());
}

Matrix read_dense_file(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  try {
    return read_dense(in);
  } catch (const Error& e) {
    throw_usage(path.string() + ": " + e.what());
  }
}

std::string sparsity_dump(const SparseMatrix& m) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  for (Eigen::Index j = 0; j < m.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(m, j); it; ++it) out << it.row() << '\t' << it.col() << '\n';
  }
  return out.str();
}

SparseMatrix parse_sparsity_dump(std::istream& in) {
  long long rows = -1;
  long long cols = -1;
  long long nnz = -1;
  if (!(in >> rows >> cols >> nnz) || rows < 0 || cols < 0 || nnz < 0) throw_usage("malformed sparsity header");
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(static_cast<std::size_t>(nnz));
  for (long long n = 0; n < nnz; ++n) {
    long long i = -1;
    long long j = -1;
    if (!(in >> i >> j) || i < 0 || j < 0 || i >= rows || j >= cols) throw_usage("malformed sparsity entry");
    entries.emplace_back(static_cast<int>(i), static_cast<int>(j), 1.0);
  }
  SparseMatrix m(rows, cols);
  m.setFromTriplets(entries.begin(), entries.end(), [](double, double b) { return b; });
  return m;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_usage("cannot read '" + path.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw_runtime("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw_runtime("write to '" + path.string() + "' failed");
}

}  // namespace coderet

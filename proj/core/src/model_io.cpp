#include <cstdio>
#include <fstream>
#include <sstream>

#include "coderet/errors.hpp"
#include "coderet/persistence.hpp"

namespace coderet {

namespace {

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string expect_field(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line)) throw_usage("model file ends before '" + name + "'");
  const auto space = line.find(' ');
  if (space == std::string::npos || line.substr(0, space) != name) {
    throw_usage("model file: expected '" + name + "', found '" + line + "'");
  }
  return line.substr(space + 1);
}

double to_double(const std::string& text, const std::string& name) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw_usage("model file: bad value for '" + name + "'");
}

std::size_t to_size(const std::string& text, const std::string& name) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(text, &used);
    if (used == text.size()) return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
  }
  throw_usage("model file: bad value for '" + name + "'");
}

std::vector<std::string> read_listing(std::istream& in, const std::string& name) {
  const auto count = to_size(expect_field(in, name), name);
  std::vector<std::string> out;
  out.reserve(count);
  std::string line;
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::getline(in, line)) throw_usage("model file: " + name + " listing ends early");
    out.push_back(line);
  }
  return out;
}

}  // namespace

void write_model(std::ostream& out, const ModelFile& model) {
  const auto& h = model.hyper;
  out << "coderet-model " << kModelFormatVersion << '\n';
  out << "dx " << model.u.rows() << '\n';
  out << "dy " << model.v.rows() << '\n';
  out << "k " << model.u.cols() << '\n';
  out << "lambda1 " << exact(h.lambda1) << '\n';
  out << "lambda2 " << exact(h.lambda2) << '\n';
  out << "lambda3 " << exact(h.lambda3) << '\n';
  out << "eta " << exact(h.eta) << '\n';
  out << "max_iter " << h.max_iter << '\n';
  out << "tol " << exact(h.tol) << '\n';
  out << "seed " << h.seed << '\n';
  out << "backtracking " << (h.backtracking ? 1 : 0) << '\n';
  out << "converged " << (model.converged ? 1 : 0) << '\n';
  out << "fingerprint " << model.fingerprint << '\n';
  out << "vocabulary " << model.vocab.size() << '\n';
  for (const auto& w : model.vocab.entries()) out << w << '\n';
  out << "features " << model.features.size() << '\n';
  for (const auto& f : model.features.entries()) out << f << '\n';
  out << "U\n";
  write_dense(out, model.u);
  out << "V\n";
  write_dense(out, model.v);
}

ModelFile read_model(std::istream& in) {
  const auto version = to_size(expect_field(in, "coderet-model"), "coderet-model");
  if (version != static_cast<std::size_t>(kModelFormatVersion)) {
    throw_usage("unsupported model format version " + std::to_string(version));
  }
  ModelFile model;
  auto& h = model.hyper;
  const auto dx = to_size(expect_field(in, "dx"), "dx");
  const auto dy = to_size(expect_field(in, "dy"), "dy");
  h.k = to_size(expect_field(in, "k"), "k");
  h.lambda1 = to_double(expect_field(in, "lambda1"), "lambda1");
  h.lambda2 = to_double(expect_field(in, "lambda2"), "lambda2");
  h.lambda3 = to_double(expect_field(in, "lambda3"), "lambda3");
  h.eta = to_double(expect_field(in, "eta"), "eta");
  h.max_iter = to_size(expect_field(in, "max_iter"), "max_iter");
  h.tol = to_double(expect_field(in, "tol"), "tol");
  h.seed = to_size(expect_field(in, "seed"), "seed");
  h.backtracking = expect_field(in, "backtracking") == "1";
  model.converged = expect_field(in, "converged") == "1";
  model.fingerprint = expect_field(in, "fingerprint");
  model.vocab = Vocabulary(read_listing(in, "vocabulary"));
  model.features = FeatureIndex(read_listing(in, "features"));

  std::string marker;
  if (!std::getline(in, marker) || marker != "U") throw_usage("model file: missing U");
  model.u = read_dense(in);
  in >> std::ws;
  if (!std::getline(in, marker) || marker != "V") throw_usage("model file: missing V");
  model.v = read_dense(in);

  const auto k = static_cast<Eigen::Index>(h.k);
  if (model.u.rows() != static_cast<Eigen::Index>(dx) || model.v.rows() != static_cast<Eigen::Index>(dy) ||
      model.u.cols() != k || model.v.cols() != k || model.vocab.size() != dx || model.features.size() != dy) {
    throw_usage("model file: header dimensions disagree with its contents");
  }
  return model;
}

void write_model_file(const std::filesystem::path& path, const ModelFile& model) {
  std::ostringstream out;
  write_model(out, model);
  write_text_file(path, out.str());
}

ModelFile read_model_file(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  try {
    return read_model(in);
  } catch (const Error& e) {
    throw_usage(path.string() + ": " + e.what());
  }
}

}  // namespace coderet

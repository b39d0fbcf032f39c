#include <cmath>
#include <limits>

#include "coderet/hmlcr.hpp"

namespace coderet {

void Hyperparams::validate(std::size_t word_dims, std::size_t feature_dims) const {
  if (lambda1 < 0.0 || lambda2 < 0.0 || lambda3 < 0.0)
    throw_usage("regularization weights must be nonnegative");
  if (k == 0) throw_usage("latent dimension k must be positive");
  if (k > word_dims || k > feature_dims)
    throw_usage("latent dimension k = " + std::to_string(k) + " exceeds min(d^x, d^y) = " +
                std::to_string(std::min(word_dims, feature_dims)));
  if (!(eta > 0.0) || !std::isfinite(eta)) throw_usage("learning rate eta must be a positive finite number");
  if (max_iter == 0) throw_usage("max_iter must be positive");
  if (!(tol >= 0.0)) throw_usage("tol must be nonnegative");
}

void TrainingData::validate() const {
  if (x.cols() != y.cols()) throw_runtime("X and Y disagree on the number of documents");
  if (r.rows() != x.rows() || r.cols() != y.rows()) throw_runtime("R must be d^x x d^y");
  if (static_cast<Eigen::Index>(graph.documents) != x.cols())
    throw_runtime("label graph size does not match the number of training documents");
}

double pull_loss(const Matrix& u, const Matrix& v, const SparseMatrix& x, const SparseMatrix& y) {
  const Matrix diff = Matrix(x.transpose() * u) - Matrix(y.transpose() * v);
  return 0.5 * diff.squaredNorm();
}

namespace {

double graph_from_projections(const Matrix& p, const Matrix& q, const LabelGraph& g) {
  // tr(A^T L B) summed over the four blocks; p = X^T U, q = Y^T V.
  const double xx = (p.transpose() * (g.xx * p)).trace();
  const double xy = (p.transpose() * (g.xy * q)).trace();
  const double yx = (q.transpose() * (g.yx * p)).trace();
  const double yy = (q.transpose() * (g.yy * q)).trace();
  return 0.5 * (xx + xy + yx + yy);
}

double content_from(const Matrix& u, const Matrix& v, const SparseMatrix& r) {
  const Matrix utu = u.transpose() * u;
  const Matrix vtv = v.transpose() * v;
  const double approx = (utu.cwiseProduct(vtv)).sum();
  double cross = 0.0;
  double r2 = 0.0;
  for (Eigen::Index j = 0; j < r.outerSize(); ++j) {
    for (SparseMatrix::InnerIterator it(r, j); it; ++it) {
      cross += it.value() * u.row(it.row()).dot(v.row(it.col()));
      r2 += it.value() * it.value();
    }
  }
  return 0.5 * (approx - 2.0 * cross + r2);
}

}  // namespace

double graph_reg(const Matrix& u, const Matrix& v, const SparseMatrix& x, const SparseMatrix& y,
                 const LabelGraph& graph) {
  const Matrix p = x.transpose() * u;
  const Matrix q = y.transpose() * v;
  return graph_from_projections(p, q, graph);
}

double content_reg(const Matrix& u, const Matrix& v, const SparseMatrix& r) {
  return content_from(u, v, r);
}

double scale_reg(const Matrix& u, const Matrix& v) {
  return 0.5 * u.squaredNorm() + 0.5 * v.squaredNorm();
}

LossBreakdown total_loss(const Matrix& u, const Matrix& v, const TrainingData& data,
                         const Hyperparams& hyper) {
  const Matrix p = data.x.transpose() * u;
  const Matrix q = data.y.transpose() * v;
  LossBreakdown out;
  out.pull = 0.5 * (p - q).squaredNorm();
  out.graph = graph_from_projections(p, q, data.graph);
  out.content = content_from(u, v, data.r);
  out.scale = scale_reg(u, v);
  out.total = hyper.lambda1 * out.pull + hyper.lambda2 * out.graph + hyper.lambda3 * out.content + out.scale;
  return out;
}

Matrix grad_u(const Matrix& u, const Matrix& v, const TrainingData& data, const Hyperparams& hyper) {
  const Matrix p = data.x.transpose() * u;
  const Matrix q = data.y.transpose() * v;
  // The pull and graph terms both act through X, so they share one product.
  const Matrix inner = hyper.lambda1 * (p - q) +
                       hyper.lambda2 * (Matrix(data.graph.xx * p) + Matrix(data.graph.xy * q));
  Matrix g = data.x * inner;
  if (hyper.lambda3 != 0.0) {
    const Matrix vtv = v.transpose() * v;
    g += hyper.lambda3 * (u * vtv - Matrix(data.r * v));
  }
  g += u;
  return g;
}

Matrix grad_v(const Matrix& u, const Matrix& v, const TrainingData& data, const Hyperparams& hyper) {
  const Matrix p = data.x.transpose() * u;
  const Matrix q = data.y.transpose() * v;
  const Matrix inner = hyper.lambda1 * (q - p) +
                       hyper.lambda2 * (Matrix(data.graph.yx * p) + Matrix(data.graph.yy * q));
  Matrix g = data.y * inner;
  if (hyper.lambda3 != 0.0) {
    const Matrix utu = u.transpose() * u;
    g += hyper.lambda3 * (v * utu - Matrix(data.r.transpose() * u));
  }
  g += v;
  return g;
}

}  // namespace coderet

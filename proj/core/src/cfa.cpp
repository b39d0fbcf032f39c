#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "coderet/hmlcr.hpp"

namespace coderet {
namespace {

// Thin QR of a dense copy: a = q * r with q having min(rows, cols) columns.
void thin_qr(const SparseMatrix& a, Matrix& q, Matrix& r) {
  const Matrix dense(a);
  const Eigen::Index rank = std::min(dense.rows(), dense.cols());
  Eigen::HouseholderQR<Matrix> qr(dense);
  q = qr.householderQ() * Matrix::Identity(dense.rows(), rank);
  r = qr.matrixQR().topRows(rank).triangularView<Eigen::Upper>();
}

Eigen::Index largest_magnitude_index(const Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  return best;
}

// Fills columns [from, k) of `basis` with seeded vectors orthonormal to
// everything before them.
void complete_basis(Matrix& basis, Eigen::Index from, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (Eigen::Index c = from; c < basis.cols(); ++c) {
    for (int attempt = 0; attempt < 100; ++attempt) {
      Eigen::VectorXd candidate(basis.rows());
      for (Eigen::Index i = 0; i < candidate.size(); ++i) candidate[i] = normal(rng);
      for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index p = 0; p < c; ++p) candidate -= basis.col(p).dot(candidate) * basis.col(p);
      }
      const double norm = candidate.norm();
      if (norm > 1e-8) {
        candidate /= norm;
        if (candidate[largest_magnitude_index(candidate)] < 0.0) candidate = -candidate;
        basis.col(c) = candidate;
        break;
      }
    }
  }
}

}  // namespace

CfaInit cfa_init(const SparseMatrix& x, const SparseMatrix& y, std::size_t k, std::uint64_t seed) {
  if (x.cols() != y.cols()) throw_runtime("cfa_init: X and Y disagree on the number of documents");
  const auto dx = x.rows();
  const auto dy = y.rows();
  const auto kk = static_cast<Eigen::Index>(k);
  if (kk == 0 || kk > dx || kk > dy)
    throw_usage("cfa_init: k = " + std::to_string(k) + " must lie in [1, min(d^x, d^y)]");

  CfaInit out;
  out.u = Matrix::Zero(dx, kk);
  out.v = Matrix::Zero(dy, kk);

  // X Y^T = Qx (Rx Ry^T) Qy^T, so its SVD follows from the small core matrix.
  Matrix qx, rx, qy, ry;
  thin_qr(x, qx, rx);
  thin_qr(y, qy, ry);
  const Matrix core = rx * ry.transpose();

  Eigen::Index used = 0;
  if (core.size() > 0) {
    Eigen::BDCSVD<Matrix> svd(core, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sigma = svd.singularValues();
    const double cutoff = sigma.size() > 0
                              ? sigma[0] * static_cast<double>(std::max(core.rows(), core.cols())) *
                                    std::numeric_limits<double>::epsilon()
                              : 0.0;
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma[rank] > cutoff && sigma[rank] > 0.0) ++rank;
    out.singular_values = sigma.head(rank);
    used = std::min(rank, kk);
    for (Eigen::Index c = 0; c < used; ++c) {
      Eigen::VectorXd uc = qx * svd.matrixU().col(c);
      Eigen::VectorXd vc = qy * svd.matrixV().col(c);
      // Flip the pair together so u^T X Y^T v stays equal to sigma.
      if (uc[largest_magnitude_index(uc)] < 0.0) {
        uc = -uc;
        vc = -vc;
      }
      out.u.col(c) = uc;
      out.v.col(c) = vc;
    }
  }

  if (used < kk) {
    out.warnings.push_back("rank(X Y^T) = " + std::to_string(used) + " < k = " + std::to_string(k) +
                           "; remaining columns padded with a seeded orthonormal complement");
    std::mt19937_64 rng(seed);
    complete_basis(out.u, used, rng);
    complete_basis(out.v, used, rng);
  }
  return out;
}

}  // namespace coderet

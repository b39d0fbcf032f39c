#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "coderet/vectorize.hpp"

namespace coderet {

using Matrix = Eigen::MatrixXd;

/// Weights and optimizer settings of the objective
///   lambda1 * pull + lambda2 * graph + lambda3 * content + scale.
struct Hyperparams {
  double lambda1 = 1.0;
  double lambda2 = 0.1;
  double lambda3 = 0.2;
  std::size_t k = 64;
  double eta = 1e-3;
  std::size_t max_iter = 500;
  double tol = 1e-6;
  std::uint64_t seed = 0;
  /// Halve eta and retry whenever an iteration increases the loss.
  bool backtracking = false;

  void validate(std::size_t word_dims, std::size_t feature_dims) const;
};

/// Everything the objective needs, restricted to the training documents.
struct TrainingData {
  SparseMatrix x;  // d^x x m
  SparseMatrix y;  // d^y x m
  SparseMatrix r;  // d^x x d^y
  LabelGraph graph;

  void validate() const;
};

struct LossBreakdown {
  double pull = 0.0;
  double graph = 0.0;
  double content = 0.0;
  double scale = 0.0;
  double total = 0.0;
};

/// 1/2 ||X^T U - Y^T V||_F^2
double pull_loss(const Matrix& u, const Matrix& v, const SparseMatrix& x, const SparseMatrix& y);

/// 1/2 tr(O L O^T) with O = [U^T X, V^T Y], evaluated block by block.
double graph_reg(const Matrix& u, const Matrix& v, const SparseMatrix& x, const SparseMatrix& y,
                 const LabelGraph& graph);

/// 1/2 ||U V^T - R||_F^2, evaluated without forming U V^T.
double content_reg(const Matrix& u, const Matrix& v, const SparseMatrix& r);

/// 1/2 ||U||_F^2 + 1/2 ||V||_F^2
double scale_reg(const Matrix& u, const Matrix& v);

LossBreakdown total_loss(const Matrix& u, const Matrix& v, const TrainingData& data,
                         const Hyperparams& hyper);

Matrix grad_u(const Matrix& u, const Matrix& v, const TrainingData& data, const Hyperparams& hyper);
Matrix grad_v(const Matrix& u, const Matrix& v, const TrainingData& data, const Hyperparams& hyper);

/// Cross-modal factor analysis: the top-k singular pairs of X Y^T.
struct CfaInit {
  Matrix u;  // d^x x k, orthonormal columns
  Matrix v;  // d^y x k, orthonormal columns
  Eigen::VectorXd singular_values;  // of X Y^T, descending, numerically nonzero ones
  std::vector<std::string> warnings;
};

/// Each singular pair is signed so the largest-magnitude entry of its text
/// vector is positive. Columns beyond rank(X Y^T) are filled with a
/// seeded orthonormal complement.
CfaInit cfa_init(const SparseMatrix& x, const SparseMatrix& y, std::size_t k, std::uint64_t seed = 0);

struct Model {
  Matrix u;
  Matrix v;
  Hyperparams hyper;
  LossBreakdown initial;
  std::vector<LossBreakdown> trace;  // one entry per completed iteration
  bool converged = false;
  /// Learning rate in effect at the end; below hyper.eta only after backtracking.
  double final_eta = 0.0;
  std::vector<std::string> warnings;
};

/// Alternating gradient descent from the CFA solution: U first, then V with
/// the fresh U. Stops when the relative change of the total falls below tol.
Model train(const TrainingData& data, const Hyperparams& hyper);

/// The same trainer with the graph term switched off.
Model train_cfa_plus_cr(const TrainingData& data, const Hyperparams& hyper);

/// Halves `start` until one full U-then-V step from the CFA solution strictly
/// decreases the total loss.
double find_descent_step(const TrainingData& data, const Hyperparams& hyper, double start = 1e-2,
                         int max_halvings = 60);

}  // namespace coderet

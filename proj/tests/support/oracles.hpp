#pragma once

// Independent reference implementations. They use the plainest dense
// formulas available and share no code with the library paths they check.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace coderet::testing {

using Dense = Eigen::MatrixXd;

/// Normalized Laplacian of the label graph over 2m stacked views.
Dense laplacian_oracle(const std::vector<std::string>& labels);

struct Lambdas {
  double l1, l2, l3;
};

/// lambda1 * 1/2||X^T U - Y^T V||^2 + lambda2 * 1/2 tr(O L O^T)
///   + lambda3 * 1/2||U V^T - R||^2 + 1/2||U||^2 + 1/2||V||^2
double loss_oracle(const Dense& u, const Dense& v, const Dense& x, const Dense& y, const Dense& r,
                   const std::vector<std::string>& labels, Lambdas lambdas);

/// Central differences of f at every entry of `at`.
Dense finite_difference(const std::function<double(const Dense&)>& f, const Dense& at, double h);

double relative_error(const Dense& a, const Dense& b);

Dense random_nonnegative(std::size_t rows, std::size_t cols, double density, std::mt19937_64& rng);
Dense random_binary(std::size_t rows, std::size_t cols, double density, std::mt19937_64& rng);
Dense random_normal(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
/// rows x cols with orthonormal columns (rows >= cols).
Dense random_orthonormal(std::size_t rows, std::size_t cols, std::mt19937_64& rng);
std::vector<std::string> random_labels(std::size_t m, std::size_t alphabet, std::mt19937_64& rng);

Eigen::SparseMatrix<double> to_sparse(const Dense& m);

// Metric oracles over a ranking of doc ids.
std::size_t hits_oracle(const std::vector<std::string>& ranking, const std::set<std::string>& relevant,
                        std::size_t n);
double ndcg_oracle(const std::vector<std::string>& ranking, const std::set<std::string>& relevant,
                   std::size_t p);

/// A fresh, empty directory under the system temp directory.
std::filesystem::path fresh_temp_dir(const std::string& name);

/// Runs a shell command; returns its exit status and captures stdout.
struct CommandResult {
  int status = -1;
  std::string out;
};
CommandResult run_command(const std::string& command);

std::string slurp(const std::filesystem::path& path);

}  // namespace coderet::testing

#include <cmath>
#include <map>

#include "coderet/vectorize.hpp"

namespace coderet {

namespace {

SparseMatrix block(const SparseMatrix& full, Eigen::Index row, Eigen::Index col, Eigen::Index size) {
  return SparseMatrix(full.block(row, col, size, size));
}

}  // namespace

LabelGraph build_label_graph(std::span<const std::string> labels) {
  const auto m = static_cast<Eigen::Index>(labels.size());
  const Eigen::Index n = 2 * m;

  std::map<std::string_view, std::vector<Eigen::Index>> groups;
  for (Eigen::Index v = 0; v < n; ++v) groups[labels[static_cast<std::size_t>(v % m)]].push_back(v);

  std::vector<Eigen::Triplet<double>> edges;
  Eigen::VectorXd degree = Eigen::VectorXd::Zero(n);
  for (const auto& [label, members] : groups) {
    for (const auto a : members) {
      for (const auto b : members) {
        if (a == b) continue;
        edges.emplace_back(static_cast<int>(a), static_cast<int>(b), 1.0);
      }
      degree[a] = static_cast<double>(members.size() - 1);
    }
  }

  LabelGraph g;
  g.documents = static_cast<std::size_t>(m);
  g.adjacency = SparseMatrix(n, n);
  g.adjacency.setFromTriplets(edges.begin(), edges.end());
  g.degree = degree;

  // Isolated vertices get D^-1/2 = 0, which leaves a unit diagonal entry.
  Eigen::VectorXd inv_sqrt(n);
  for (Eigen::Index v = 0; v < n; ++v) inv_sqrt[v] = degree[v] > 0.0 ? 1.0 / std::sqrt(degree[v]) : 0.0;

  std::vector<Eigen::Triplet<double>> lap;
  lap.reserve(edges.size() + static_cast<std::size_t>(n));
  for (Eigen::Index v = 0; v < n; ++v) lap.emplace_back(static_cast<int>(v), static_cast<int>(v), 1.0);
  for (const auto& e : edges)
    lap.emplace_back(e.row(), e.col(), -e.value() * inv_sqrt[e.row()] * inv_sqrt[e.col()]);
  g.laplacian = SparseMatrix(n, n);
  g.laplacian.setFromTriplets(lap.begin(), lap.end());

  g.xx = block(g.laplacian, 0, 0, m);
  g.xy = block(g.laplacian, 0, m, m);
  g.yx = block(g.laplacian, m, 0, m);
  g.yy = block(g.laplacian, m, m, m);
  return g;
}

}  // namespace coderet

#include "edgecons/edge_decomposition.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "edgecons/errors.hpp"

namespace edgecons {

namespace {

// Input-order indices of spanning-tree edges, found by BFS from root.
std::vector<bool> bfs_tree_edges(const Digraph& g, std::size_t root) {
  const std::size_t n = g.num_nodes();
  std::vector<std::vector<std::size_t>> out_edges(n);
  for (std::size_t k = 0; k < g.num_edges(); ++k) out_edges[g.edge(k).tail].push_back(k);

  std::vector<bool> in_tree(g.num_edges(), false);
  std::vector<bool> seen(n, false);
  std::queue<std::size_t> frontier;
  seen[root] = true;
  frontier.push(root);
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop();
    for (std::size_t k : out_edges[u]) {
      const std::size_t v = g.edge(k).head;
      if (seen[v]) continue;
      seen[v] = true;
      in_tree[k] = true;
      frontier.push(v);
    }
  }
  return in_tree;
}

}  // namespace

std::size_t EdgeDecomposition::internal_index(std::size_t input_edge) const {
  const auto it = std::find(perm.begin(), perm.end(), input_edge);
  if (it == perm.end()) throw std::out_of_range("edge index out of range");
  return static_cast<std::size_t>(it - perm.begin());
}

EdgeDecomposition decompose(const Digraph& g) {
  const auto root = find_root(g);
  if (!root) {
    throw Error(ErrorCode::NotQuasiStronglyConnected, "graph has no directed spanning tree");
  }

  EdgeDecomposition d;
  d.num_nodes = g.num_nodes();
  d.root = *root;

  const std::vector<bool> in_tree = bfs_tree_edges(g, d.root);
  for (std::size_t k = 0; k < g.num_edges(); ++k) {
    if (in_tree[k]) d.perm.push_back(k);
  }
  for (std::size_t k = 0; k < g.num_edges(); ++k) {
    if (!in_tree[k]) d.perm.push_back(k);
  }
  for (std::size_t k : d.perm) d.edges.push_back(g.edge(k));

  const auto n = static_cast<Eigen::Index>(d.num_nodes);
  const auto l = static_cast<Eigen::Index>(d.num_edges());
  const Eigen::Index tree = n - 1;
  const Eigen::Index cotree = l - tree;

  d.incidence = Matrix::Zero(n, l);
  d.weighted_in_incidence = Matrix::Zero(n, l);
  for (Eigen::Index k = 0; k < l; ++k) {
    const Edge& e = d.edges[static_cast<std::size_t>(k)];
    d.incidence(static_cast<Eigen::Index>(e.tail), k) = 1.0;
    d.incidence(static_cast<Eigen::Index>(e.head), k) = -1.0;
    d.weighted_in_incidence(static_cast<Eigen::Index>(e.head), k) = -e.weight;
  }
  d.graph_laplacian = d.weighted_in_incidence * d.incidence.transpose();
  d.edge_laplacian = d.incidence.transpose() * d.weighted_in_incidence;

  d.tree_incidence = d.incidence.leftCols(tree);
  d.cotree_incidence = d.incidence.rightCols(cotree);

  // E_Tᵀ E_T is SPD because a tree incidence matrix has full column rank.
  const Matrix gram = d.tree_incidence.transpose() * d.tree_incidence;
  d.cotree_map = gram.llt().solve(d.tree_incidence.transpose() * d.cotree_incidence);

  d.cut_basis = Matrix::Zero(tree, l);
  d.cut_basis.leftCols(tree).setIdentity();
  d.cut_basis.rightCols(cotree) = d.cotree_map;

  // The trailing columns of the full Q factor of Eᵀ span col(Eᵀ)^⊥ = null(E).
  if (cotree > 0) {
    Eigen::ColPivHouseholderQR<Matrix> qr(d.incidence.transpose());
    const Matrix q = qr.householderQ() * Matrix::Identity(l, l);
    d.flow_basis = q.rightCols(cotree);
  } else {
    d.flow_basis = Matrix::Zero(l, 0);
  }

  d.tree_in_product = d.tree_incidence.transpose() * d.weighted_in_incidence;
  d.essential_laplacian = d.tree_in_product * d.cut_basis.transpose();
  return d;
}

double DecompositionResiduals::max() const {
  return std::max({incidence_factorization, cotree_reconstruction, flow_nullity,
                   flow_orthonormality, laplacian_products});
}

DecompositionResiduals check_decomposition(const EdgeDecomposition& d) {
  DecompositionResiduals r;
  r.incidence_factorization = max_abs(d.incidence - d.tree_incidence * d.cut_basis);
  r.cotree_reconstruction = max_abs(d.tree_incidence * d.cotree_map - d.cotree_incidence);
  r.flow_nullity = max_abs(d.incidence * d.flow_basis);
  const auto c = d.flow_basis.cols();
  r.flow_orthonormality = max_abs(d.flow_basis.transpose() * d.flow_basis - Matrix::Identity(c, c));
  r.laplacian_products = std::max(
      {max_abs(d.graph_laplacian - d.weighted_in_incidence * d.incidence.transpose()),
       max_abs(d.edge_laplacian - d.incidence.transpose() * d.weighted_in_incidence),
       max_abs(d.essential_laplacian - d.tree_in_product * d.cut_basis.transpose())});
  return r;
}

double SimilarityResidual::max() const {
  return std::max({bottom_left, bottom_right, top_left});
}

SimilarityResidual verify_similarity_block_form(const EdgeDecomposition& d) {
  const Eigen::Index tree = d.cut_basis.rows();
  const Eigen::Index cotree = d.flow_basis.cols();
  const Eigen::Index l = d.cut_basis.cols();

  const Matrix rrt = d.cut_basis * d.cut_basis.transpose();
  Eigen::FullPivLU<Matrix> lu(rrt);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw Error(ErrorCode::SingularTransform, "R Rᵀ is numerically singular");
  }

  Matrix s(l, l);
  s << d.cut_basis.transpose(), d.flow_basis;
  Matrix s_inv(l, l);
  s_inv.topRows(tree) = lu.solve(d.cut_basis);
  s_inv.bottomRows(cotree) = d.flow_basis.transpose();

  const Matrix block = s_inv * d.edge_laplacian * s;
  SimilarityResidual r;
  r.top_left = max_abs(block.topLeftCorner(tree, tree) - d.essential_laplacian);
  r.bottom_left = max_abs(block.bottomLeftCorner(cotree, tree));
  r.bottom_right = max_abs(block.bottomRightCorner(cotree, cotree));
  return r;
}

}  // namespace edgecons

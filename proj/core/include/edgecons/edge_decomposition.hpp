#pragma once

#include <cstddef>
#include <vector>

#include "edgecons/digraph.hpp"
#include "edgecons/linalg.hpp"

namespace edgecons {

/// Spanning-tree / co-spanning-tree factorization of a quasi-strongly
/// connected digraph. Every matrix uses the internal tree-first edge order:
/// internal column k corresponds to input edge `perm[k]`, the first N-1
/// columns being spanning-tree edges.
struct EdgeDecomposition {
  std::size_t num_nodes = 0;
  std::size_t root = 0;
  std::vector<std::size_t> perm;
  std::vector<Edge> edges;  ///< edges in internal order

  Matrix incidence;              ///< E, N x L, +1 at tail, -1 at head
  Matrix weighted_in_incidence;  ///< E_⊙^w, N x L, -w at head
  Matrix graph_laplacian;        ///< L_G = E_⊙^w Eᵀ
  Matrix edge_laplacian;         ///< L_e = Eᵀ E_⊙^w
  Matrix tree_incidence;         ///< E_T, N x (N-1)
  Matrix cotree_incidence;       ///< E_C, N x (L-N+1)
  Matrix cotree_map;             ///< T with E_T T = E_C
  Matrix cut_basis;              ///< R = [I T]
  Matrix flow_basis;             ///< θ_e, orthonormal basis of null(E)
  Matrix essential_laplacian;    ///< L̂_e = E_Tᵀ E_⊙^w Rᵀ
  Matrix tree_in_product;        ///< L̂_O = E_Tᵀ E_⊙^w

  std::size_t num_edges() const noexcept { return edges.size(); }
  std::size_t tree_size() const noexcept { return num_nodes - 1; }
  std::size_t cotree_size() const noexcept { return num_edges() - tree_size(); }

  /// Internal column of input edge k.
  std::size_t internal_index(std::size_t input_edge) const;
};

/// Builds the decomposition. The tree is grown breadth-first from the
/// smallest valid root, scanning out-edges in input order; tree and co-tree
/// edges each keep their relative input order.
/// Throws Error(NotQuasiStronglyConnected) when no root exists.
EdgeDecomposition decompose(const Digraph& g);

/// Residuals of the decomposition identities, for diagnostics and tests.
struct DecompositionResiduals {
  double incidence_factorization = 0.0;  ///< ‖E - E_T R‖_max
  double cotree_reconstruction = 0.0;    ///< ‖E_T T - E_C‖_max
  double flow_nullity = 0.0;             ///< ‖E θ_e‖_max
  double flow_orthonormality = 0.0;      ///< ‖θ_eᵀθ_e - I‖_max
  double laplacian_products = 0.0;       ///< L_G, L_e, L̂_e product identities

  double max() const;
};

DecompositionResiduals check_decomposition(const EdgeDecomposition& d);

/// Block residuals of S_e⁻¹ L_e S_e with S_e = [Rᵀ θ_e].
struct SimilarityResidual {
  double bottom_left = 0.0;
  double bottom_right = 0.0;
  double top_left = 0.0;  ///< deviation from L̂_e

  double max() const;
};

/// Throws Error(SingularTransform) if R Rᵀ is numerically singular.
SimilarityResidual verify_similarity_block_form(const EdgeDecomposition& d);

}  // namespace edgecons

#include "edgecons/spectral.hpp"

#include <algorithm>
#include <limits>

namespace edgecons {

namespace {

std::vector<std::complex<double>> nonzero(const std::vector<std::complex<double>>& ev, double tol) {
  std::vector<std::complex<double>> out;
  std::copy_if(ev.begin(), ev.end(), std::back_inserter(out),
               [tol](const auto& z) { return std::abs(z) >= tol; });
  return out;
}

}  // namespace

double multiset_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (const auto& z : a) {
    auto best = b.begin();
    for (auto it = b.begin(); it != b.end(); ++it) {
      if (std::abs(*it - z) < std::abs(*best - z)) best = it;
    }
    worst = std::max(worst, std::abs(*best - z));
    b.erase(best);
  }
  return worst;
}

SpectrumReport spectral_properties(const EdgeDecomposition& d, const SpectralTolerances& tol) {
  SpectrumReport r;
  r.graph_laplacian = eigenvalues(d.graph_laplacian);
  r.edge_laplacian = eigenvalues(d.edge_laplacian);
  r.essential_laplacian = eigenvalues(d.essential_laplacian);

  const auto nz_graph = nonzero(r.graph_laplacian, tol.zero);
  const auto nz_edge = nonzero(r.edge_laplacian, tol.zero);
  r.nonzero_mismatch = multiset_distance(nz_graph, nz_edge);
  r.nonzero_spectra_match = nz_graph.size() == d.tree_size() && r.nonzero_mismatch <= tol.match;

  r.edge_zero_count = r.edge_laplacian.size() - nz_edge.size();
  r.zero_count_ok = r.edge_zero_count == d.cotree_size();

  r.rank_edge_laplacian = static_cast<std::size_t>(numerical_rank(d.edge_laplacian, tol.rank));
  r.rank_edge_laplacian_squared =
      static_cast<std::size_t>(numerical_rank(d.edge_laplacian * d.edge_laplacian, tol.rank));
  r.zero_index_one = r.rank_edge_laplacian == r.rank_edge_laplacian_squared &&
                     r.rank_edge_laplacian == d.tree_size();

  r.essential_positive_stable =
      std::all_of(r.essential_laplacian.begin(), r.essential_laplacian.end(),
                  [](const auto& z) { return z.real() > 0.0; });
  return r;
}

}  // namespace edgecons

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "edgecons/edge_decomposition.hpp"

namespace edgecons {

struct SpectralTolerances {
  double zero = 1e-8;    ///< |λ| below this counts as a zero eigenvalue
  double match = 1e-9;   ///< nonzero spectra of L_e and L_G must agree to this
  double rank = 1e-9;    ///< relative singular-value cutoff for rank
};

struct SpectrumReport {
  std::vector<std::complex<double>> graph_laplacian;
  std::vector<std::complex<double>> edge_laplacian;
  std::vector<std::complex<double>> essential_laplacian;

  double nonzero_mismatch = 0.0;  ///< worst pairing distance of nonzero eigenvalues
  bool nonzero_spectra_match = false;
  std::size_t edge_zero_count = 0;
  bool zero_count_ok = false;  ///< L_e has exactly L-N+1 zero eigenvalues
  std::size_t rank_edge_laplacian = 0;
  std::size_t rank_edge_laplacian_squared = 0;
  bool zero_index_one = false;  ///< rank(L_e) == rank(L_e²)
  bool essential_positive_stable = false;

  bool all_ok() const {
    return nonzero_spectra_match && zero_count_ok && zero_index_one && essential_positive_stable;
  }
};

SpectrumReport spectral_properties(const EdgeDecomposition& d, const SpectralTolerances& tol = {});

/// Greedy nearest pairing of two eigenvalue multisets; returns the largest
/// pair distance, or +inf when the sizes differ.
double multiset_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b);

}  // namespace edgecons

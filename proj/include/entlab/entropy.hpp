#pragma once

#include <vector>

#include "entlab/blocks.hpp"
#include "entlab/spectral.hpp"

// Exact Renyi / von Neumann entropies and entanglement spectra from
// occupation spectra; exact multi-block mutual and r-partite information.

namespace entlab {

enum class Path { direct, dual, automatic };

// Occupation eigenvalues within 1e-12 of 0 or 1 contribute exactly zero.
inline constexpr double occupation_cutoff = 1e-12;

// alpha != 1: (1-alpha)^{-1} sum log(nu^alpha + (1-nu)^alpha);
// alpha == 1: sum [-nu log nu - (1-nu) log(1-nu)] (analytic branch).
// Throws on alpha <= 0.
double renyi_from_spectrum(const OccupationSpectrum& s, double alpha);

// direct diagonalizes C_A (L x L), dual its M x M counterpart, automatic
// picks the smaller side. All paths agree to 1e-8.
double renyi(const Configuration& c, double alpha, Path path = Path::automatic);

// The max_count largest eigenvalues of the reduced density matrix: products
// prod nu^eps (1-nu)^(1-eps) over the nontrivial occupation values, descending,
// enumerated best-first without visiting all 2^dim sign choices.
std::vector<double> entanglement_spectrum(const Configuration& c, long max_count);

// sum_i S(A_i;K) - S(union A_i;K); parts must be pairwise disjoint.
double mutual_information_exact(const std::vector<BlockSet>& parts, const BlockSet& modes, double alpha);

// Alternating inclusion-exclusion sum over all nonempty sub-collections.
// Throws when the number of parts exceeds `cap` (2^r - 1 entropy evaluations).
double multipartite_information_exact(const std::vector<BlockSet>& parts, const BlockSet& modes,
                                      double alpha, int cap = 8);

} // namespace entlab

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "entlab/blocks.hpp"

// Brute-force Fock-space reference for chains of up to 14 sites: the state
// built from excited momentum modes, its reduced density matrix by partial
// trace, and entropies computed independently of the correlation-matrix path.

namespace entlab {

struct FockVector {
    long n = 0;
    std::vector<std::complex<double>> amplitudes; // indexed by site-occupation bitmask, 2^n entries
};

inline constexpr long oracle_site_cap = 14;

// |K> as amplitudes over site-occupation bitmasks: the amplitude of an
// occupation set S (|S| = M) is det[ N^{-1/2} exp(2*pi*i*k_l*x_j/N) ] with
// rows over modes in ascending k and columns over sites in ascending index.
FockVector fock_state(long n, const BlockSet& modes);

// Partial trace over the complement of `sites`, with fermionic modes ordered
// by ascending site index (Jordan-Wigner sign bookkeeping). Hermitian, PSD,
// unit trace; dim = 2^|sites|.
Eigen::MatrixXcd reduced_density_matrix(const FockVector& v, const BlockSet& sites);

// Entropy from the eigenvalues of the reduced density matrix directly.
double renyi_oracle(const FockVector& v, const BlockSet& sites, double alpha);

} // namespace entlab

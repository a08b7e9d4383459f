#pragma once

#include <Eigen/Dense>
#include <vector>

#include "entlab/blocks.hpp"

// Correlation matrix C_A, its dual, and occupation spectra via a dense
// Hermitian eigendecomposition.

namespace entlab {

struct HermitianMatrix {
    Eigen::MatrixXcd m;

    HermitianMatrix() = default;
    // symmetrized at construction so the conjugate-symmetry invariant is exact
    explicit HermitianMatrix(const Eigen::MatrixXcd& raw) : m((raw + raw.adjoint()) / 2.0) {}
    long dim() const { return m.rows(); }
};

struct OccupationSpectrum {
    std::vector<double> values; // ascending, clamped to [0,1]
};

// (C_A)_{jk} = (1/N) sum_{l in K} exp(-2*pi*i*(x_j - x_k)*l/N), dim = |A|.
// Block sums are evaluated as closed-form Dirichlet-kernel ratios.
HermitianMatrix correlation_matrix(const Configuration& c);

// (C^_A)_{lm} = (1/N) sum_{j in A} exp(-2*pi*i*(k_l - k_m)*j/N), dim = |K|;
// equals correlation_matrix of the site/mode-swapped configuration.
HermitianMatrix dual_correlation_matrix(const Configuration& c);

// Full eigenvalue list, ascending. Values must land in [-1e-10, 1+1e-10]
// before clamping; anything farther out signals a malformed matrix and throws.
OccupationSpectrum occupation_spectrum(const HermitianMatrix& m);

} // namespace entlab

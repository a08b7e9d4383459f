#include "entlab/spectral.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace entlab {

namespace {

constexpr double pi = 3.14159265358979323846264338328;

// sum over one index block [p, p+m) of exp(-i*theta*l), theta = 2*pi*d/n:
// geometric series in closed form, with the l'Hopital branch at theta = 0 mod 2*pi.
std::complex<double> block_phase_sum(long d, long p, long m, long n) {
    long dm = ((d % n) + n) % n;
    if (dm == 0) return {double(m), 0.0};
    double theta = 2.0 * pi * double(dm) / double(n);
    double half = theta / 2.0;
    double ratio = std::sin(double(m) * half) / std::sin(half);
    double phase = -theta * (double(p) + (double(m) - 1.0) / 2.0);
    return std::polar(ratio, phase);
}

// dim x dim matrix over `outer` members with block sums over `inner` intervals
Eigen::MatrixXcd build(const BlockSet& outer, const BlockSet& inner, long n) {
    const auto x = outer.members();
    const long dim = long(x.size());
    Eigen::MatrixXcd m(dim, dim);
    for (long j = 0; j < dim; ++j) {
        for (long k = j; k < dim; ++k) {
            std::complex<double> s{0.0, 0.0};
            for (const auto& iv : inner.intervals) s += block_phase_sum(x[j] - x[k], iv.start, iv.length, n);
            s /= double(n);
            m(j, k) = s;
            m(k, j) = std::conj(s);
        }
    }
    return m;
}

} // namespace

HermitianMatrix correlation_matrix(const Configuration& c) {
    return HermitianMatrix(build(c.sites, c.modes, c.n));
}

HermitianMatrix dual_correlation_matrix(const Configuration& c) {
    return HermitianMatrix(build(c.modes, c.sites, c.n));
}

OccupationSpectrum occupation_spectrum(const HermitianMatrix& h) {
    OccupationSpectrum s;
    if (h.dim() == 0) return s;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h.m, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("occupation_spectrum: eigensolver failed");
    constexpr double tol = 1e-10;
    s.values.reserve(h.dim());
    for (long i = 0; i < h.dim(); ++i) {
        double v = es.eigenvalues()[i];
        if (v < -tol || v > 1.0 + tol)
            throw std::domain_error("occupation_spectrum: eigenvalue " + std::to_string(v) +
                                    " outside [0,1]; matrix is not a correlation matrix");
        s.values.push_back(std::min(1.0, std::max(0.0, v)));
    }
    return s;
}

} // namespace entlab

#include "entlab/oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace entlab {

namespace {

constexpr double pi = 3.14159265358979323846264338328;

std::vector<long> mask_sites(unsigned long mask, long n) {
    std::vector<long> x;
    for (long j = 0; j < n; ++j)
        if (mask & (1ul << j)) x.push_back(j);
    return x;
}

// parity of the reordering (A asc)(B asc) -> global ascending: counts pairs
// b in B-part, a in A-part with b < a
int interleave_sign(const std::vector<long>& a_occ, const std::vector<long>& b_occ) {
    long inv = 0;
    for (long a : a_occ)
        for (long b : b_occ)
            if (b < a) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

} // namespace

FockVector fock_state(long n, const BlockSet& modes) {
    if (n < 1 || n > oracle_site_cap)
        throw std::invalid_argument("fock_state: chain length outside [1," + std::to_string(oracle_site_cap) + "]");
    const auto k = modes.members();
    const long m = long(k.size());
    FockVector v;
    v.n = n;
    v.amplitudes.assign(1ul << n, {0.0, 0.0});
    if (m == 0) {
        v.amplitudes[0] = 1.0;
        return v;
    }
    const double norm = 1.0 / std::sqrt(double(n));
    for (unsigned long mask = 0; mask < (1ul << n); ++mask) {
        if (std::popcount(mask) != m) continue;
        const auto x = mask_sites(mask, n);
        Eigen::MatrixXcd slater(m, m);
        for (long row = 0; row < m; ++row)
            for (long col = 0; col < m; ++col)
                slater(row, col) = std::polar(norm, 2.0 * pi * double(k[row] * x[col]) / double(n));
        v.amplitudes[mask] = slater.determinant();
    }
    return v;
}

Eigen::MatrixXcd reduced_density_matrix(const FockVector& v, const BlockSet& sites) {
    const long n = v.n;
    const auto a_sites = sites.members();
    std::vector<long> b_sites;
    {
        std::vector<char> in_a(n, 0);
        for (long x : a_sites) in_a[x] = 1;
        for (long x = 0; x < n; ++x)
            if (!in_a[x]) b_sites.push_back(x);
    }
    const long la = long(a_sites.size()), lb = long(b_sites.size());
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(1l << la, 1l << la);
    std::vector<std::complex<double>> col(1ul << la);
    std::vector<int> sign(1ul << la);
    for (unsigned long mb = 0; mb < (1ul << lb); ++mb) {
        std::vector<long> b_occ;
        unsigned long full_b = 0;
        for (long j = 0; j < lb; ++j)
            if (mb & (1ul << j)) {
                b_occ.push_back(b_sites[j]);
                full_b |= 1ul << b_sites[j];
            }
        for (unsigned long ma = 0; ma < (1ul << la); ++ma) {
            std::vector<long> a_occ;
            unsigned long full = full_b;
            for (long j = 0; j < la; ++j)
                if (ma & (1ul << j)) {
                    a_occ.push_back(a_sites[j]);
                    full |= 1ul << a_sites[j];
                }
            col[ma] = v.amplitudes[full];
            sign[ma] = interleave_sign(a_occ, b_occ);
        }
        for (unsigned long ma = 0; ma < (1ul << la); ++ma) {
            if (col[ma] == std::complex<double>{0.0, 0.0}) continue;
            for (unsigned long mc = 0; mc < (1ul << la); ++mc)
                rho(ma, mc) += double(sign[ma] * sign[mc]) * col[ma] * std::conj(col[mc]);
        }
    }
    return rho;
}

double renyi_oracle(const FockVector& v, const BlockSet& sites, double alpha) {
    if (alpha <= 0) throw std::invalid_argument("renyi_oracle: alpha must be positive");
    auto rho = reduced_density_matrix(v, sites);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
    double total = 0.0, tr = 0.0;
    for (long i = 0; i < rho.rows(); ++i) {
        double lam = es.eigenvalues()[i];
        if (lam <= 1e-12) continue;
        tr += std::pow(lam, alpha);
        total += -lam * std::log(lam);
    }
    return alpha == 1.0 ? total : std::log(tr) / (1.0 - alpha);
}

} // namespace entlab

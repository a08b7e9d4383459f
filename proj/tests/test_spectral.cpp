#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entlab/blocks.hpp"
#include "entlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

using namespace entlab;

namespace {

long draw(std::mt19937_64& g, long lo, long hi) {
    return lo + long(g() % (unsigned long long)(hi - lo + 1));
}

BlockSet random_set(std::mt19937_64& g, long n) {
    long k = draw(g, 1, std::max(1L, std::min(4L, n / 4)));
    std::vector<long> cuts;
    while (long(cuts.size()) < 2 * k) {
        long c = draw(g, 0, n - 1);
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    std::vector<std::pair<long, long>> raw;
    for (long i = 0; i < k; ++i) raw.push_back({cuts[2 * i], cuts[2 * i + 1]});
    return canonicalize(raw, n);
}

Configuration random_config(std::mt19937_64& g, long n_min, long n_max) {
    long n = draw(g, n_min, n_max);
    return {n, random_set(g, n), random_set(g, n)};
}

std::vector<double> nontrivial(const OccupationSpectrum& s, double tol) {
    std::vector<double> out;
    for (double v : s.values)
        if (v > tol && v < 1.0 - tol) out.push_back(v);
    return out;
}

} // namespace

TEST_CASE("single-site correlation matrix holds the filling") {
    Configuration c{4, canonicalize({{0, 1}}, 4), canonicalize({{0, 1}, {2, 3}}, 4)};
    auto m = correlation_matrix(c);
    REQUIRE(m.dim() == 1);
    CHECK(m.m(0, 0).real() == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(m.m(0, 0).imag() == doctest::Approx(0.0));
}

TEST_CASE("phase cancellation gives a diagonal correlation matrix") {
    Configuration c{4, canonicalize({{0, 2}}, 4), canonicalize({{0, 1}, {2, 3}}, 4)};
    auto m = correlation_matrix(c);
    REQUIRE(m.dim() == 2);
    CHECK(std::abs(m.m(0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(m.m(1, 1) - 0.5) < 1e-14);
    CHECK(std::abs(m.m(0, 1)) < 1e-14);
}

TEST_CASE("adjacent-mode block gives the closed-form off-diagonal") {
    Configuration c{4, canonicalize({{0, 2}}, 4), canonicalize({{0, 2}}, 4)};
    auto m = correlation_matrix(c);
    REQUIRE(m.dim() == 2);
    CHECK(std::abs(m.m(0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(m.m(1, 0) - std::complex<double>(0.25, -0.25)) < 1e-14);
    auto s = occupation_spectrum(m);
    REQUIRE(s.values.size() == 2);
    CHECK(s.values[0] == doctest::Approx(0.5 - std::sqrt(2.0) / 4.0).epsilon(1e-13));
    CHECK(s.values[1] == doctest::Approx(0.5 + std::sqrt(2.0) / 4.0).epsilon(1e-13));
}

TEST_CASE("dual matrix equals the correlation matrix of the swapped configuration") {
    std::mt19937_64 g(3);
    for (int it = 0; it < 50; ++it) {
        auto c = random_config(g, 8, 64);
        auto d = dual_correlation_matrix(c);
        auto swapped = correlation_matrix({c.n, c.modes, c.sites});
        REQUIRE(d.dim() == swapped.dim());
        double max_diff = (d.m - swapped.m).cwiseAbs().maxCoeff();
        CHECK(max_diff < 1e-14);
    }
}

TEST_CASE("traces equal L*M/N on both sides") {
    std::mt19937_64 g(5);
    for (int it = 0; it < 50; ++it) {
        auto c = random_config(g, 8, 96);
        double lm_over_n =
            double(c.sites.total_length()) * double(c.modes.total_length()) / double(c.n);
        double tr_c = correlation_matrix(c).m.trace().real();
        double tr_d = dual_correlation_matrix(c).m.trace().real();
        CHECK(tr_c == doctest::Approx(lm_over_n).epsilon(1e-12));
        CHECK(tr_d == doctest::Approx(lm_over_n).epsilon(1e-12));
    }
}

TEST_CASE("occupation spectrum of simple matrices") {
    Eigen::MatrixXcd half = 0.5 * Eigen::MatrixXcd::Identity(2, 2);
    auto s = occupation_spectrum(HermitianMatrix(half));
    REQUIRE(s.values.size() == 2);
    CHECK(s.values[0] == doctest::Approx(0.5));
    CHECK(s.values[1] == doctest::Approx(0.5));

    auto ones = occupation_spectrum(HermitianMatrix(Eigen::MatrixXcd::Identity(5, 5)));
    REQUIRE(ones.values.size() == 5);
    for (double v : ones.values) CHECK(v == doctest::Approx(1.0));
}

TEST_CASE("eigenvalues outside the unit interval signal a malformed matrix") {
    Eigen::MatrixXcd bad = 2.0 * Eigen::MatrixXcd::Identity(2, 2);
    CHECK_THROWS_AS(occupation_spectrum(HermitianMatrix(bad)), std::domain_error);
    Eigen::MatrixXcd neg = -0.5 * Eigen::MatrixXcd::Identity(2, 2);
    CHECK_THROWS_AS(occupation_spectrum(HermitianMatrix(neg)), std::domain_error);
}

TEST_CASE("construction symmetrizes the matrix") {
    Eigen::MatrixXcd raw(2, 2);
    raw << std::complex<double>(0.5, 0.0), std::complex<double>(0.25, 0.25),
        std::complex<double>(0.25, -0.25 + 1e-15), std::complex<double>(0.5, 0.0);
    HermitianMatrix m(raw);
    CHECK((m.m - m.m.adjoint()).cwiseAbs().maxCoeff() == doctest::Approx(0.0));
}

TEST_CASE("nontrivial spectra of both sides coincide") {
    std::mt19937_64 g(17);
    const double edge = 1e-6; // classify away from the 0/1 edges on both sides
    for (int it = 0; it < 60; ++it) {
        auto c = random_config(g, 8, 64);
        auto sa = nontrivial(occupation_spectrum(correlation_matrix(c)), edge);
        auto sd = nontrivial(occupation_spectrum(dual_correlation_matrix(c)), edge);
        REQUIRE(sa.size() == sd.size());
        for (std::size_t i = 0; i < sa.size(); ++i)
            CHECK(sa[i] == doctest::Approx(sd[i]).epsilon(1e-8));
    }
}

TEST_CASE("dual spectra of complementary site sets mirror around one half") {
    std::mt19937_64 g(29);
    for (int it = 0; it < 40; ++it) {
        auto c = random_config(g, 8, 64);
        if (c.sites.full() || c.sites.empty()) continue;
        Configuration comp{c.n, complement(c.sites), c.modes};
        auto sa = occupation_spectrum(dual_correlation_matrix(c)).values;
        auto sb = occupation_spectrum(dual_correlation_matrix(comp)).values;
        REQUIRE(sa.size() == sb.size()); // both have dim M
        std::sort(sb.begin(), sb.end(), std::greater<double>());
        for (std::size_t i = 0; i < sa.size(); ++i)
            CHECK(sa[i] + sb[i] == doctest::Approx(1.0).epsilon(1e-10));
    }
}

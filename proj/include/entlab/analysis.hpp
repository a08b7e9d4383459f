#pragma once

#include <optional>
#include <vector>

#include "entlab/blocks.hpp"

// N-sweeps of exact-vs-asymptotic error, trigonometric-polynomial fitting of
// the error term, central-charge slope extraction, and maximization of the
// geometric factor over block configurations.

namespace entlab {

struct ScanRecord {
    long n;
    double alpha;
    double exact;
    double prediction;
    double error; // exact - prediction
    double wall_time;
};

struct ScanSeries {
    std::vector<ScanRecord> records; // n strictly increasing
};

// symmetric configuration family with fixed r, s, gamma_x, gamma_p
struct FamilyTemplate {
    long r = 1, s = 1;
    Rational gamma_x{1, 2}, gamma_p{1, 2};

    Configuration at(long n) const; // throws on divisibility failure
};

// exact entropy (auto path) vs the general asymptotic formula for each n;
// n_values strictly increasing, all divisible for the family (failures are
// reported together). Records computed in parallel when threads > 1 but
// always emitted in n order.
ScanSeries error_scan(const FamilyTemplate& family, const std::vector<long>& n_values, double alpha,
                      int threads = 1);

struct ErrorFit {
    double exponent;
    double nu;                        // rad per unit N
    std::vector<double> coefficients; // a_0..a_kmax of sum a_k cos(k nu N)
    double residual_rms;
};

// For each candidate nu, least squares of error(N) * N^exponent onto the
// {cos(k nu N)} basis (rank-truncated min-norm solve); picks the candidate
// with the smallest residual. Ties (aliased or subharmonic candidates) are
// broken by dropping tied fits whose fundamental amplitude |a_1| is under
// half the tie-set maximum, then taking the smallest nu. Without an
// exponent hint the exponent comes from a log-log regression of the
// |error| envelope and is then polished by minimizing, over the candidate
// set, the residual relative to the rescaled signal.
ErrorFit fit_error_law(const ScanSeries& s, std::optional<double> exponent_hint,
                       std::vector<double> nu_candidates, int kmax);

// 2 pi gamma_x gamma_p / (r s)
double nu0(const FamilyTemplate& family);
double nu0(const Configuration& c);

// nu0 times simple fractions m/k with m, k <= cap, deduplicated, ascending
std::vector<double> frequency_candidates(double nu0, long cap);

// slope of exact entropy vs log N divided by b_alpha; needs >= 5 records
// spanning a factor >= 8 in n. Expected about r*s for the family.
double central_charge_fit(const ScanSeries& s);

struct MaximizeResult {
    long n_ref;     // reference chain length carrying the integer endpoints
    BlockSet sites; // argmax configuration, first block starting at 0
    BlockSet modes;
    double g;       // geometric factor of the argmax configuration
};

// Grid search over integer block lengths/gaps on a reference lattice under
// fixed totals, refined by unit-step coordinate ascent; position and
// momentum sides are maximized independently.
MaximizeResult maximize_geometric_factor(long r, long s, Rational gamma_x, Rational gamma_p,
                                         long grid_resolution);

} // namespace entlab

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "entlab/blocks.hpp"

// Closed-form asymptotic predictions: the constants b_alpha and c_alpha,
// cross-ratio products, asymptotic mutual information, the entropy formulas
// for every regime, the infinite-chain limit, the geometric factor g and the
// two-block landscape h(theta, delta).

namespace entlab {

struct AsymptoticConstants {
    double alpha;
    double b; // (1/6)(1 + 1/alpha)
    double c; // universal additive constant
};

enum class Regime {
    fisher_hartwig,        // single site block, s mode blocks, log L
    cft,                   // r site blocks, single mode block, linear cross ratios
    finite_density_single, // r = s = 1 at finite fillings
    multiblock_position,   // r site blocks, single mode block, chord form
    multiblock_momentum,   // single site block, s mode blocks, chord form
    general,               // arbitrary r, s
    infinite_chain,        // N -> infinity at fixed site blocks
};

std::string regime_name(Regime r);

struct Prediction {
    double value;
    Regime regime;
};

double b_alpha(double alpha);

// Adaptive quadrature of the defining integral with a series-protected
// segment near zero; alpha = 1 via Richardson extrapolation of c_{1 +- eps},
// eps in {1e-3, 1e-4}. `tol` controls the adaptive refinement.
double c_alpha(double alpha, double tol);
double c_alpha(double alpha); // memoized, tol = 1e-11

AsymptoticConstants constants_for(double alpha);

enum class CrossRatioVariant { chord, linear };

// prod_{i<j} S(v_j-u_i) S(u_j-v_i) / (S(u_j-u_i) S(v_j-v_i)) with
// S(x) = sin(x/2) (chord) or S(x) = x (linear). Throws on coincident endpoints.
double cross_ratio_product(const AngleList& a, CrossRatioVariant variant = CrossRatioVariant::chord);
// linear variant on raw positions U_i < V_i < U_{i+1}
double cross_ratio_product(const std::vector<std::pair<double, double>>& positions);

// I_alpha(u,v) = -b_alpha log f(u,v) >= 0
double asymptotic_mutual_information(const AngleList& a, double alpha);

// b log((2N/pi) sin(pi gx) sin(pi gp)) + c
Prediction single_block_asymptotic(long n, double gamma_x, double gamma_p, double alpha);

// b [r log((2N/pi) sin(pi gp)) + sum_i log sin((v_i-u_i)/2)] - I(u,v) + r c
Prediction multiblock_position_asymptotic(const AngleList& uv, long n, double gamma_p, double alpha);

// mirror of the above with the roles of sites and modes exchanged
Prediction multiblock_momentum_asymptotic(const AngleList& pq, long n, double gamma_x, double alpha);

// closed formula for arbitrary r, s:
// rs (b log(2N/pi) + c) + s (b sum log sin((v-u)/2) - I(u,v))
//                       + r (b sum log sin((q-p)/2) - I(p,q))
Prediction general_asymptotic(const Configuration& c, double alpha);

// b (s log L + sum_j log(2 sin((q_j-p_j)/2)) + log f(p,q)) + s c,
// valid for one site block of length l_sites when N >> M >> 1
Prediction fisher_hartwig_asymptotic(long l_sites, const AngleList& pq, double alpha);

// b [r log((N/pi) sin(pi gp)) + sum_i log(v_i-u_i) + log f_linear(u,v)] + r c,
// valid for N >> L >> 1 and arbitrary filling of the single mode block
Prediction cft_asymptotic(const AngleList& uv, long n, double gamma_p, double alpha);

enum class TermSource { exact, asymptotic };

// sum_i T(A_i;K) + sum_j T(A;K_j) - sum_{i,j} T(A_i;K_j) with T from the
// exact engine or from the single-/multi-block predictions; the asymptotic
// variant equals general_asymptotic identically.
double compose_conjecture(const Configuration& c, double alpha, TermSource source);

// s b log[prod_i (V_i-U_i) * prod linear cross ratios]
//   + r (b sum log sin((q-p)/2) - I(p,q)) + rs (b log 2 + c)
Prediction infinite_chain_asymptotic(const std::vector<std::pair<long, long>>& uv_positions,
                                     const AngleList& pq, double alpha);

// s * I_alpha(u,v): depends on the momentum state only through its block count
double asymptotic_multiblock_mutual_information(const AngleList& uv, long s, double alpha);

// alpha- and N-independent geometry term, normalized so that
// general_asymptotic = rs (b log(N/pi) + c) + b g
double geometric_factor(const Configuration& c);

// two-block landscape h(theta, delta) in terms of sigma(x) = log sin(x/2);
// local maximum at (pi gx, pi (1-gx))
double h_two_block(double theta, double delta, double gamma_x);

} // namespace entlab

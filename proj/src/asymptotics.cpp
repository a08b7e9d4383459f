#include "entlab/asymptotics.hpp"

#include "entlab/entropy.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>

namespace entlab {

namespace {

constexpr double pi = 3.14159265358979323846264338328;
constexpr double two_pi = 2.0 * pi;
constexpr double log_two = 0.69314718055994530941723212146;

double csch(double t) { return 1.0 / std::sinh(t); }

// integrand of the c_alpha integral divided by t; O(1) as t -> 0 but built
// from a cancellation of three singular terms, so small t uses the series
double c_integrand(double t, double alpha) {
    double cs = csch(t);
    return (alpha * cs * cs - cs * csch(t / alpha) -
            (1.0 - alpha * alpha) / (6.0 * alpha) * std::exp(-2.0 * t)) / t;
}

// Taylor coefficients of the integrand about t = 0 (through t^3)
void c_series_coeffs(double alpha, double out[4]) {
    double a = alpha, ia = 1.0 / alpha;
    out[0] = (1.0 - a * a) / (3.0 * a);
    out[1] = (137.0 * a - 130.0 * ia - 7.0 * ia * ia * ia) / 360.0;
    out[2] = 2.0 * (1.0 - a * a) / (9.0 * a);
    out[3] = -2.0 * a / 189.0 + 31.0 / 15120.0 * std::pow(ia, 5) + 7.0 / 2160.0 * std::pow(ia, 3) +
             7.0 / 2160.0 * ia + 31.0 * a / 15120.0 - (1.0 - a * a) / (9.0 * a);
}

// 15-point Kronrod extension of 7-point Gauss on [-1, 1]
constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526, 0.949107912342758524526189684048,
    0.864864423359769072789712788641, 0.741531185599394439863864773281,
    0.586087235467691130294144838259, 0.405845151377397166906606412077,
    0.207784955007898467600689403773, 0.0};
constexpr double gk_wk[8] = {
    0.022935322010529224963732008059, 0.063092092629978553290700663189,
    0.104790010322250183839876322542, 0.140653259715525918745189590510,
    0.169004726639267902826583426599, 0.190350578064785409913256402421,
    0.204432940075298892414161999234, 0.209482141084727828012999174892};
constexpr double gk_wg[4] = {
    0.129484966168869693270611432679, 0.279705391489276667901467771424,
    0.381830050505118944950369775489, 0.417959183673469387755102040816};

struct GkResult { double integral, error; };

GkResult gk15(double (*f)(double, double), double p, double a, double b) {
    double c = (a + b) / 2.0, h = (b - a) / 2.0;
    double ig = 0.0, ik = 0.0;
    for (int i = 0; i < 8; ++i) {
        double f1 = f(c - h * gk_nodes[i], p);
        double f2 = f(c + h * gk_nodes[i], p);
        double fs = i == 7 ? f1 : f1 + f2;
        ik += gk_wk[i] * fs;
        if (i % 2 == 1) ig += gk_wg[i / 2] * fs;
    }
    return {ik * h, std::abs(ik - ig) * h};
}

double adaptive_gk(double (*f)(double, double), double p, double a, double b, double tol, int depth) {
    auto r = gk15(f, p, a, b);
    // depth cap bounds the work when tol sits at the double-precision floor
    if (r.error <= tol || depth >= 20) return r.integral;
    double c = (a + b) / 2.0;
    return adaptive_gk(f, p, a, c, tol / 2.0, depth + 1) + adaptive_gk(f, p, c, b, tol / 2.0, depth + 1);
}

double c_alpha_quadrature(double alpha, double tol) {
    const double t0 = 1e-2, t1 = 40.0; // tail beyond t1 is below 1e-35
    tol = std::max(tol, 1e-14);        // below this the error estimate is roundoff
    double cf[4];
    c_series_coeffs(alpha, cf);
    double head = cf[0] * t0 + cf[1] * t0 * t0 / 2.0 + cf[2] * t0 * t0 * t0 / 3.0 +
                  cf[3] * t0 * t0 * t0 * t0 / 4.0;
    double body = adaptive_gk(c_integrand, alpha, t0, t1, tol, 0);
    return (head + body) / (1.0 - alpha);
}

std::shared_mutex c_cache_mutex;
std::map<double, double> c_cache;

double log_sin_half(double x) {
    double s = std::sin(x / 2.0);
    if (s <= 0.0) throw std::invalid_argument("asymptotics: vanishing block or gap angle");
    return std::log(s);
}

double sum_log_sin_len(const AngleList& a) {
    double t = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) t += log_sin_half(a.len(i));
    return t;
}

void check_density(double g, const char* what) {
    if (!(g > 0.0 && g < 1.0))
        throw std::invalid_argument(std::string("asymptotics: ") + what + " must lie in (0,1)");
}

} // namespace

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::fisher_hartwig: return "fisher_hartwig";
        case Regime::cft: return "cft";
        case Regime::finite_density_single: return "finite_density_single";
        case Regime::multiblock_position: return "multiblock_position";
        case Regime::multiblock_momentum: return "multiblock_momentum";
        case Regime::general: return "general";
        case Regime::infinite_chain: return "infinite_chain";
    }
    return "unknown";
}

double b_alpha(double alpha) {
    if (alpha <= 0) throw std::invalid_argument("b_alpha: alpha must be positive");
    return (1.0 + 1.0 / alpha) / 6.0;
}

double c_alpha(double alpha, double tol) {
    if (alpha <= 0) throw std::invalid_argument("c_alpha: alpha must be positive");
    if (alpha == 1.0) {
        // Richardson extrapolation in eps^2 of the symmetric means around alpha = 1
        auto mean = [tol](double eps) {
            return (c_alpha_quadrature(1.0 + eps, tol * 1e-4) +
                    c_alpha_quadrature(1.0 - eps, tol * 1e-4)) / 2.0;
        };
        double a3 = mean(1e-3), a4 = mean(1e-4);
        return (100.0 * a4 - a3) / 99.0;
    }
    return c_alpha_quadrature(alpha, tol);
}

double c_alpha(double alpha) {
    {
        std::shared_lock lock(c_cache_mutex);
        auto it = c_cache.find(alpha);
        if (it != c_cache.end()) return it->second;
    }
    double v = c_alpha(alpha, 1e-11);
    std::unique_lock lock(c_cache_mutex);
    c_cache.emplace(alpha, v);
    return v;
}

AsymptoticConstants constants_for(double alpha) { return {alpha, b_alpha(alpha), c_alpha(alpha)}; }

double cross_ratio_product(const AngleList& a, CrossRatioVariant variant) {
    const bool chord = variant == CrossRatioVariant::chord;
    auto s = [chord](double x) { return chord ? std::sin(x / 2.0) : x; };
    double f = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            double den = s(a.d_uu(i, j)) * s(a.d_vv(i, j));
            if (den == 0.0) throw std::invalid_argument("cross_ratio_product: coincident endpoints");
            f *= s(a.d_vu(i, j)) * s(a.d_uv(i, j)) / den;
        }
    return f;
}

double cross_ratio_product(const std::vector<std::pair<double, double>>& pos) {
    double f = 1.0;
    for (std::size_t i = 0; i < pos.size(); ++i)
        for (std::size_t j = i + 1; j < pos.size(); ++j) {
            double den = (pos[j].first - pos[i].first) * (pos[j].second - pos[i].second);
            if (den == 0.0) throw std::invalid_argument("cross_ratio_product: coincident endpoints");
            f *= (pos[j].second - pos[i].first) * (pos[j].first - pos[i].second) / den;
        }
    return f;
}

double asymptotic_mutual_information(const AngleList& a, double alpha) {
    return -b_alpha(alpha) * std::log(cross_ratio_product(a, CrossRatioVariant::chord));
}

Prediction single_block_asymptotic(long n, double gamma_x, double gamma_p, double alpha) {
    check_density(gamma_x, "gamma_x");
    check_density(gamma_p, "gamma_p");
    double v = b_alpha(alpha) * std::log(2.0 * double(n) / pi * std::sin(pi * gamma_x) * std::sin(pi * gamma_p)) +
               c_alpha(alpha);
    return {v, Regime::finite_density_single};
}

Prediction multiblock_position_asymptotic(const AngleList& uv, long n, double gamma_p, double alpha) {
    check_density(gamma_p, "gamma_p");
    double r = double(uv.size());
    double v = b_alpha(alpha) * (r * std::log(2.0 * double(n) / pi * std::sin(pi * gamma_p)) + sum_log_sin_len(uv)) -
               asymptotic_mutual_information(uv, alpha) + r * c_alpha(alpha);
    return {v, Regime::multiblock_position};
}

Prediction multiblock_momentum_asymptotic(const AngleList& pq, long n, double gamma_x, double alpha) {
    check_density(gamma_x, "gamma_x");
    double s = double(pq.size());
    double v = b_alpha(alpha) * (s * std::log(2.0 * double(n) / pi * std::sin(pi * gamma_x)) + sum_log_sin_len(pq)) -
               asymptotic_mutual_information(pq, alpha) + s * c_alpha(alpha);
    return {v, Regime::multiblock_momentum};
}

Prediction general_asymptotic(const Configuration& c, double alpha) {
    auto uv = angles(c.sites), pq = angles(c.modes);
    double r = double(uv.size()), s = double(pq.size());
    double b = b_alpha(alpha), ca = c_alpha(alpha);
    double v = r * s * (b * std::log(2.0 * double(c.n) / pi) + ca) +
               s * (b * sum_log_sin_len(uv) - asymptotic_mutual_information(uv, alpha)) +
               r * (b * sum_log_sin_len(pq) - asymptotic_mutual_information(pq, alpha));
    return {v, Regime::general};
}

Prediction fisher_hartwig_asymptotic(long l_sites, const AngleList& pq, double alpha) {
    if (l_sites < 1) throw std::invalid_argument("fisher_hartwig: block length must be positive");
    double s = double(pq.size());
    double t = s * std::log(double(l_sites));
    for (std::size_t j = 0; j < pq.size(); ++j) t += std::log(2.0 * std::sin(pq.len(j) / 2.0));
    t += std::log(cross_ratio_product(pq, CrossRatioVariant::chord));
    return {b_alpha(alpha) * t + s * c_alpha(alpha), Regime::fisher_hartwig};
}

Prediction cft_asymptotic(const AngleList& uv, long n, double gamma_p, double alpha) {
    check_density(gamma_p, "gamma_p");
    double r = double(uv.size());
    double t = r * std::log(double(n) / pi * std::sin(pi * gamma_p));
    for (std::size_t i = 0; i < uv.size(); ++i) t += std::log(uv.len(i));
    t += std::log(cross_ratio_product(uv, CrossRatioVariant::linear));
    return {b_alpha(alpha) * t + r * c_alpha(alpha), Regime::cft};
}

double compose_conjecture(const Configuration& c, double alpha, TermSource source) {
    const long n = c.n;
    const auto& a_iv = c.sites.intervals;
    const auto& k_iv = c.modes.intervals;
    auto single_site = [&](const Interval& iv) { return BlockSet{n, {iv}}; };
    double total = 0.0;
    if (source == TermSource::exact) {
        for (const auto& ai : a_iv) total += renyi({n, single_site(ai), c.modes}, alpha);
        for (const auto& kj : k_iv) total += renyi({n, c.sites, single_site(kj)}, alpha);
        for (const auto& ai : a_iv)
            for (const auto& kj : k_iv) total -= renyi({n, single_site(ai), single_site(kj)}, alpha);
        return total;
    }
    auto uv = angles(c.sites), pq = angles(c.modes);
    auto gx = [&](const Interval& iv) { return double(iv.length) / double(n); };
    for (const auto& ai : a_iv) total += multiblock_momentum_asymptotic(pq, n, gx(ai), alpha).value;
    for (const auto& kj : k_iv) total += multiblock_position_asymptotic(uv, n, gx(kj), alpha).value;
    for (const auto& ai : a_iv)
        for (const auto& kj : k_iv) total -= single_block_asymptotic(n, gx(ai), gx(kj), alpha).value;
    return total;
}

Prediction infinite_chain_asymptotic(const std::vector<std::pair<long, long>>& uv_positions,
                                     const AngleList& pq, double alpha) {
    double r = double(uv_positions.size()), s = double(pq.size());
    double b = b_alpha(alpha), ca = c_alpha(alpha);
    std::vector<std::pair<double, double>> pos;
    double log_lengths = 0.0;
    for (auto [u, v] : uv_positions) {
        if (v <= u) throw std::invalid_argument("infinite_chain: endpoints out of order");
        pos.push_back({double(u), double(v)});
        log_lengths += std::log(double(v - u));
    }
    double v = s * b * (log_lengths + std::log(cross_ratio_product(pos))) +
               r * (b * sum_log_sin_len(pq) - asymptotic_mutual_information(pq, alpha)) +
               r * s * (b * log_two + ca);
    return {v, Regime::infinite_chain};
}

double asymptotic_multiblock_mutual_information(const AngleList& uv, long s, double alpha) {
    if (s < 1) throw std::invalid_argument("asymptotic mutual information: s must be >= 1");
    return double(s) * asymptotic_mutual_information(uv, alpha);
}

double geometric_factor(const Configuration& c) {
    auto uv = angles(c.sites), pq = angles(c.modes);
    double r = double(uv.size()), s = double(pq.size());
    return s * (sum_log_sin_len(uv) + std::log(cross_ratio_product(uv, CrossRatioVariant::chord))) +
           r * (sum_log_sin_len(pq) + std::log(cross_ratio_product(pq, CrossRatioVariant::chord))) +
           r * s * log_two;
}

double h_two_block(double theta, double delta, double gamma_x) {
    check_density(gamma_x, "gamma_x");
    if (!(theta > 0.0 && theta < two_pi * gamma_x))
        throw std::invalid_argument("h_two_block: theta outside (0, 2 pi gamma_x)");
    if (!(delta > 0.0 && delta < two_pi * (1.0 - gamma_x)))
        throw std::invalid_argument("h_two_block: delta outside (0, 2 pi (1-gamma_x))");
    auto sig = [](double x) { return std::log(std::sin(x / 2.0)); };
    double w = two_pi * gamma_x;
    return sig(theta) + sig(w - theta) + sig(w + delta) + sig(delta) - sig(theta + delta) - sig(w - theta + delta);
}

} // namespace entlab

#include "entlab/analysis.hpp"

#include "entlab/asymptotics.hpp"
#include "entlab/entropy.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace entlab {

namespace {

constexpr double pi = 3.14159265358979323846264338328;

struct TrigFit {
    Eigen::VectorXd coef;
    double rms;
};

// min-norm least squares of y onto {cos(k nu N)}; rank-truncated so exactly
// aliased candidate columns on divisibility-forced N lattices stay finite
TrigFit trig_fit(const std::vector<long>& ns, const Eigen::VectorXd& y, double nu, int kmax) {
    const long m = long(ns.size());
    Eigen::MatrixXd x(m, kmax + 1);
    for (long i = 0; i < m; ++i)
        for (int k = 0; k <= kmax; ++k) x(i, k) = std::cos(double(k) * nu * double(ns[i]));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-9);
    TrigFit f;
    f.coef = svd.solve(y);
    f.rms = std::sqrt((x * f.coef - y).squaredNorm() / double(m));
    return f;
}

// residual relative to the signal scale: the absolute residual of
// err * N^exponent shrinks with the exponent whether or not the fit improves,
// so exponent search must compare fit quality, not raw magnitude
double relative_rms(const std::vector<long>& ns, const std::vector<double>& err, double exponent,
                    double nu, int kmax) {
    Eigen::VectorXd y(long(ns.size()));
    for (long i = 0; i < long(ns.size()); ++i) y[i] = err[i] * std::pow(double(ns[i]), exponent);
    double scale = std::sqrt(y.squaredNorm() / double(ns.size()));
    if (scale == 0.0) return 0.0;
    return trig_fit(ns, y, nu, kmax).rms / scale;
}

// log-log regression of the |error| envelope: local maxima of |error|, or
// every point when the signal is monotone and has no interior peaks
double envelope_exponent(const std::vector<long>& ns, const std::vector<double>& err) {
    std::vector<long> idx;
    for (long i = 1; i + 1 < long(ns.size()); ++i)
        if (std::abs(err[i]) >= std::abs(err[i - 1]) && std::abs(err[i]) >= std::abs(err[i + 1]))
            idx.push_back(i);
    if (long(idx.size()) < 3) {
        idx.resize(ns.size());
        std::iota(idx.begin(), idx.end(), 0L);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    long m = 0;
    for (long i : idx) {
        if (std::abs(err[i]) <= 0.0) continue;
        double lx = std::log(double(ns[i])), ly = std::log(std::abs(err[i]));
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
        ++m;
    }
    if (m < 2) throw std::runtime_error("fit_error_law: envelope regression is degenerate");
    double slope = (double(m) * sxy - sx * sy) / (double(m) * sxx - sx * sx);
    return -slope;
}

double golden_minimize(const std::function<double(double)>& f, double lo, double hi) {
    const double phi = 0.61803398874989484820458683437;
    double a = lo, b = hi;
    double c = b - phi * (b - a), d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && b - a > 1e-12; ++it) {
        if (fc < fd) { b = d; d = c; fd = fc; c = b - phi * (b - a); fc = f(c); }
        else { a = c; c = d; fc = fd; d = a + phi * (b - a); fd = f(d); }
    }
    return (a + b) / 2.0;
}

// ---- geometric-factor maximization ----------------------------------------

// one side of the problem: m blocks with integer lengths (sum = len_total)
// and gaps (sum = gap_total) on a ring of n_ref sites, first block at 0
struct SideState {
    std::vector<long> len, gap;
};

double side_objective(const SideState& st, long n_ref) {
    std::vector<std::pair<long, long>> pairs;
    long pos = 0;
    for (std::size_t i = 0; i < st.len.size(); ++i) {
        pairs.push_back({pos, pos + st.len[i]});
        pos += st.len[i] + st.gap[i];
    }
    auto a = AngleList::from_integers(pairs, n_ref);
    double t = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) t += std::log(std::sin(a.len(i) / 2.0));
    return t + std::log(cross_ratio_product(a, CrossRatioVariant::chord));
}

// steepest unit-transfer coordinate ascent between like entries
void ascend(SideState& st, long n_ref) {
    const long m = long(st.len.size());
    if (m < 2) return;
    double best = side_objective(st, n_ref);
    for (;;) {
        double cand_val = best;
        int cand_kind = -1;
        long cand_i = 0, cand_j = 0;
        for (int kind = 0; kind < 2; ++kind) {
            auto& vec = kind == 0 ? st.len : st.gap;
            for (long i = 0; i < m; ++i)
                for (long j = 0; j < m; ++j) {
                    if (i == j || vec[i] <= 1) continue;
                    vec[i] -= 1; vec[j] += 1;
                    double v = side_objective(st, n_ref);
                    vec[i] += 1; vec[j] -= 1;
                    if (v > cand_val + 1e-14) { cand_val = v; cand_kind = kind; cand_i = i; cand_j = j; }
                }
        }
        if (cand_kind < 0) return;
        auto& vec = cand_kind == 0 ? st.len : st.gap;
        vec[cand_i] -= 1; vec[cand_j] += 1;
        best = cand_val;
    }
}

// compositions of `total` into `m` parts, each >= 1, on a stride lattice
void compositions(long total, long m, long stride, std::vector<long>& cur,
                  std::vector<std::vector<long>>& out, std::size_t cap) {
    if (out.size() >= cap) return;
    if (long(cur.size()) == m - 1) {
        long last = total - std::accumulate(cur.begin(), cur.end(), 0L);
        if (last >= 1) { cur.push_back(last); out.push_back(cur); cur.pop_back(); }
        return;
    }
    long used = std::accumulate(cur.begin(), cur.end(), 0L);
    long rest = long(m) - long(cur.size()) - 1;
    for (long v = 1; total - used - v >= rest; v += stride) {
        cur.push_back(v);
        compositions(total, m, stride, cur, out, cap);
        cur.pop_back();
        if (out.size() >= cap) return;
    }
}

SideState maximize_side(long m, long len_total, long gap_total, long n_ref, long grid_resolution) {
    if (m < 1 || len_total < m || gap_total < m)
        throw std::invalid_argument("maximize_geometric_factor: infeasible constraint set");
    if (m == 1) return {{len_total}, {gap_total}};

    std::vector<SideState> starts;
    if (len_total % m == 0 && gap_total % m == 0)
        starts.push_back({std::vector<long>(m, len_total / m), std::vector<long>(m, gap_total / m)});
    const std::size_t cap = 20000;
    long stride_l = std::max(1L, len_total / grid_resolution);
    long stride_g = std::max(1L, gap_total / grid_resolution);
    std::vector<std::vector<long>> lens, gaps;
    std::vector<long> cur;
    for (;;) {
        lens.clear(); gaps.clear();
        compositions(len_total, m, stride_l, cur, lens, cap);
        compositions(gap_total, m, stride_g, cur, gaps, cap);
        if (lens.size() * gaps.size() <= cap || (lens.size() <= 1 && gaps.size() <= 1)) break;
        stride_l *= 2; stride_g *= 2; // coarsen deterministically
    }
    for (const auto& l : lens)
        for (const auto& g : gaps) starts.push_back({l, g});

    SideState best_state = starts.front();
    double best = -1e300;
    for (auto st : starts) {
        ascend(st, n_ref);
        double v = side_objective(st, n_ref);
        if (v > best + 1e-14) { best = v; best_state = st; }
    }
    return best_state;
}

BlockSet side_to_blockset(const SideState& st, long n_ref) {
    std::vector<std::pair<long, long>> raw;
    long pos = 0;
    for (std::size_t i = 0; i < st.len.size(); ++i) {
        raw.push_back({pos, pos + st.len[i]});
        pos += st.len[i] + st.gap[i];
    }
    return canonicalize(raw, n_ref);
}

} // namespace

Configuration FamilyTemplate::at(long n) const {
    return {n, symmetric_config(n, r, gamma_x), symmetric_config(n, s, gamma_p)};
}

ScanSeries error_scan(const FamilyTemplate& family, const std::vector<long>& n_values, double alpha,
                      int threads) {
    for (std::size_t i = 0; i + 1 < n_values.size(); ++i)
        if (n_values[i + 1] <= n_values[i])
            throw std::invalid_argument("error_scan: n values must be strictly increasing");
    std::string bad;
    for (long n : n_values) {
        try {
            family.at(n);
        } catch (const std::invalid_argument&) {
            bad += (bad.empty() ? "" : ", ") + std::to_string(n);
        }
    }
    if (!bad.empty()) throw std::invalid_argument("error_scan: divisibility failure at n = " + bad);

    c_alpha(alpha); // warm the constant cache once, outside the timed loop

    ScanSeries out;
    out.records.resize(n_values.size());
    auto work = [&](std::size_t i) {
        auto t0 = std::chrono::steady_clock::now();
        auto cfg = family.at(n_values[i]);
        double exact = renyi(cfg, alpha);
        double pred = general_asymptotic(cfg, alpha).value;
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.records[i] = {n_values[i], alpha, exact, pred, exact - pred, dt};
    };
    if (threads <= 1) {
        for (std::size_t i = 0; i < n_values.size(); ++i) work(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < n_values.size(); i = next++) work(i);
            });
        for (auto& t : pool) t.join();
    }
    return out;
}

ErrorFit fit_error_law(const ScanSeries& s, std::optional<double> exponent_hint,
                       std::vector<double> nu_candidates, int kmax) {
    if (kmax < 0) throw std::invalid_argument("fit_error_law: kmax must be >= 0");
    const long m = long(s.records.size());
    if (m < 4 * (kmax + 1))
        throw std::invalid_argument("fit_error_law: need at least " + std::to_string(4 * (kmax + 1)) +
                                    " records for kmax = " + std::to_string(kmax));
    std::vector<long> ns(m);
    std::vector<double> err(m);
    for (long i = 0; i < m; ++i) { ns[i] = s.records[i].n; err[i] = s.records[i].error; }
    if (std::adjacent_find(ns.begin(), ns.end()) != ns.end())
        throw std::invalid_argument("fit_error_law: repeated n gives a degenerate design matrix");

    std::sort(nu_candidates.begin(), nu_candidates.end());
    nu_candidates.erase(std::unique(nu_candidates.begin(), nu_candidates.end(),
                                    [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }),
                        nu_candidates.end());
    if (nu_candidates.empty()) throw std::invalid_argument("fit_error_law: no frequency candidates");

    double exponent = exponent_hint ? *exponent_hint : envelope_exponent(ns, err);

    auto select = [&](double expn) {
        struct Cand { double nu, rms, a1; };
        std::vector<Cand> all;
        Eigen::VectorXd y(m);
        for (long i = 0; i < m; ++i) y[i] = err[i] * std::pow(double(ns[i]), expn);
        for (double nu : nu_candidates) {
            auto f = trig_fit(ns, y, nu, kmax);
            all.push_back({nu, f.rms, kmax >= 1 ? std::abs(f.coef[1]) : 0.0});
        }
        double best = all.front().rms;
        for (const auto& c : all) best = std::min(best, c.rms);
        std::vector<Cand> tied;
        for (const auto& c : all)
            if (c.rms <= best * 1.01 + 1e-12) tied.push_back(c);
        double a1max = 0.0;
        for (const auto& c : tied) a1max = std::max(a1max, c.a1);
        double pick = tied.front().nu;
        for (const auto& c : tied)
            if (a1max == 0.0 || c.a1 >= 0.5 * a1max) { pick = c.nu; break; } // ascending order: smallest nu wins
        return pick;
    };

    if (!exponent_hint) {
        // polish the envelope estimate against the best candidate at each
        // trial exponent, so a rough initial pick cannot steer the search
        auto objective = [&](double p) {
            double best = std::numeric_limits<double>::infinity();
            for (double cand : nu_candidates)
                best = std::min(best, relative_rms(ns, err, p, cand, kmax));
            return best;
        };
        exponent = golden_minimize(objective, exponent - 0.75, exponent + 0.75);
    }
    double nu = select(exponent);

    Eigen::VectorXd y(m);
    for (long i = 0; i < m; ++i) y[i] = err[i] * std::pow(double(ns[i]), exponent);
    auto f = trig_fit(ns, y, nu, kmax);
    ErrorFit out;
    out.exponent = exponent;
    out.nu = nu;
    out.coefficients.assign(f.coef.data(), f.coef.data() + f.coef.size());
    out.residual_rms = f.rms;
    return out;
}

double nu0(const FamilyTemplate& family) {
    return 2.0 * pi * family.gamma_x.value() * family.gamma_p.value() / double(family.r * family.s);
}

double nu0(const Configuration& c) {
    auto [gx, gp] = densities(c);
    long r = long(c.sites.intervals.size()), s = long(c.modes.intervals.size());
    if (r == 0 || s == 0) throw std::invalid_argument("nu0: empty configuration");
    return 2.0 * pi * gx.value() * gp.value() / double(r * s);
}

std::vector<double> frequency_candidates(double nu0, long cap) {
    std::vector<double> out;
    for (long m = 1; m <= cap; ++m)
        for (long k = 1; k <= cap; ++k) out.push_back(nu0 * double(m) / double(k));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(a, b); }),
              out.end());
    return out;
}

double central_charge_fit(const ScanSeries& s) {
    const long m = long(s.records.size());
    if (m < 5) throw std::invalid_argument("central_charge_fit: need at least 5 records");
    if (double(s.records.back().n) / double(s.records.front().n) < 8.0)
        throw std::invalid_argument("central_charge_fit: n must span a factor of at least 8");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : s.records) {
        double lx = std::log(double(r.n));
        sx += lx; sy += r.exact; sxx += lx * lx; sxy += lx * r.exact;
    }
    double slope = (double(m) * sxy - sx * sy) / (double(m) * sxx - sx * sx);
    return slope / b_alpha(s.records.front().alpha);
}

MaximizeResult maximize_geometric_factor(long r, long s, Rational gamma_x, Rational gamma_p,
                                         long grid_resolution) {
    if (grid_resolution < 8) throw std::invalid_argument("maximize_geometric_factor: grid_resolution must be >= 8");
    if (r < 1 || s < 1) throw std::invalid_argument("maximize_geometric_factor: r and s must be >= 1");
    gamma_x = make_rational(gamma_x.num, gamma_x.den);
    gamma_p = make_rational(gamma_p.num, gamma_p.den);
    if (gamma_x.num <= 0 || gamma_x.num >= gamma_x.den || gamma_p.num <= 0 || gamma_p.num >= gamma_p.den)
        throw std::invalid_argument("maximize_geometric_factor: densities must lie in (0,1)");
    // lattice fine enough that every density and the symmetric maximizer are integral
    long n_ref = 2 * grid_resolution * gamma_x.den * gamma_p.den * r * s;
    long lx = n_ref / gamma_x.den * gamma_x.num;
    long lp = n_ref / gamma_p.den * gamma_p.num;
    auto side_x = maximize_side(r, lx, n_ref - lx, n_ref, grid_resolution);
    auto side_p = maximize_side(s, lp, n_ref - lp, n_ref, grid_resolution);
    MaximizeResult out;
    out.n_ref = n_ref;
    out.sites = side_to_blockset(side_x, n_ref);
    out.modes = side_to_blockset(side_p, n_ref);
    out.g = geometric_factor({n_ref, out.sites, out.modes});
    return out;
}

} // namespace entlab

// Acceptance gate: one PASS/FAIL line per criterion, exit code = #failures.
//
// Each criterion exercises the library end to end at fixed seeds and
// tolerances; the bounds are the contract, not aspirations, so a red line
// here means the build is not fit to ship.

#include "entlab/analysis.hpp"
#include "entlab/asymptotics.hpp"
#include "entlab/blocks.hpp"
#include "entlab/entropy.hpp"
#include "entlab/oracle.hpp"
#include "entlab/spectral.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

using namespace entlab;

namespace {

long worker_threads() {
    long hw = long(std::thread::hardware_concurrency());
    return std::clamp(hw, 1L, 4L);
}

std::string fnum(double v) {
    char b[40];
    std::snprintf(b, sizeof b, "%.4g", v);
    return b;
}

struct Acc {
    bool ok = true;
    std::string fails;
    std::string info;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!fails.empty()) fails += "; ";
            fails += what;
        }
    }
    std::string detail() const { return ok ? info : fails; }
};

struct DetRng {
    std::mt19937_64 gen;
    explicit DetRng(unsigned long long seed) : gen(seed) {}
    long uniform(long lo, long hi) { return lo + long(gen() % (unsigned long long)(hi - lo + 1)); }
};

// one or two wrapped intervals totalling at most n/2, mirroring the CLI checks
BlockSet random_blocks(DetRng& rng, long n) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        long count = rng.uniform(1, 2);
        std::vector<std::pair<long, long>> raw;
        for (long i = 0; i < count; ++i) {
            long len = rng.uniform(1, std::max(1L, n / (2 * count)));
            long start = rng.uniform(0, n - 1);
            raw.push_back({start, start + len});
        }
        try {
            return canonicalize(raw, n);
        } catch (const std::invalid_argument&) {
        }
    }
    return canonicalize({{0, std::max(1L, n / 2)}}, n);
}

Configuration random_config(DetRng& rng, long n) {
    return Configuration{n, random_blocks(rng, n), random_blocks(rng, n)};
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

std::vector<long> range(long lo, long hi, long step) {
    std::vector<long> out;
    for (long n = lo; n <= hi; n += step) out.push_back(n);
    return out;
}

// ---- criteria ----

Acc oracle_equivalence() {
    Acc a;
    DetRng rng(20240811);
    const double alphas[] = {0.5, 1.0, 2.0, 3.0};
    double worst = 0;
    for (int i = 0; i < 100; ++i) {
        long n = rng.uniform(6, 12);
        Configuration c = random_config(rng, n);
        FockVector state = fock_state(n, c.modes);
        for (double alpha : alphas) {
            double d = std::abs(renyi(c, alpha) - renyi_oracle(state, c.sites, alpha));
            worst = std::max(worst, d);
            a.require(d < 1e-9, "config " + std::to_string(i) + " alpha " + fnum(alpha) +
                                    " deviates by " + fnum(d));
        }
    }
    a.info = "100 configs x 4 alphas, max |engine - oracle| = " + fnum(worst);
    return a;
}

Acc duality() {
    Acc a;
    DetRng rng(20240812);
    const double alphas[] = {1.0, 2.0, 3.0};
    double worst_s = 0;
    for (int i = 0; i < 200; ++i) {
        long n = rng.uniform(16, 512);
        Configuration c = random_config(rng, n);
        Configuration sw{c.n, c.modes, c.sites};
        OccupationSpectrum sa = occupation_spectrum(correlation_matrix(c));
        OccupationSpectrum sb = occupation_spectrum(correlation_matrix(sw));
        for (double alpha : alphas) {
            double d = std::abs(renyi_from_spectrum(sa, alpha) - renyi_from_spectrum(sb, alpha));
            worst_s = std::max(worst_s, d);
            a.require(d < 1e-8, "entropy mismatch " + fnum(d) + " at n=" + std::to_string(n));
        }
    }
    double worst_half = 0;
    for (int i = 0; i < 30; ++i) {
        long n = rng.uniform(16, 64);
        Configuration c = random_config(rng, n);
        Configuration sw{c.n, c.modes, c.sites};
        double d = std::abs(renyi(c, 0.5, Path::direct) - renyi(sw, 0.5, Path::direct));
        worst_half = std::max(worst_half, d);
        a.require(d < 1e-8, "alpha=1/2 mismatch " + fnum(d) + " at n=" + std::to_string(n));
    }
    double worst_p = 0;
    for (int i = 0; i < 40; ++i) {
        long n = rng.uniform(6, 12);
        Configuration c = random_config(rng, n);
        Configuration sw{c.n, c.modes, c.sites};
        std::vector<double> pa = entanglement_spectrum(c, 4096);
        std::vector<double> pb = entanglement_spectrum(sw, 4096);
        std::size_t len = std::max(pa.size(), pb.size());
        for (std::size_t k = 0; k < len; ++k) {
            double va = k < pa.size() ? pa[k] : 0.0;
            double vb = k < pb.size() ? pb[k] : 0.0;
            worst_p = std::max(worst_p, std::abs(va - vb));
        }
    }
    a.require(worst_p < 1e-9, "spectrum multisets deviate by " + fnum(worst_p));
    a.info = "230 entropy pairs (max " + fnum(std::max(worst_s, worst_half)) +
             "), 40 spectrum pairs (max " + fnum(worst_p) + ")";
    return a;
}

Acc complement_invariance() {
    Acc a;
    DetRng rng(20240813);
    const double alphas[] = {1.0, 2.0, 3.0};
    double worst = 0;
    for (int i = 0; i < 200; ++i) {
        long n = rng.uniform(16, 512);
        Configuration c = random_config(rng, n);
        Configuration cs{n, complement(c.sites), c.modes};
        Configuration cm{n, c.sites, complement(c.modes)};
        OccupationSpectrum base = occupation_spectrum(correlation_matrix(c));
        OccupationSpectrum ws = occupation_spectrum(correlation_matrix(cs));
        OccupationSpectrum wm = occupation_spectrum(correlation_matrix(cm));
        for (double alpha : alphas) {
            double s = renyi_from_spectrum(base, alpha);
            double ds = std::abs(s - renyi_from_spectrum(ws, alpha));
            double dm = std::abs(s - renyi_from_spectrum(wm, alpha));
            worst = std::max({worst, ds, dm});
            a.require(ds < 1e-8, "site complement mismatch " + fnum(ds));
            a.require(dm < 1e-8, "mode complement mismatch " + fnum(dm));
        }
    }
    a.info = "200 configs x 3 alphas, both factors, max deviation " + fnum(worst);
    return a;
}

Acc single_block_error_law() {
    Acc a;
    FamilyTemplate fam{1, 1, {1, 2}, {1, 2}};
    long t = worker_threads();

    ScanSeries s1 = error_scan(fam, {100, 200, 400, 800, 1600}, 1.0, t);
    bool pos = true, neg = true;
    for (const ScanRecord& r : s1.records) {
        pos = pos && r.error > 0;
        neg = neg && r.error < 0;
    }
    a.require(pos || neg, "alpha=1 error changes sign");
    ErrorFit f1 = fit_error_law(s1, std::nullopt, {M_PI / 2}, 0);
    a.require(f1.exponent >= 1.8 && f1.exponent <= 2.2,
              "alpha=1 envelope exponent " + fnum(f1.exponent) + " outside [1.8, 2.2]");

    ScanSeries s2 = error_scan(fam, range(100, 1600, 26), 2.0, t);
    ErrorFit f2 = fit_error_law(s2, 1.0, frequency_candidates(M_PI / 2, 4), 1);
    double target = M_PI / 2;
    a.require(std::abs(f2.nu - target) <= 0.05 * target,
              "alpha=2 frequency " + fnum(f2.nu) + " off pi/2 by more than 5%");

    a.info = "alpha=1 exponent " + fnum(f1.exponent) + " sign-constant; alpha=2 nu/(pi/2) = " +
             fnum(f2.nu / target);
    return a;
}

Acc geometric_factor_goldens() {
    Acc a;
    Configuration c1{36, symmetric_config(36, 3, {1, 2}), symmetric_config(36, 2, {1, 3})};
    Configuration c2{400, symmetric_config(400, 10, {1, 2}), symmetric_config(400, 5, {1, 4})};
    double d1 = std::abs(geometric_factor(c1) + 3 * std::log(12.0));
    double d2 = std::abs(geometric_factor(c2) + 25 * std::log(1250.0));
    a.require(d1 < 1e-10, "(3,2) factor off -3 log 12 by " + fnum(d1));
    a.require(d2 < 1e-10, "(10,5) factor off -25 log 1250 by " + fnum(d2));
    a.info = "-3 log 12 and -25 log 1250 hit to " + fnum(std::max(d1, d2));
    return a;
}

Acc general_formula_convergence() {
    Acc a;
    FamilyTemplate fam{3, 2, {1, 2}, {1, 3}};
    long t = worker_threads();
    std::string ratios;
    for (double alpha : {0.5, 1.0, 2.0}) {
        ScanSeries s = error_scan(fam, {72, 144, 288, 576, 1152}, alpha, t);
        double p = std::min(2.0, 2.0 / alpha);
        double lo = 1e300, hi = 0;
        for (const ScanRecord& r : s.records) {
            double v = std::abs(r.error) * std::pow(double(r.n), p);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        a.require(hi / lo <= 10.0,
                  "alpha " + fnum(alpha) + " scaled-error spread " + fnum(hi / lo) + " > 10");
        a.require(std::abs(s.records.back().error) < std::abs(s.records.front().error),
                  "alpha " + fnum(alpha) + " error grew from N=72 to N=1152");
        if (!ratios.empty()) ratios += ", ";
        ratios += fnum(hi / lo);
    }
    a.info = "|error| * N^min(2, 2/alpha) spread per alpha: " + ratios;
    return a;
}

Acc frequency_selection() {
    Acc a;
    long t = worker_threads();

    FamilyTemplate d{3, 2, {1, 2}, {1, 3}};
    ScanSeries sd = error_scan(d, range(360, 1080, 6), 0.5, t);
    ErrorFit fd = fit_error_law(sd, 2.0, frequency_candidates(nu0(d), d.r * d.s), 3);
    a.require(std::abs(fd.nu - M_PI / 18) < 1e-9,
              "(3,2,1/2,1/3) selected nu " + fnum(fd.nu) + " != pi/18");

    FamilyTemplate f{10, 5, {1, 2}, {1, 4}};
    ScanSeries sf = error_scan(f, range(400, 1200, 20), 2.0, t);
    ErrorFit ff = fit_error_law(sf, 1.0, frequency_candidates(nu0(f), f.r * f.s), 9);
    a.require(std::abs(ff.nu - M_PI / 200) < 1e-9,
              "(10,5,1/2,1/4) selected nu " + fnum(ff.nu) + " != pi/200");

    a.info = "selected nu = pi/18 (from " +
             std::to_string(frequency_candidates(nu0(d), d.r * d.s).size()) +
             " candidates) and pi/200 (from " +
             std::to_string(frequency_candidates(nu0(f), f.r * f.s).size()) + ")";
    return a;
}

Acc central_charges() {
    Acc a;
    long t = worker_threads();
    struct Case {
        FamilyTemplate fam;
        std::vector<long> ns;
        double rs;
    };
    std::vector<Case> cases = {
        {{1, 1, {1, 2}, {1, 2}}, {128, 256, 512, 1024, 2048}, 1.0},
        {{2, 1, {1, 2}, {1, 2}}, {128, 256, 512, 1024, 2048}, 2.0},
        {{3, 2, {1, 2}, {1, 3}}, {132, 264, 528, 1056, 2112}, 6.0},
    };
    std::string got;
    for (const Case& c : cases) {
        double slope = central_charge_fit(error_scan(c.fam, c.ns, 1.0, t));
        double rel = std::abs(slope - c.rs) / c.rs;
        a.require(rel <= 0.03, "rs=" + fnum(c.rs) + " fitted " + fnum(slope) + " (off by " +
                                   fnum(100 * rel) + "%)");
        if (!got.empty()) got += ", ";
        got += fnum(slope);
    }
    a.info = "fitted rs = " + got + " for targets 1, 2, 6";
    return a;
}

Acc tripartite_decay() {
    Acc a;
    std::vector<double> oct1, oct2, oct3;
    double first = 0, last = 0;
    for (long n = 120; n <= 960; n += 24) {
        BlockSet sites = symmetric_config(n, 3, {1, 4});
        BlockSet modes = symmetric_config(n, 1, {1, 4});
        std::vector<BlockSet> parts;
        for (const Interval& iv : sites.intervals)
            parts.push_back(canonicalize({{iv.start, iv.start + iv.length}}, n));
        double i3 = std::abs(multipartite_information_exact(parts, modes, 2.0));
        if (n == 120) first = i3;
        last = i3;
        (n < 240 ? oct1 : n < 480 ? oct2 : oct3).push_back(i3);
    }
    double m1 = median(oct1), m2 = median(oct2), m3 = median(oct3);
    a.require(last < first, "|I3| did not shrink from N=120 to N=960");
    a.require(m1 > m2 && m2 > m3, "octave medians not monotone: " + fnum(m1) + ", " + fnum(m2) +
                                      ", " + fnum(m3));
    a.info = "|I3|: " + fnum(first) + " -> " + fnum(last) + "; octave medians " + fnum(m1) +
             " > " + fnum(m2) + " > " + fnum(m3);
    return a;
}

Acc maximizer_geometry() {
    Acc a;
    for (auto gx : {Rational{1, 4}, Rational{1, 2}, Rational{3, 4}}) {
        MaximizeResult res = maximize_geometric_factor(2, 1, gx, {1, 2}, 16);
        double cell = 2 * M_PI * 8 / double(res.n_ref);
        const auto& iv = res.sites.intervals;
        a.require(iv.size() == 2, "expected two site blocks");
        if (iv.size() != 2) continue;
        double theta = 2 * M_PI * double(iv[0].length) / double(res.n_ref);
        double delta = 2 * M_PI * double(iv[1].start - iv[0].start - iv[0].length) /
                       double(res.n_ref);
        double theta_star = M_PI * gx.value();
        double delta_star = M_PI * (1 - gx.value());
        a.require(std::abs(theta - theta_star) <= cell,
                  "gx=" + fnum(gx.value()) + " theta " + fnum(theta) + " != " + fnum(theta_star));
        a.require(std::abs(delta - delta_star) <= cell,
                  "gx=" + fnum(gx.value()) + " delta " + fnum(delta) + " != " + fnum(delta_star));
    }
    MaximizeResult sq = maximize_geometric_factor(2, 2, {1, 2}, {1, 2}, 16);
    Configuration cfg{sq.n_ref, sq.sites, sq.modes};
    double worst = 0;
    for (double alpha : {0.5, 1.0, 2.0}) {
        AsymptoticConstants k = constants_for(alpha);
        double target =
            4 * (k.b * std::log(double(sq.n_ref) * std::sin(M_PI / 2) * std::sin(M_PI / 2) /
                                (2 * M_PI)) +
                 k.c);
        double d = std::abs(general_asymptotic(cfg, alpha).value - target);
        worst = std::max(worst, d);
        a.require(d < 1e-8, "r=s=2 value off closed form by " + fnum(d) + " at alpha " +
                                fnum(alpha));
    }
    a.info = "blocks at (pi gx, pi(1-gx)) for gx in {1/4, 1/2, 3/4}; r=s=2 value off by " +
             fnum(worst);
    return a;
}

Acc constants_stability() {
    Acc a;
    double worst = 0;
    for (double alpha : {0.5, 2.0, 3.0}) {
        double d = std::abs(c_alpha(alpha, 1e-9) - c_alpha(alpha, 1e-12));
        worst = std::max(worst, d);
        a.require(d < 1e-8, "c_alpha refinement drift " + fnum(d) + " at alpha " + fnum(alpha));
    }
    double d1 = std::abs(c_alpha(1.0) - 0.49501790813513705);
    a.require(d1 < 1e-6, "c_1 off the high-precision reference by " + fnum(d1));
    a.info = "refinement drift <= " + fnum(worst) + ", c_1 within " + fnum(d1) + " of reference";
    return a;
}

} // namespace

int main() {
    struct Entry {
        const char* name;
        std::function<Acc()> run;
        double limit_s; // 0 = no runtime bound
    };
    const std::vector<Entry> criteria = {
        {"engine matches the Fock-space oracle", oracle_equivalence, 30},
        {"position-momentum duality of entropies and spectra", duality, 120},
        {"complement invariance in both factors", complement_invariance, 120},
        {"single-block error law exponent and frequency", single_block_error_law, 300},
        {"geometric factor closed forms", geometric_factor_goldens, 1},
        {"general formula error decay at the predicted rate", general_formula_convergence, 600},
        {"fundamental frequency selection", frequency_selection, 600},
        {"central charge slope fits", central_charges, 300},
        {"tripartite information decay", tripartite_decay, 0},
        {"two-block maximizer geometry and value", maximizer_geometry, 0},
        {"constant-term quadrature stability", constants_stability, 0},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Acc a;
        try {
            a = criteria[i].run();
        } catch (const std::exception& e) {
            a.ok = false;
            a.fails = std::string("exception: ") + e.what();
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (a.ok && criteria[i].limit_s > 0 && dt > criteria[i].limit_s) {
            a.ok = false;
            a.fails = "runtime " + fnum(dt) + "s exceeds " + fnum(criteria[i].limit_s) + "s";
        }
        std::printf("[%s] criterion %zu: %s — %s (%.2fs)\n", a.ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name, a.detail().c_str(), dt);
        std::fflush(stdout);
        failures += a.ok ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures;
}

#include "entlab/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace entlab {

namespace {
constexpr double two_pi = 6.283185307179586476925286766559;
}

Rational make_rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long g = std::gcd(std::abs(num), den);
    if (g > 1) { num /= g; den /= g; }
    return Rational{num, den};
}

long BlockSet::total_length() const {
    long t = 0;
    for (const auto& iv : intervals) t += iv.length;
    return t;
}

std::vector<long> BlockSet::members() const {
    std::vector<long> out;
    out.reserve(total_length());
    for (const auto& iv : intervals)
        for (long k = 0; k < iv.length; ++k) out.push_back((iv.start + k) % n);
    std::sort(out.begin(), out.end());
    return out;
}

BlockSet canonicalize(const std::vector<std::pair<long, long>>& raw_intervals, long n) {
    if (n <= 0) throw std::invalid_argument("canonicalize: chain length must be positive");
    std::vector<char> covered(n, 0);
    for (const auto& [s, e] : raw_intervals) {
        if (e <= s) throw std::invalid_argument("canonicalize: empty interval [" + std::to_string(s) +
                                                "," + std::to_string(e) + ")");
        long len = e - s;
        if (len > n) throw std::invalid_argument("canonicalize: interval longer than the ring");
        long s0 = ((s % n) + n) % n;
        for (long k = 0; k < len; ++k) {
            long x = (s0 + k) % n;
            if (covered[x]) throw std::invalid_argument("canonicalize: overlap at site " + std::to_string(x));
            covered[x] = 1;
        }
    }
    BlockSet b;
    b.n = n;
    long total = std::accumulate(covered.begin(), covered.end(), 0L);
    if (total == 0) return b;
    if (total == n) {
        b.intervals.push_back({0, n});
        return b;
    }
    // maximal runs of covered sites on the ring; scan from an uncovered site
    long origin = 0;
    while (covered[origin]) ++origin;
    long run_start = -1;
    for (long k = 0; k <= n; ++k) {
        long x = (origin + k) % n;
        bool on = k < n && covered[x];
        if (on && run_start < 0) run_start = x;
        if (!on && run_start >= 0) {
            long len = ((x - run_start) % n + n) % n;
            if (len == 0) len = n;
            b.intervals.push_back({run_start, len});
            run_start = -1;
        }
    }
    std::sort(b.intervals.begin(), b.intervals.end(),
              [](const Interval& a, const Interval& c) { return a.start < c.start; });
    return b;
}

BlockSet complement(const BlockSet& b) {
    if (b.empty()) throw std::invalid_argument("complement: empty set");
    if (b.full()) throw std::invalid_argument("complement: full set");
    std::vector<char> covered(b.n, 0);
    for (const auto& iv : b.intervals)
        for (long k = 0; k < iv.length; ++k) covered[(iv.start + k) % b.n] = 1;
    std::vector<std::pair<long, long>> raw;
    for (long x = 0; x < b.n; ++x)
        if (!covered[x]) raw.push_back({x, x + 1});
    return canonicalize(raw, b.n);
}

AngleList AngleList::from_integers(const std::vector<std::pair<long, long>>& pairs, long den) {
    if (den <= 0) throw std::invalid_argument("angles: nonpositive denominator");
    AngleList a;
    a.den = den;
    for (const auto& [p, q] : pairs) {
        if (q <= p) throw std::invalid_argument("angles: endpoints out of order");
        a.u_num.push_back(p);
        a.v_num.push_back(q);
        a.u_rad.push_back(two_pi * double(p) / double(den));
        a.v_rad.push_back(two_pi * double(q) / double(den));
    }
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        if (a.u_num[i + 1] <= a.v_num[i]) throw std::invalid_argument("angles: blocks out of order");
    if (!a.u_rad.empty() && (a.u_num.front() < 0 || a.v_num.back() - a.u_num.front() >= den))
        throw std::invalid_argument("angles: range exceeds one turn");
    return a;
}

AngleList AngleList::from_radians(const std::vector<std::pair<double, double>>& pairs) {
    AngleList a;
    for (const auto& [p, q] : pairs) {
        if (q <= p) throw std::invalid_argument("angles: endpoints out of order");
        a.u_rad.push_back(p);
        a.v_rad.push_back(q);
    }
    for (std::size_t i = 0; i + 1 < a.size(); ++i)
        if (a.u_rad[i + 1] <= a.v_rad[i]) throw std::invalid_argument("angles: blocks out of order");
    if (!a.u_rad.empty() && (a.u_rad.front() < 0 || a.v_rad.back() - a.u_rad.front() >= two_pi))
        throw std::invalid_argument("angles: range exceeds one turn");
    return a;
}

double AngleList::len(std::size_t i) const {
    return den > 0 ? two_pi * double(v_num[i] - u_num[i]) / double(den) : v_rad[i] - u_rad[i];
}
double AngleList::d_vu(std::size_t i, std::size_t j) const {
    return den > 0 ? two_pi * double(v_num[j] - u_num[i]) / double(den) : v_rad[j] - u_rad[i];
}
double AngleList::d_uv(std::size_t i, std::size_t j) const {
    return den > 0 ? two_pi * double(u_num[j] - v_num[i]) / double(den) : u_rad[j] - v_rad[i];
}
double AngleList::d_uu(std::size_t i, std::size_t j) const {
    return den > 0 ? two_pi * double(u_num[j] - u_num[i]) / double(den) : u_rad[j] - u_rad[i];
}
double AngleList::d_vv(std::size_t i, std::size_t j) const {
    return den > 0 ? two_pi * double(v_num[j] - v_num[i]) / double(den) : v_rad[j] - v_rad[i];
}

AngleList angles(const BlockSet& b) {
    std::vector<std::pair<long, long>> pairs;
    const auto& iv = b.intervals;
    if (iv.empty()) return AngleList::from_integers(pairs, std::max(b.n, 1L));
    bool wraps = iv.back().start + iv.back().length > b.n;
    if (!wraps) {
        for (const auto& blk : iv) pairs.push_back({blk.start, blk.start + blk.length});
    } else {
        // rotate so the wrapping block opens the list at angle 0
        long off = iv.back().start;
        pairs.push_back({0, iv.back().length});
        for (std::size_t i = 0; i + 1 < iv.size(); ++i)
            pairs.push_back({iv[i].start - off + b.n, iv[i].start - off + b.n + iv[i].length});
    }
    return AngleList::from_integers(pairs, b.n);
}

BlockSet symmetric_config(long n, long r, Rational gamma) {
    if (n <= 0 || r <= 0) throw std::invalid_argument("symmetric_config: n and r must be positive");
    gamma = make_rational(gamma.num, gamma.den);
    if (gamma.num <= 0 || gamma.num > gamma.den)
        throw std::invalid_argument("symmetric_config: gamma must lie in (0,1]");
    if (n % r != 0 || (n * gamma.num) % (gamma.den * r) != 0)
        throw std::invalid_argument("symmetric_config: n=" + std::to_string(n) +
                                    " not divisible for r=" + std::to_string(r) + " blocks of length gamma*n/r");
    long period = n / r;
    long len = (n / gamma.den) * gamma.num / r; // gamma reduced, so den | n once the check passes
    if (len <= 0) throw std::invalid_argument("symmetric_config: zero block length");
    std::vector<std::pair<long, long>> raw;
    for (long i = 0; i < r; ++i) raw.push_back({i * period, i * period + len});
    return canonicalize(raw, n);
}

std::pair<Rational, Rational> densities(const Configuration& c) {
    return {make_rational(c.sites.total_length(), c.n), make_rational(c.modes.total_length(), c.n)};
}

} // namespace entlab

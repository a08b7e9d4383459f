#pragma once

#include <cstdint>
#include <utility>
#include <vector>

// Multi-block subsets of the ring Z_n: canonical interval representation,
// complements, continuum angles and filling fractions.

namespace entlab {

struct Rational {
    long num = 0;
    long den = 1; // > 0, reduced
    double value() const { return double(num) / double(den); }
};

Rational make_rational(long num, long den);

// One interval [start, start+length) on the ring. In canonical form
// 0 <= start < n; at most one interval per set wraps (start+length > n).
struct Interval {
    long start = 0;
    long length = 0;
};

struct BlockSet {
    long n = 0;
    std::vector<Interval> intervals; // sorted by start, disjoint, non-adjacent on the ring

    long total_length() const;
    bool empty() const { return intervals.empty(); }
    bool full() const { return total_length() == n; }
    std::vector<long> members() const; // ascending site indices, reduced mod n
};

struct Configuration {
    long n = 0;
    BlockSet sites; // subsystem A
    BlockSet modes; // excited set K
};

// Block endpoints as angles 2*pi*k/n. Exact integer numerators are kept so
// that angle differences never suffer cancellation; u[i] < v[i] < u[i+1],
// v.back() - u.front() < 2*pi, u.front() >= 0.
struct AngleList {
    long den = 0;                 // 0 when built from raw radians
    std::vector<long> u_num, v_num;
    std::vector<double> u_rad, v_rad;

    static AngleList from_integers(const std::vector<std::pair<long, long>>& pairs, long den);
    static AngleList from_radians(const std::vector<std::pair<double, double>>& pairs);

    std::size_t size() const { return u_rad.size(); }
    double u(std::size_t i) const { return u_rad[i]; }
    double v(std::size_t i) const { return v_rad[i]; }
    double len(std::size_t i) const;                  // v[i] - u[i]
    double d_vu(std::size_t i, std::size_t j) const;  // v[j] - u[i]
    double d_uv(std::size_t i, std::size_t j) const;  // u[j] - v[i]
    double d_uu(std::size_t i, std::size_t j) const;  // u[j] - u[i]
    double d_vv(std::size_t i, std::size_t j) const;  // v[j] - v[i]
};

// Raw [start,end) integer pairs (end may exceed n for ring wrap-around) to a
// canonical BlockSet: sorted, merged when adjacent, disjoint. Throws
// std::invalid_argument on overlap, empty interval or n <= 0. Idempotent.
BlockSet canonicalize(const std::vector<std::pair<long, long>>& raw_intervals, long n);

// Set complement on the ring; errors on empty or full input; involution.
BlockSet complement(const BlockSet& b);

// Endpoint angles of a canonical BlockSet. A wrapping block is rotated to the
// front so the angle sequence is increasing with u_1 = 0.
AngleList angles(const BlockSet& b);

// r equally spaced blocks of equal length gamma*n/r, period n/r.
// Throws on divisibility failure.
BlockSet symmetric_config(long n, long r, Rational gamma);

// Filling fractions (gamma_x, gamma_p) = (L/N, M/N) as exact rationals.
std::pair<Rational, Rational> densities(const Configuration& c);

} // namespace entlab

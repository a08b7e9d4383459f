#include "entlab/entropy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace entlab {

namespace {

BlockSet union_of(const std::vector<BlockSet>& parts, long n) {
    std::vector<std::pair<long, long>> raw;
    for (const auto& p : parts)
        for (const auto& iv : p.intervals) raw.push_back({iv.start, iv.start + iv.length});
    return canonicalize(raw, n); // throws on overlap, i.e. non-disjoint parts
}

} // namespace

double renyi_from_spectrum(const OccupationSpectrum& s, double alpha) {
    if (alpha <= 0) throw std::invalid_argument("renyi: alpha must be positive");
    double total = 0.0;
    for (double nu : s.values) {
        if (nu <= occupation_cutoff || nu >= 1.0 - occupation_cutoff) continue;
        if (alpha == 1.0)
            total += -nu * std::log(nu) - (1.0 - nu) * std::log(1.0 - nu);
        else
            total += std::log(std::pow(nu, alpha) + std::pow(1.0 - nu, alpha)) / (1.0 - alpha);
    }
    return total;
}

double renyi(const Configuration& c, double alpha, Path path) {
    if (alpha <= 0) throw std::invalid_argument("renyi: alpha must be positive");
    long l = c.sites.total_length(), m = c.modes.total_length();
    if (l == 0 || l == c.n || m == 0 || m == c.n) return 0.0; // pure product cases
    if (path == Path::automatic) path = l <= m ? Path::direct : Path::dual;
    auto h = path == Path::direct ? correlation_matrix(c) : dual_correlation_matrix(c);
    return renyi_from_spectrum(occupation_spectrum(h), alpha);
}

std::vector<double> entanglement_spectrum(const Configuration& c, long max_count) {
    if (max_count < 1) throw std::invalid_argument("entanglement_spectrum: max_count must be >= 1");
    long l = c.sites.total_length(), m = c.modes.total_length();
    std::vector<double> nu;
    if (!(l == 0 || l == c.n || m == 0 || m == c.n)) {
        auto h = l <= m ? correlation_matrix(c) : dual_correlation_matrix(c);
        for (double v : occupation_spectrum(h).values)
            if (v > occupation_cutoff && v < 1.0 - occupation_cutoff) nu.push_back(v);
    }
    if (nu.empty()) return {1.0};

    // log of the largest product, plus sorted flip costs for each factor
    double log_base = 0.0;
    std::vector<double> cost;
    cost.reserve(nu.size());
    for (double v : nu) {
        double hi = std::max(v, 1.0 - v), lo = std::min(v, 1.0 - v);
        log_base += std::log(hi);
        cost.push_back(std::log(hi) - std::log(lo));
    }
    std::sort(cost.begin(), cost.end());

    // best-first enumeration of subset sums of `cost` in ascending order
    std::vector<double> out;
    out.push_back(std::exp(log_base));
    using Node = std::pair<double, std::size_t>; // (subset cost, last index used)
    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> heap;
    heap.push({cost[0], 0});
    while (long(out.size()) < max_count && !heap.empty()) {
        auto [s, last] = heap.top();
        heap.pop();
        out.push_back(std::exp(log_base - s));
        if (last + 1 < cost.size()) {
            heap.push({s + cost[last + 1], last + 1});          // extend subset
            heap.push({s - cost[last] + cost[last + 1], last + 1}); // replace last element
        }
    }
    return out;
}

double mutual_information_exact(const std::vector<BlockSet>& parts, const BlockSet& modes, double alpha) {
    if (parts.empty()) throw std::invalid_argument("mutual_information: no parts");
    long n = parts.front().n;
    auto u = union_of(parts, n);
    double total = -renyi({n, u, modes}, alpha);
    for (const auto& p : parts) total += renyi({n, p, modes}, alpha);
    return total;
}

double multipartite_information_exact(const std::vector<BlockSet>& parts, const BlockSet& modes,
                                      double alpha, int cap) {
    const int r = int(parts.size());
    if (r < 2) throw std::invalid_argument("multipartite_information: need at least two parts");
    if (r > cap) throw std::invalid_argument("multipartite_information: " + std::to_string(r) +
                                             " parts exceed the cap of " + std::to_string(cap));
    long n = parts.front().n;
    union_of(parts, n); // disjointness check up front
    double total = 0.0;
    // fixed summation order: by sub-collection size, then lexicographic masks
    for (int l = 1; l <= r; ++l) {
        double sign = (l % 2 == 1) ? 1.0 : -1.0;
        for (unsigned mask = 1; mask < (1u << r); ++mask) {
            if (std::popcount(mask) != l) continue;
            std::vector<BlockSet> chosen;
            for (int i = 0; i < r; ++i)
                if (mask & (1u << i)) chosen.push_back(parts[i]);
            total += sign * renyi({n, union_of(chosen, n), modes}, alpha);
        }
    }
    return total;
}

} // namespace entlab

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace aae {

// Deterministic seed fan-out: hashes a master seed together with stream tags
// (trial index, term index, purpose) so that every RNG stream in a run is
// reproducible from one integer and no two streams collide by construction.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
    std::uint64_t s = splitmix64(master);
    s = splitmix64(s ^ a);
    s = splitmix64(s ^ b);
    return splitmix64(s ^ c);
}

using Rng = std::mt19937_64;

// Uniform double in [0, 1) from the top 53 bits; identical across platforms,
// unlike std::uniform_real_distribution.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_angle(Rng& rng) {
    return uniform01(rng) * 2.0 * 3.14159265358979323846;
}

// Inverse-CDF sampling from a discrete distribution. The cumulative table is
// built once per call; callers that sample the same distribution repeatedly
// should prefer the CumulativeTable overload.
struct CumulativeTable {
    Eigen::VectorXd cdf;

    explicit CumulativeTable(const Eigen::Ref<const Eigen::VectorXd>& dist) : cdf(dist.size()) {
        double acc = 0.0;
        for (Eigen::Index j = 0; j < dist.size(); ++j) {
            acc += dist[j];
            cdf[j] = acc;
        }
        cdf[dist.size() - 1] = 1.0;  // absorb rounding so the last bin is always reachable
    }

    Eigen::Index draw(Rng& rng) const {
        const double u = uniform01(rng);
        const double* begin = cdf.data();
        const double* end = begin + cdf.size();
        return std::upper_bound(begin, end, u) - begin;
    }
};

inline std::vector<Eigen::Index> sample_counts(const Eigen::Ref<const Eigen::VectorXd>& dist,
                                               int n_shot, std::uint64_t seed) {
    if (n_shot < 1) throw std::invalid_argument("sample_counts: n_shot must be >= 1");
    if ((dist.array() < 0.0).any())
        throw std::invalid_argument("sample_counts: negative probability entry");
    if (std::abs(dist.sum() - 1.0) > 1e-9)
        throw std::invalid_argument("sample_counts: distribution does not sum to 1");
    CumulativeTable table(dist);
    Rng rng(seed);
    std::vector<Eigen::Index> out(static_cast<std::size_t>(n_shot));
    for (auto& s : out) s = table.draw(rng);
    return out;
}

}  // namespace aae

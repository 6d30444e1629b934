#include "solidangle/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace solidangle {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id) {
    // Mix seed and stream id so that nearby pairs land far apart in state space.
    const std::uint64_t s = splitmix64(splitmix64(seed) ^ splitmix64(~stream_id));
    engine_.seed(s);
}

double RandomStream::uniform01() {
    return double(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::gaussian() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    // Marsaglia polar method; the rejection loop keeps the consumed-uniform
    // count data-dependent but fully determined by the stream.
    double u, v, s;
    do {
        u = 2.0 * uniform01() - 1.0;
        v = 2.0 * uniform01() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * f;
    has_cached_ = true;
    return u * f;
}

void RandomStream::fill_gaussian(std::span<double> out) {
    for (double& x : out) x = gaussian();
}

std::vector<double> RandomStream::gaussian_vector(int dim) {
    if (dim < 1) throw std::invalid_argument("gaussian_vector: dim must be >= 1");
    std::vector<double> v(static_cast<std::size_t>(dim), 0.0);
    fill_gaussian(v);
    return v;
}

} // namespace solidangle

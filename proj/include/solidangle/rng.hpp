#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace solidangle {

/// Deterministic random stream: a (seed, stream_id) pair fully determines the
/// sample sequence. The raw generator is std::mt19937_64 (bit-exact across
/// platforms per the standard); normals come from the Marsaglia polar method,
/// so cross-platform identity holds up to libm's sqrt/log rounding.
///
/// Distinct stream ids on the same seed give decorrelated sequences; every
/// estimator consumes a stream sequentially, which makes each run a pure
/// function of (inputs, seed, stream_id, n).
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    /// Uniform on [0,1) with 53 random bits.
    double uniform01();

    /// One standard normal draw.
    double gaussian();

    void fill_gaussian(std::span<double> out);

    std::vector<double> gaussian_vector(int dim);

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

/// dim independent standard normal coordinates; normalize the result for a
/// uniform direction on the sphere (rotational invariance).
inline std::vector<double> gaussian_vector(RandomStream& stream, int dim) {
    return stream.gaussian_vector(dim);
}

} // namespace solidangle

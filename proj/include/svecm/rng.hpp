#pragma once

#include <cstdint>
#include <random>

namespace svecm {

/**
 * Portable seeded generator.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard. Uniforms take the top 53 bits of each draw; normals use the
 * basic Box-Muller transform, consuming two uniforms per pair and returning
 * the cosine branch first. Library distributions (std::normal_distribution
 * and friends) are implementation-defined and are deliberately not used, so
 * that fixtures reproduce bit-for-bit across standard libraries.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform();

    /// Uniform on (0, 1]; safe as a log argument.
    double uniform_open_low() { return 1.0 - uniform(); }

    double normal();

    /// Uniform integer on [0, n).
    std::size_t index(std::size_t n);

    /// Seed for an independent sub-stream, e.g. one bootstrap replication.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream);

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace svecm

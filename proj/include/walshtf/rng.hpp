#pragma once

// Deterministic randomness.  std::mt19937_64 has a pinned output sequence,
// but the standard library distributions do not, so bounded draws and
// shuffles are hand-rolled to keep artifacts byte-identical across
// platforms and compilers.

#include <cstdint>
#include <random>
#include <vector>

namespace walshtf {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next() { return eng_(); }

    // Uniform in [0, n) by rejection; n must be positive.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r;
        do {
            r = eng_();
        } while (r >= lim);
        return r % n;
    }

    // Uniform integer in [lo, hi] inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    bool coin() { return (eng_() & 1) != 0; }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Independent stream for a numbered subtask, derived from the original
    // seed only, so per-trial results do not depend on draw interleaving.
    Rng fork(std::uint64_t stream) const {
        return Rng(seed_ ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace walshtf

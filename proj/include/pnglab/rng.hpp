#ifndef PNGLAB_RNG_HPP
#define PNGLAB_RNG_HPP

#include <cstdint>

namespace pnglab::rng {

// SplitMix64 finalizer: a well-mixed bijection on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Counter-based generator: every output is a pure function of
// (seed, index, stream, draw counter), so replicates indexed by `index`
// are reproducible and embarrassingly parallel with no shared state.
class CounterRng {
  public:
    CounterRng(std::uint64_t seed, std::uint64_t index, std::uint64_t stream = 0)
        : key_(mix64(mix64(mix64(seed) ^ index) ^ stream)) {}

    std::uint64_t next_u64() { return mix64(key_ ^ (ctr_++ * 0x9e3779b97f4a7c15ull)); }

    // Uniform in the open interval (0,1): 53-bit mantissa offset by half an ulp.
    double next_open01() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Bernoulli(p) for p in [0,1].
    bool next_bernoulli(double p) { return next_open01() < p; }

  private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

}  // namespace pnglab::rng

#endif

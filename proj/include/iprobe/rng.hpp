#ifndef IPROBE_RNG_HPP
#define IPROBE_RNG_HPP

#include <cstdint>
#include <random>

namespace iprobe {

// Deterministic random stream. mt19937_64 output is bit-specified by the
// standard; the uniform mapping below is done by hand because the standard
// distributions are not reproducible across library implementations.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on [0, 1): top 53 bits of the raw draw.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Uniform on [-1, 1].
    double uniform_pm1() { return 2.0 * uniform01() - 1.0; }

  private:
    std::mt19937_64 gen_;
};

// splitmix64 step; used to derive independent sub-seeds from (seed, index)
// without correlating the child streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(seed + 0x632be59bd9b4e019ULL * (index + 1));
}

} // namespace iprobe

#endif

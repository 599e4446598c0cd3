#ifndef VFMCAL_RNG_HPP
#define VFMCAL_RNG_HPP

#include <cstdint>

namespace vfmcal {

namespace detail {

// splitmix64 finalizer (Steele, Lea & Flood 2014)
constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

}  // namespace detail

// Keyed splitmix64 stream. A stream is addressed by (seed, stream, step,
// index), so parallel consumers own disjoint generators and a run is
// reproducible independently of scheduling order.
class CounterRng {
public:
    using result_type = std::uint64_t;

    explicit CounterRng(std::uint64_t seed) : state_(detail::mix64(seed + detail::kGolden)) {}

    CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t step, std::uint64_t index) {
        std::uint64_t h = detail::mix64(seed + detail::kGolden);
        h = detail::mix64(h ^ (stream + detail::kGolden));
        h = detail::mix64(h ^ (step + detail::kGolden));
        h = detail::mix64(h ^ (index + detail::kGolden));
        state_ = h;
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }

    result_type operator()() {
        state_ += detail::kGolden;
        return detail::mix64(state_);
    }

    // Uniform on the open interval (0, 1); never returns an endpoint.
    double uniform01() {
        return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
    }

private:
    std::uint64_t state_;
};

// Uniform (0,1) draw from any 64-bit URBG.
template <class Rng>
double uniform01(Rng& rng) {
    return (static_cast<double>(static_cast<std::uint64_t>(rng()) >> 11) + 0.5) * 0x1.0p-53;
}

// Stream identifiers reserved by the library; consumers of CounterRng pick
// disjoint stream words so draws never collide across purposes.
namespace rng_stream {
inline constexpr std::uint64_t prior = 1;
inline constexpr std::uint64_t resample = 2;
inline constexpr std::uint64_t transition = 3;
inline constexpr std::uint64_t synth = 4;
}  // namespace rng_stream

}  // namespace vfmcal

#endif

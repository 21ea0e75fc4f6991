#include "rfkit/rng.hpp"

#include <cmath>
#include <numbers>

namespace rfkit {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;  // splitmix64 increment

// splitmix64 finalizer; full-avalanche 64-bit mix.
std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_(stream_id) {
    base_ = mix64(seed_ + kGamma) ^ mix64(stream_ + 0xD1B54A32D192ED03ULL);
}

RngStream RngStream::substream(std::uint64_t id) const noexcept {
    return RngStream(seed_, mix64(stream_ + kGamma * (id + 1)));
}

std::uint64_t RngStream::word(std::uint64_t index) const noexcept {
    return mix64(base_ + kGamma * (index + 1));
}

double RngStream::uniform(std::uint64_t index) const noexcept {
    return static_cast<double>(word(index) >> 11) * 0x1.0p-53;
}

double RngStream::uniform_open(std::uint64_t index) const noexcept {
    return (static_cast<double>(word(index) >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::gaussian(std::uint64_t index) const noexcept {
    const double u1 = uniform_open(2 * index);
    const double u2 = uniform(2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
}

std::uint64_t RngStream::uniform_index(std::uint64_t index, std::uint64_t n) const noexcept {
    // 128-bit multiply trick keeps the modulo bias below 2^-64.
    const unsigned __int128 wide =
        static_cast<unsigned __int128>(word(index)) * static_cast<unsigned __int128>(n);
    return static_cast<std::uint64_t>(wide >> 64);
}

Matrix draw_gaussian(const RngStream& rng, Index rows, Index cols, double stddev) {
    if (rows < 0 || cols < 0) throw InvalidArgument("draw_gaussian: negative shape");
    if (!(stddev > 0.0)) throw InvalidArgument("draw_gaussian: stddev must be > 0");
    Matrix out(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        for (Index c = 0; c < cols; ++c) {
            const std::uint64_t idx = static_cast<std::uint64_t>(r) *
                                          static_cast<std::uint64_t>(cols) +
                                      static_cast<std::uint64_t>(c);
            out(r, c) = stddev * rng.gaussian(idx);
        }
    }
    return out;
}

Vector draw_uniform(const RngStream& rng, Index count, double lo, double hi) {
    if (count < 0) throw InvalidArgument("draw_uniform: negative count");
    if (!(lo < hi)) throw InvalidArgument("draw_uniform: requires lo < hi");
    Vector out(count);
    for (Index i = 0; i < count; ++i) {
        out(i) = lo + (hi - lo) * rng.uniform(static_cast<std::uint64_t>(i));
    }
    return out;
}

}  // namespace rfkit

#pragma once

#include <cstdint>

#include "rfkit/types.hpp"

namespace rfkit {

/// Counter-based random stream keyed by (seed, stream_id).
///
/// Every draw is a pure function of (seed, stream_id, counter), so a fixed
/// stream reproduces the same values no matter in which order, or from how
/// many threads, the counters are evaluated. Substreams derived by id are
/// statistically independent of the parent and of each other.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_; }

    RngStream substream(std::uint64_t id) const noexcept;

    /// Raw 64-bit word at the given counter.
    std::uint64_t word(std::uint64_t index) const noexcept;

    /// Uniform in [0, 1).
    double uniform(std::uint64_t index) const noexcept;

    /// Uniform in (0, 1); safe to feed into log().
    double uniform_open(std::uint64_t index) const noexcept;

    /// Standard normal via Box-Muller; consumes counters 2*index, 2*index+1.
    double gaussian(std::uint64_t index) const noexcept;

    /// Uniform integer in [0, n); n must be > 0.
    std::uint64_t uniform_index(std::uint64_t index, std::uint64_t n) const noexcept;

private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::uint64_t base_;
};

/// rows x cols matrix of i.i.d. N(0, stddev^2) entries, entry (r,c) drawn at
/// counter r*cols+c. Deterministic for a fixed stream.
Matrix draw_gaussian(const RngStream& rng, Index rows, Index cols, double stddev);

/// count i.i.d. draws uniform on [lo, hi). Requires lo < hi.
Vector draw_uniform(const RngStream& rng, Index count, double lo, double hi);

}  // namespace rfkit

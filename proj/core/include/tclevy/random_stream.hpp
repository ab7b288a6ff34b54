#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace tclevy {

/// Counter-based random stream (Philox4x32-10).
///
/// The key is derived from (seed, lane) and the 128-bit counter carries the
/// stream id in its upper half, so any (seed, stream_id, lane) triple names an
/// independent, reproducible sequence. Monte Carlo paths use stream_id = path
/// index; fork() gives per-path sub-streams (subordinator, Brownian, jumps)
/// that can be consumed in any order without disturbing each other.
///
/// A stream is single-owner mutable state: move it between threads freely,
/// never share one concurrently.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id, std::uint64_t lane = 0);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }
    std::uint64_t lane() const noexcept { return lane_; }

    /// Independent sibling stream sharing (seed, stream_id).
    RandomStream fork(std::uint64_t lane) const;

    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1).
    double next_uniform();
    /// Standard normal (Box-Muller, second variate cached).
    double next_gaussian();
    /// Standard exponential.
    double next_exponential();

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t lane_;
    std::array<std::uint32_t, 2> key_{};
    std::uint64_t block_ = 0;
    std::array<std::uint32_t, 4> buffer_{};
    int used_ = 4;
    std::optional<double> spare_gaussian_;
};

RandomStream make_stream(std::uint64_t seed, std::uint64_t stream_id);

/// SplitMix64 finalizer; used for key derivation.
std::uint64_t mix64(std::uint64_t z) noexcept;

}  // namespace tclevy

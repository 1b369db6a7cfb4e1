#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>

namespace lsa {

inline constexpr const char* kPrngName = "philox4x32-10";

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., SC'11). Pure function of
/// counter and key.
PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key);

std::uint64_t splitmix64(std::uint64_t x);

/// Deterministic stream over Philox4x32-10.
///
/// The 128-bit counter is (block index: 64 bits, stream id: 64 bits) and the
/// key is the 64-bit master seed. Child streams share the key and get a stream
/// id mixed from the parent id and the child index, so a stream depends only
/// on (seed, derivation path). A stream must have a single owner.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

    /// Independent stream for `index`; does not advance this stream.
    RngStream child(std::uint64_t index) const;

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    /// Standard normal draw (Box-Muller, one output per two uniforms).
    double normal();
    /// Unbiased integer in [0, bound) (Lemire's multiply-and-reject). bound > 0.
    std::uint64_t below(std::uint64_t bound);

    std::uint64_t stream_id() const { return stream_id_; }
    std::uint64_t seed() const { return seed_; }

private:
    void refill();

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t block_ = 0;
    PhiloxCounter buffer_{};
    std::size_t used_ = 4;
};

}  // namespace lsa

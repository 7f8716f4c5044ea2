#pragma once

#include <cstdint>

namespace design2 {

// Deterministic counter-based bit source: block i is splitmix64's mix of
// seed + (i+1)*golden, consumed LSB first.  Total consumption is tracked
// so samplers can report entropy usage.
class BitSource {
public:
    explicit BitSource(std::uint64_t seed) : seed_(seed) {}

    bool next_bit();
    // k <= 64 bits, packed LSB first (first drawn bit in bit 0).
    std::uint64_t next_bits(unsigned k);
    std::uint64_t bits_consumed() const { return consumed_; }

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    std::uint64_t buffer_ = 0;
    unsigned avail_ = 0;
    std::uint64_t consumed_ = 0;

    void refill();
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace design2

#include "design2/rng.hpp"

namespace design2 {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    x = x ^ (x >> 31);
    return x;
}

void BitSource::refill() {
    ++counter_;
    buffer_ = splitmix64(seed_ + counter_ * 0x9E3779B97F4A7C15ull);
    avail_ = 64;
}

bool BitSource::next_bit() {
    if (avail_ == 0) refill();
    bool b = buffer_ & 1;
    buffer_ >>= 1;
    --avail_;
    ++consumed_;
    return b;
}

std::uint64_t BitSource::next_bits(unsigned k) {
    std::uint64_t out = 0;
    for (unsigned i = 0; i < k; ++i)
        if (next_bit()) out |= std::uint64_t(1) << i;
    return out;
}

}  // namespace design2

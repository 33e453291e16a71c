#pragma once

#include <cstdint>

#include <gmpxx.h>

namespace gkpd {

/// Deterministic random generator (splitmix64 word stream).
///
/// Every random draw in the library goes through an explicitly passed DetRng,
/// so a 64-bit seed fixes an entire scenario bit-for-bit across platforms.
/// The state is single-owner; copying is allowed but forking a named
/// substream via fork() is the intended way to decorrelate streams.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound). bound must be > 0.
    std::uint64_t below_u64(std::uint64_t bound) {
        const std::uint64_t limit = bound * (UINT64_MAX / bound);
        for (;;) {
            const std::uint64_t v = next_u64();
            if (v < limit) return v % bound;
        }
    }

    /// Uniform mpz in [0, 2^nbits). Bytes are assembled most-significant
    /// first so the mapping from the word stream is platform-independent.
    mpz_class bits(unsigned nbits);

    /// Uniform mpz in [0, bound) by rejection on bitlen(bound)-bit draws.
    mpz_class below(const mpz_class& bound);

    /// Derive an independent substream seeded from this stream.
    DetRng fork() { return DetRng(next_u64()); }

private:
    std::uint64_t state_;
};

} // namespace gkpd

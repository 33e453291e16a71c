#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include <gmpxx.h>

#include "gkpd/errors.hpp"
#include "gkpd/rng.hpp"

namespace gkpd {

class Modulus;
using ModulusPtr = std::shared_ptr<const Modulus>;

/// RSA-style composite modulus N = p*q.
///
/// The factorization (p, q, phi) is KGC-private: it is carried only by
/// moduli built from primes, is never serialized, and is reachable only
/// through the kgc_* accessors.  Everything else sees just N.  A modulus
/// reconstructed from a public file has no factorization at all.
class Modulus {
public:
    /// KGC construction. Validates both primes with 40 Miller-Rabin rounds
    /// (error < 2^-80) and requires p != q.
    static ModulusPtr from_primes(const mpz_class& p, const mpz_class& q);

    /// Public reconstruction (deserialization); kgc_* accessors throw.
    static ModulusPtr public_only(const mpz_class& n);

    const mpz_class& n() const { return n_; }
    bool has_factorization() const { return secret_.has_value(); }

    // KGC-privileged accessors.
    const mpz_class& kgc_p() const { return secret_or_throw().p; }
    const mpz_class& kgc_q() const { return secret_or_throw().q; }
    const mpz_class& kgc_phi() const { return secret_or_throw().phi; }

private:
    struct Secret {
        mpz_class p, q, phi;
    };

    Modulus(mpz_class n, std::optional<Secret> secret)
        : n_(std::move(n)), secret_(std::move(secret)) {}

    const Secret& secret_or_throw() const {
        if (!secret_) throw MissingFactorization("modulus carries no factorization");
        return *secret_;
    }

    mpz_class n_;
    std::optional<Secret> secret_;
};

/// Canonical element of Z_N: value in [0, N) plus the owning modulus.
/// Arithmetic between residues of different moduli throws ModulusMismatch.
class Residue {
public:
    Residue(mpz_class value, ModulusPtr modulus);

    const mpz_class& value() const { return value_; }
    const ModulusPtr& modulus() const { return modulus_; }

    bool is_unit() const;
    Residue inverse() const;                 // throws NotInvertible
    Residue pow(const mpz_class& e) const;   // e >= 0

    friend Residue operator*(const Residue& a, const Residue& b);
    friend Residue operator+(const Residue& a, const Residue& b);
    friend Residue operator-(const Residue& a, const Residue& b);
    friend bool operator==(const Residue& a, const Residue& b);
    friend bool operator!=(const Residue& a, const Residue& b) { return !(a == b); }

private:
    mpz_class value_;
    ModulusPtr modulus_;
};

/// Requires a.modulus and b.modulus to denote the same ring (equal N).
void require_same_modulus(const Residue& a, const Residue& b);

/// Deterministic probabilistic primality test.  Composites below 10^6 are
/// decided exactly by trial division; larger candidates get `rounds`
/// Miller-Rabin rounds with bases drawn from rng.
bool is_probable_prime(const mpz_class& n, int rounds, DetRng& rng);

/// Deterministically generate a prime of exactly `bits` bits.
///
/// Primes are drawn with p = 3 (mod 4), p != 1 (mod 3) and p != 1 (mod 5),
/// which keeps n-th roots computable in closed form for every root order
/// whose prime factors lie in {2, 3, 5} (covers group sizes up to 6; see
/// nth_root).  bits must be >= 8.
mpz_class gen_prime(unsigned bits, DetRng& rng);

/// Deterministic modulus generation: two distinct `bit_length`-bit primes,
/// a pure function of (bit_length, seed).
ModulusPtr gen_modulus(unsigned bit_length, std::uint64_t seed);

/// b with a*b = 1 (mod N); throws NotInvertible when gcd(a, N) > 1.
Residue mod_inverse(const Residue& a);

/// true iff gcd(a, N) = 1.
bool is_unit(const Residue& a);

/// Uniform unit in [1, N); resamples internally on non-units.  When
/// resample_count is non-null it receives the number of non-unit draws.
Residue random_unit(const ModulusPtr& modulus, DetRng& rng,
                    std::uint64_t* resample_count = nullptr);

/// Uniform residue in [0, N).
Residue random_residue(const ModulusPtr& modulus, DetRng& rng);

inline constexpr unsigned kRootSearchPrimeBits = 20;

/// Some u with u^n = a (mod N).  KGC-privileged (uses the factorization).
///
/// Resolution order: n = 1 returns a; gcd(n, phi) = 1 uses the inverse
/// exponent; otherwise roots are found per prime and combined by CRT --
/// in closed form via principal-square-root chains when p = 3 (mod 4) and
/// the odd part of n is coprime to p-1 (always true for gen_modulus output
/// and n with factors in {2,3,5}), by exhaustive search when the prime is
/// below 2^20, and TooLarge otherwise.  Throws NoRoot when no root exists.
Residue nth_root(const Residue& a, unsigned long n, const Modulus& modulus);

} // namespace gkpd

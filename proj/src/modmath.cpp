#include "gkpd/modmath.hpp"

#include <stdexcept>
#include <vector>

namespace gkpd {

// ---------------------------------------------------------------------------
// DetRng
// ---------------------------------------------------------------------------

mpz_class DetRng::bits(unsigned nbits) {
    if (nbits == 0) return 0;
    const unsigned nbytes = (nbits + 7) / 8;
    std::vector<unsigned char> buf(nbytes);
    std::uint64_t word = 0;
    unsigned have = 0;
    for (unsigned i = 0; i < nbytes; ++i) {
        if (have == 0) {
            word = next_u64();
            have = 8;
        }
        buf[i] = static_cast<unsigned char>(word >> 56);
        word <<= 8;
        --have;
    }
    if (nbits % 8 != 0) {
        buf[0] &= static_cast<unsigned char>((1u << (nbits % 8)) - 1);
    }
    mpz_class out;
    mpz_import(out.get_mpz_t(), nbytes, 1, 1, 0, 0, buf.data());
    return out;
}

mpz_class DetRng::below(const mpz_class& bound) {
    if (bound <= 0) throw std::invalid_argument("DetRng::below: bound must be positive");
    const unsigned k = static_cast<unsigned>(mpz_sizeinbase(bound.get_mpz_t(), 2));
    for (;;) {
        mpz_class v = bits(k);
        if (v < bound) return v;
    }
}

// ---------------------------------------------------------------------------
// Primality
// ---------------------------------------------------------------------------

namespace {

const std::vector<unsigned long>& small_primes() {
    static const std::vector<unsigned long> primes = [] {
        std::vector<unsigned long> out;
        std::vector<bool> sieve(1000, true);
        for (unsigned long i = 2; i < 1000; ++i) {
            if (!sieve[i]) continue;
            out.push_back(i);
            for (unsigned long j = i * i; j < 1000; j += i) sieve[j] = false;
        }
        return out;
    }();
    return primes;
}

mpz_class powm(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
    mpz_class out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return out;
}

} // namespace

bool is_probable_prime(const mpz_class& n, int rounds, DetRng& rng) {
    if (n < 2) return false;
    for (unsigned long d : small_primes()) {
        if (n == d) return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), d)) return false;
    }
    // Trial division by everything below 1000 decides n < 10^6 exactly.
    if (n < 1000000) return true;

    const mpz_class nm1 = n - 1;
    mpz_class d = nm1;
    unsigned long s = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d >>= 1;
        ++s;
    }
    for (int i = 0; i < rounds; ++i) {
        const mpz_class a = 2 + rng.below(n - 3);
        mpz_class x = powm(a, d, n);
        if (x == 1 || x == nm1) continue;
        bool witness = true;
        for (unsigned long r = 1; r < s; ++r) {
            x = x * x % n;
            if (x == nm1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

mpz_class gen_prime(unsigned bits, DetRng& rng) {
    if (bits < 8) throw std::invalid_argument("gen_prime: bits must be >= 8");
    for (;;) {
        mpz_class c = rng.bits(bits);
        mpz_setbit(c.get_mpz_t(), bits - 1);
        // Candidates are forced to 3 (mod 4) and rejected when = 1 (mod 3)
        // or = 1 (mod 5); see nth_root for why these classes are used.
        mpz_setbit(c.get_mpz_t(), 0);
        mpz_setbit(c.get_mpz_t(), 1);
        if (mpz_fdiv_ui(c.get_mpz_t(), 3) == 1) continue;
        if (mpz_fdiv_ui(c.get_mpz_t(), 5) == 1) continue;
        if (is_probable_prime(c, 40, rng)) return c;
    }
}

ModulusPtr gen_modulus(unsigned bit_length, std::uint64_t seed) {
    DetRng rng(seed);
    const mpz_class p = gen_prime(bit_length, rng);
    mpz_class q = gen_prime(bit_length, rng);
    while (q == p) q = gen_prime(bit_length, rng);
    return Modulus::from_primes(p, q);
}

// ---------------------------------------------------------------------------
// Modulus
// ---------------------------------------------------------------------------

ModulusPtr Modulus::from_primes(const mpz_class& p, const mpz_class& q) {
    if (p == q) throw std::invalid_argument("Modulus::from_primes: p and q must differ");
    DetRng check(0x70726d6368656b5fULL);
    if (!is_probable_prime(p, 40, check) || !is_probable_prime(q, 40, check)) {
        throw std::invalid_argument("Modulus::from_primes: both factors must be prime");
    }
    Secret secret{p, q, (p - 1) * (q - 1)};
    return ModulusPtr(new Modulus(p * q, std::move(secret)));
}

ModulusPtr Modulus::public_only(const mpz_class& n) {
    if (n < 2) throw std::invalid_argument("Modulus::public_only: n must be >= 2");
    return ModulusPtr(new Modulus(n, std::nullopt));
}

// ---------------------------------------------------------------------------
// Residue
// ---------------------------------------------------------------------------

Residue::Residue(mpz_class value, ModulusPtr modulus) : modulus_(std::move(modulus)) {
    if (!modulus_) throw std::invalid_argument("Residue: null modulus");
    mpz_mod(value_.get_mpz_t(), value.get_mpz_t(), modulus_->n().get_mpz_t());
}

void require_same_modulus(const Residue& a, const Residue& b) {
    if (a.modulus() == b.modulus()) return;
    if (a.modulus()->n() == b.modulus()->n()) return;
    throw ModulusMismatch("arithmetic between residues of different moduli");
}

bool Residue::is_unit() const {
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), value_.get_mpz_t(), modulus_->n().get_mpz_t());
    return g == 1;
}

Residue Residue::inverse() const {
    mpz_class out;
    if (mpz_invert(out.get_mpz_t(), value_.get_mpz_t(), modulus_->n().get_mpz_t()) == 0) {
        throw NotInvertible("residue " + value_.get_str() + " is not a unit mod " +
                            modulus_->n().get_str());
    }
    return Residue(std::move(out), modulus_);
}

Residue Residue::pow(const mpz_class& e) const {
    if (e < 0) throw std::invalid_argument("Residue::pow: exponent must be >= 0");
    return Residue(powm(value_, e, modulus_->n()), modulus_);
}

Residue operator*(const Residue& a, const Residue& b) {
    require_same_modulus(a, b);
    return Residue(a.value_ * b.value_, a.modulus_);
}

Residue operator+(const Residue& a, const Residue& b) {
    require_same_modulus(a, b);
    return Residue(a.value_ + b.value_, a.modulus_);
}

Residue operator-(const Residue& a, const Residue& b) {
    require_same_modulus(a, b);
    return Residue(a.value_ - b.value_, a.modulus_);
}

bool operator==(const Residue& a, const Residue& b) {
    return a.modulus_->n() == b.modulus_->n() && a.value_ == b.value_;
}

Residue mod_inverse(const Residue& a) { return a.inverse(); }

bool is_unit(const Residue& a) { return a.is_unit(); }

Residue random_unit(const ModulusPtr& modulus, DetRng& rng, std::uint64_t* resample_count) {
    if (resample_count) *resample_count = 0;
    const mpz_class bound = modulus->n() - 1;
    for (;;) {
        Residue r(1 + rng.below(bound), modulus);
        if (r.is_unit()) return r;
        if (resample_count) ++*resample_count;
    }
}

Residue random_residue(const ModulusPtr& modulus, DetRng& rng) {
    return Residue(rng.below(modulus->n()), modulus);
}

// ---------------------------------------------------------------------------
// nth_root
// ---------------------------------------------------------------------------

namespace {

// Solve y^n = a (mod p) for prime p, unit a.  Throws NoRoot / TooLarge.
mpz_class prime_root(mpz_class a, unsigned long n, const mpz_class& p) {
    a %= p;
    mpz_class x = a;
    unsigned long m = n;
    if (mpz_fdiv_ui(p.get_mpz_t(), 4) == 3) {
        // x -> x^((p+1)/4) is the square root that is itself a QR, so the
        // chain stays solvable as long as each step passes Euler's criterion.
        const mpz_class half = (p - 1) / 2;
        const mpz_class sqrt_exp = (p + 1) / 4;
        while (m % 2 == 0) {
            if (powm(x, half, p) != 1) {
                throw NoRoot("no " + std::to_string(n) + "-th root mod prime factor");
            }
            x = powm(x, sqrt_exp, p);
            m /= 2;
        }
    }
    const mpz_class pm1 = p - 1;
    mpz_class g;
    mpz_class mz(static_cast<unsigned long>(m));
    mpz_gcd(g.get_mpz_t(), mz.get_mpz_t(), pm1.get_mpz_t());
    if (g == 1) {
        mpz_class e;
        mpz_invert(e.get_mpz_t(), mz.get_mpz_t(), pm1.get_mpz_t());
        return powm(x, e, p);
    }
    if (mpz_sizeinbase(p.get_mpz_t(), 2) > kRootSearchPrimeBits) {
        throw TooLarge("root order shares a factor with p-1 and the prime exceeds "
                       "the exhaustive-search bound");
    }
    for (mpz_class y = 1; y < p; ++y) {
        if (powm(y, mz, p) == x) return y;
    }
    throw NoRoot("no " + std::to_string(n) + "-th root mod prime factor");
}

} // namespace

Residue nth_root(const Residue& a, unsigned long n, const Modulus& modulus) {
    if (n == 0) throw std::invalid_argument("nth_root: n must be positive");
    if (!a.is_unit()) throw NotInvertible("nth_root requires a unit argument");
    if (n == 1) return a;

    const mpz_class& phi = modulus.kgc_phi();
    mpz_class nz(n);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), nz.get_mpz_t(), phi.get_mpz_t());
    if (g == 1) {
        mpz_class e;
        mpz_invert(e.get_mpz_t(), nz.get_mpz_t(), phi.get_mpz_t());
        return a.pow(e);
    }

    const mpz_class& p = modulus.kgc_p();
    const mpz_class& q = modulus.kgc_q();
    const mpz_class up = prime_root(a.value(), n, p);
    const mpz_class uq = prime_root(a.value(), n, q);

    // CRT combine: u = up (mod p), u = uq (mod q).
    mpz_class pinv;
    mpz_invert(pinv.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    mpz_class t = (uq - up) * pinv;
    mpz_mod(t.get_mpz_t(), t.get_mpz_t(), q.get_mpz_t());
    return Residue(up + p * t, a.modulus());
}

} // namespace gkpd

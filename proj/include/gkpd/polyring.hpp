#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "gkpd/modmath.hpp"

namespace gkpd {

/// Univariate polynomial over Z_N, coefficient j multiplying x^j.
/// The coefficient count is fixed at construction; the leading coefficient
/// may be anything, including zero, so degree() is the formal degree.
class UniPoly {
public:
    UniPoly(std::vector<mpz_class> coeffs, ModulusPtr modulus);

    /// Uniform coefficients in [0, N); coeff_count = degree + 1.
    static UniPoly random(std::size_t degree, const ModulusPtr& modulus, DetRng& rng);

    std::size_t degree() const { return coeffs_.size() - 1; }
    std::size_t coeff_count() const { return coeffs_.size(); }
    const mpz_class& coeff(std::size_t j) const { return coeffs_.at(j); }
    Residue coeff_residue(std::size_t j) const { return Residue(coeffs_.at(j), modulus_); }
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    const ModulusPtr& modulus() const { return modulus_; }

    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        return a.modulus_->n() == b.modulus_->n() && a.coeffs_ == b.coeffs_;
    }

private:
    std::vector<mpz_class> coeffs_;
    ModulusPtr modulus_;
};

/// Horner evaluation of poly at x, mod N.
Residue eval_uni(const UniPoly& poly, const Residue& x);

/// Coefficient-wise multiplication by u mod N.
UniPoly scale_poly(const UniPoly& poly, const Residue& u);

/// One exponent per foreign variable, listed in the token's variable order;
/// every entry is <= degree_bound.
using ExponentVector = std::vector<std::uint32_t>;

inline constexpr std::size_t kDefaultExpansionCap = 1000000;

/// Multivariate token polynomial in dense expanded form: the coefficient map
/// holds exactly (degree_bound+1)^(variable count) entries, keyed by exponent
/// vector over the canonical variable ordering (ascending node index, owner
/// omitted).  Only this expanded form ever leaves the KGC.
struct ExpandedToken {
    std::size_t owner = 0;                      // 1-based node index, 0 when unset
    std::vector<std::size_t> variables;         // ascending foreign node indices
    std::uint32_t degree_bound = 0;             // t-1
    std::map<ExponentVector, mpz_class> coefficients;
    ModulusPtr modulus;

    const mpz_class& coeff(const ExponentVector& e) const;
};

/// Dense tensor expansion: coefficient at (k_1,..,k_m) is
/// scalar * prod_j foreign[j].coeff(k_j) mod N.  All foreign polynomials must
/// share one formal degree; throws ExpansionTooLarge past `cap` entries.
ExpandedToken expand_token(const Residue& scalar,
                           const std::vector<std::pair<std::size_t, UniPoly>>& foreign_polys,
                           std::size_t cap = kDefaultExpansionCap);

/// Evaluate the token under a full variable assignment:
/// sum over entries of coefficient * prod_j x_j^(k_j) mod N.
/// Throws MissingAssignment if any token variable is unassigned.
Residue eval_token(const ExpandedToken& token,
                   const std::map<std::size_t, Residue>& assignment);

} // namespace gkpd

#include "gkpd/polyring.hpp"

#include <algorithm>
#include <stdexcept>

namespace gkpd {

UniPoly::UniPoly(std::vector<mpz_class> coeffs, ModulusPtr modulus)
    : coeffs_(std::move(coeffs)), modulus_(std::move(modulus)) {
    if (!modulus_) throw std::invalid_argument("UniPoly: null modulus");
    if (coeffs_.empty()) throw std::invalid_argument("UniPoly: at least one coefficient required");
    for (auto& c : coeffs_) {
        mpz_class r;
        mpz_mod(r.get_mpz_t(), c.get_mpz_t(), modulus_->n().get_mpz_t());
        c = r;
    }
}

UniPoly UniPoly::random(std::size_t degree, const ModulusPtr& modulus, DetRng& rng) {
    std::vector<mpz_class> coeffs(degree + 1);
    for (auto& c : coeffs) c = rng.below(modulus->n());
    return UniPoly(std::move(coeffs), modulus);
}

Residue eval_uni(const UniPoly& poly, const Residue& x) {
    const mpz_class& n = poly.modulus()->n();
    if (x.modulus()->n() != n) throw ModulusMismatch("eval_uni: x lives in a different ring");
    mpz_class acc = 0;
    for (std::size_t j = poly.coeff_count(); j-- > 0;) {
        acc = acc * x.value() + poly.coeff(j);
        mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), n.get_mpz_t());
    }
    return Residue(std::move(acc), poly.modulus());
}

UniPoly scale_poly(const UniPoly& poly, const Residue& u) {
    if (u.modulus()->n() != poly.modulus()->n()) {
        throw ModulusMismatch("scale_poly: scalar lives in a different ring");
    }
    std::vector<mpz_class> coeffs(poly.coeff_count());
    for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] = poly.coeff(j) * u.value();
    return UniPoly(std::move(coeffs), poly.modulus());
}

const mpz_class& ExpandedToken::coeff(const ExponentVector& e) const {
    auto it = coefficients.find(e);
    if (it == coefficients.end()) {
        throw std::out_of_range("ExpandedToken: no coefficient for that exponent vector");
    }
    return it->second;
}

ExpandedToken expand_token(const Residue& scalar,
                           const std::vector<std::pair<std::size_t, UniPoly>>& foreign_polys,
                           std::size_t cap) {
    if (foreign_polys.empty()) {
        throw std::invalid_argument("expand_token: at least one foreign polynomial required");
    }
    const std::size_t deg = foreign_polys.front().second.degree();
    for (const auto& [idx, poly] : foreign_polys) {
        (void)idx;
        if (poly.degree() != deg) {
            throw std::invalid_argument("expand_token: foreign polynomials must share one degree");
        }
        if (poly.modulus()->n() != scalar.modulus()->n()) {
            throw ModulusMismatch("expand_token: mixed moduli");
        }
    }

    const std::size_t vars = foreign_polys.size();
    const std::size_t base = deg + 1;
    std::size_t entries = 1;
    for (std::size_t i = 0; i < vars; ++i) {
        if (entries > cap / base) {
            throw ExpansionTooLarge("token expansion exceeds cap of " + std::to_string(cap) +
                                    " entries");
        }
        entries *= base;
    }

    ExpandedToken token;
    token.variables.reserve(vars);
    std::vector<std::pair<std::size_t, const UniPoly*>> ordered;
    ordered.reserve(vars);
    for (const auto& [idx, poly] : foreign_polys) ordered.emplace_back(idx, &poly);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [idx, poly] : ordered) {
        (void)poly;
        token.variables.push_back(idx);
    }
    token.degree_bound = static_cast<std::uint32_t>(deg);
    token.modulus = scalar.modulus();

    const mpz_class& n = scalar.modulus()->n();
    ExponentVector e(vars, 0);
    for (;;) {
        mpz_class c = scalar.value();
        for (std::size_t j = 0; j < vars; ++j) {
            c *= ordered[j].second->coeff(e[j]);
            mpz_mod(c.get_mpz_t(), c.get_mpz_t(), n.get_mpz_t());
        }
        token.coefficients.emplace(e, std::move(c));
        // odometer increment over base (deg+1)
        std::size_t pos = vars;
        while (pos-- > 0) {
            if (e[pos] < deg) {
                ++e[pos];
                break;
            }
            e[pos] = 0;
            if (pos == 0) return token;
        }
    }
}

Residue eval_token(const ExpandedToken& token,
                   const std::map<std::size_t, Residue>& assignment) {
    const mpz_class& n = token.modulus->n();
    // Powers x_j^0 .. x_j^degree_bound per variable, in variable order.
    std::vector<std::vector<mpz_class>> powers(token.variables.size());
    for (std::size_t j = 0; j < token.variables.size(); ++j) {
        auto it = assignment.find(token.variables[j]);
        if (it == assignment.end()) {
            throw MissingAssignment("eval_token: variable x_" +
                                    std::to_string(token.variables[j]) + " unassigned");
        }
        if (it->second.modulus()->n() != n) {
            throw ModulusMismatch("eval_token: assignment lives in a different ring");
        }
        auto& table = powers[j];
        table.resize(token.degree_bound + 1);
        table[0] = 1;
        for (std::uint32_t s = 1; s <= token.degree_bound; ++s) {
            table[s] = table[s - 1] * it->second.value();
            mpz_mod(table[s].get_mpz_t(), table[s].get_mpz_t(), n.get_mpz_t());
        }
    }

    mpz_class acc = 0;
    for (const auto& [e, c] : token.coefficients) {
        mpz_class term = c;
        for (std::size_t j = 0; j < e.size(); ++j) {
            term *= powers[j][e[j]];
            mpz_mod(term.get_mpz_t(), term.get_mpz_t(), n.get_mpz_t());
        }
        acc += term;
    }
    return Residue(std::move(acc), token.modulus);
}

} // namespace gkpd

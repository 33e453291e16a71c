#include "gkpd/attacks.hpp"

#include <stdexcept>

namespace gkpd {

namespace {

void check_range(const Group& group, std::size_t ell, const char* what) {
    if (!group.empty() && group.members().back() > ell) {
        throw std::invalid_argument(std::string(what) + ": group references node beyond ell");
    }
}

} // namespace

// ---------------------------------------------------------------------------
// Harn-Hsu / Harn-Gong
// ---------------------------------------------------------------------------

std::vector<Residue> hh_extract_z(const ShareSet& shares) {
    if (shares.shares.empty()) throw std::invalid_argument("hh_extract_z: empty share set");
    const SystemParams& params = shares.params;
    const UniPoly& s = shares.shares.front();
    const Residue at_zero = eval_uni(s, Residue(0, params.modulus));
    const Residue inv = at_zero.inverse();  // NotInvertible on degenerate instances
    std::vector<Residue> z;
    z.reserve(params.ell);
    for (std::size_t r = 1; r <= params.ell; ++r) {
        z.push_back(eval_uni(s, params.id_of(r)) * inv);
    }
    return z;
}

GroupKey HHKeyOracle::key_for(const Group& group) const {
    check_range(group, ell_, "HHKeyOracle");
    Residue acc = state_.f0_pow_ell;
    for (std::size_t j : group.members()) acc = acc * state_.z[j - 1];
    return GroupKey{std::move(acc), group};
}

HHKeyOracle hh_insider_oracle(const ShareSet& shares) {
    const std::size_t ell = shares.params.ell;
    std::vector<Residue> z = hh_extract_z(shares);

    // The attacker computes the all-node key with its own shares, then
    // divides out prod z_j to expose f(0)^ell.
    const GroupKey k_all = hh_member_key(shares, Group::full(ell));
    Residue prod_z(1, shares.params.modulus);
    for (const auto& zr : z) prod_z = prod_z * zr;
    Residue f0_pow_ell = k_all.value * prod_z.inverse();

    return HHKeyOracle(HHAttackState{std::move(z), std::move(f0_pow_ell)}, ell);
}

OutsiderResult hh_outsider_attack(const GroupKey& k1, const GroupKey& k2, const GroupKey& k3) {
    // k1.group must be k2.group plus exactly one node y.
    if (k1.group.size() != k2.group.size() + 1) {
        throw ShapeMismatch("outsider attack needs |S1| = |S2| + 1");
    }
    std::size_t y = 0;
    for (std::size_t node : k1.group.members()) {
        if (!k2.group.contains(node)) {
            if (y != 0) throw ShapeMismatch("S1 and S2 differ in more than one node");
            y = node;
        }
    }
    if (y == 0) throw ShapeMismatch("S1 does not extend S2");
    if (!k3.group.contains(y)) {
        throw ShapeMismatch("S3 does not contain the recovered node " + std::to_string(y));
    }

    Residue z_y = k1.value * k2.value.inverse();
    GroupKey k4{k3.value * z_y.inverse(), k3.group.without(y)};
    return OutsiderResult{y, std::move(z_y), std::move(k4)};
}

// ---------------------------------------------------------------------------
// Albakri-Harn
// ---------------------------------------------------------------------------

AHAttackState ah_ratio_recovery(const ExpandedToken& token, const SystemParams& params) {
    AHAttackState st;
    st.owner = token.owner;

    const ExponentVector all_zero(token.variables.size(), 0);
    const Residue denom(token.coeff(all_zero), token.modulus);
    const Residue denom_inv = denom.inverse();  // NotInvertible on degenerate instances

    for (std::size_t j = 0; j < token.variables.size(); ++j) {
        const std::size_t r = token.variables[j];
        const Residue& id_r = params.id_of(r);
        // z_r = 1 + sum_s w_{r,s} ID_r^s  (w_{r,0} = 1)
        Residue z_r(1, token.modulus);
        Residue id_pow(1, token.modulus);
        for (std::uint32_t s = 1; s <= token.degree_bound; ++s) {
            ExponentVector e = all_zero;
            e[j] = s;
            Residue w = Residue(token.coeff(e), token.modulus) * denom_inv;
            id_pow = id_pow * id_r;
            z_r = z_r + w * id_pow;
            st.w.emplace(std::make_pair(r, s), std::move(w));
        }
        st.z.emplace(r, std::move(z_r));
    }
    return st;
}

GroupKey AHKeyOracle::key_for(const Group& group) const {
    check_range(group, ell_, "AHKeyOracle");
    if (excluded_ && group.contains(*excluded_)) {
        throw OwnerInGroup("oracle has no z for node " + std::to_string(*excluded_) +
                           "; groups containing it are out of scope");
    }
    Residue acc = *state_.prod_f0;
    for (std::size_t j : group.members()) acc = acc * state_.z.at(j);
    return GroupKey{std::move(acc), group};
}

AHKeyOracle ah_collusion_oracle(const ExpandedToken& token_a, const ExpandedToken& token_b,
                                const SystemParams& params) {
    if (token_a.owner == token_b.owner) {
        throw SameOwner("collusion requires tokens from two distinct nodes");
    }

    AHAttackState st = ah_ratio_recovery(token_a, params);
    AHAttackState from_b = ah_ratio_recovery(token_b, params);
    st.co_owner = token_b.owner;
    // token_a covers every r != a; token_b fills in r = a.
    st.z.emplace(token_a.owner, from_b.z.at(token_a.owner));
    for (auto& [key, w] : from_b.w) st.w.emplace(key, std::move(w));

    const GroupKey k_all = ah_member_key(token_a, Group::full(params.ell), params);
    Residue prod_z(1, params.modulus);
    for (std::size_t r = 1; r <= params.ell; ++r) prod_z = prod_z * st.z.at(r);
    st.prod_f0 = k_all.value * prod_z.inverse();

    return AHKeyOracle(std::move(st), params.ell, std::nullopt);
}

AHKeyOracle ah_outsider_key_oracle(const ExpandedToken& token, const GroupKey& leaked,
                                   const SystemParams& params) {
    if (leaked.group.contains(token.owner)) {
        throw OwnerInGroup("leaked key must belong to a group excluding the token owner");
    }
    check_range(leaked.group, params.ell, "ah_outsider_key_oracle");

    AHAttackState st = ah_ratio_recovery(token, params);
    Residue prod_z(1, params.modulus);
    for (std::size_t j : leaked.group.members()) prod_z = prod_z * st.z.at(j);
    st.prod_f0 = leaked.value * prod_z.inverse();

    return AHKeyOracle(std::move(st), params.ell, token.owner);
}

Residue ah_simplified_z(const GroupKey& k_full, const GroupKey& k_minus_i, std::size_t i,
                        std::size_t ell) {
    const Group full = Group::full(ell);
    if (k_full.group != full) {
        throw ShapeMismatch("simplified attack needs the all-node key");
    }
    if (k_minus_i.group != full.without(i)) {
        throw ShapeMismatch("simplified attack needs the key for all nodes except " +
                            std::to_string(i));
    }
    return k_full.value * k_minus_i.value.inverse();
}

// ---------------------------------------------------------------------------
// Cheng-style authentication break
// ---------------------------------------------------------------------------

std::string cheng_impersonate(const ShareSet& shares, const Group& target_group,
                              std::string_view challenge) {
    if (target_group.contains(shares.owner)) {
        throw OwnerInGroup("impersonation target must exclude the attacking node");
    }
    const HHKeyOracle oracle = hh_insider_oracle(shares);
    return auth_prove(oracle.key_for(target_group), challenge);
}

} // namespace gkpd

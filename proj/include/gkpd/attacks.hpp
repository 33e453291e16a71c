#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gkpd/schemes.hpp"

namespace gkpd {

// ---------------------------------------------------------------------------
// Harn-Hsu / Harn-Gong attacks
// ---------------------------------------------------------------------------

/// What one captured share set reveals: the full ratio vector z (with
/// f(ID_r) = z_r * f(0)) and f(0)^ell, recovered from the all-node key.
struct HHAttackState {
    std::vector<Residue> z;  // z[r-1] for node r
    Residue f0_pow_ell;
};

/// Attacker-held key oracle covering EVERY group, including groups that
/// exclude the captured node: K = f(0)^ell * prod_{j in group} z_j.
class HHKeyOracle {
public:
    HHKeyOracle(HHAttackState state, std::size_t ell)
        : state_(std::move(state)), ell_(ell) {}

    GroupKey key_for(const Group& group) const;
    const HHAttackState& state() const { return state_; }
    std::size_t ell() const { return ell_; }

private:
    HHAttackState state_;
    std::size_t ell_;
};

/// z_r = s(ID_r) / s(0) for every r, from a single share (the first share by
/// convention; the ratio is share-independent).  Throws NotInvertible when
/// s(0) is a non-unit, which the KGC construction rules out.
std::vector<Residue> hh_extract_z(const ShareSet& shares);

/// The complete insider attack from one captured node: extract z, compute
/// the all-node key legitimately, divide out prod z to get f(0)^ell, and
/// return the oracle.
HHKeyOracle hh_insider_oracle(const ShareSet& shares);

/// Key-only outsider attack from three observed keys where
/// k1.group = k2.group + {y} and y is in k3.group: recovers z_y = k1/k2 and
/// the never-observed key for k3.group - {y}.
struct OutsiderResult {
    std::size_t y = 0;
    Residue z_y;
    GroupKey k4;
};
OutsiderResult hh_outsider_attack(const GroupKey& k1, const GroupKey& k2, const GroupKey& k3);

// ---------------------------------------------------------------------------
// Albakri-Harn attacks
// ---------------------------------------------------------------------------

/// Recovered token algebra.  w[(r,s)] satisfies f_{r,s} = w * f_{r,0};
/// z[r] satisfies f_r(ID_r) = z_r * f_{r,0}.  A single token yields w and z
/// for every foreign r; collusion or a leaked key fills in prod_f0.
struct AHAttackState {
    std::size_t owner = 0;                    // token owner the state came from
    std::optional<std::size_t> co_owner;      // second colluder, if any
    std::map<std::size_t, Residue> z;
    std::map<std::pair<std::size_t, std::uint32_t>, Residue> w;
    std::optional<Residue> prod_f0;           // prod_v f_{v,0}
};

/// Attacker-held Albakri-Harn key oracle: K = prod_f0 * prod_{j in group} z_j.
/// The leaked-key variant lacks z for the token owner, so it throws
/// OwnerInGroup for groups containing the owner; the collusion variant
/// covers every group.
class AHKeyOracle {
public:
    AHKeyOracle(AHAttackState state, std::size_t ell,
                std::optional<std::size_t> excluded_owner)
        : state_(std::move(state)), ell_(ell), excluded_(excluded_owner) {}

    GroupKey key_for(const Group& group) const;
    const AHAttackState& state() const { return state_; }
    std::optional<std::size_t> excluded_owner() const { return excluded_; }

private:
    AHAttackState state_;
    std::size_t ell_;
    std::optional<std::size_t> excluded_;
};

/// Stage-1 partial polynomial recovery from one token: every coefficient
/// ratio w_{r,s} = coeff(e_r=s) / coeff(all-zero), and from those
/// z_r = 1 + sum_s w_{r,s} ID_r^s, for every foreign node r.
AHAttackState ah_ratio_recovery(const ExpandedToken& token, const SystemParams& params);

/// Two colluding nodes: merge their partial recoveries (b's token supplies
/// z for a's own index), compute the all-node key legitimately, divide out
/// prod z to get prod_f0, return the unrestricted oracle.
AHKeyOracle ah_collusion_oracle(const ExpandedToken& token_a, const ExpandedToken& token_b,
                                const SystemParams& params);

/// One token plus one key for a group excluding the owner: derive prod_f0
/// from the leaked key, return the oracle for all owner-free groups.
AHKeyOracle ah_outsider_key_oracle(const ExpandedToken& token, const GroupKey& leaked,
                                   const SystemParams& params);

/// Key-ratio step of the simplified attack: z_i = K_all / K_all-minus-i.
Residue ah_simplified_z(const GroupKey& k_full, const GroupKey& k_minus_i, std::size_t i,
                        std::size_t ell);

// ---------------------------------------------------------------------------
// Cheng-style authentication break
// ---------------------------------------------------------------------------

/// An attacker outside target_group answers the challenge with the insider
/// oracle's key for that group; the response verifies under the legitimate
/// group key.
std::string cheng_impersonate(const ShareSet& shares, const Group& target_group,
                              std::string_view challenge);

} // namespace gkpd

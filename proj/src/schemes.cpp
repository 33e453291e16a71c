#include "gkpd/schemes.hpp"

#include <algorithm>
#include <stdexcept>

#include "gkpd/sha256.hpp"

namespace gkpd {

// ---------------------------------------------------------------------------
// Group
// ---------------------------------------------------------------------------

Group::Group(std::vector<std::size_t> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (!members_.empty() && members_.front() == 0) {
        throw std::invalid_argument("Group: node indices are 1-based");
    }
}

Group Group::full(std::size_t ell) {
    std::vector<std::size_t> m(ell);
    for (std::size_t i = 0; i < ell; ++i) m[i] = i + 1;
    return Group(std::move(m));
}

bool Group::contains(std::size_t node) const {
    return std::binary_search(members_.begin(), members_.end(), node);
}

Group Group::with(std::size_t node) const {
    auto m = members_;
    m.push_back(node);
    return Group(std::move(m));
}

Group Group::without(std::size_t node) const {
    std::vector<std::size_t> m;
    m.reserve(members_.size());
    for (std::size_t v : members_) {
        if (v != node) m.push_back(v);
    }
    return Group(std::move(m));
}

std::string Group::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(members_[i]);
    }
    out += '}';
    return out;
}

std::vector<Group> all_groups(std::size_t ell, std::size_t min_size) {
    if (ell > 20) throw std::invalid_argument("all_groups: ell too large to enumerate");
    std::vector<Group> out;
    for (std::size_t mask = 0; mask < (std::size_t(1) << ell); ++mask) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < ell; ++i) {
            if (mask & (std::size_t(1) << i)) members.push_back(i + 1);
        }
        if (members.size() >= min_size) out.emplace_back(std::move(members));
    }
    return out;
}

// ---------------------------------------------------------------------------
// SystemParams
// ---------------------------------------------------------------------------

namespace {

void validate_params(const SystemParams& p) {
    if (p.ell < 2) throw std::invalid_argument("SystemParams: ell must be >= 2");
    if (p.degree_param < 1) throw std::invalid_argument("SystemParams: degree_param must be >= 1");
    if (!p.modulus) throw std::invalid_argument("SystemParams: null modulus");
    if (p.ids.size() != p.ell) throw std::invalid_argument("SystemParams: need one id per node");
    for (std::size_t i = 0; i < p.ids.size(); ++i) {
        if (!p.ids[i].is_unit()) {
            throw std::invalid_argument("SystemParams: ID_" + std::to_string(i + 1) +
                                        " is not a unit");
        }
        for (std::size_t j = i + 1; j < p.ids.size(); ++j) {
            if (p.ids[i].value() == p.ids[j].value()) {
                throw std::invalid_argument("SystemParams: identifiers must be pairwise distinct");
            }
        }
    }
}

} // namespace

SystemParams SystemParams::random_ids(std::size_t ell, std::size_t degree_param,
                                      const ModulusPtr& modulus, DetRng& rng) {
    SystemParams p;
    p.ell = ell;
    p.degree_param = degree_param;
    p.modulus = modulus;
    while (p.ids.size() < ell) {
        Residue candidate = random_unit(modulus, rng);
        bool duplicate = false;
        for (const auto& id : p.ids) {
            if (id.value() == candidate.value()) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) p.ids.push_back(std::move(candidate));
    }
    validate_params(p);
    return p;
}

SystemParams SystemParams::with_ids(std::size_t ell, std::size_t degree_param,
                                    const ModulusPtr& modulus, std::vector<mpz_class> id_values) {
    SystemParams p;
    p.ell = ell;
    p.degree_param = degree_param;
    p.modulus = modulus;
    p.ids.reserve(id_values.size());
    for (auto& v : id_values) p.ids.emplace_back(std::move(v), modulus);
    validate_params(p);
    return p;
}

const Residue& SystemParams::id_of(std::size_t node) const {
    if (node == 0 || node > ell) {
        throw std::out_of_range("SystemParams::id_of: node index out of range");
    }
    return ids[node - 1];
}

// ---------------------------------------------------------------------------
// Harn-Hsu
// ---------------------------------------------------------------------------

namespace {

Residue zero(const ModulusPtr& m) { return Residue(0, m); }

bool hh_poly_admissible(const UniPoly& f, const SystemParams& params) {
    if (!f.coeff_residue(0).is_unit()) return false;
    for (const auto& id : params.ids) {
        if (!eval_uni(f, id).is_unit()) return false;
    }
    return true;
}

void check_group_range(const Group& group, std::size_t ell) {
    if (!group.empty() && group.members().back() > ell) {
        throw std::invalid_argument("group references node index beyond ell");
    }
}

} // namespace

std::pair<HHKgcState, std::vector<ShareSet>> hh_setup_from_secret(const SystemParams& params,
                                                                  const UniPoly& f, DetRng& rng) {
    validate_params(params);
    if (f.degree() != params.degree_param) {
        throw std::invalid_argument("hh_setup_from_secret: polynomial degree mismatch");
    }
    if (!hh_poly_admissible(f, params)) {
        throw std::invalid_argument(
            "hh_setup_from_secret: f(0) and every f(ID_i) must be units");
    }

    const std::size_t ell = params.ell;
    HHKgcState kgc{f, {}};
    kgc.u.resize(ell);
    std::vector<ShareSet> share_sets;
    share_sets.reserve(ell);

    for (std::size_t i = 1; i <= ell; ++i) {
        const Residue fid = eval_uni(f, params.id_of(i));
        auto& row = kgc.u[i - 1];
        if (ell == 2) {
            row.push_back(fid);
        } else {
            Residue prod(1, params.modulus);
            for (std::size_t j = 0; j + 2 < ell; ++j) {
                Residue u = random_unit(params.modulus, rng);
                prod = prod * u;
                row.push_back(std::move(u));
            }
            row.push_back(fid * prod.inverse());
        }
        ShareSet s;
        s.owner = i;
        s.params = params;
        s.shares.reserve(ell - 1);
        for (const auto& u : row) s.shares.push_back(scale_poly(f, u));
        share_sets.push_back(std::move(s));
    }
    return {std::move(kgc), std::move(share_sets)};
}

std::pair<HHKgcState, std::vector<ShareSet>> hh_setup(const SystemParams& params, DetRng& rng) {
    validate_params(params);
    for (;;) {
        UniPoly f = UniPoly::random(params.degree_param, params.modulus, rng);
        if (!hh_poly_admissible(f, params)) continue;
        return hh_setup_from_secret(params, f, rng);
    }
}

GroupKey hh_member_key(const ShareSet& shares, const Group& group) {
    const SystemParams& params = shares.params;
    check_group_range(group, params.ell);
    if (!group.contains(shares.owner)) {
        throw NotAMember("node " + std::to_string(shares.owner) + " is not in group " +
                         group.to_string());
    }
    if (group.size() < 2) {
        throw std::invalid_argument("hh_member_key: groups must have at least two members");
    }
    if (shares.shares.size() != params.ell - 1) {
        throw std::invalid_argument("hh_member_key: share count does not match ell");
    }

    // First h-1 shares go to the other members in ascending node order, the
    // remaining shares are evaluated at 0.
    Residue acc(1, params.modulus);
    std::size_t share_idx = 0;
    for (std::size_t node : group.members()) {
        if (node == shares.owner) continue;
        acc = acc * eval_uni(shares.shares[share_idx++], params.id_of(node));
    }
    const Residue at_zero = zero(params.modulus);
    for (; share_idx < shares.shares.size(); ++share_idx) {
        acc = acc * eval_uni(shares.shares[share_idx], at_zero);
    }
    return GroupKey{std::move(acc), group};
}

GroupKey hh_reference_key(const HHKgcState& kgc, const SystemParams& params, const Group& group) {
    check_group_range(group, params.ell);
    const std::size_t h = group.size();
    Residue acc = eval_uni(kgc.f, zero(params.modulus)).pow(mpz_class(params.ell - h));
    for (std::size_t node : group.members()) {
        acc = acc * eval_uni(kgc.f, params.id_of(node));
    }
    return GroupKey{std::move(acc), group};
}

// ---------------------------------------------------------------------------
// Harn-Gong
// ---------------------------------------------------------------------------

std::pair<HHKgcState, std::vector<ShareSet>> hg_setup(const SystemParams& params, DetRng& rng) {
    validate_params(params);
    const std::size_t ell = params.ell;
    for (;;) {
        UniPoly f = UniPoly::random(params.degree_param, params.modulus, rng);
        if (!hh_poly_admissible(f, params)) continue;

        // u_i^(ell-1) = f(ID_i); resample f when some node has no root.
        std::vector<Residue> roots;
        roots.reserve(ell);
        bool ok = true;
        for (std::size_t i = 1; i <= ell && ok; ++i) {
            try {
                roots.push_back(nth_root(eval_uni(f, params.id_of(i)), ell - 1, *params.modulus));
            } catch (const NoRoot&) {
                ok = false;
            }
        }
        if (!ok) continue;

        HHKgcState kgc{f, {}};
        kgc.u.resize(ell);
        std::vector<ShareSet> share_sets;
        share_sets.reserve(ell);
        for (std::size_t i = 1; i <= ell; ++i) {
            kgc.u[i - 1].assign(ell - 1, roots[i - 1]);
            ShareSet s;
            s.owner = i;
            s.params = params;
            s.shares.assign(ell - 1, scale_poly(f, roots[i - 1]));
            share_sets.push_back(std::move(s));
        }
        return {std::move(kgc), std::move(share_sets)};
    }
}

// ---------------------------------------------------------------------------
// Albakri-Harn
// ---------------------------------------------------------------------------

std::pair<AHKgcState, std::vector<ExpandedToken>> ah_setup_from_secrets(
    const SystemParams& params, std::vector<UniPoly> polys, std::size_t cap) {
    validate_params(params);
    if (params.degree_param < 2) {
        throw std::invalid_argument("ah_setup: t must be >= 2");
    }
    if (polys.size() != params.ell) {
        throw std::invalid_argument("ah_setup_from_secrets: need one polynomial per node");
    }
    for (std::size_t r = 1; r <= params.ell; ++r) {
        const UniPoly& fr = polys[r - 1];
        if (fr.degree() != params.degree_param - 1) {
            throw std::invalid_argument("ah_setup_from_secrets: polynomial degree mismatch");
        }
        if (!fr.coeff_residue(0).is_unit() || !eval_uni(fr, params.id_of(r)).is_unit()) {
            throw std::invalid_argument(
                "ah_setup_from_secrets: f_r(0) and f_r(ID_r) must be units");
        }
    }

    std::vector<ExpandedToken> tokens;
    tokens.reserve(params.ell);
    for (std::size_t i = 1; i <= params.ell; ++i) {
        const Residue scalar = eval_uni(polys[i - 1], params.id_of(i));
        std::vector<std::pair<std::size_t, UniPoly>> foreign;
        foreign.reserve(params.ell - 1);
        for (std::size_t j = 1; j <= params.ell; ++j) {
            if (j != i) foreign.emplace_back(j, polys[j - 1]);
        }
        ExpandedToken token = expand_token(scalar, foreign, cap);
        token.owner = i;
        tokens.push_back(std::move(token));
    }
    return {AHKgcState{std::move(polys)}, std::move(tokens)};
}

std::pair<AHKgcState, std::vector<ExpandedToken>> ah_setup(const SystemParams& params,
                                                           DetRng& rng, std::size_t cap) {
    validate_params(params);
    if (params.degree_param < 2) {
        throw std::invalid_argument("ah_setup: t must be >= 2");
    }
    std::vector<UniPoly> polys;
    polys.reserve(params.ell);
    for (std::size_t r = 1; r <= params.ell; ++r) {
        for (;;) {
            UniPoly f = UniPoly::random(params.degree_param - 1, params.modulus, rng);
            if (!f.coeff_residue(0).is_unit()) continue;
            if (!eval_uni(f, params.id_of(r)).is_unit()) continue;
            polys.push_back(std::move(f));
            break;
        }
    }
    return ah_setup_from_secrets(params, std::move(polys), cap);
}

GroupKey ah_member_key(const ExpandedToken& token, const Group& group,
                       const SystemParams& params) {
    check_group_range(group, params.ell);
    if (!group.contains(token.owner)) {
        throw NotAMember("node " + std::to_string(token.owner) + " is not in group " +
                         group.to_string());
    }
    if (group.size() < 2) {
        throw std::invalid_argument("ah_member_key: groups must have at least two members");
    }
    std::map<std::size_t, Residue> assignment;
    for (std::size_t j : token.variables) {
        assignment.emplace(j, group.contains(j) ? params.id_of(j) : zero(params.modulus));
    }
    return GroupKey{eval_token(token, assignment), group};
}

GroupKey ah_reference_key(const AHKgcState& kgc, const SystemParams& params, const Group& group) {
    check_group_range(group, params.ell);
    Residue acc(1, params.modulus);
    const Residue at_zero = zero(params.modulus);
    for (std::size_t v = 1; v <= params.ell; ++v) {
        const Residue at = group.contains(v) ? params.id_of(v) : at_zero;
        acc = acc * eval_uni(kgc.polys[v - 1], at);
    }
    return GroupKey{std::move(acc), group};
}

// ---------------------------------------------------------------------------
// Authentication wrapper
// ---------------------------------------------------------------------------

std::string auth_prove(const GroupKey& key, std::string_view challenge) {
    const std::string material = "gkpd-group-auth-v1|" + key.value.modulus()->n().get_str() +
                                 "|" + key.value.value().get_str();
    const Digest k = sha256(material);
    return to_hex(hmac_sha256(k, challenge));
}

bool auth_verify(const GroupKey& key, std::string_view challenge, std::string_view response) {
    return auth_prove(key, challenge) == response;
}

} // namespace gkpd

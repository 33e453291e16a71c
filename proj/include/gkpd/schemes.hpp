#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gkpd/polyring.hpp"

namespace gkpd {

/// Canonical group: sorted, duplicate-free set of 1-based node indices.
/// The schemes require size >= 2; smaller (even empty) groups are meaningful
/// to the attack algebra and are allowed here.
class Group {
public:
    Group() = default;
    explicit Group(std::vector<std::size_t> members);
    static Group full(std::size_t ell);

    bool contains(std::size_t node) const;
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const std::vector<std::size_t>& members() const { return members_; }

    Group with(std::size_t node) const;
    Group without(std::size_t node) const;

    friend bool operator==(const Group& a, const Group& b) { return a.members_ == b.members_; }
    friend bool operator!=(const Group& a, const Group& b) { return !(a == b); }
    friend bool operator<(const Group& a, const Group& b) { return a.members_ < b.members_; }

    std::string to_string() const;  // e.g. "{1,3,4}"

private:
    std::vector<std::size_t> members_;
};

/// All subsets of {1..ell} with at least min_size members, in a canonical
/// order (by bitmask).  Desk scale only: ell is capped at 20.
std::vector<Group> all_groups(std::size_t ell, std::size_t min_size);

/// Public system parameters: node count, polynomial degree parameter
/// (k for Harn-Hsu/Harn-Gong, t for Albakri-Harn), modulus, identifiers.
/// IDs are pairwise distinct units; ids[i-1] belongs to node i.
struct SystemParams {
    std::size_t ell = 0;
    std::size_t degree_param = 0;
    ModulusPtr modulus;
    std::vector<Residue> ids;

    /// Random pairwise-distinct unit identifiers.
    static SystemParams random_ids(std::size_t ell, std::size_t degree_param,
                                   const ModulusPtr& modulus, DetRng& rng);
    /// Pinned identifiers (fixtures, deserialization); validated.
    static SystemParams with_ids(std::size_t ell, std::size_t degree_param,
                                 const ModulusPtr& modulus, std::vector<mpz_class> id_values);

    const Residue& id_of(std::size_t node) const;  // 1-based
};

/// KGC secret state for Harn-Hsu / Harn-Gong: the master polynomial f and the
/// masking matrix u (ell rows, ell-1 columns) with prod_j u[i][j] = f(ID_i).
struct HHKgcState {
    UniPoly f;
    std::vector<std::vector<Residue>> u;
};

/// One node's pre-distributed share polynomials plus the public parameters
/// every node carries (N and all identifiers).
struct ShareSet {
    std::size_t owner = 0;  // 1-based
    std::vector<UniPoly> shares;
    SystemParams params;
};

/// KGC secret state for Albakri-Harn: the polynomial family f_1..f_ell.
struct AHKgcState {
    std::vector<UniPoly> polys;
};

struct GroupKey {
    Residue value;
    Group group;
};

// ---------------------------------------------------------------------------
// Harn-Hsu
// ---------------------------------------------------------------------------

/// Share generation.  f is sampled with uniform coefficients and resampled
/// until f(0) and every f(ID_i) are units; u[i][0..ell-3] are random units
/// and the last column is f(ID_i) / prod of the rest.  With ell = 2 the
/// single u[i][0] is f(ID_i) itself.  Deterministic per rng.
std::pair<HHKgcState, std::vector<ShareSet>> hh_setup(const SystemParams& params, DetRng& rng);

/// Same construction from a pinned master polynomial (fixtures).  Requires
/// f(0) and every f(ID_i) to be units.
std::pair<HHKgcState, std::vector<ShareSet>> hh_setup_from_secret(const SystemParams& params,
                                                                  const UniPoly& f, DetRng& rng);

/// Member-side key: the first h-1 shares evaluated at the other members'
/// identifiers (ascending node order) times the remaining shares at 0.
GroupKey hh_member_key(const ShareSet& shares, const Group& group);

/// KGC-side defining formula f(0)^(ell-h) * prod_{j in group} f(ID_j); the
/// test oracle.  Accepts any group, including singletons and empty.
GroupKey hh_reference_key(const HHKgcState& kgc, const SystemParams& params, const Group& group);

// ---------------------------------------------------------------------------
// Harn-Gong (single share per node; a Harn-Hsu share family with all
// columns equal, so every Harn-Hsu operation applies unchanged)
// ---------------------------------------------------------------------------

/// u_i is an (ell-1)-th root of f(ID_i); f is resampled until every root
/// exists.  The returned ShareSets replicate the single share ell-1 times.
std::pair<HHKgcState, std::vector<ShareSet>> hg_setup(const SystemParams& params, DetRng& rng);

// ---------------------------------------------------------------------------
// Albakri-Harn (basic scheme)
// ---------------------------------------------------------------------------

/// Token generation: ell polynomials of degree t-1 with uniform coefficients,
/// resampled until every f_r(0) and f_r(ID_r) is a unit; node i receives the
/// dense expansion of f_i(ID_i) * prod_{j != i} f_j(x_j).
std::pair<AHKgcState, std::vector<ExpandedToken>> ah_setup(const SystemParams& params,
                                                           DetRng& rng,
                                                           std::size_t cap = kDefaultExpansionCap);

/// Same construction from pinned polynomials (fixtures).
std::pair<AHKgcState, std::vector<ExpandedToken>> ah_setup_from_secrets(
    const SystemParams& params, std::vector<UniPoly> polys,
    std::size_t cap = kDefaultExpansionCap);

/// Member-side key: evaluate the token at x_j = ID_j for members, 0 otherwise.
GroupKey ah_member_key(const ExpandedToken& token, const Group& group,
                       const SystemParams& params);

/// KGC-side defining formula prod_{j in group} f_j(ID_j) * prod_{v not in
/// group} f_v(0); the test oracle.  Accepts any group including empty.
GroupKey ah_reference_key(const AHKgcState& kgc, const SystemParams& params, const Group& group);

// ---------------------------------------------------------------------------
// Key-based group authentication (challenge-response key confirmation)
// ---------------------------------------------------------------------------

/// Response = hex HMAC-SHA256 over the challenge, keyed with a digest of the
/// group key value (and N).  Anyone holding the group key verifies by
/// recomputation, which is exactly the property the impersonation attack
/// exploits.
std::string auth_prove(const GroupKey& key, std::string_view challenge);
bool auth_verify(const GroupKey& key, std::string_view challenge, std::string_view response);

} // namespace gkpd

// Acceptance suite: every break the schemes admit, reproduced mechanically
// and verified by exact key equality against the KGC reference.  One line is
// printed per criterion; the exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gkpd/attacks.hpp"
#include "gkpd/fixtures.hpp"
#include "gkpd/harness.hpp"

using namespace gkpd;

namespace {

struct HHInstance {
    SystemParams params;
    HHKgcState kgc;
    std::vector<ShareSet> shares;
};

struct AHInstance {
    SystemParams params;
    AHKgcState kgc;
    std::vector<ExpandedToken> tokens;
};

HHInstance make_hh(std::size_t ell, std::size_t degree, std::uint64_t seed, bool gong) {
    DetRng master(seed);
    const ModulusPtr modulus = gen_modulus(32, master.next_u64());
    DetRng rng = master.fork();
    SystemParams params = SystemParams::random_ids(ell, degree, modulus, rng);
    auto [kgc, shares] = gong ? hg_setup(params, rng) : hh_setup(params, rng);
    return HHInstance{std::move(params), std::move(kgc), std::move(shares)};
}

AHInstance make_ah(std::size_t ell, std::size_t t, std::uint64_t seed) {
    DetRng master(seed);
    const ModulusPtr modulus = gen_modulus(32, master.next_u64());
    DetRng rng = master.fork();
    SystemParams params = SystemParams::random_ids(ell, t, modulus, rng);
    auto [kgc, tokens] = ah_setup(params, rng);
    return AHInstance{std::move(params), std::move(kgc), std::move(tokens)};
}

std::string grid_tag(const char* scheme, std::size_t ell, std::size_t degree,
                     std::uint64_t seed) {
    return std::string(scheme) + " ell=" + std::to_string(ell) +
           " degree=" + std::to_string(degree) + " seed=" + std::to_string(seed);
}

constexpr std::size_t kEllGrid[] = {2, 3, 4, 5, 6};
constexpr std::size_t kDegreeGrid[] = {2, 3};
constexpr std::uint64_t kSeedCount = 10;

// Criterion 1: member-computed keys equal the KGC reference, exhaustively.
bool scheme_correctness(std::string& detail) {
    for (std::size_t ell : kEllGrid) {
        const auto groups = all_groups(ell, 2);
        for (std::size_t degree : kDegreeGrid) {
            for (std::uint64_t seed = 0; seed < kSeedCount; ++seed) {
                for (const char* scheme : {"harn_hsu", "harn_gong"}) {
                    const HHInstance inst = make_hh(ell, degree, seed, scheme[5] == 'g');
                    for (const Group& g : groups) {
                        const GroupKey ref = hh_reference_key(inst.kgc, inst.params, g);
                        for (std::size_t member : g.members()) {
                            if (hh_member_key(inst.shares[member - 1], g).value != ref.value) {
                                detail = grid_tag(scheme, ell, degree, seed) + " group " +
                                         g.to_string();
                                return false;
                            }
                        }
                    }
                }
                const AHInstance inst = make_ah(ell, degree, seed);
                for (const Group& g : groups) {
                    const GroupKey ref = ah_reference_key(inst.kgc, inst.params, g);
                    for (std::size_t member : g.members()) {
                        if (ah_member_key(inst.tokens[member - 1], g, inst.params).value !=
                            ref.value) {
                            detail = grid_tag("albakri_harn", ell, degree, seed) + " group " +
                                     g.to_string();
                            return false;
                        }
                    }
                }
            }
        }
    }
    return true;
}

// The insider-break core shared by criteria 2, 3 and 4.
bool insider_break_on_grid(const std::vector<std::size_t>& degrees, bool gong,
                           std::string& detail) {
    for (std::size_t ell : kEllGrid) {
        const auto groups = all_groups(ell, 2);
        for (std::size_t degree : degrees) {
            for (std::uint64_t seed = 0; seed < kSeedCount; ++seed) {
                const HHInstance inst = make_hh(ell, degree, seed, gong);
                const std::size_t captured = 1 + seed % ell;
                const HHKeyOracle oracle = hh_insider_oracle(inst.shares[captured - 1]);
                for (const Group& g : groups) {
                    if (oracle.key_for(g).value !=
                        hh_reference_key(inst.kgc, inst.params, g).value) {
                        detail = grid_tag(gong ? "harn_gong" : "harn_hsu", ell, degree, seed) +
                                 " captured=" + std::to_string(captured) + " group " +
                                 g.to_string();
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

bool insider_break(std::string& detail) { return insider_break_on_grid({2, 3}, false, detail); }

// Criterion 3: same break for k in {2, 5, 10}.
bool degree_independence(std::string& detail) {
    return insider_break_on_grid({2, 5, 10}, false, detail);
}

// Criterion 4: harn_gong passes criteria 1-2 unchanged, with equal shares.
bool harn_gong_reduction(std::string& detail) {
    for (std::size_t ell : kEllGrid) {
        for (std::size_t degree : kDegreeGrid) {
            for (std::uint64_t seed = 0; seed < kSeedCount; ++seed) {
                const HHInstance inst = make_hh(ell, degree, seed, /*gong=*/true);
                for (const auto& set : inst.shares) {
                    for (const auto& share : set.shares) {
                        if (!(share == set.shares.front())) {
                            detail = grid_tag("harn_gong", ell, degree, seed) +
                                     ": unequal shares for node " + std::to_string(set.owner);
                            return false;
                        }
                    }
                }
            }
        }
    }
    return insider_break_on_grid({2, 3}, /*gong=*/true, detail);
}

constexpr std::size_t kAhEllGrid[] = {2, 3, 4};
constexpr std::size_t kAhTGrid[] = {2, 3, 4};

// Criterion 5: stage-1 ratios against KGC secrets.
bool stage1_recovery(std::string& detail) {
    for (std::size_t ell : kAhEllGrid) {
        for (std::size_t t : kAhTGrid) {
            for (std::uint64_t seed = 0; seed < kSeedCount; ++seed) {
                const AHInstance inst = make_ah(ell, t, seed);
                for (const auto& token : inst.tokens) {
                    const AHAttackState st = ah_ratio_recovery(token, inst.params);
                    for (std::size_t r = 1; r <= ell; ++r) {
                        if (r == token.owner) continue;
                        const Residue fr0 = inst.kgc.polys[r - 1].coeff_residue(0);
                        for (std::uint32_t s = 1; s + 1 <= t; ++s) {
                            if (st.w.at({r, s}) * fr0 !=
                                inst.kgc.polys[r - 1].coeff_residue(s)) {
                                detail = grid_tag("albakri_harn", ell, t, seed) + " owner=" +
                                         std::to_string(token.owner) + " r=" +
                                         std::to_string(r) + " s=" + std::to_string(s);
                                return false;
                            }
                        }
                    }
                }
            }
        }
    }
    return true;
}

// Criterion 6: two tokens give every key, colluder membership irrelevant.
bool collusion_break(std::string& detail) {
    for (std::size_t ell : kAhEllGrid) {
        const auto groups = all_groups(ell, 1);
        for (std::size_t t : kAhTGrid) {
            for (std::uint64_t seed = 0; seed < kSeedCount; ++seed) {
                const AHInstance inst = make_ah(ell, t, seed);
                const std::size_t a = 1 + seed % ell;
                const std::size_t b = 1 + (seed + 1) % ell;
                const AHKeyOracle oracle =
                    ah_collusion_oracle(inst.tokens[a - 1], inst.tokens[b - 1], inst.params);
                for (const Group& g : groups) {
                    if (oracle.key_for(g).value !=
                        ah_reference_key(inst.kgc, inst.params, g).value) {
                        detail = grid_tag("albakri_harn", ell, t, seed) + " colluders {" +
                                 std::to_string(a) + "," + std::to_string(b) + "} group " +
                                 g.to_string();
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

// Criterion 7: one token plus one foreign key covers every owner-free group.
bool leaked_key_break(std::string& detail) {
    for (std::size_t ell : kAhEllGrid) {
        const auto groups = all_groups(ell, 1);
        for (std::size_t t : kAhTGrid) {
            for (std::uint64_t seed = 0; seed < kSeedCount; ++seed) {
                const AHInstance inst = make_ah(ell, t, seed);
                const std::size_t owner = 1 + seed % ell;
                const Group leaked_group = Group::full(ell).without(owner);
                const GroupKey leaked =
                    ah_reference_key(inst.kgc, inst.params, leaked_group);
                const AHKeyOracle oracle =
                    ah_outsider_key_oracle(inst.tokens[owner - 1], leaked, inst.params);
                for (const Group& g : groups) {
                    if (g.contains(owner)) continue;
                    if (oracle.key_for(g).value !=
                        ah_reference_key(inst.kgc, inst.params, g).value) {
                        detail = grid_tag("albakri_harn", ell, t, seed) + " owner=" +
                                 std::to_string(owner) + " group " + g.to_string();
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

// Criterion 8: K_S / K_{S - i} recovers every z_i.
bool simplified_ratios(std::string& detail) {
    for (std::size_t ell : kAhEllGrid) {
        for (std::size_t t : kAhTGrid) {
            for (std::uint64_t seed = 0; seed < kSeedCount; ++seed) {
                const AHInstance inst = make_ah(ell, t, seed);
                const Group full = Group::full(ell);
                const GroupKey k_full = ah_reference_key(inst.kgc, inst.params, full);
                for (std::size_t i = 1; i <= ell; ++i) {
                    const GroupKey k_minus =
                        ah_reference_key(inst.kgc, inst.params, full.without(i));
                    const Residue truth =
                        eval_uni(inst.kgc.polys[i - 1], inst.params.id_of(i)) *
                        inst.kgc.polys[i - 1].coeff_residue(0).inverse();
                    if (ah_simplified_z(k_full, k_minus, i, ell) != truth) {
                        detail = grid_tag("albakri_harn", ell, t, seed) + " i=" +
                                 std::to_string(i);
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

// Criterion 9: three observed keys yield a fourth, 100 randomized instances.
bool outsider_attack(std::string& detail) {
    DetRng rng(0xACCE97ED);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t ell = 3 + trial % 4;
        const HHInstance inst = make_hh(ell, 2, 9000 + trial, trial % 2 == 1);

        const std::size_t y = 1 + rng.below_u64(ell);
        std::vector<std::size_t> s2;
        for (std::size_t i = 1; i <= ell; ++i) {
            if (i != y && rng.below_u64(2) == 0) s2.push_back(i);
        }
        if (s2.empty()) s2.push_back(y == 1 ? 2 : 1);
        std::vector<std::size_t> s3{y, y == 1 ? ell : y - 1};

        const GroupKey k1 = hh_reference_key(inst.kgc, inst.params, Group(s2).with(y));
        const GroupKey k2 = hh_reference_key(inst.kgc, inst.params, Group(s2));
        const GroupKey k3 = hh_reference_key(inst.kgc, inst.params, Group(s3));
        const OutsiderResult res = hh_outsider_attack(k1, k2, k3);
        const GroupKey ref = hh_reference_key(inst.kgc, inst.params, Group(s3).without(y));
        if (res.y != y || res.k4.value != ref.value) {
            detail = "trial " + std::to_string(trial) + " ell=" + std::to_string(ell) +
                     " y=" + std::to_string(y);
            return false;
        }
    }
    return true;
}

// Criterion 10: forged responses authenticate, 100 randomized instances.
bool impersonation(std::string& detail) {
    DetRng rng(0x1339);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t ell = 3 + trial % 4;
        const HHInstance inst = make_hh(ell, 2, 20000 + trial, trial % 2 == 0);

        const std::size_t attacker = 1 + rng.below_u64(ell);
        std::vector<std::size_t> target_nodes;
        for (std::size_t i = 1; i <= ell; ++i) {
            if (i != attacker && (target_nodes.size() < 2 || rng.below_u64(2) == 0)) {
                target_nodes.push_back(i);
            }
        }
        const Group target(target_nodes);
        const std::string challenge = "acceptance-challenge-" + std::to_string(trial);

        const std::string response =
            cheng_impersonate(inst.shares[attacker - 1], target, challenge);
        const GroupKey legit =
            hh_member_key(inst.shares[target.members().front() - 1], target);
        if (!auth_verify(legit, challenge, response)) {
            detail = "trial " + std::to_string(trial) + " attacker=" +
                     std::to_string(attacker) + " target " + target.to_string();
            return false;
        }
    }
    return true;
}

// Criterion 11: the hand-computed Z_77 golden values.
bool golden_fixtures(std::string& detail) {
    for (const auto& [name, ok] : fixture_checks()) {
        if (!ok) {
            detail = name;
            return false;
        }
    }
    return true;
}

// Criterion 12: rerunning any scenario reproduces the report byte-for-byte.
bool determinism(std::string& detail) {
    std::vector<ScenarioConfig> configs;
    {
        ScenarioConfig c;
        c.scheme = Scheme::HarnHsu;
        c.ell = 4;
        c.degree_param = 2;
        c.prime_bits = 32;
        c.seed = 5;
        c.attack = AttackKind::Insider;
        configs.push_back(c);

        c.scheme = Scheme::HarnGong;
        c.ell = 3;
        c.seed = 8;
        configs.push_back(c);

        c = ScenarioConfig{};
        c.scheme = Scheme::AlbakriHarn;
        c.attack = AttackKind::Collude;
        c.fixture = true;
        configs.push_back(c);

        c = ScenarioConfig{};
        c.scheme = Scheme::AlbakriHarn;
        c.attack = AttackKind::LeakedKey;
        c.ell = 4;
        c.degree_param = 3;
        c.seed = 13;
        configs.push_back(c);
    }
    for (const auto& cfg : configs) {
        const std::string a = canonical_dump(report_to_json(run_scenario(cfg), false));
        const std::string b = canonical_dump(report_to_json(run_scenario(cfg), false));
        if (a != b) {
            detail = "scenario " + to_string(cfg.scheme) + "/" + to_string(cfg.attack);
            return false;
        }
    }
    const auto serial_run = sweep(configs, 1);
    const auto parallel_run = sweep(configs, 4);
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (canonical_dump(report_to_json(serial_run[i], false)) !=
            canonical_dump(report_to_json(parallel_run[i], false))) {
            detail = "sweep parallelism changed report " + std::to_string(i);
            return false;
        }
    }
    return true;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<bool(std::string&)> fn;
        double budget_seconds;  // 0 = untimed
    };
    const std::vector<Criterion> criteria = {
        {1, "scheme correctness: member keys equal KGC reference, exhaustive grid",
         scheme_correctness, 30.0},
        {2, "harn_hsu insider break: one node's oracle yields every group key", insider_break, 0},
        {3, "degree independence: insider break for k in {2, 5, 10}", degree_independence, 0},
        {4, "harn_gong reduction: equal-share family, same breaks apply", harn_gong_reduction, 0},
        {5, "albakri_harn stage-1: coefficient ratios match KGC secrets", stage1_recovery, 0},
        {6, "albakri_harn collusion: two tokens yield every group key", collusion_break, 0},
        {7, "albakri_harn leaked key: token + foreign key covers owner-free groups",
         leaked_key_break, 0},
        {8, "albakri_harn simplified: key ratios recover every z_i", simplified_ratios, 0},
        {9, "outsider attack: fourth key from three observed keys, 100 instances",
         outsider_attack, 0},
        {10, "impersonation: forged responses authenticate, 100 instances", impersonation, 0},
        {11, "golden fixtures: hand-computed Z_77 values reproduce exactly", golden_fixtures, 0},
        {12, "determinism: byte-identical reports per seed (duration aside)", determinism, 0},
    };

    bool all_ok = true;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string detail;
        bool ok = false;
        try {
            ok = c.fn(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ok && c.budget_seconds > 0 && secs >= c.budget_seconds) {
            ok = false;
            detail = "exceeded " + std::to_string(c.budget_seconds) + "s budget";
        }
        std::printf("[%s] criterion %2d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", c.id, c.name,
                    secs, detail.empty() ? "" : " -- ", detail.c_str());
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}

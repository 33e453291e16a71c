#include "gkpd/fixtures.hpp"

#include "gkpd/attacks.hpp"

namespace gkpd {

namespace {

SystemParams z77_params(std::size_t degree_param) {
    const ModulusPtr m = Modulus::from_primes(7, 11);
    return SystemParams::with_ids(2, degree_param, m, {1, 2});
}

} // namespace

HHFixture worked_hh_instance() {
    SystemParams params = z77_params(1);
    UniPoly f({2, 3}, params.modulus);
    DetRng rng(0);  // ell = 2 draws nothing
    auto [kgc, shares] = hh_setup_from_secret(params, f, rng);
    return HHFixture{std::move(params), std::move(kgc), std::move(shares)};
}

AHFixture worked_ah_instance() {
    SystemParams params = z77_params(2);
    std::vector<UniPoly> polys{UniPoly({2, 3}, params.modulus), UniPoly({1, 4}, params.modulus)};
    auto [kgc, tokens] = ah_setup_from_secrets(params, std::move(polys));
    return AHFixture{std::move(params), std::move(kgc), std::move(tokens)};
}

std::vector<std::pair<std::string, bool>> fixture_checks() {
    std::vector<std::pair<std::string, bool>> out;
    const auto check = [&out](const std::string& name, bool ok) { out.emplace_back(name, ok); };

    const HHFixture hh = worked_hh_instance();
    {
        const auto& s1 = hh.shares[0].shares[0];
        const auto& s2 = hh.shares[1].shares[0];
        check("harn_hsu share of node 1 is 10 + 15x", s1.coeff(0) == 10 && s1.coeff(1) == 15);
        check("harn_hsu share of node 2 is 16 + 24x", s2.coeff(0) == 16 && s2.coeff(1) == 24);

        const Group both({1, 2});
        check("harn_hsu member key of node 1 for {1,2} is 40",
              hh_member_key(hh.shares[0], both).value.value() == 40);
        check("harn_hsu member key of node 2 for {1,2} is 40",
              hh_member_key(hh.shares[1], both).value.value() == 40);
        check("harn_hsu reference key for {2} is 16",
              hh_reference_key(hh.kgc, hh.params, Group({2})).value.value() == 16);

        const auto z = hh_extract_z(hh.shares[0]);
        check("harn_hsu z_1 recovered from node 1 is 41", z[0].value() == 41);
        check("harn_hsu z_2 recovered from node 1 is 4", z[1].value() == 4);

        const auto oracle = hh_insider_oracle(hh.shares[0]);
        check("harn_hsu insider recovers f(0)^ell = 4",
              oracle.state().f0_pow_ell.value() == 4);
        check("harn_hsu insider key for {2} (excludes attacker) is 16",
              oracle.key_for(Group({2})).value.value() == 16);

        const auto outsider = hh_outsider_attack(hh_reference_key(hh.kgc, hh.params, both),
                                                 hh_reference_key(hh.kgc, hh.params, Group({2})),
                                                 hh_reference_key(hh.kgc, hh.params, both));
        check("harn_hsu outsider recovers z_1 = 41 from three keys",
              outsider.y == 1 && outsider.z_y.value() == 41);
    }

    const AHFixture ah = worked_ah_instance();
    {
        const ExponentVector e0{0}, e1{1};
        check("albakri_harn token of node 1 is {5, 20}",
              ah.tokens[0].coeff(e0) == 5 && ah.tokens[0].coeff(e1) == 20);
        check("albakri_harn token of node 2 is {18, 27}",
              ah.tokens[1].coeff(e0) == 18 && ah.tokens[1].coeff(e1) == 27);

        const Group both({1, 2});
        check("albakri_harn member key of node 1 for {1,2} is 45",
              ah_member_key(ah.tokens[0], both, ah.params).value.value() == 45);
        check("albakri_harn member key of node 2 for {1,2} is 45",
              ah_member_key(ah.tokens[1], both, ah.params).value.value() == 45);
        check("albakri_harn reference key for {1} is 5",
              ah_reference_key(ah.kgc, ah.params, Group({1})).value.value() == 5);

        const auto st1 = ah_ratio_recovery(ah.tokens[0], ah.params);
        const auto st2 = ah_ratio_recovery(ah.tokens[1], ah.params);
        check("albakri_harn node 1 recovers w_{2,1} = 4 and z_2 = 9",
              st1.w.at({2, 1}).value() == 4 && st1.z.at(2).value() == 9);
        check("albakri_harn node 2 recovers w_{1,1} = 40 and z_1 = 41",
              st2.w.at({1, 1}).value() == 40 && st2.z.at(1).value() == 41);

        const auto oracle = ah_collusion_oracle(ah.tokens[0], ah.tokens[1], ah.params);
        check("albakri_harn colluders recover prod f_{v0} = 2",
              oracle.state().prod_f0->value() == 2);
        check("albakri_harn collusion key for {1} is 5",
              oracle.key_for(Group({1})).value.value() == 5);

        const GroupKey leaked = ah_reference_key(ah.kgc, ah.params, Group({2}));
        check("albakri_harn leaked key for {2} is 18", leaked.value.value() == 18);
        const auto restricted = ah_outsider_key_oracle(ah.tokens[0], leaked, ah.params);
        check("albakri_harn leaked-key attack recovers prod f_{v0} = 2",
              restricted.state().prod_f0->value() == 2);

        const Residue z2 = ah_simplified_z(ah_reference_key(ah.kgc, ah.params, both),
                                           ah_reference_key(ah.kgc, ah.params, Group({1})), 2, 2);
        check("albakri_harn simplified ratio K_S / K_{S-2} = 9", z2.value() == 9);
    }
    return out;
}

} // namespace gkpd

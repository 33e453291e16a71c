#include <doctest.h>

#include "gkpd/harness.hpp"

using namespace gkpd;

namespace {

std::string dump_without_duration(const VerdictReport& r) {
    return canonical_dump(report_to_json(r, /*include_duration=*/false));
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("insider scenario: 11 records at ell = 4, all matching") {
    ScenarioConfig cfg;
    cfg.scheme = Scheme::HarnHsu;
    cfg.ell = 4;
    cfg.degree_param = 2;
    cfg.prime_bits = 32;
    cfg.seed = 1;
    cfg.attack = AttackKind::Insider;
    cfg.args.captured = {2};

    const VerdictReport report = run_scenario(cfg);
    CHECK(!report.error);
    CHECK(report.records.size() == 11);
    for (const auto& rec : report.records) {
        CHECK(rec.match);
        CHECK(rec.attacker_key == rec.reference_key);
    }
    CHECK(report.verdict);
    CHECK(report.recovered_state.count("f0_pow_ell") == 1);
    CHECK(report.recovered_state.count("z_4") == 1);
}

TEST_CASE("fixture scenario: collusion recovers prod_f0 = 2") {
    ScenarioConfig cfg;
    cfg.scheme = Scheme::AlbakriHarn;
    cfg.attack = AttackKind::Collude;
    cfg.fixture = true;

    const VerdictReport report = run_scenario(cfg);
    CHECK(report.verdict);
    CHECK(report.config.ell == 2);  // normalized to the worked instance
    CHECK(report.recovered_state.at("prod_f0") == "2");
    CHECK(report.recovered_state.at("z_1") == "41");
    CHECK(report.recovered_state.at("z_2") == "9");
}

TEST_CASE("reports are deterministic per config (duration aside)") {
    ScenarioConfig cfg;
    cfg.scheme = Scheme::HarnGong;
    cfg.ell = 4;
    cfg.degree_param = 2;
    cfg.prime_bits = 20;
    cfg.seed = 6;
    cfg.attack = AttackKind::Insider;

    CHECK(dump_without_duration(run_scenario(cfg)) == dump_without_duration(run_scenario(cfg)));
    cfg.seed = 7;
    const std::string other = dump_without_duration(run_scenario(cfg));
    cfg.seed = 6;
    CHECK(dump_without_duration(run_scenario(cfg)) != other);
}

TEST_CASE("each attack kind produces a verified scenario") {
    const struct {
        Scheme scheme;
        AttackKind attack;
    } cases[] = {
        {Scheme::HarnHsu, AttackKind::Insider},
        {Scheme::HarnGong, AttackKind::Insider},
        {Scheme::HarnHsu, AttackKind::Outsider},
        {Scheme::HarnHsu, AttackKind::Impersonate},
        {Scheme::AlbakriHarn, AttackKind::Collude},
        {Scheme::AlbakriHarn, AttackKind::LeakedKey},
        {Scheme::AlbakriHarn, AttackKind::Simplified},
    };
    for (const auto& c : cases) {
        ScenarioConfig cfg;
        cfg.scheme = c.scheme;
        cfg.ell = 4;
        cfg.degree_param = 2;
        cfg.prime_bits = 20;
        cfg.seed = 11;
        cfg.attack = c.attack;
        const VerdictReport report = run_scenario(cfg);
        INFO(to_string(c.scheme), " / ", to_string(c.attack));
        CHECK(!report.error);
        CHECK(report.verdict);
        CHECK(!report.records.empty());
    }
}

TEST_CASE("config validation reports the offending field") {
    ScenarioConfig cfg;

    cfg.ell = 1;
    CHECK_THROWS_WITH_AS((void)run_scenario(cfg), doctest::Contains("ell"), ConfigError);

    cfg = ScenarioConfig{};
    cfg.degree_param = 1;
    CHECK_THROWS_WITH_AS((void)run_scenario(cfg), doctest::Contains("degree_param"), ConfigError);

    cfg = ScenarioConfig{};
    cfg.prime_bits = 4;
    CHECK_THROWS_WITH_AS((void)run_scenario(cfg), doctest::Contains("prime_bits"), ConfigError);

    cfg = ScenarioConfig{};
    cfg.scheme = Scheme::AlbakriHarn;
    cfg.attack = AttackKind::Insider;
    CHECK_THROWS_WITH_AS((void)run_scenario(cfg), doctest::Contains("attack"), ConfigError);

    cfg = ScenarioConfig{};
    cfg.attack = AttackKind::Collude;
    CHECK_THROWS_WITH_AS((void)run_scenario(cfg), doctest::Contains("attack"), ConfigError);

    cfg = ScenarioConfig{};
    cfg.args.captured = {9};
    CHECK_THROWS_WITH_AS((void)run_scenario(cfg), doctest::Contains("captured"), ConfigError);

    cfg = ScenarioConfig{};
    cfg.scheme = Scheme::AlbakriHarn;
    cfg.attack = AttackKind::LeakedKey;
    cfg.args.captured = {1};
    cfg.args.leaked_group = std::vector<std::size_t>{1, 2};
    CHECK_THROWS_WITH_AS((void)run_scenario(cfg), doctest::Contains("leaked_group"), ConfigError);

    cfg = ScenarioConfig{};
    cfg.scheme = Scheme::AlbakriHarn;
    cfg.attack = AttackKind::Collude;
    cfg.ell = 10;
    cfg.degree_param = 5;  // 5^9 token entries exceed the cap
    CHECK_THROWS_WITH_AS((void)run_scenario(cfg), doctest::Contains("expansion"), ConfigError);
}

TEST_CASE("attack-layer failures are recorded in the report, not thrown") {
    ScenarioConfig cfg;
    cfg.scheme = Scheme::HarnHsu;
    cfg.ell = 4;
    cfg.attack = AttackKind::Outsider;
    cfg.seed = 3;
    // S1 and S2 differ by two nodes: ShapeMismatch inside the attack.
    cfg.args.outsider_groups = {{std::vector<std::size_t>{1, 2, 3},
                                 std::vector<std::size_t>{3},
                                 std::vector<std::size_t>{1, 2}}};
    const VerdictReport report = run_scenario(cfg);
    CHECK(report.error.has_value());
    CHECK(!report.verdict);
}

TEST_CASE("config json round-trips") {
    ScenarioConfig cfg;
    cfg.scheme = Scheme::AlbakriHarn;
    cfg.ell = 3;
    cfg.degree_param = 3;
    cfg.prime_bits = 24;
    cfg.seed = 1234567890123ULL;
    cfg.attack = AttackKind::LeakedKey;
    cfg.args.captured = {2};
    cfg.args.leaked_group = std::vector<std::size_t>{1, 3};
    cfg.args.target_groups = {{1, 3}};

    const nlohmann::json j = config_to_json(cfg);
    const ScenarioConfig parsed = config_from_json(j);
    CHECK(canonical_dump(config_to_json(parsed)) == canonical_dump(j));
    CHECK(parsed.seed == cfg.seed);
    CHECK(parsed.args.leaked_group == cfg.args.leaked_group);

    CHECK_THROWS_AS((void)config_from_json(nlohmann::json{{"scheme", "bogus"}}), ConfigError);
    CHECK_THROWS_AS((void)config_from_json(nlohmann::json{{"seed", "not-a-number"}}),
                    ConfigError);
}

TEST_CASE("sweep preserves order, isolates failures, and ignores parallelism") {
    std::vector<ScenarioConfig> configs(3);
    configs[0].scheme = Scheme::HarnHsu;
    configs[0].attack = AttackKind::Insider;
    configs[0].ell = 3;
    configs[0].seed = 0;
    configs[1].ell = 1;  // invalid: recorded per-item
    configs[2].scheme = Scheme::AlbakriHarn;
    configs[2].attack = AttackKind::Collude;
    configs[2].ell = 3;
    configs[2].seed = 5;

    const auto serial_run = sweep(configs, 1);
    REQUIRE(serial_run.size() == 3);
    CHECK(serial_run[0].verdict);
    CHECK(!serial_run[1].verdict);
    CHECK(serial_run[1].error.has_value());
    CHECK(serial_run[2].verdict);

    const auto parallel_run = sweep(configs, 8);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(dump_without_duration(serial_run[i]) == dump_without_duration(parallel_run[i]));
    }
}

TEST_CASE("sweep over k in {2, 5, 10}: attack succeeds regardless of degree") {
    std::vector<ScenarioConfig> configs;
    for (std::size_t k : {2, 5, 10}) {
        ScenarioConfig cfg;
        cfg.scheme = Scheme::HarnHsu;
        cfg.ell = 4;
        cfg.degree_param = k;
        cfg.seed = k;
        cfg.attack = AttackKind::Insider;
        configs.push_back(cfg);
    }
    for (const auto& report : sweep(configs, 2)) CHECK(report.verdict);
}

} // TEST_SUITE

// gkpd - group key pre-distribution schemes (Harn-Hsu, Harn-Gong,
// Albakri-Harn) and the attacks that break them, as a reproducible
// command-line harness.  Every subcommand is deterministic per seed and all
// output is canonical JSON.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gkpd/fixtures.hpp"
#include "gkpd/harness.hpp"
#include "gkpd/serial.hpp"

namespace {

std::vector<std::size_t> parse_nodes(const std::string& s) {
    std::vector<std::size_t> out;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, ',')) {
        if (part.empty()) continue;
        try {
            out.push_back(std::stoul(part));
        } catch (const std::exception&) {
            throw gkpd::ConfigError("bad node index '" + part + "' in '" + s + "'");
        }
    }
    if (out.empty()) throw gkpd::ConfigError("empty node list: '" + s + "'");
    return out;
}

std::vector<std::vector<std::size_t>> parse_group_list(const std::string& s) {
    std::vector<std::vector<std::size_t>> out;
    std::istringstream in(s);
    std::string part;
    while (std::getline(in, part, ';')) {
        if (!part.empty()) out.push_back(parse_nodes(part));
    }
    if (out.empty()) throw gkpd::ConfigError("empty group list: '" + s + "'");
    return out;
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw gkpd::ConfigError("cannot open file: " + path);
    nlohmann::json j;
    try {
        f >> j;
    } catch (const nlohmann::json::exception& e) {
        throw gkpd::ConfigError("cannot parse " + path + ": " + e.what());
    }
    return j;
}

void write_output(const nlohmann::json& j, const std::string& out_path) {
    const std::string text = gkpd::canonical_dump(j);
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw gkpd::ConfigError("cannot open output file: " + out_path);
    f << text;
}

void check_format(const std::string& format) {
    if (format != "json") throw gkpd::ConfigError("format: only 'json' is supported");
}

struct CommonOpts {
    std::string scheme = "harn_hsu";
    std::size_t ell = 4;
    std::size_t degree = 2;
    unsigned prime_bits = 32;
    std::uint64_t seed = 0;
    bool fixture = false;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--scheme", o.scheme, "harn_hsu | harn_gong | albakri_harn");
    cmd->add_option("--ell", o.ell, "number of nodes");
    cmd->add_option("--degree", o.degree, "polynomial degree parameter (k, or t)");
    cmd->add_option("--prime-bits", o.prime_bits, "bits per prime of N = pq");
    cmd->add_option("--seed", o.seed, "64-bit seed; fixes the whole scenario");
    cmd->add_flag("--fixture", o.fixture, "pin the hand-checked two-node Z_77 instance");
    cmd->add_option("--out", o.out, "output file (stdout when omitted)");
    cmd->add_option("--format", o.format, "output format (json)");
}

int run_setup(const CommonOpts& o) {
    check_format(o.format);
    if (!o.fixture) {
        if (o.ell < 2) throw gkpd::ConfigError("ell: must be >= 2");
        if (o.degree < 2) throw gkpd::ConfigError("degree: must be >= 2");
        if (o.prime_bits < 8) throw gkpd::ConfigError("prime-bits: must be >= 8 (per prime)");
    }
    const gkpd::Scheme scheme = gkpd::scheme_from_string(o.scheme);
    const gkpd::SystemInstance inst =
        o.fixture ? gkpd::build_fixture_instance(scheme)
                  : gkpd::build_instance(scheme, o.ell, o.degree, o.prime_bits, o.seed);
    write_output(gkpd::system_to_json(inst.to_file()), o.out);
    return 0;
}

int run_key(const std::string& system_path, std::size_t member, const std::string& group_csv,
            const std::string& out, const std::string& format) {
    check_format(format);
    const gkpd::SystemFile sys = gkpd::system_from_json(load_json(system_path));
    if (member == 0 || member > sys.params.ell) {
        throw gkpd::ConfigError("member: node index outside [1, " +
                                std::to_string(sys.params.ell) + "]");
    }
    const gkpd::Group group(parse_nodes(group_csv));
    const gkpd::GroupKey key =
        sys.scheme == "albakri_harn"
            ? gkpd::ah_member_key(sys.tokens[member - 1], group, sys.params)
            : gkpd::hh_member_key(sys.share_sets[member - 1], group);
    write_output(gkpd::group_key_to_json(key), out);
    return 0;
}

struct AttackOpts {
    CommonOpts common;
    std::string kind;
    std::string config_path;
    std::string captured;
    std::string leaked_group;
    std::string outsider_groups;
    std::string targets;
};

int run_attack(const CLI::App* cmd, const AttackOpts& o) {
    check_format(o.common.format);

    gkpd::ScenarioConfig cfg;
    if (!o.config_path.empty()) cfg = gkpd::config_from_json(load_json(o.config_path));

    // Flags override the config file.
    cfg.attack = gkpd::attack_from_string(o.kind);
    if (cmd->count("--scheme")) cfg.scheme = gkpd::scheme_from_string(o.common.scheme);
    if (cmd->count("--ell")) cfg.ell = o.common.ell;
    if (cmd->count("--degree")) cfg.degree_param = o.common.degree;
    if (cmd->count("--prime-bits")) cfg.prime_bits = o.common.prime_bits;
    if (cmd->count("--seed")) cfg.seed = o.common.seed;
    if (cmd->count("--fixture")) cfg.fixture = o.common.fixture;
    if (cmd->count("--captured")) cfg.args.captured = parse_nodes(o.captured);
    if (cmd->count("--leaked-group")) cfg.args.leaked_group = parse_nodes(o.leaked_group);
    if (cmd->count("--outsider-groups")) {
        const auto groups = parse_group_list(o.outsider_groups);
        if (groups.size() != 3) {
            throw gkpd::ConfigError("outsider-groups: exactly three ';'-separated groups");
        }
        cfg.args.outsider_groups = {groups[0], groups[1], groups[2]};
    }
    if (cmd->count("--targets")) cfg.args.target_groups = parse_group_list(o.targets);

    const gkpd::VerdictReport report = gkpd::run_scenario(cfg);
    write_output(gkpd::report_to_json(report), o.common.out);
    return report.verdict ? 0 : 1;
}

int run_sweep(const std::string& config_path, unsigned parallel, const std::string& out,
              const std::string& format) {
    check_format(format);
    const nlohmann::json j = load_json(config_path);
    const nlohmann::json& list = j.is_array() ? j : j.at("scenarios");
    if (!list.is_array()) throw gkpd::ConfigError("sweep config: expected an array of scenarios");

    std::vector<gkpd::ScenarioConfig> configs;
    configs.reserve(list.size());
    for (const auto& item : list) configs.push_back(gkpd::config_from_json(item));

    const auto reports = gkpd::sweep(configs, parallel);
    nlohmann::json out_json{{"reports", nlohmann::json::array()}};
    bool all_ok = true;
    for (const auto& r : reports) {
        out_json["reports"].push_back(gkpd::report_to_json(r));
        all_ok = all_ok && r.verdict;
    }
    write_output(out_json, out);
    return all_ok ? 0 : 1;
}

int run_selftest() {
    bool all_ok = true;
    for (const auto& [name, ok] : gkpd::fixture_checks()) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
        all_ok = all_ok && ok;
    }

    // Reports must be byte-identical across reruns (duration aside).
    for (const char* scheme : {"harn_hsu", "albakri_harn"}) {
        gkpd::ScenarioConfig cfg;
        cfg.scheme = gkpd::scheme_from_string(scheme);
        cfg.attack = cfg.scheme == gkpd::Scheme::AlbakriHarn ? gkpd::AttackKind::Collude
                                                             : gkpd::AttackKind::Insider;
        cfg.fixture = true;
        const std::string a = gkpd::canonical_dump(gkpd::report_to_json(gkpd::run_scenario(cfg),
                                                                        /*include_duration=*/false));
        const std::string b = gkpd::canonical_dump(gkpd::report_to_json(gkpd::run_scenario(cfg),
                                                                        /*include_duration=*/false));
        const bool ok = a == b && gkpd::run_scenario(cfg).verdict;
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << scheme
                  << " fixture scenario reruns byte-identically and verifies\n";
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial group key pre-distribution schemes over an RSA-modulus ring and "
                 "the insider/outsider attacks that break them"};
    app.require_subcommand(1);

    CommonOpts setup_opts;
    auto* setup = app.add_subcommand("setup", "generate a system and emit the distributed "
                                              "shares/tokens plus public parameters");
    add_common(setup, setup_opts);

    std::string key_system, key_group, key_out, key_format = "json";
    std::size_t key_member = 0;
    auto* key = app.add_subcommand("key", "compute a member's group key from a system file");
    key->add_option("--system", key_system, "system file from `setup`")->required();
    key->add_option("--member", key_member, "computing node (1-based)")->required();
    key->add_option("--group", key_group, "group as comma-separated node indices")->required();
    key->add_option("--out", key_out, "output file (stdout when omitted)");
    key->add_option("--format", key_format, "output format (json)");

    AttackOpts attack_opts;
    auto* attack = app.add_subcommand("attack", "run one attack scenario and verify every "
                                                "derived key against the KGC reference");
    attack->add_option("kind", attack_opts.kind,
                       "insider | outsider | collude | leaked_key | simplified | impersonate")
        ->required();
    add_common(attack, attack_opts.common);
    attack->add_option("--config", attack_opts.config_path, "scenario config file (flags override)");
    attack->add_option("--captured", attack_opts.captured,
                       "captured node(s), e.g. '2' or '1,3'");
    attack->add_option("--leaked-group", attack_opts.leaked_group,
                       "group of the leaked key (leaked_key attack)");
    attack->add_option("--outsider-groups", attack_opts.outsider_groups,
                       "three ';'-separated groups for the observed keys, e.g. '1,2;2;1,2,3'");
    attack->add_option("--targets", attack_opts.targets,
                       "';'-separated target groups (default: all of size >= 2)");

    std::string sweep_config, sweep_out, sweep_format = "json";
    unsigned sweep_parallel = 1;
    auto* sweep_cmd = app.add_subcommand("sweep", "run a batch of scenarios");
    sweep_cmd->add_option("--config", sweep_config, "JSON array of scenario configs")->required();
    sweep_cmd->add_option("--parallel", sweep_parallel, "worker threads")->check(CLI::PositiveNumber);
    sweep_cmd->add_option("--out", sweep_out, "output file (stdout when omitted)");
    sweep_cmd->add_option("--format", sweep_format, "output format (json)");

    auto* selftest = app.add_subcommand("selftest", "verify the hand-computed Z_77 fixtures");

    CLI11_PARSE(app, argc, argv);

    try {
        if (setup->parsed()) return run_setup(setup_opts);
        if (key->parsed()) return run_key(key_system, key_member, key_group, key_out, key_format);
        if (attack->parsed()) return run_attack(attack, attack_opts);
        if (sweep_cmd->parsed()) return run_sweep(sweep_config, sweep_parallel, sweep_out,
                                                  sweep_format);
        if (selftest->parsed()) return run_selftest();
    } catch (const gkpd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

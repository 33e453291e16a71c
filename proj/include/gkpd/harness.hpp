#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gkpd/attacks.hpp"
#include "gkpd/serial.hpp"

namespace gkpd {

enum class Scheme { HarnHsu, HarnGong, AlbakriHarn };
enum class AttackKind { Insider, Outsider, Collude, LeakedKey, Simplified, Impersonate };

std::string to_string(Scheme s);
std::string to_string(AttackKind a);
Scheme scheme_from_string(const std::string& s);        // throws ConfigError
AttackKind attack_from_string(const std::string& s);    // throws ConfigError

/// Attack-specific scenario inputs.  Unset fields take scheme-appropriate
/// defaults during validation (see run_scenario).
struct AttackArgs {
    std::vector<std::size_t> captured;                      // captured node indices
    std::optional<std::vector<std::size_t>> leaked_group;   // leaked_key only
    std::optional<std::array<std::vector<std::size_t>, 3>> outsider_groups;  // k1, k2, k3
    std::vector<std::vector<std::size_t>> target_groups;    // empty = all of size >= 2
};

struct ScenarioConfig {
    Scheme scheme = Scheme::HarnHsu;
    std::size_t ell = 4;
    std::size_t degree_param = 2;
    unsigned prime_bits = 32;
    std::uint64_t seed = 0;
    AttackKind attack = AttackKind::Insider;
    AttackArgs args;
    bool fixture = false;  // pin the worked Z_77 instance instead of sampling
};

nlohmann::json config_to_json(const ScenarioConfig& c);
ScenarioConfig config_from_json(const nlohmann::json& j);

/// One verified target: the attacker-derived key next to the KGC reference,
/// both as decimal strings (hex digests for impersonation responses), and
/// their string equality.
struct TargetRecord {
    Group group;
    std::string attacker_key;
    std::string reference_key;
    bool match = false;
};

struct VerdictReport {
    ScenarioConfig config;
    std::vector<TargetRecord> records;
    std::map<std::string, std::string> recovered_state;
    bool verdict = false;
    std::optional<std::string> error;  // typed attack error, recorded not thrown
    double duration_ms = 0.0;
};

nlohmann::json report_to_json(const VerdictReport& r, bool include_duration = true);

/// A fully set-up scheme instance; KGC state included for reference-key
/// verification (the attack side never touches it).
struct SystemInstance {
    Scheme scheme = Scheme::HarnHsu;
    SystemParams params;
    std::optional<HHKgcState> hh_kgc;
    std::vector<ShareSet> share_sets;
    std::optional<AHKgcState> ah_kgc;
    std::vector<ExpandedToken> tokens;

    GroupKey reference_key(const Group& group) const;
    SystemFile to_file() const;
};

/// Deterministic end-to-end instance construction: modulus, identifiers and
/// scheme setup all derive from the seed.
SystemInstance build_instance(Scheme scheme, std::size_t ell, std::size_t degree_param,
                              unsigned prime_bits, std::uint64_t seed);

/// The pinned Z_77 worked instance (ell = 2; harn_gong reuses the Harn-Hsu
/// construction, which coincides with it at ell = 2).
SystemInstance build_fixture_instance(Scheme scheme);

/// Validate the config (throws ConfigError with field-level messages), run
/// setup + attack + verification, and return the report.  Attack-layer
/// errors are recorded in the report; they do not propagate.
VerdictReport run_scenario(const ScenarioConfig& config);

/// Order-preserving batch execution; per-item failures (including config
/// errors) are recorded in the corresponding report, never aborting the
/// sweep.  Reports are identical for any parallelism level.
std::vector<VerdictReport> sweep(const std::vector<ScenarioConfig>& configs,
                                 unsigned parallelism);

} // namespace gkpd

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "gkpd/schemes.hpp"

namespace gkpd {

/// Canonical rendering rules used for every file this library reads or
/// writes: objects with keys sorted lexicographically (nlohmann's default
/// ordered map), two-space indentation, one trailing newline, and every
/// ring element as a decimal string.  Re-serializing a parsed document is
/// byte-exact.
std::string canonical_dump(const nlohmann::json& j);

nlohmann::json params_to_json(const SystemParams& params);  // public view: N only
SystemParams params_from_json(const nlohmann::json& j);

nlohmann::json share_set_to_json(const ShareSet& s);
ShareSet share_set_from_json(const nlohmann::json& j);

nlohmann::json token_to_json(const ExpandedToken& t);
ExpandedToken token_from_json(const nlohmann::json& j, const ModulusPtr& modulus);

nlohmann::json group_key_to_json(const GroupKey& k);
GroupKey group_key_from_json(const nlohmann::json& j);

/// The `setup` output: everything the KGC distributes, plus the public
/// parameters.  The KGC's secret polynomial state is deliberately absent.
struct SystemFile {
    std::string scheme;  // harn_hsu | harn_gong | albakri_harn
    SystemParams params;
    std::vector<ShareSet> share_sets;    // harn_hsu / harn_gong
    std::vector<ExpandedToken> tokens;   // albakri_harn
};

nlohmann::json system_to_json(const SystemFile& s);
SystemFile system_from_json(const nlohmann::json& j);

} // namespace gkpd

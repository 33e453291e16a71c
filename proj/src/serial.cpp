#include "gkpd/serial.hpp"

#include <cmath>
#include <sstream>

namespace gkpd {

namespace {

mpz_class mpz_from_field(const nlohmann::json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_string()) {
        throw ConfigError(std::string("missing or non-string field: ") + field);
    }
    const std::string s = j[field].get<std::string>();
    mpz_class out;
    if (mpz_set_str(out.get_mpz_t(), s.c_str(), 10) != 0) {
        throw ConfigError(std::string("field ") + field + " is not a decimal integer: " + s);
    }
    return out;
}

std::string exponents_to_key(const ExponentVector& e) {
    std::string out;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(e[i]);
    }
    return out;
}

ExponentVector exponents_from_key(const std::string& key, std::size_t expected_len,
                                  std::uint32_t degree_bound) {
    ExponentVector e;
    std::istringstream in(key);
    std::string part;
    while (std::getline(in, part, ',')) {
        unsigned long v = 0;
        try {
            v = std::stoul(part);
        } catch (const std::exception&) {
            throw ConfigError("bad exponent vector key: " + key);
        }
        if (v > degree_bound) throw ConfigError("exponent exceeds degree bound in key: " + key);
        e.push_back(static_cast<std::uint32_t>(v));
    }
    if (e.size() != expected_len) {
        throw ConfigError("exponent vector length mismatch in key: " + key);
    }
    return e;
}

} // namespace

std::string canonical_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json params_to_json(const SystemParams& params) {
    nlohmann::json ids = nlohmann::json::array();
    for (const auto& id : params.ids) ids.push_back(id.value().get_str());
    return nlohmann::json{{"degree_param", params.degree_param},
                          {"ell", params.ell},
                          {"ids", std::move(ids)},
                          {"n", params.modulus->n().get_str()}};
}

SystemParams params_from_json(const nlohmann::json& j) {
    const ModulusPtr modulus = Modulus::public_only(mpz_from_field(j, "n"));
    if (!j.contains("ids") || !j["ids"].is_array()) throw ConfigError("missing ids array");
    std::vector<mpz_class> ids;
    for (const auto& v : j["ids"]) {
        if (!v.is_string()) throw ConfigError("ids entries must be decimal strings");
        mpz_class x;
        if (mpz_set_str(x.get_mpz_t(), v.get<std::string>().c_str(), 10) != 0) {
            throw ConfigError("bad id value: " + v.get<std::string>());
        }
        ids.push_back(std::move(x));
    }
    const auto ell = j.value("ell", std::size_t{0});
    const auto degree = j.value("degree_param", std::size_t{0});
    try {
        return SystemParams::with_ids(ell, degree, modulus, std::move(ids));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid params: ") + e.what());
    }
}

nlohmann::json share_set_to_json(const ShareSet& s) {
    nlohmann::json shares = nlohmann::json::array();
    for (const auto& poly : s.shares) {
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& c : poly.coeffs()) coeffs.push_back(c.get_str());
        shares.push_back(std::move(coeffs));
    }
    return nlohmann::json{
        {"owner", s.owner}, {"params", params_to_json(s.params)}, {"shares", std::move(shares)}};
}

ShareSet share_set_from_json(const nlohmann::json& j) {
    ShareSet s;
    s.params = params_from_json(j.at("params"));
    s.owner = j.value("owner", std::size_t{0});
    if (s.owner == 0 || s.owner > s.params.ell) throw ConfigError("share set owner out of range");
    if (!j.contains("shares") || !j["shares"].is_array()) throw ConfigError("missing shares");
    for (const auto& poly : j["shares"]) {
        std::vector<mpz_class> coeffs;
        for (const auto& c : poly) {
            mpz_class x;
            if (!c.is_string() || mpz_set_str(x.get_mpz_t(), c.get<std::string>().c_str(), 10) != 0) {
                throw ConfigError("share coefficients must be decimal strings");
            }
            coeffs.push_back(std::move(x));
        }
        if (coeffs.empty()) throw ConfigError("share polynomial without coefficients");
        s.shares.emplace_back(std::move(coeffs), s.params.modulus);
    }
    if (s.shares.size() != s.params.ell - 1) {
        throw ConfigError("share set must hold ell-1 share polynomials");
    }
    return s;
}

nlohmann::json token_to_json(const ExpandedToken& t) {
    nlohmann::json coeffs = nlohmann::json::object();
    for (const auto& [e, c] : t.coefficients) coeffs[exponents_to_key(e)] = c.get_str();
    return nlohmann::json{{"coefficients", std::move(coeffs)},
                          {"degree_bound", t.degree_bound},
                          {"n", t.modulus->n().get_str()},
                          {"owner", t.owner},
                          {"variables", t.variables}};
}

ExpandedToken token_from_json(const nlohmann::json& j, const ModulusPtr& modulus) {
    ExpandedToken t;
    t.modulus = modulus ? modulus : Modulus::public_only(mpz_from_field(j, "n"));
    if (modulus && modulus->n() != mpz_from_field(j, "n")) {
        throw ConfigError("token modulus differs from the system modulus");
    }
    t.owner = j.value("owner", std::size_t{0});
    t.degree_bound = j.value("degree_bound", std::uint32_t{0});
    t.variables = j.value("variables", std::vector<std::size_t>{});
    for (std::size_t i = 1; i < t.variables.size(); ++i) {
        if (t.variables[i - 1] >= t.variables[i]) {
            throw ConfigError("token variables must be strictly ascending");
        }
    }
    if (!j.contains("coefficients") || !j["coefficients"].is_object()) {
        throw ConfigError("missing token coefficients");
    }
    for (const auto& [key, value] : j["coefficients"].items()) {
        if (!value.is_string()) throw ConfigError("token coefficients must be decimal strings");
        mpz_class c;
        if (mpz_set_str(c.get_mpz_t(), value.get<std::string>().c_str(), 10) != 0) {
            throw ConfigError("bad token coefficient: " + value.get<std::string>());
        }
        t.coefficients.emplace(exponents_from_key(key, t.variables.size(), t.degree_bound),
                               std::move(c));
    }
    std::size_t expected = 1;
    for (std::size_t i = 0; i < t.variables.size(); ++i) {
        if (expected > kDefaultExpansionCap / (t.degree_bound + 1)) {
            throw ConfigError("token exceeds the expansion cap");
        }
        expected *= t.degree_bound + 1;
    }
    if (t.coefficients.size() != expected) {
        throw ConfigError("token must hold a dense coefficient map");
    }
    return t;
}

nlohmann::json group_key_to_json(const GroupKey& k) {
    return nlohmann::json{{"group", k.group.members()},
                          {"n", k.value.modulus()->n().get_str()},
                          {"value", k.value.value().get_str()}};
}

GroupKey group_key_from_json(const nlohmann::json& j) {
    const ModulusPtr modulus = Modulus::public_only(mpz_from_field(j, "n"));
    Group group(j.value("group", std::vector<std::size_t>{}));
    return GroupKey{Residue(mpz_from_field(j, "value"), modulus), std::move(group)};
}

nlohmann::json system_to_json(const SystemFile& s) {
    nlohmann::json out{{"params", params_to_json(s.params)}, {"scheme", s.scheme}};
    if (s.scheme == "albakri_harn") {
        nlohmann::json tokens = nlohmann::json::array();
        for (const auto& t : s.tokens) tokens.push_back(token_to_json(t));
        out["tokens"] = std::move(tokens);
    } else {
        nlohmann::json sets = nlohmann::json::array();
        for (const auto& ss : s.share_sets) sets.push_back(share_set_to_json(ss));
        out["share_sets"] = std::move(sets);
    }
    return out;
}

SystemFile system_from_json(const nlohmann::json& j) {
    SystemFile s;
    s.scheme = j.value("scheme", std::string{});
    if (s.scheme != "harn_hsu" && s.scheme != "harn_gong" && s.scheme != "albakri_harn") {
        throw ConfigError("unknown scheme: " + s.scheme);
    }
    s.params = params_from_json(j.at("params"));
    if (s.scheme == "albakri_harn") {
        for (const auto& t : j.value("tokens", nlohmann::json::array())) {
            s.tokens.push_back(token_from_json(t, s.params.modulus));
        }
        if (s.tokens.size() != s.params.ell) throw ConfigError("need one token per node");
    } else {
        for (const auto& ss : j.value("share_sets", nlohmann::json::array())) {
            s.share_sets.push_back(share_set_from_json(ss));
        }
        if (s.share_sets.size() != s.params.ell) throw ConfigError("need one share set per node");
    }
    return s;
}

} // namespace gkpd

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gkpd/schemes.hpp"

namespace gkpd {

/// Hand-checkable two-node instances over Z_77 (7 * 11) with IDs 1 and 2.
/// All downstream golden values were verified by hand; the fixture suite
/// pins them exactly.

struct HHFixture {
    SystemParams params;            // ell = 2, k = 1
    HHKgcState kgc;                 // f = 2 + 3x
    std::vector<ShareSet> shares;   // 10 + 15x and 16 + 24x
};
HHFixture worked_hh_instance();

struct AHFixture {
    SystemParams params;                // ell = 2, t = 2
    AHKgcState kgc;                     // f_1 = 2 + 3x, f_2 = 1 + 4x
    std::vector<ExpandedToken> tokens;  // {5, 20} and {18, 27}
};
AHFixture worked_ah_instance();

/// Named golden-value checks over the worked instances; used by the CLI
/// selftest and the acceptance suite.
std::vector<std::pair<std::string, bool>> fixture_checks();

} // namespace gkpd

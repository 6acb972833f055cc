// Pinned regression values generated by the first verified run (see
// tests/fixtures/pinned.json for provenance). Deterministic quantities are
// compared tightly; Monte Carlo quantities reproduce bit-for-bit from their
// seeds, with a small slack for FP environment drift.
#ifndef GCLAB_TEST_FIXTURES_HPP
#define GCLAB_TEST_FIXTURES_HPP

#include <fstream>
#include <json.hpp>
#include <string>

namespace test_fixtures {

inline const nlohmann::json& pinned() {
    static const nlohmann::json j = [] {
        std::ifstream in(std::string(GCLAB_FIXTURE_DIR) + "/pinned.json");
        nlohmann::json v;
        if (in) in >> v;
        return v;
    }();
    return j;
}

inline bool has(const std::string& section) { return pinned().contains(section); }

}  // namespace test_fixtures

#endif

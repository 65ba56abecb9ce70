#pragma once

// The acceptance suite as a library call, shared by `itv verify` and the
// acceptance binary.

#include "itv/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace itv {

struct VerifyConfig {
    StructureTable<Rational> algebra = iwasawa_table<Rational>();
    std::string algebra_source = "iwasawa preset";
    double tol = kDefaultClassTol;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 0;
    int sweep_samples = 500;
    int generic_samples = 1000;
    int uniform_samples = 10000;
};

struct CriterionResult {
    std::string id;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyReport {
    VerifyConfig config;
    std::vector<CriterionResult> criteria;
    bool passed() const;
};

VerifyReport run_verification(const VerifyConfig& config);

/// One "PASS"/"FAIL" line per criterion after a header with the settings.
std::string verify_text(const VerifyReport& r);
Json verify_json(const VerifyReport& r);

} // namespace itv

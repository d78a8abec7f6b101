#ifndef CUBICS_SELFTEST_HPP
#define CUBICS_SELFTEST_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace cubics {

struct CheckResult {
    int id;
    std::string name;
    bool pass;
    bool skipped;
    std::string detail;
};

struct SelftestOptions {
    bool include_exhaustive_scan = true;  // the full PGL_3(F_7) stabilizer scan
    std::uint64_t seed = 1;
};

// The end-to-end invariant suite: ten independent checks covering the whole
// pipeline, each reported with a pass/fail verdict and a short summary.
std::vector<CheckResult> run_selftest(const SelftestOptions& opt);

}  // namespace cubics

#endif

#include <cstdio>

#include "cubics/selftest.hpp"

int main() {
    cubics::SelftestOptions opt;
    auto results = cubics::run_selftest(opt);
    bool ok = true;
    for (const auto& r : results) {
        std::printf("[%2d] %-24s %s  %s\n", r.id, r.name.c_str(), r.pass ? "pass" : "FAIL",
                    r.detail.c_str());
        if (!r.pass) ok = false;
    }
    return ok ? 0 : 1;
}

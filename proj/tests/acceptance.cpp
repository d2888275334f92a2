// Acceptance battery: runs every release criterion at its pinned tolerance
// (exact equality everywhere) and prints one PASS/FAIL line per criterion.
// Exit status is nonzero if any criterion fails.

#include <cstdio>

#include "qdl/checks.hpp"

int main() {
    qdl::CheckOptions opts;
    opts.seed = 0x5EED0001;
    auto reports = qdl::run_all_checks(opts);
    int idx = 0, passed = 0;
    for (const auto& r : reports) {
        ++idx;
        std::printf("%s  %2d  %-28s  %5lld ms (limit %lld ms)\n", r.pass ? "PASS" : "FAIL", idx,
                    r.id.c_str(), static_cast<long long>(r.millis),
                    static_cast<long long>(r.limit_ms));
        if (!r.pass) std::printf("      witness: %s\n", r.witness.dump().c_str());
        if (r.pass) ++passed;
    }
    bool all = passed == static_cast<int>(reports.size());
    std::printf("%s: %d/%zu criteria\n", all ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", passed,
                reports.size());
    return all ? 0 : 1;
}

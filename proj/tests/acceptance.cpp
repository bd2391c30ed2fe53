// Acceptance suite: runs every verification criterion at its stated scale and
// prints one pass/fail line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cstdio>

#include "kfour/verify.hpp"

int main() {
    using clock = std::chrono::steady_clock;
    bool all_pass = true;
    int idx = 0;
    const auto t0 = clock::now();
    for (auto runner : {
             +[] { return kfour::criterion_trivial_cohomology(); },
             +[] { return kfour::criterion_odd_positive_table(); },
             +[] { return kfour::criterion_odd_negative_table(); },
             +[] { return kfour::criterion_even_table(); },
             +[] { return kfour::criterion_heller_theorem(); },
             +[] { return kfour::criterion_cover_shapes(); },
             +[] { return kfour::criterion_cup_vanishing(); },
             +[] { return kfour::criterion_machinery(); },
             +[] { return kfour::criterion_duality(); },
         }) {
        const auto start = clock::now();
        kfour::CriterionResult r = runner();
        const double secs = std::chrono::duration<double>(clock::now() - start).count();
        ++idx;
        std::printf("[%s] criterion %d: %s — %s (%.1fs)\n", r.pass ? "PASS" : "FAIL", idx,
                    r.name.c_str(), r.detail.c_str(), secs);
        std::fflush(stdout);
        all_pass &= r.pass;
    }
    const double total = std::chrono::duration<double>(clock::now() - t0).count();
    std::printf("%s (%d criteria, %.1fs)\n", all_pass ? "ALL CRITERIA PASSED" : "CRITERIA FAILED",
                idx, total);
    return all_pass ? 0 : 1;
}

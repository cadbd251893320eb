#include "minsurf/checks.hpp"

#include <chrono>
#include <cstdio>

using namespace minsurf;

int main()
{
    RunConfig coarse, fine;
    coarse.grid = 64;
    fine.grid = 128;
    int failures = 0;
    for (int c = 1; c <= 9; ++c) {
        const auto start = std::chrono::steady_clock::now();
        bool pass = false;
        std::string detail;
        try {
            const CheckReport r = with_convergence(acceptance_suite(c, coarse), acceptance_suite(c, fine));
            pass = r.passed();
            if (!pass) detail = " (" + r.first_failure().value_or("") + ")";
            for (const Check& k : r.checks)
                std::printf("    %-64s %10.3e <= %10.3e %s\n", k.name.c_str(), k.residual, k.tolerance,
                            k.pass ? "ok" : "FAIL");
            for (const Convergence& k : r.convergence)
                std::printf("    ratio %-58s %10.3e -> %10.3e (%.2f, need %.1f) %s\n", k.name.c_str(), k.coarse,
                            k.fine, k.ratio, k.required, k.pass ? "ok" : "FAIL");
        } catch (const std::exception& e) {
            detail = std::string(" (") + e.what() + ")";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %d %s: %s%s [%.2fs]\n", c, acceptance_title(c), pass ? "PASS" : "FAIL", detail.c_str(),
                    secs);
        std::fflush(stdout);
        if (!pass) ++failures;
    }
    std::printf("%d of 9 criteria passed\n", 9 - failures);
    return failures == 0 ? 0 : 1;
}

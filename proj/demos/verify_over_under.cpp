// Build the over-under curve on a doubled regular n-gon, verify its 1/k
// minimization property, and print the per-k gap table.
//
// Usage: verify_over_under [n]

#include <cstdio>
#include <cstdlib>

#include "dpoly/dpoly.hpp"

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 5;
    const auto spec = dpoly::build_polygon(n);
    const auto curve = dpoly::over_under(spec);
    std::printf("over-under on the doubled %d-gon: period %d, length %.12f\n", n, curve.period(),
                curve.length);

    const auto report = dpoly::minimizing_index(curve);
    for (const auto& [k, gap] : report.gaps)
        std::printf("  k = %2d   min gap = %+.3e   %s\n", k, gap,
                    gap >= -1e-7 * curve.length ? "pass" : "fail");
    if (report.found)
        std::printf("minimizing index: %d (period %d is the lower bound)\n", report.k_star,
                    report.period);
    else
        std::printf("no 1/k property up to k = %d\n", report.k_max);
    return 0;
}

// Enumerate the period-4 closed geodesics on the doubled triangle by the
// shooting search and print the family with per-member minimizing indices.

#include <cstdio>

#include "dpoly/dpoly.hpp"

int main() {
    const auto tri = dpoly::build_polygon(3);
    const auto catalog = dpoly::find_closed_geodesics(tri, 4, 128, 128,
                                                      {.compute_minind = true, .k_max = 16});
    for (const auto& cls : catalog.classes) {
        std::printf("%s with %zu member(s):\n", cls.is_family ? "family" : "isolated curve",
                    cls.members.size());
        for (const auto& m : cls.members) {
            std::printf("  launch u = %.6f  angle = %.9f  L = %.6f  copies = %d", m.state.u,
                        m.state.theta, m.curve.length, m.num_copies);
            if (m.minind && m.minind->found)
                std::printf("  index = %d\n", m.minind->k_star);
            else
                std::printf("  index > %d\n", m.minind ? m.minind->k_max : 0);
        }
    }
    return 0;
}

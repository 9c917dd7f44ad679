// Acceptance suite: one line per criterion. Everything runs twice with fixed
// inputs; the final criterion checks that both runs produced bit-identical
// documents and figures (and that the CLI does too, when its path is passed
// as argv[1]).

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "dpoly/dpoly.hpp"

using namespace dpoly;

namespace {

struct CriterionResult {
    std::string name;
    bool pass = true;
    std::string detail;
    double seconds = 0;
    // documents produced with fixed inputs; compared across the two runs
    std::vector<std::pair<std::string, std::string>> docs;

    CriterionResult() = default;
    explicit CriterionResult(std::string n) : name(std::move(n)) {}

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void doc(const std::string& name_, std::string bytes) {
        docs.emplace_back(name_, std::move(bytes));
    }
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

// --- criterion 1: metric oracle agreement + metric axioms ------------------

CriterionResult criterion1() {
    CriterionResult r("metric oracle agreement (1000 pairs, 10^4 samples/edge, n=3..8)");
    double worst = 0;
    for (int n = 3; n <= 8; ++n) {
        const PolygonSpec spec = build_polygon(n, 1.0);
        std::mt19937 rng(1000 + n);
        for (int trial = 0; trial < 1000; ++trial) {
            std::bernoulli_distribution face(0.5);
            std::uniform_real_distribution<double> coord(-1.0, 1.0);
            auto sample = [&]() -> SurfacePoint {
                for (;;) {
                    const Vec2 p{coord(rng), coord(rng)};
                    bool inside = true;
                    for (int j = 0; j < n; ++j)
                        if (spec.signed_edge_distance(p, j) > -1e-6) inside = false;
                    if (inside) return {face(rng) ? Face::Top : Face::Bottom, p};
                }
            };
            const SurfacePoint p = sample(), q = sample();
            const double err = std::abs(distance(spec, p, q) -
                                        distance_bruteforce(spec, p, q, 10000));
            worst = std::max(worst, err);
        }
        r.require(worst <= 1e-4, "oracle error " + fmt(worst) + " above 1e-4 at n=" +
                                     std::to_string(n));

        std::mt19937 rng2(2000 + n);
        std::bernoulli_distribution face(0.5);
        std::uniform_real_distribution<double> coord(-1.0, 1.0);
        auto sample2 = [&]() -> SurfacePoint {
            for (;;) {
                const Vec2 p{coord(rng2), coord(rng2)};
                bool inside = true;
                for (int j = 0; j < n; ++j)
                    if (spec.signed_edge_distance(p, j) > -1e-6) inside = false;
                if (inside) return {face(rng2) ? Face::Top : Face::Bottom, p};
            }
        };
        for (int trial = 0; trial < 1000; ++trial) {
            const SurfacePoint a = sample2(), b = sample2(), c = sample2();
            const double ab = distance(spec, a, b);
            r.require(ab == distance(spec, b, a), "symmetry not exact");
            r.require(ab >= 0, "negative distance");
            r.require(ab <= distance(spec, a, c) + distance(spec, c, b) + 1e-9,
                      "triangle inequality violated beyond 1e-9");
        }
    }
    r.detail = "max |closed form - brute force| = " + fmt(worst) +
               (r.detail.empty() ? "" : "; " + r.detail);
    json summary;
    summary["criterion"] = 1;
    summary["max_error"] = worst;
    r.doc("c1_summary.json", dump_document(summary));
    return r;
}

// --- criterion 2: even over-under curves --------------------------------

CriterionResult criterion2() {
    CriterionResult r("even over-under: 1/n passes, 1/(n-1) fails, index = n (n=4,6,8)");
    json summary;
    for (int n : {4, 6, 8}) {
        const ClosedGeodesic g = over_under(build_polygon(n, 1.0));
        const VerificationReport pass = check_one_over_k(g, n);
        r.require(pass.pass && pass.min_gap >= -1e-7 * g.length,
                  "1/n check failed at n=" + std::to_string(n));
        const VerificationReport fail = check_one_over_k(g, n - 1);
        r.require(!fail.pass, "1/(n-1) unexpectedly passed at n=" + std::to_string(n));
        r.require(-fail.min_gap >= 1e-4 * g.length,
                  "witness margin below 1e-4*L at n=" + std::to_string(n));
        const MinindReport mi = minimizing_index(g);
        r.require(mi.found && mi.k_star == n, "index != n at n=" + std::to_string(n));
        summary["n" + std::to_string(n)] = {{"pass_gap", pass.min_gap},
                                            {"fail_gap", fail.min_gap},
                                            {"k_star", mi.k_star}};
    }
    r.doc("c2_summary.json", dump_document(summary));
    return r;
}

// --- criterion 3: odd over-under curves ---------------------------------

CriterionResult criterion3() {
    CriterionResult r("odd over-under: period 2n, 1/2n passes, index = 2n (n=3,5,7)");
    json summary;
    for (int n : {3, 5, 7}) {
        const ClosedGeodesic g = over_under(build_polygon(n, 1.0));
        r.require(g.period() == 2 * n, "period != 2n at n=" + std::to_string(n));
        r.require(check_one_over_k(g, 2 * n).pass, "1/2n failed at n=" + std::to_string(n));
        const MinindReport mi = minimizing_index(g);
        r.require(mi.found && mi.k_star == 2 * n, "index != 2n at n=" + std::to_string(n));
        summary["n" + std::to_string(n)] = {{"period", g.period()}, {"k_star", mi.k_star}};
    }
    r.doc("c3_summary.json", dump_document(summary));
    return r;
}

// --- criterion 4: half-geodesic census ----------------------------------

CriterionResult criterion4() {
    CriterionResult r("half-geodesic census: n/2 curves of index 2 (even); none (odd)");
    json summary;
    for (int n : {4, 6, 8}) {
        const auto curves = half_geodesics(build_polygon(n, 1.0));
        r.require(static_cast<int>(curves.size()) == n / 2,
                  "count != n/2 at n=" + std::to_string(n));
        for (const ClosedGeodesic& g : curves) {
            const MinindReport mi = minimizing_index(g);
            r.require(mi.found && mi.k_star == 2, "index != 2 at n=" + std::to_string(n));
        }
        summary["n" + std::to_string(n)] = curves.size();
    }
    for (int n : {3, 5, 7}) {
        const GeodesicCatalog cat = find_closed_geodesics(
            build_polygon(n, 1.0), 2, 256, 256, {.compute_minind = false});
        r.require(cat.classes.empty(),
                  "period-2 catalog not empty at n=" + std::to_string(n));
        summary["odd_n" + std::to_string(n)] = cat.classes.size();
    }
    r.doc("c4_summary.json", dump_document(summary));
    return r;
}

// --- criterion 5: the midpoint period-4 curve and minind(X_3) -------------

CriterionResult criterion5() {
    CriterionResult r("midpoint period-4 curve: L=3, equal paths L/12, triangle index 6");
    const PolygonSpec tri = build_polygon(3, 1.0);
    const ClosedGeodesic g = period4_triangle(tri, 0.5);
    r.require(std::abs(g.length - 3.0) <= 1e-12, "length != 3.0");
    const MidpointEqualPaths eq = midpoint_equal_paths(g);
    r.require(std::abs(eq.q_to_foot_of_pivot - 0.25) <= 1e-9, "|QR| != 0.25");
    r.require(std::abs(eq.q_to_junction - 0.25) <= 1e-9, "|Q-junction| != 0.25");
    r.require(std::abs(eq.length_twelfth - 0.25) <= 1e-9, "L/12 != 0.25");
    r.require(std::abs(eq.q_to_foot_of_pivot - eq.q_to_junction) <= 1e-9 &&
                  std::abs(eq.q_to_foot_of_pivot - eq.length_twelfth) <= 1e-9,
              "equal-path identity violated beyond 1e-9");
    r.require(!check_one_over_k(g, 5).pass, "1/5 check unexpectedly passed");

    const EvidenceTable t = minind_evidence(tri, 4);
    r.require(t.table_minimum == 6, "evidence table minimum != 6");
    r.doc("c5_evidence.json", dump_document(evidence_to_json(t)));
    r.doc("c5_curve.json", dump_document(curve_to_json(g, "period4")));
    return r;
}

// --- criterion 6: law-of-sines identity ----------------------------------

CriterionResult criterion6() {
    CriterionResult r("law-of-sines identity on 1000 random arcs per n (n=3..8)");
    double worst_p = 0, worst_cos = 0, worst_short = 0;
    for (int n = 3; n <= 8; ++n) {
        const ClosedGeodesic g = over_under(build_polygon(n, 1.0));
        const double arc = g.length / g.period();
        std::mt19937 rng(6000 + n);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        for (int trial = 0; trial < 1000; ++trial) {
            double t = unif(rng) * g.length;
            const double local = std::fmod(t, arc);
            if (local < 1e-7 * g.length || arc - local < 1e-7 * g.length) t += arc / 7;
            const AdjacentShortcut sc = adjacent_shortcut(g, t);
            worst_p = std::max(worst_p, std::abs(sc.P_i - sc.P_next));
            worst_cos = std::max(
                worst_cos, std::abs((sc.Q1 + sc.R2) / (2 * sc.P_i) - std::cos(sc.angle_c)));
            worst_short = std::max(worst_short, arc - sc.shortcut_length);
        }
    }
    r.require(worst_p <= 1e-9, "P_i = P_{i+1} off by " + fmt(worst_p));
    r.require(worst_cos <= 1e-9, "law-of-sines ratio off by " + fmt(worst_cos));
    r.require(worst_short <= 1e-12, "shortcut below L/period by " + fmt(worst_short));
    r.detail = "max |P_i-P_next| = " + fmt(worst_p) + ", max ratio error = " + fmt(worst_cos) +
               (r.detail.empty() ? "" : "; " + r.detail);
    json summary;
    summary["criterion"] = 6;
    summary["max_p_mismatch"] = worst_p;
    summary["max_ratio_error"] = worst_cos;
    summary["max_shortcut_deficit"] = worst_short;
    r.doc("c6_summary.json", dump_document(summary));
    return r;
}

// --- criterion 7: composite over-under -----------------------------------

CriterionResult criterion7() {
    CriterionResult r("composite over-under on X_6 (step 2): period 6, L = 9, index 6");
    const ClosedGeodesic g = over_under(build_polygon(6, 1.0), 2);
    r.require(g.period() == 6, "period != 6");
    r.require(std::abs(g.length - 9.0) <= 1e-12, "length != 9.0");
    const MinindReport mi = minimizing_index(g);
    r.require(mi.found && mi.k_star == 6, "index != 6");
    r.doc("c7_curve.json", dump_document(curve_to_json(g, "over-under", 2)));
    return r;
}

// --- criterion 8: period-4 search reproduction ----------------------------

CriterionResult criterion8() {
    CriterionResult r("period-4 search on X_3: angle pi/6, midpoint member, grid-stable");
    const PolygonSpec tri = build_polygon(3, 1.0);

    const GeodesicCatalog cat =
        find_closed_geodesics(tri, 4, 256, 256, {.compute_minind = true, .k_max = 8});
    bool midpoint_member = false;
    int members = 0;
    for (const CatalogClass& cls : cat.classes)
        for (const CatalogCurve& m : cls.members) {
            ++members;
            r.require(std::abs(m.state.theta - kPi / 6) <= 1e-8,
                      "launch angle off pi/6 by more than 1e-8");
            bool at_mid = false;
            for (int j = 0; j < m.curve.period(); ++j)
                for (int e = 0; e < tri.n; ++e)
                    if (distance(m.curve.junction(j), tri.edge_midpoint(e)) <= 1e-9)
                        at_mid = true;
            if (at_mid) midpoint_member = true;
        }
    r.require(members > 0, "empty catalog");
    r.require(midpoint_member, "no member through an edge midpoint");

    const GeodesicCatalog fine =
        find_closed_geodesics(tri, 4, 512, 512, {.compute_minind = false});
    // compare by canonical launch data (stable up to solver tolerance)
    auto found_in = [](const GeodesicCatalog& where, const CatalogCurve& m) {
        for (const CatalogClass& cls : where.classes)
            for (const CatalogCurve& other : cls.members)
                if (std::abs(other.state.u - m.state.u) < 1e-6 &&
                    std::abs(other.state.theta - m.state.theta) < 1e-6)
                    return true;
        return false;
    };
    int missing = 0;
    for (const CatalogClass& cls : cat.classes)
        for (const CatalogCurve& m : cls.members)
            if (!found_in(fine, m)) ++missing;
    r.require(missing == 0, std::to_string(missing) + " curves vanished after grid doubling");
    // new entries only refine families
    for (const CatalogClass& cls : fine.classes)
        for (const CatalogCurve& m : cls.members)
            if (!found_in(cat, m))
                r.require(cls.is_family, "a new non-family curve appeared after doubling");

    r.detail = std::to_string(members) + " members at 256x256, " +
               std::to_string(fine.total_members()) + " at 512x512" +
               (r.detail.empty() ? "" : "; " + r.detail);
    r.doc("c8_catalog.json", dump_document(catalog_to_json(cat)));
    return r;
}

// --- criterion 9: conjecture evidence on X_5 ------------------------------

CriterionResult criterion9() {
    CriterionResult r("X_5 evidence to period 8: no curve with index < 10 (grid-limited)");
    const EvidenceTable t = minind_evidence(build_polygon(5, 1.0), 8);
    int curves = 0;
    for (const EvidenceRow& row : t.rows) {
        curves += row.num_members;
        if (row.num_members > 0)
            r.require(row.lower_bound >= 10, "period " + std::to_string(row.period) +
                                                 " has a curve with index < 10");
    }
    r.require(curves > 0, "search found nothing at all");
    r.require(t.lower_bound >= 10, "table lower bound below 10");
    r.require(t.k_max >= 10, "k_max too small to certify the bound");
    r.require(t.statement.find("not a proof") != std::string::npos,
              "statement not labeled as evidence");
    r.detail = std::to_string(curves) + " curves found, every index >= " +
               std::to_string(t.lower_bound) + " (k_max " + std::to_string(t.k_max) + ")" +
               (r.detail.empty() ? "" : "; " + r.detail);
    r.doc("c9_evidence.json", dump_document(evidence_to_json(t)));
    return r;
}

// --- figures used by the determinism check --------------------------------

CriterionResult figures() {
    CriterionResult r("figures");
    const PolygonSpec tri = build_polygon(3, 1.0);
    const PolygonSpec hex = build_polygon(6, 1.0);
    r.doc("fig_over_under_x3.svg", render_svg(tri, {over_under(tri)}));
    r.doc("fig_half_x6.svg", render_svg(hex, half_geodesics(hex)));
    r.doc("fig_period4.svg", render_svg(tri, {period4_triangle(tri, 0.5)},
                                        {.junction_dots = true}));
    return r;
}

std::vector<CriterionResult> run_all() {
    std::vector<CriterionResult> out;
    auto timed = [&](CriterionResult (*f)()) {
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r = f();
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.push_back(std::move(r));
    };
    timed(criterion1);
    timed(criterion2);
    timed(criterion3);
    timed(criterion4);
    timed(criterion5);
    timed(criterion6);
    timed(criterion7);
    timed(criterion8);
    timed(criterion9);
    timed(figures);
    return out;
}

int run_cli(const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

bool cli_determinism(const std::string& cli, std::string& detail) {
    auto slurp = [](const std::string& path) { return read_text_file(path); };
    bool ok = true;
    ok &= run_cli(cli + " over-under --n 3 --out acc_cli_a.json") == 0;
    ok &= run_cli(cli + " over-under --n 3 --out acc_cli_b.json") == 0;
    if (!ok || slurp("acc_cli_a.json") != slurp("acc_cli_b.json")) {
        detail += "over-under output not reproducible; ";
        return false;
    }
    ok &= run_cli(cli + " verify --curve acc_cli_a.json --k 6 --out acc_cli_va.json") == 0;
    ok &= run_cli(cli + " verify --curve acc_cli_a.json --k 6 --out acc_cli_vb.json") == 0;
    if (!ok || slurp("acc_cli_va.json") != slurp("acc_cli_vb.json")) {
        detail += "verify output not reproducible; ";
        return false;
    }
    ok &= run_cli(cli + " render --curve acc_cli_a.json --out acc_cli_a.svg") == 0;
    ok &= run_cli(cli + " render --curve acc_cli_a.json --out acc_cli_b.svg") == 0;
    if (!ok || slurp("acc_cli_a.svg") != slurp("acc_cli_b.svg")) {
        detail += "render output not reproducible; ";
        return false;
    }
    if (run_cli(cli + " verify --curve acc_cli_a.json --k 1 --out acc_cli_k1.json 2>/dev/null") !=
        2) {
        detail += "verify --k 1 did not exit with usage error 2; ";
        return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    std::printf("acceptance: running every criterion twice with fixed inputs\n");
    const std::vector<CriterionResult> first = run_all();
    const std::vector<CriterionResult> second = run_all();

    bool all_pass = true;
    for (size_t i = 0; i + 1 < first.size(); ++i) {  // last entry is figures
        const CriterionResult& r = first[i];
        std::printf("criterion %zu: %s — %s%s%s (%.1fs)\n", i + 1,
                    r.pass ? "PASS" : "FAIL", r.name.c_str(),
                    r.detail.empty() ? "" : ": ", r.detail.c_str(), r.seconds);
        all_pass &= r.pass;
    }

    // criterion 10: determinism
    bool det = true;
    std::string det_detail;
    for (size_t i = 0; i < first.size(); ++i) {
        if (first[i].docs.size() != second[i].docs.size()) {
            det = false;
            det_detail += "document count differs; ";
            continue;
        }
        for (size_t d = 0; d < first[i].docs.size(); ++d)
            if (first[i].docs[d].second != second[i].docs[d].second) {
                det = false;
                det_detail += first[i].docs[d].first + " differs between runs; ";
            }
    }
    if (argc > 1 && std::string(argv[1]).size() > 0)
        det &= cli_determinism(argv[1], det_detail);
    else
        det_detail += "(no CLI path given, CLI check skipped) ";
    std::printf("criterion 10: %s — repeated runs produce bit-identical documents and SVGs%s%s\n",
                det ? "PASS" : "FAIL", det_detail.empty() ? "" : ": ", det_detail.c_str());
    all_pass &= det;

    std::printf("acceptance: %s\n", all_pass ? "ALL CRITERIA PASS" : "FAILURES PRESENT");
    return all_pass ? 0 : 1;
}

// Command-line interface for the doubled-polygon geodesics library.
//
// Subcommands map one-to-one to library operations; documents are written as
// JSON to --out or standard output. Exit codes: 0 success, 1 domain errors
// (vertex hits, invalid curves), 2 usage errors.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "dpoly/dpoly.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

void emit(const dpoly::json& doc, const std::string& out_path) {
    const std::string text = dpoly::dump_document(doc);
    if (out_path.empty())
        std::cout << text;
    else
        dpoly::write_text_file(out_path, text);
}

// Angles are radians by default; a "deg" suffix switches to degrees.
double parse_angle(const std::string& text) {
    std::string t = text;
    double scale = 1.0;
    if (t.size() > 3 && t.substr(t.size() - 3) == "deg") {
        scale = dpoly::kPi / 180.0;
        t = t.substr(0, t.size() - 3);
    }
    size_t pos = 0;
    const double v = std::stod(t, &pos);
    if (pos != t.size()) throw CLI::ValidationError("--angle", "cannot parse angle '" + text + "'");
    return v * scale;
}

std::pair<int, int> parse_grid(const std::string& text) {
    const auto x = text.find('x');
    if (x == std::string::npos)
        throw CLI::ValidationError("--seed-grid", "expected NUxNT, e.g. 256x256");
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
}

dpoly::ClosedGeodesic load_single_curve(const std::string& path) {
    const dpoly::json doc = dpoly::load_json(path);
    if (doc.contains("curves"))
        throw CLI::ValidationError("--curve", "expected a single-curve document, got a list");
    return dpoly::curve_from_json(doc);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"closed geodesics on doubled regular polygons"};
    app.require_subcommand(1);

    int n = 4;
    int step = 1;
    double u = 0.5;
    double radius = 1.0;
    std::string angle_text = "90deg";
    int segments = 64;
    int k = 2;
    int k_max = 0;
    int grid = 0;
    double tol = 0.0;
    int period = 2;
    int period_max = 4;
    std::string curve_path;
    std::vector<std::string> curve_paths;
    std::string out_path;
    std::string seed_grid = "256x256";
    bool dots = false;

    auto* polygon = app.add_subcommand("polygon", "print the regular n-gon data");
    polygon->add_option("--n", n, "number of sides (>= 3)")->required();
    polygon->add_option("--radius", radius, "circumradius (default 1)");
    polygon->add_option("--out", out_path, "output file (default stdout)");

    auto* over = app.add_subcommand("over-under", "over-under curve through edge midpoints");
    over->add_option("--n", n)->required();
    over->add_option("--step", step, "connect midpoints of every step-th edge (default 1)");
    over->add_option("--radius", radius);
    over->add_option("--out", out_path);

    auto* half = app.add_subcommand("half", "the half-geodesics (n even; empty list for n odd)");
    half->add_option("--n", n)->required();
    half->add_option("--radius", radius);
    half->add_option("--out", out_path);

    auto* p4 = app.add_subcommand("period4", "period-4 curve on the doubled triangle");
    p4->add_option("--u", u, "launch offset on edge 0, in (0,1)")->required();
    p4->add_option("--radius", radius);
    p4->add_option("--out", out_path);

    auto* tr = app.add_subcommand("trace", "trace the billiard flow from edge-0 boundary data");
    tr->add_option("--n", n)->required();
    tr->add_option("--u", u, "launch offset on edge 0")->required();
    tr->add_option("--angle", angle_text, "launch angle from the edge direction; radians, or e.g. 30deg")
        ->required();
    tr->add_option("--segments", segments, "maximum number of segments");
    tr->add_option("--radius", radius);
    tr->add_option("--out", out_path);

    auto* verify = app.add_subcommand("verify", "check the 1/k minimization property of a curve");
    verify->add_option("--curve", curve_path, "curve document")->required();
    verify->add_option("--k", k, "subinterval count (>= 2)")->required();
    verify->add_option("--grid", grid, "verification grid (default 64*period*k)");
    verify->add_option("--tol", tol, "pass/fail tolerance (default 1e-7*L)");
    verify->add_option("--out", out_path);

    auto* mi = app.add_subcommand("minind", "smallest k for which the curve is a 1/k-geodesic");
    mi->add_option("--curve", curve_path)->required();
    mi->add_option("--k-max", k_max, "largest k to try (default 4*period)");
    mi->add_option("--grid", grid);
    mi->add_option("--tol", tol);
    mi->add_option("--out", out_path);

    auto* search = app.add_subcommand("search", "enumerate closed geodesics of one period");
    search->add_option("--n", n)->required();
    search->add_option("--period", period, "even period to search")->required();
    search->add_option("--seed-grid", seed_grid, "shooting grid, NUxNT (default 256x256)");
    search->add_option("--k-max", k_max, "per-curve index cap (default 4*period)");
    search->add_option("--radius", radius);
    search->add_option("--out", out_path);

    auto* ev = app.add_subcommand("evidence", "minimizing-index evidence over all periods <= max");
    ev->add_option("--n", n)->required();
    ev->add_option("--period-max", period_max, "largest even period to search")->required();
    ev->add_option("--k-max", k_max, "per-curve index cap (default 2*period_max+2)");
    ev->add_option("--seed-grid", seed_grid);
    ev->add_option("--radius", radius);
    ev->add_option("--out", out_path);

    auto* render = app.add_subcommand("render", "draw curves as SVG (top solid, bottom dashed)");
    render->add_option("--curve", curve_paths, "curve document(s); repeatable")->required();
    render->add_flag("--dots", dots, "mark junction points");
    render->add_option("--out", out_path, "output SVG file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (polygon->parsed()) {
            const dpoly::PolygonSpec spec = dpoly::build_polygon(n, radius);
            dpoly::json doc;
            doc["schema_version"] = dpoly::kSchemaVersion;
            doc["type"] = "polygon";
            doc["n"] = spec.n;
            doc["circumradius"] = spec.circumradius;
            doc["side_length"] = spec.side_length;
            doc["apothem"] = spec.apothem;
            dpoly::json verts = dpoly::json::array();
            for (const auto& v : spec.vertices) verts.push_back({v.x, v.y});
            doc["vertices"] = std::move(verts);
            emit(doc, out_path);
        } else if (over->parsed()) {
            const auto spec = dpoly::build_polygon(n, radius);
            const auto g = dpoly::over_under(spec, step);
            emit(dpoly::curve_to_json(g, "over-under", step), out_path);
        } else if (half->parsed()) {
            const auto spec = dpoly::build_polygon(n, radius);
            emit(dpoly::curves_to_json(dpoly::half_geodesics(spec), "half"), out_path);
        } else if (p4->parsed()) {
            const auto spec = dpoly::build_polygon(3, radius);
            const auto g = dpoly::period4_triangle(spec, u);
            emit(dpoly::curve_to_json(g, "period4"), out_path);
        } else if (tr->parsed()) {
            const auto spec = dpoly::build_polygon(n, radius);
            const double angle = parse_angle(angle_text);
            if (!(u > 0.0 && u < 1.0)) throw CLI::ValidationError("--u", "offset must be in (0,1)");
            const auto [start, dir] = dpoly::launch_from_edge(spec, 0, u, angle);
            dpoly::TraceOptions opts;
            opts.max_segments = segments;
            const dpoly::TraceOutcome out = dpoly::trace(spec, start, dir, opts);
            dpoly::json doc;
            doc["schema_version"] = dpoly::kSchemaVersion;
            doc["type"] = "trace";
            doc["n"] = n;
            doc["launch"] = {{"edge", 0}, {"u", u}, {"theta", angle}};
            dpoly::json segs = dpoly::json::array();
            for (const auto& s : out.path.segments)
                segs.push_back({{"face", dpoly::face_name(s.face)},
                                {"start", {s.start.x, s.start.y}},
                                {"end", {s.end.x, s.end.y}}});
            doc["segments"] = std::move(segs);
            doc["length"] = out.path.total_length;
            switch (out.kind) {
                case dpoly::TraceOutcome::Kind::Closed:
                    doc["outcome"] = "closed";
                    doc["period"] = out.path.segments.size();
                    break;
                case dpoly::TraceOutcome::Kind::VertexHit:
                    doc["outcome"] = "vertex-hit";
                    doc["vertex_position"] = {out.vertex_position.x, out.vertex_position.y};
                    doc["segment_index"] = out.vertex_segment;
                    break;
                case dpoly::TraceOutcome::Kind::Truncated:
                    doc["outcome"] = "truncated";
                    break;
            }
            emit(doc, out_path);
            if (out.kind == dpoly::TraceOutcome::Kind::VertexHit) {
                std::cerr << "trace hit a vertex: not a geodesic\n";
                return kExitDomain;
            }
        } else if (verify->parsed()) {
            if (k < 2) {
                std::cerr << "--k must be >= 2 (a 1/k-geodesic needs k >= 2)\n";
                return kExitUsage;
            }
            const auto g = load_single_curve(curve_path);
            const auto report = dpoly::check_one_over_k(g, k, grid, tol);
            emit(dpoly::report_to_json(report, g), out_path);
        } else if (mi->parsed()) {
            const auto g = load_single_curve(curve_path);
            const auto report = dpoly::minimizing_index(g, k_max, grid, tol);
            emit(dpoly::minind_to_json(report, g), out_path);
        } else if (search->parsed()) {
            if (period < 2 || period % 2 != 0) {
                std::cerr << "--period must be even and >= 2 (faces alternate)\n";
                return kExitUsage;
            }
            const auto spec = dpoly::build_polygon(n, radius);
            const auto [nu, nth] = parse_grid(seed_grid);
            dpoly::SearchOptions opts;
            opts.k_max = k_max;
            emit(dpoly::catalog_to_json(
                     dpoly::find_closed_geodesics(spec, period, nu, nth, opts)),
                 out_path);
        } else if (ev->parsed()) {
            const auto spec = dpoly::build_polygon(n, radius);
            const auto [nu, nth] = parse_grid(seed_grid);
            emit(dpoly::evidence_to_json(
                     dpoly::minind_evidence(spec, period_max, k_max, nu, nth)),
                 out_path);
        } else if (render->parsed()) {
            std::vector<dpoly::ClosedGeodesic> curves;
            for (const std::string& path : curve_paths) {
                auto loaded = dpoly::curves_from_json(dpoly::load_json(path));
                for (auto& g : loaded) curves.push_back(std::move(g));
            }
            dpoly::RenderOptions opts;
            opts.junction_dots = dots;
            const std::string svg = dpoly::render_svg(curves, opts);
            if (out_path.empty())
                std::cout << svg;
            else
                dpoly::write_text_file(out_path, svg);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitOk;
}

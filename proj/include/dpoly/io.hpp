#pragma once

// Versioned JSON documents for curves, verification reports, catalogs and
// evidence tables. Numbers are emitted with the serializer's exact
// shortest-round-trip encoding, so parsing a dumped document reproduces
// every coordinate bit for bit.

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "dpoly/analysis.hpp"
#include "dpoly/geodesic.hpp"
#include "dpoly/search.hpp"

namespace dpoly {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json curve_to_json(const ClosedGeodesic& g, const std::string& family = "",
                          std::optional<int> step = std::nullopt) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["type"] = "curve";
    doc["n"] = g.spec.n;
    doc["circumradius"] = g.spec.circumradius;
    if (!family.empty()) doc["family"] = family;
    if (step) doc["step"] = *step;
    doc["period"] = g.period();
    doc["length"] = g.length;
    doc["closed"] = true;
    json segs = json::array();
    for (const Segment& s : g.segments) {
        segs.push_back({{"face", face_name(s.face)},
                        {"start", {s.start.x, s.start.y}},
                        {"end", {s.end.x, s.end.y}}});
    }
    doc["segments"] = std::move(segs);
    return doc;
}

inline ClosedGeodesic curve_from_json(const json& doc) {
    if (!doc.contains("schema_version") || doc["schema_version"].get<int>() != kSchemaVersion)
        throw std::invalid_argument("unsupported curve document schema");
    if (!doc.value("closed", false)) throw std::invalid_argument("document curve is not closed");
    const PolygonSpec spec =
        build_polygon(doc.at("n").get<int>(), doc.at("circumradius").get<double>());
    std::vector<Segment> segments;
    for (const json& js : doc.at("segments")) {
        const std::string face = js.at("face").get<std::string>();
        if (face != "top" && face != "bottom")
            throw std::invalid_argument("segment face must be 'top' or 'bottom'");
        const auto& a = js.at("start");
        const auto& b = js.at("end");
        segments.emplace_back(face == "top" ? Face::Top : Face::Bottom,
                              Vec2{a.at(0).get<double>(), a.at(1).get<double>()},
                              Vec2{b.at(0).get<double>(), b.at(1).get<double>()});
    }
    ClosedGeodesic g = detail::assemble_closed(spec, std::move(segments));
    if (distance(g.segments.back().end, g.segments.front().start) > spec.default_tolerance())
        throw std::invalid_argument("segment chain does not close");
    validate(g);
    return g;
}

inline json curves_to_json(const std::vector<ClosedGeodesic>& curves,
                           const std::string& family = "") {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["type"] = "curve-list";
    json list = json::array();
    for (const ClosedGeodesic& g : curves) list.push_back(curve_to_json(g, family));
    doc["curves"] = std::move(list);
    return doc;
}

/// Accepts both a single-curve document and a curve-list document.
inline std::vector<ClosedGeodesic> curves_from_json(const json& doc) {
    std::vector<ClosedGeodesic> out;
    if (doc.contains("curves")) {
        for (const json& j : doc.at("curves")) out.push_back(curve_from_json(j));
    } else {
        out.push_back(curve_from_json(doc));
    }
    return out;
}

inline json curve_summary(const ClosedGeodesic& g) {
    return {{"n", g.spec.n},
            {"circumradius", g.spec.circumradius},
            {"period", g.period()},
            {"length", g.length}};
}

inline json report_to_json(const VerificationReport& r, const ClosedGeodesic& g) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["type"] = "verification";
    doc["curve"] = curve_summary(g);
    doc["k"] = r.k;
    doc["status"] = r.pass ? "pass" : "fail";
    doc["min_gap"] = r.min_gap;
    doc["grid"] = r.grid;
    doc["tolerance"] = r.tolerance;
    doc["borderline"] = r.borderline;
    json w;
    w["t"] = r.witness.t;
    w["geodesic_arc"] = r.witness.geodesic_arc;
    w["shortcut_length"] = r.witness.shortcut_length;
    if (r.witness.crossing_valid) {
        w["crossing_edge"] = r.witness.crossing.edge_index;
        w["crossing_point"] = {r.witness.crossing.crossing_point.x,
                               r.witness.crossing.crossing_point.y};
    } else {
        w["crossing_edge"] = nullptr;
    }
    doc["witness"] = std::move(w);
    return doc;
}

inline json minind_to_json(const MinindReport& r, const ClosedGeodesic& g) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["type"] = "minimizing-index";
    doc["curve"] = curve_summary(g);
    if (r.found)
        doc["k_star"] = r.k_star;
    else
        doc["k_star"] = nullptr;
    doc["k_max"] = r.k_max;
    doc["period"] = r.period;
    json gaps = json::array();
    for (const auto& [k, gap] : r.gaps) gaps.push_back({{"k", k}, {"min_gap", gap}});
    doc["gaps"] = std::move(gaps);
    return doc;
}

inline json minind_brief(const MinindReport& r) {
    json j;
    if (r.found)
        j["k_star"] = r.k_star;
    else
        j["k_star"] = nullptr;
    j["k_max"] = r.k_max;
    return j;
}

inline json catalog_to_json(const GeodesicCatalog& c) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["type"] = "catalog";
    doc["n"] = c.spec.n;
    doc["circumradius"] = c.spec.circumradius;
    doc["period"] = c.period;
    doc["seed_grid"] = {c.grid_u, c.grid_theta};
    doc["excluded_cells"] = c.excluded_cells;
    doc["raw_zero_count"] = c.raw_zero_count;
    doc["note"] = "grid-limited enumeration; completeness is empirical, not certified";
    json classes = json::array();
    for (const CatalogClass& cls : c.classes) {
        json jc;
        jc["kind"] = cls.is_family ? "family" : "isolated";
        json members = json::array();
        for (const CatalogCurve& m : cls.members) {
            json jm;
            jm["launch"] = {{"edge", m.state.start_edge}, {"u", m.state.u},
                            {"theta", m.state.theta}};
            jm["num_copies"] = m.num_copies;
            jm["length"] = m.curve.length;
            jm["minind"] = m.minind ? minind_brief(*m.minind) : json(nullptr);
            jm["curve"] = curve_to_json(m.curve, cls.is_family ? "family" : "isolated");
            members.push_back(std::move(jm));
        }
        jc["members"] = std::move(members);
        classes.push_back(std::move(jc));
    }
    doc["classes"] = std::move(classes);
    return doc;
}

inline json evidence_to_json(const EvidenceTable& t) {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["type"] = "evidence";
    doc["n"] = t.n;
    doc["period_max"] = t.period_max;
    doc["k_max"] = t.k_max;
    json rows = json::array();
    for (const EvidenceRow& r : t.rows) {
        rows.push_back({{"period", r.period},
                        {"classes", r.num_classes},
                        {"members", r.num_members},
                        {"curves", r.num_curves},
                        {"min_index", r.min_index > 0 ? json(r.min_index) : json(nullptr)},
                        {"lower_bound", r.lower_bound > 0 ? json(r.lower_bound) : json(nullptr)},
                        {"has_curves_without_index", r.any_without_index}});
    }
    doc["rows"] = std::move(rows);
    doc["table_minimum"] = t.table_minimum > 0 ? json(t.table_minimum) : json(nullptr);
    doc["lower_bound"] = t.lower_bound > 0 ? json(t.lower_bound) : json(nullptr);
    doc["statement"] = t.statement;
    return doc;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text;
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json load_json(const std::string& path) { return json::parse(read_text_file(path)); }

inline std::string dump_document(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace dpoly

#include "acleggett/layout_io.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "acleggett/format.hpp"

namespace acleggett {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

json parse_json(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
}

const json& field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return obj.at(key);
}

double number(const json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw ParseError(std::string(what) + " must be finite");
    return v;
}

Point2 point(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2) throw ParseError(std::string(what) + " must be an [x, y] pair");
    return {number(j[0], what), number(j[1], what)};
}

Path polyline(const json& j, const char* what) {
    if (!j.is_array() || j.size() < 2) throw ParseError(std::string(what) + " needs at least two vertices");
    Path p;
    for (const auto& v : j) p.vertices.push_back(point(v, what));
    return p;
}

Setting setting(const json& j, const char* what) {
    if (j.is_array()) {
        if (j.size() != 3) throw ParseError(std::string(what) + " vector must have 3 components");
        const Vec3 v{number(j[0], what), number(j[1], what), number(j[2], what)};
        try {
            return Setting::from_vector(v);
        } catch (const std::invalid_argument& e) {
            throw ParseError(std::string(what) + ": " + e.what());
        }
    }
    if (j.is_object()) return Setting(number(field(j, "theta"), what), number(field(j, "phi"), what));
    throw ParseError(std::string(what) + " must be [x, y, z] or {\"theta\", \"phi\"}");
}

}  // namespace

Layout parse_layout(const std::string& json_text) {
    const json doc = parse_json(json_text);
    Layout layout;
    const json& charge = field(doc, "charge");
    layout.charge.position = point(field(charge, "position"), "charge.position");
    layout.charge.k = number(field(charge, "k"), "charge.k");

    const json& points = field(doc, "points");
    layout.o12 = point(field(points, "O12"), "points.O12");
    layout.o34 = point(field(points, "O34"), "points.O34");
    layout.a = point(field(points, "A"), "points.A");
    layout.b = point(field(points, "B"), "points.B");

    const json& paths = field(doc, "paths");
    layout.paths[0] = polyline(field(paths, "l1"), "paths.l1");
    layout.paths[1] = polyline(field(paths, "l2"), "paths.l2");
    layout.paths[2] = polyline(field(paths, "l3"), "paths.l3");
    layout.paths[3] = polyline(field(paths, "l4"), "paths.l4");

    if (doc.contains("exclusion_radius")) {
        layout.options.exclusion_radius = number(doc.at("exclusion_radius"), "exclusion_radius");
        if (!(layout.options.exclusion_radius > 0.0)) throw ParseError("exclusion_radius must be positive");
    }
    try {
        validate_layout(layout);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    return layout;
}

Layout load_layout(const std::string& path) { return parse_layout(read_file(path)); }

ChshSettings parse_chsh_settings(const std::string& json_text) {
    const json doc = parse_json(json_text);
    return {setting(field(doc, "a"), "a"), setting(field(doc, "a_prime"), "a_prime"),
            setting(field(doc, "b"), "b"), setting(field(doc, "b_prime"), "b_prime")};
}

ChshSettings load_chsh_settings(const std::string& path) { return parse_chsh_settings(read_file(path)); }

void write_phase_csv(std::ostream& out, const Layout& layout, const LayoutPhases& phases) {
    out << "path_id,phase_numeric,phase_analytic,abs_diff,winding\n";
    for (std::size_t j = 0; j < 4; ++j) {
        const auto& pp = phases.per_path[j];
        out << 'l' << (j + 1) << ',' << format_number(pp.numeric) << ',' << format_number(pp.analytic)
            << ',' << format_number(std::abs(pp.numeric - pp.analytic)) << ',' << pp.turns << '\n';
    }
    const Path loop = combined_loop(layout);
    const double numeric = ac_phase_numeric(loop, layout.charge, layout.options);
    const double analytic = ac_phase_analytic(loop, layout.charge, layout.options);
    out << "loop," << format_number(numeric) << ',' << format_number(analytic) << ','
        << format_number(std::abs(numeric - analytic)) << ',' << phases.loop_winding << '\n';
}

}  // namespace acleggett

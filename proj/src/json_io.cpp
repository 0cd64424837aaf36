#include "tropirrat/json_io.hpp"

#include <fstream>
#include <sstream>

namespace tropirrat {

namespace {

[[noreturn]] void schema(const std::string& field, const std::string& what) {
    throw Error("Schema", "field '" + field + "': " + what);
}

const Json& member(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) schema(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) schema(where.empty() ? key : where + "." + key, "missing");
    return *it;
}

}  // namespace

Int int_from_json(const Json& j, const std::string& field) {
    if (j.is_number_integer()) {
        if (j.is_number_unsigned()) return Int(j.get<unsigned long>());
        return Int(j.get<long>());
    }
    if (j.is_string()) {
        Int x;
        if (x.set_str(j.get<std::string>(), 10) != 0) schema(field, "not a decimal integer");
        return x;
    }
    schema(field, "expected an integer");
}

IntVec ivec_from_json(const Json& j, const std::string& field) {
    if (!j.is_array()) schema(field, "expected an array of integers");
    IntVec v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(int_from_json(j[i], field + "[" + std::to_string(i) + "]"));
    return v;
}

Rat rat_from_json(const Json& j, const std::string& field) {
    if (j.is_number_integer()) return Rat(int_from_json(j, field));
    if (!j.is_string()) schema(field, "expected a rational \"p/q\"");
    Rat q;
    if (q.set_str(j.get<std::string>(), 10) != 0 || q.get_den() == 0) schema(field, "not a rational \"p/q\"");
    q.canonicalize();
    return q;
}

Json to_json(const Int& x) {
    if (x.fits_slong_p()) return Json(x.get_si());
    return Json(x.get_str());
}

Json to_json(const IntVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

Json rat_to_json(const Rat& q) { return Json(q.get_str()); }

Json polytope_to_json(const LatticePolytope& p) {
    Json j;
    j["ambient_dim"] = p.ambient_dim();
    Json vs = Json::array();
    for (const auto& v : p.vertices()) vs.push_back(to_json(v));
    j["vertices"] = std::move(vs);
    return j;
}

LatticePolytope polytope_from_json(const Json& j) {
    const Json& n = member(j, "ambient_dim", "");
    if (!n.is_number_integer() || n.get<long>() < 1) schema("ambient_dim", "expected a positive integer");
    const auto dim = n.get<std::size_t>();
    const Json& vs = member(j, "vertices", "");
    if (!vs.is_array() || vs.empty()) schema("vertices", "expected a non-empty array");
    std::vector<IntVec> pts;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        std::string f = "vertices[" + std::to_string(i) + "]";
        IntVec v = ivec_from_json(vs[i], f);
        if (v.size() != dim) schema(f, "length differs from ambient_dim");
        pts.push_back(std::move(v));
    }
    return LatticePolytope::from_points(pts);
}

Json lifting_to_json(const Lifting& l) {
    Json j;
    j["polytope"] = polytope_to_json(l.polytope);
    Json hs = Json::array();
    const auto& pts = l.polytope.lattice_points();
    for (std::size_t i = 0; i < pts.size(); ++i) hs.push_back(Json{{"point", to_json(pts[i])}, {"value", rat_to_json(l.heights[i])}});
    j["heights"] = std::move(hs);
    return j;
}

Lifting lifting_from_json(const Json& j, const LatticePolytope* p) {
    LatticePolytope own;
    if (!p) {
        own = polytope_from_json(member(j, "polytope", ""));
        p = &own;
    }
    const Json& hs = member(j, "heights", "");
    if (!hs.is_array() || hs.empty()) schema("heights", "expected a non-empty array");
    std::vector<std::pair<IntVec, Rat>> values;
    for (std::size_t i = 0; i < hs.size(); ++i) {
        std::string f = "heights[" + std::to_string(i) + "]";
        IntVec pt = ivec_from_json(member(hs[i], "point", f), f + ".point");
        if (pt.size() != p->ambient_dim()) schema(f + ".point", "length differs from ambient_dim");
        values.emplace_back(std::move(pt), rat_from_json(member(hs[i], "value", f), f + ".value"));
    }
    try {
        return Lifting::from_pairs(*p, values);
    } catch (const Error& e) {
        schema("heights", e.what());
    }
}

Json subdivision_to_json(const Subdivision& s) {
    Json j;
    j["parent"] = polytope_to_json(s.parent());
    j["provenance"] = s.provenance();
    Json vs = Json::array();
    for (const auto& v : s.vertices()) vs.push_back(to_json(v));
    j["vertices"] = std::move(vs);
    j["cells"] = s.cells();
    Json fs = Json::array();
    for (const auto& f : s.faces())
        fs.push_back(Json{{"id", f.id}, {"dim", f.dim}, {"vertices", f.vertices}, {"boundary", f.boundary}});
    j["faces"] = std::move(fs);
    j["face_count_by_dim"] = face_count_by_dim(s);
    return j;
}

Json map_to_json(const UnimodularMap& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.A.rows(); ++i) rows.push_back(to_json(m.A.row(i)));
    return Json{{"A", std::move(rows)}, {"b", to_json(m.b)}};
}

namespace {

Json witness_to_json(const WidthWitness& w) {
    return Json{{"functional", to_json(w.functional)},
                {"ambient_functional", to_json(w.ambient)},
                {"width", to_json(Int(w.high - w.low))}};
}

}  // namespace

Json status_to_json(const RationalityStatus& s) {
    Json j;
    j["status"] = status_name(s);
    if (auto* r = std::get_if<StablyRational>(&s)) {
        j["class"] = "stably-rational";
        if (auto* w = std::get_if<WidthOne>(&r->reason)) j["witness"] = witness_to_json(w->witness);
        if (auto* u = std::get_if<UnimodularTriangulation>(&r->reason)) j["simplices"] = u->simplices;
        if (auto* d = std::get_if<DbMatch>(&r->reason)) {
            j["key"] = d->key;
            j["map"] = map_to_json(d->map);
        }
    } else if (auto* k = std::get_if<KnownIrrational>(&s)) {
        j["class"] = "known-irrational";
        j["key"] = k->key;
        if (k->map) j["map"] = map_to_json(*k->map);
    } else {
        const auto& u = std::get<Unknown>(s);
        j["class"] = "unknown";
        j["tag"] = u.face_id;
        if (u.width_bound) j["width_upper"] = witness_to_json(*u.width_bound);
    }
    j["citation"] = status_citation(s);
    return j;
}

Json parse_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("Io", "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("Schema", path + ": " + e.what());
    }
}

}  // namespace tropirrat

#include "tropirrat/classify.hpp"
#include "tropirrat/json_io.hpp"

namespace tropirrat {

KnownPolytopeDB KnownPolytopeDB::builtin() {
    KnownPolytopeDB db;
    db.add({"hpt-quartic", hpt_polytope(), true,
            "Hassett-Pirutka-Tschinkel quartic: a very general member does not admit a decomposition of the "
            "diagonal (Hassett-Pirutka-Tschinkel; Schreieder, Prop. 3.1)"});
    db.add({"quartic-double-3", quartic_double_polytope(3), true,
            "very general quartic double threefolds are stably irrational (Voisin; Artin-Mumford)"});
    db.add({"quartic-double-4", quartic_double_polytope(4), true,
            "very general quartic double fourfolds are stably irrational (Hassett-Pirutka-Tschinkel)"});
    db.add({"bideg-22-p2p3", bidegree_box(2, 3, 2, 2), true,
            "very general bidegree (2,2) hypersurfaces in P^2 x P^3 are stably irrational "
            "(Hassett-Pirutka-Tschinkel)"});
    db.add({"bideg-22-p2p2", bidegree_box(2, 2, 2, 2), true,
            "very general bidegree (2,2) hypersurfaces in P^2 x P^2 are stably irrational (Hassett-Tschinkel)"});
    db.add({"bideg-22", bidegree_box(1, 1, 2, 2), true,
            "a smooth bidegree (2,2) curve in P^1 x P^1 has genus 1 and is not rational"});
    db.add({"p1p4-case-a",
            LatticePolytope::from_points({make_ivec({0, 3, 0, 0, 0}), make_ivec({1, 3, 0, 0, 0}),
                                          make_ivec({2, 2, 1, 0, 0}), make_ivec({1, 1, 2, 0, 0}),
                                          make_ivec({2, 1, 2, 0, 0}), make_ivec({0, 1, 0, 2, 0}),
                                          make_ivec({1, 1, 0, 2, 0}), make_ivec({1, 1, 0, 0, 2}),
                                          make_ivec({2, 1, 0, 0, 2})}),
            false,
            "after translating by (0,-1,0,0,0) the hypersurface is a quadric bundle over P^1, rational by "
            "Tsen's theorem"});
    db.add({"p1p4-case-b",
            LatticePolytope::from_points({make_ivec({2, 0, 0, 0, 0}), make_ivec({0, 2, 0, 0, 0}),
                                          make_ivec({1, 1, 2, 0, 0}), make_ivec({0, 1, 0, 2, 0}),
                                          make_ivec({1, 0, 0, 0, 2})}),
            false,
            "projection to the (z2,z3,z4)-coordinates is a conic bundle with the section z0 = z1 = 0"});
    return db;
}

KnownPolytopeDB KnownPolytopeDB::from_json_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw Error("Schema", std::string("known polytope file: ") + e.what());
    }
    if (!j.is_array()) throw Error("Schema", "field '<root>': expected an array of entries");
    KnownPolytopeDB db;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string f = "[" + std::to_string(i) + "]";
        const Json& e = j[i];
        if (!e.is_object()) throw Error("Schema", "field '" + f + "': expected an object");
        for (const char* k : {"key", "vertices", "status", "citation"})
            if (!e.contains(k)) throw Error("Schema", "field '" + f + "." + k + "': missing");
        if (!e["key"].is_string() || !e["citation"].is_string())
            throw Error("Schema", "field '" + f + "': key and citation must be strings");
        const std::string status = e["status"].is_string() ? e["status"].get<std::string>() : "";
        if (status != "irrational" && status != "rational")
            throw Error("Schema", "field '" + f + ".status': expected \"irrational\" or \"rational\"");
        const Json& vs = e["vertices"];
        if (!vs.is_array() || vs.empty()) throw Error("Schema", "field '" + f + ".vertices': expected a non-empty array");
        std::vector<IntVec> pts;
        for (std::size_t k = 0; k < vs.size(); ++k)
            pts.push_back(ivec_from_json(vs[k], f + ".vertices[" + std::to_string(k) + "]"));
        db.add({e["key"].get<std::string>(), LatticePolytope::from_points(pts), status == "irrational",
                e["citation"].get<std::string>()});
    }
    return db;
}

KnownPolytopeDB KnownPolytopeDB::load(const std::string& path) {
    return from_json_text(parse_json_file(path).dump());
}

void KnownPolytopeDB::add(KnownPolytopeEntry e) {
    for (auto& x : entries_)
        if (x.key == e.key) {
            x = std::move(e);
            return;
        }
    entries_.push_back(std::move(e));
}

void KnownPolytopeDB::merge(const KnownPolytopeDB& other) {
    for (const auto& e : other.entries()) add(e);
}

const KnownPolytopeEntry* KnownPolytopeDB::find(const std::string& key) const {
    for (const auto& e : entries_)
        if (e.key == key) return &e;
    return nullptr;
}

}  // namespace tropirrat

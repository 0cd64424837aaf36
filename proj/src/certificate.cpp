#include "tropirrat/certificate.hpp"

#include <set>
#include <sstream>

namespace tropirrat {

namespace {

[[noreturn]] void schema(const std::string& field, const std::string& what) {
    throw Error("Schema", "field '" + field + "': " + what);
}

SBTag tag_from_json(const Json& j, const std::string& field) {
    if (!j.is_string()) schema(field, "expected a class tag string");
    try {
        return SBTag::parse(j.get<std::string>());
    } catch (const Error& e) {
        schema(field, e.what());
    }
}

std::vector<std::pair<SBTag, SBTag>> pairs_from_json(const Json& j, const std::string& field) {
    if (!j.is_array()) schema(field, "expected an array of tag pairs");
    std::vector<std::pair<SBTag, SBTag>> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        const std::string f = field + "[" + std::to_string(i) + "]";
        if (!j[i].is_array() || j[i].size() != 2) schema(f, "expected a pair of tags");
        out.emplace_back(tag_from_json(j[i][0], f + "[0]"), tag_from_json(j[i][1], f + "[1]"));
    }
    return out;
}

Json sum_to_json(const FormalSum& s) {
    Json a = Json::array();
    for (const auto& [t, c] : s.terms()) a.push_back(Json{{"tag", t.str()}, {"coeff", to_json(c)}});
    return a;
}

std::vector<Int> parse_int_list(const std::string& text, const std::string& field) {
    std::vector<Int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        Int x;
        if (item.empty() || x.set_str(item, 10) != 0) schema(field, "'" + item + "' is not an integer");
        out.push_back(x);
    }
    if (out.empty()) schema(field, "empty list");
    return out;
}

}  // namespace

namespace {

// The certificate form: [{"kind": "equal" | "distinct" | "not_point", "tags": [..]}].
Assumptions assumptions_from_list(const Json& as) {
    Assumptions a;
    for (std::size_t i = 0; i < as.size(); ++i) {
        const std::string f = "assumptions[" + std::to_string(i) + "]";
        if (!as[i].is_object() || !as[i].contains("kind") || !as[i].contains("tags")) schema(f, "expected kind and tags");
        const std::string kind = as[i]["kind"].is_string() ? as[i]["kind"].get<std::string>() : "";
        const Json& tags = as[i]["tags"];
        if (!tags.is_array()) schema(f + ".tags", "expected an array");
        if (kind == "not_point" && tags.size() == 1) {
            a.not_point.push_back(tag_from_json(tags[0], f + ".tags[0]"));
        } else if ((kind == "equal" || kind == "distinct") && tags.size() == 2) {
            auto p = std::make_pair(tag_from_json(tags[0], f + ".tags[0]"), tag_from_json(tags[1], f + ".tags[1]"));
            (kind == "equal" ? a.equal : a.distinct).push_back(p);
        } else {
            schema(f, "bad assumption kind or arity");
        }
    }
    return a;
}

}  // namespace

Assumptions assumptions_from_json(const Json& j) {
    if (j.is_array()) return assumptions_from_list(j);
    if (!j.is_object()) schema("<root>", "expected an object with distinct / not_point / equal");
    Assumptions a;
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k == "distinct") {
            a.distinct = pairs_from_json(*it, k);
        } else if (k == "equal") {
            a.equal = pairs_from_json(*it, k);
        } else if (k == "not_point") {
            if (!it->is_array()) schema(k, "expected an array of tags");
            for (std::size_t i = 0; i < it->size(); ++i)
                a.not_point.push_back(tag_from_json((*it)[i], k + "[" + std::to_string(i) + "]"));
        } else {
            schema(k, "unknown key");
        }
    }
    return a;
}

Json assumptions_to_json(const Assumptions& a) {
    Json out = Json::array();
    for (const auto& [x, y] : a.equal) out.push_back(Json{{"kind", "equal"}, {"tags", {x.str(), y.str()}}});
    for (const auto& [x, y] : a.distinct) out.push_back(Json{{"kind", "distinct"}, {"tags", {x.str(), y.str()}}});
    for (const auto& x : a.not_point) out.push_back(Json{{"kind", "not_point"}, {"tags", {x.str()}}});
    return out;
}

Slicing slicing_from_strings(const std::string& functional, const std::string& levels) {
    Slicing s;
    s.functional = parse_int_list(functional, "slice-functional");
    s.levels = parse_int_list(levels, "levels");
    return s;
}

Certificate certify(const PipelineInput& in, const KnownPolytopeDB& db) {
    if (in.lifting.has_value() == in.slicing.has_value())
        throw Error("BadInput", "give exactly one of a lifting or a slicing");
    const LatticePolytope& P = in.polytope;
    Certificate c;
    if (in.lifting) {
        if (!(in.lifting->polytope == P)) throw Error("BadInput", "the lifting is over a different polytope");
        c.subdivision = lower_envelope_subdivision(*in.lifting);
    } else {
        c.subdivision = slice_subdivision(P, in.slicing->functional, in.slicing->levels);
    }
    const Subdivision& s = c.subdivision;
    c.full_dimensional = P.dim() == P.ambient_dim();

    const auto interior = interior_faces(s);
    std::set<std::size_t> interior_set(interior.begin(), interior.end());
    for (auto f : interior) c.statuses.emplace(f, classify_face(s.face_polytope(f), s.faces()[f].id, db, in.options));
    if (in.require_classified)
        for (const auto& [f, st] : c.statuses)
            if (std::holds_alternative<Unknown>(st))
                throw Error("UnclassifiedFace", "interior face " + s.faces()[f].id + " could not be classified");

    c.raw_sum = obstruction_sum(s, c.statuses);
    c.sum = apply_equalities(c.raw_sum, in.assumptions);
    c.verdict = verdict(c.raw_sum, P.dim(), in.assumptions);

    auto& tr = c.verdict.transcript;
    if (!c.full_dimensional)
        tr.insert(tr.begin(), "polytope is not full-dimensional (dim " + std::to_string(P.dim()) + " in R^" +
                                  std::to_string(P.ambient_dim()) + "): the target sign uses its own dimension");
    {
        std::set<SBTag> used;
        for (const auto& [t, k] : c.raw_sum.terms()) used.insert(t);
        std::vector<SBTag> mentioned;
        for (const auto& [x, y] : in.assumptions.equal) mentioned.insert(mentioned.end(), {x, y});
        for (const auto& [x, y] : in.assumptions.distinct) mentioned.insert(mentioned.end(), {x, y});
        mentioned.insert(mentioned.end(), in.assumptions.not_point.begin(), in.assumptions.not_point.end());
        std::set<SBTag> reported;
        for (const auto& t : mentioned)
            if (!used.count(t) && t.kind != SBTag::Kind::Point && reported.insert(t).second)
                tr.push_back("note: assumption tag " + t.str() + " does not occur in the sum");
    }

    const auto tags = face_tags(s, c.statuses);
    Json& j = c.json;
    j["polytope"] = polytope_to_json(P);
    j["full_dimensional"] = c.full_dimensional;
    j["target"] = Json{{"dim", P.dim()}, {"coeff", P.dim() % 2 == 0 ? 1 : -1}, {"tag", "point"}};
    if (in.lifting)
        j["source"] = Json{{"lifting", lifting_to_json(*in.lifting)}};
    else
        j["source"] = Json{{"slice", Json{{"functional", to_json(in.slicing->functional)},
                                          {"levels", to_json(IntVec(in.slicing->levels))}}}};
    j["options"] = Json{{"width_bound", in.options.width_bound}, {"parametric_rules", in.options.parametric_rules}};
    j["subdivision"] = subdivision_to_json(s);
    Json faces = Json::array();
    for (std::size_t f = 0; f < s.faces().size(); ++f) {
        const auto& sf = s.faces()[f];
        Json e{{"id", sf.id}, {"dim", sf.dim}, {"boundary", sf.boundary}};
        if (!interior_set.count(f)) {
            e["status"] = "boundary";
            e["citation"] = "contained in the boundary of the polytope; not counted";
        } else {
            const auto& st = c.statuses.at(f);
            e["status"] = status_name(st);
            e["citation"] = status_citation(st);
            if (sf.dim >= 2) e["tag"] = tags.at(f).str();
            e["classification"] = status_to_json(st);
        }
        faces.push_back(std::move(e));
    }
    j["faces"] = std::move(faces);
    j["formal_sum_raw"] = sum_to_json(c.raw_sum);
    j["formal_sum"] = sum_to_json(c.sum);
    j["assumptions"] = assumptions_to_json(in.assumptions);
    j["verdict"] = c.verdict.verdict == Verdict::Nontrivial ? "nontrivial" : "inconclusive";
    j["transcript"] = c.verdict.transcript;
    return c;
}

PipelineInput pipeline_input_from_certificate(const Json& cert) {
    if (!cert.is_object()) schema("<root>", "expected a certificate object");
    for (const char* k : {"polytope", "source", "options", "assumptions"})
        if (!cert.contains(k)) schema(k, "missing");
    PipelineInput in;
    in.polytope = polytope_from_json(cert["polytope"]);
    const Json& src = cert["source"];
    if (src.contains("lifting")) {
        in.lifting = lifting_from_json(src["lifting"], &in.polytope);
    } else if (src.contains("slice")) {
        const Json& sl = src["slice"];
        if (!sl.contains("functional") || !sl.contains("levels")) schema("source.slice", "needs functional and levels");
        in.slicing = Slicing{ivec_from_json(sl["functional"], "source.slice.functional"),
                             ivec_from_json(sl["levels"], "source.slice.levels")};
    } else {
        schema("source", "expected lifting or slice");
    }
    const Json& opt = cert["options"];
    if (!opt.contains("width_bound") || !opt["width_bound"].is_number_integer())
        schema("options.width_bound", "expected an integer");
    in.options.width_bound = opt["width_bound"].get<long>();
    in.options.parametric_rules = opt.value("parametric_rules", true);
    in.assumptions = assumptions_from_json(cert["assumptions"]);
    return in;
}

VerifyReport verify_certificate(const Json& cert, const KnownPolytopeDB& db) {
    VerifyReport r;
    try {
        auto in = pipeline_input_from_certificate(cert);
        auto again = certify(in, db);
        const std::string a = cert.dump(), b = again.json.dump();
        r.ok = a == b;
        if (r.ok) {
            r.detail = "re-running the pipeline reproduces the certificate";
        } else {
            std::size_t k = 0;
            while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
            r.detail = "certificate differs from the recomputation at byte " + std::to_string(k);
        }
    } catch (const Error& e) {
        r.ok = false;
        r.detail = e.what();
    }
    return r;
}

}  // namespace tropirrat

#include "doctest.h"

#include "tropirrat/certificate.hpp"

using namespace tropirrat;

namespace {

const KnownPolytopeDB& db() {
    static const KnownPolytopeDB d = KnownPolytopeDB::builtin();
    return d;
}

void expect_schema(const std::function<void()>& f) {
    try {
        f();
        FAIL("expected a schema error");
    } catch (const Error& e) {
        CHECK(e.code() == "Schema");
    }
}

PipelineInput quartic_surface_input() {
    PipelineInput in;
    in.polytope = homogeneous_simplex(3, 4);
    in.slicing = Slicing{make_ivec({1, 1, 0, 0}), {Int(1), Int(2), Int(3)}};
    return in;
}

}  // namespace

TEST_CASE("integer and rational encodings") {
    CHECK(int_from_json(Json(42), "x") == 42);
    CHECK(int_from_json(Json(-7), "x") == -7);
    CHECK(int_from_json(Json("123456789012345678901234567890"), "x") == Int("123456789012345678901234567890"));
    Int big("-98765432109876543210");
    CHECK(to_json(big) == Json("-98765432109876543210"));
    CHECK(int_from_json(to_json(big), "x") == big);
    CHECK(to_json(Int(5)) == Json(5));
    expect_schema([] { int_from_json(Json("12a"), "x"); });
    expect_schema([] { int_from_json(Json(1.5), "x"); });

    CHECK(rat_from_json(Json("6/4"), "q") == Rat(3, 2));
    CHECK(rat_from_json(Json(3), "q") == 3);
    CHECK(rat_to_json(Rat(-1, 3)) == Json("-1/3"));
    expect_schema([] { rat_from_json(Json("1/0"), "q"); });
    expect_schema([] { rat_from_json(Json("x"), "q"); });
    expect_schema([] { ivec_from_json(Json(3), "v"); });
}

TEST_CASE("polytope and lifting round trips") {
    auto p = hpt_polytope();
    CHECK(polytope_from_json(polytope_to_json(p)) == p);

    auto box = dilated_simplex(2, 2);
    auto l = Lifting::from_function(box, [](const IntVec& x) { return Rat(x[0] * x[0] + x[1], 3); });
    auto back = lifting_from_json(lifting_to_json(l));
    CHECK(back.polytope == box);
    CHECK(back.heights == l.heights);

    expect_schema([] { polytope_from_json(Json::parse(R"({"vertices":[[0]]})")); });
    expect_schema([] { polytope_from_json(Json::parse(R"({"ambient_dim":2,"vertices":[[0,0],[1]]})")); });
    expect_schema([] { polytope_from_json(Json::parse(R"({"ambient_dim":1,"vertices":[]})")); });
    expect_schema([&] { lifting_from_json(Json::parse(R"({"heights":[]})"), &box); });
    expect_schema([&] { lifting_from_json(Json::parse(R"({"heights":[{"point":[0,0],"value":"0"}]})"), &box); });
    expect_schema([&] { lifting_from_json(Json::parse(R"({"heights":[{"point":[0],"value":"0"}]})"), &box); });
}

TEST_CASE("subdivision export") {
    auto s = slice_subdivision(homogeneous_simplex(2, 4), make_ivec({1, 0, 0}), {Int(1)});
    auto j = subdivision_to_json(s);
    CHECK(j["cells"].size() == 2);
    CHECK(j["faces"].size() == s.faces().size());
    CHECK(j["vertices"].size() == s.vertices().size());
    std::size_t boundary = 0;
    for (const auto& f : j["faces"]) boundary += f["boundary"].get<bool>() ? 1 : 0;
    CHECK(boundary == s.faces().size() - interior_faces(s).size());
}

TEST_CASE("assumption files") {
    auto a = assumptions_from_json(Json::parse(
        R"({"distinct":[["unknown:f1","known:k"]],"not_point":["unknown:f2"],"equal":[["unknown:f1","unknown:f2"]]})"));
    REQUIRE(a.distinct.size() == 1);
    CHECK(a.distinct[0].second == SBTag::known("k"));
    REQUIRE(a.not_point.size() == 1);
    REQUIRE(a.equal.size() == 1);
    auto again = assumptions_from_json(Json::parse(R"({})"));
    CHECK(again.distinct.empty());

    expect_schema([] { assumptions_from_json(Json::parse(R"({"similar":[]})")); });
    expect_schema([] { assumptions_from_json(Json::parse(R"({"distinct":[["unknown:a"]]})")); });
    expect_schema([] { assumptions_from_json(Json::parse(R"({"not_point":["bogus"]})")); });
    expect_schema([] { assumptions_from_json(Json::parse(R"(3)")); });
    expect_schema([] { assumptions_from_json(Json::parse(R"([{"kind":"equal","tags":["point"]}])")); });
    CHECK(assumptions_from_json(assumptions_to_json(a)).equal == a.equal);
}

TEST_CASE("slicing flags") {
    auto s = slicing_from_strings("1,0,-1", "0, 2");
    CHECK(s.functional == make_ivec({1, 0, -1}));
    CHECK(s.levels == std::vector<Int>{Int(0), Int(2)});
    CHECK_THROWS_AS(slicing_from_strings("1,x", "0"), Error);
    CHECK_THROWS_AS(slicing_from_strings("1,0", ""), Error);
}

TEST_CASE("certificate for the quartic surface") {
    auto c = certify(quartic_surface_input(), db());
    CHECK(c.verdict.verdict == Verdict::Nontrivial);
    CHECK(c.full_dimensional == false);
    CHECK(c.json["verdict"] == "nontrivial");
    CHECK(c.json["target"]["coeff"] == -1);
    REQUIRE(c.json["formal_sum"].is_array());
    CHECK(c.json["formal_sum"].size() == c.sum.terms().size());
    for (const auto& t : c.json["formal_sum"])
        CHECK(c.sum.coeff(SBTag::parse(t["tag"].get<std::string>())) == int_from_json(t["coeff"], "coeff"));
    bool bideg = false;
    for (const auto& f : c.json["faces"])
        if (f.contains("tag") && f["tag"] == "known:bideg-22") bideg = true;
    CHECK(bideg);
    // the input lives in a hyperplane of R^4; the transcript says so
    CHECK(c.json["transcript"].dump().find("full") != std::string::npos);

    auto v = verify_certificate(c.json, db());
    CHECK(v.ok);

    auto tampered = c.json;
    tampered["formal_sum"] = Json::array();
    CHECK_FALSE(verify_certificate(tampered, db()).ok);

    auto relifted = pipeline_input_from_certificate(c.json);
    CHECK(relifted.polytope == c.subdivision.parent());
    REQUIRE(relifted.slicing);
    CHECK(relifted.slicing->levels.size() == 3);
}

TEST_CASE("certificate from a lifting with equality assumptions") {
    PipelineInput in;
    in.polytope = homogeneous_simplex(6, 4);
    in.lifting = slicing_lifting(in.polytope, make_ivec({1, 0, 0, 0, 0, 0, -1}), {Int(0)});
    auto first = certify(in, db());
    std::vector<SBTag> unknowns;
    for (const auto& [t, c] : first.raw_sum.terms())
        if (t.kind == SBTag::Kind::Unknown) unknowns.push_back(t);
    REQUIRE(unknowns.size() == 2);
    CHECK(first.verdict.verdict == Verdict::Inconclusive);

    in.assumptions.equal.emplace_back(unknowns[0], unknowns[1]);
    auto second = certify(in, db());
    CHECK(second.verdict.verdict == Verdict::Nontrivial);
    CHECK(second.sum.coeff(unknowns[0]) == 2);
    CHECK(verify_certificate(second.json, db()).ok);
    auto back = assumptions_from_json(second.json["assumptions"]);
    REQUIRE(back.equal.size() == 1);

    in.require_classified = true;
    try {
        certify(in, db());
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == "UnclassifiedFace");
    }
}

TEST_CASE("an all-rational subdivision is inconclusive") {
    PipelineInput in;
    // a conic cut into a width-one trapezoid and a unit triangle
    in.polytope = dilated_simplex(2, 2);
    in.slicing = Slicing{make_ivec({1, 0}), {Int(1)}};
    auto c = certify(in, db());
    CHECK(c.verdict.verdict == Verdict::Inconclusive);
    CHECK(c.json["verdict"] == "inconclusive");
    CHECK(c.full_dimensional);
}

#include "doctest.h"
#include "oracles.hpp"

#include "tropirrat/classify.hpp"
#include "tropirrat/linalg.hpp"

#include <set>

using namespace tropirrat;

namespace {

// Product of random elementary row operations and a random translation.
UnimodularMap random_unimodular(std::mt19937& rng, std::size_t n) {
    auto A = IntMatrix::identity(n);
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<long> c(-2, 2), t(-5, 5);
    for (int k = 0; k < 6; ++k) {
        std::size_t i = idx(rng), j = idx(rng);
        if (i == j) {
            if (c(rng) > 0)
                for (std::size_t l = 0; l < n; ++l) A(i, l) = -A(i, l);
            continue;
        }
        const long f = c(rng);
        for (std::size_t l = 0; l < n; ++l) A(i, l) += f * A(j, l);
    }
    IntVec b(n);
    for (auto& x : b) x = t(rng);
    return {A, b};
}

LatticePolytope transform(const LatticePolytope& p, const UnimodularMap& m) {
    std::vector<IntVec> v;
    for (const auto& x : p.vertices()) v.push_back(m.apply(x));
    return LatticePolytope::from_points(v);
}

std::vector<Int> values_on(const IntVec& l, const std::vector<IntVec>& coords) {
    std::vector<Int> out;
    for (const auto& c : coords) out.push_back(oracle::dot(l, c));
    return out;
}

Int sup_norm(const IntVec& v) {
    Int m = 0;
    for (const auto& x : v) m = std::max(m, abs_int(x));
    return m;
}

// The slab {d <= u_0 + ... + u_n <= d + 1} in the positive orthant.
LatticePolytope slab(std::size_t n, long d) {
    std::vector<IntVec> pts;
    for (long s : {d, d + 1})
        for (std::size_t i = 0; i <= n; ++i) {
            IntVec v(n + 1, Int(0));
            v[i] = s;
            pts.push_back(v);
        }
    return LatticePolytope::from_points(pts);
}

}  // namespace

TEST_CASE("width one examples") {
    auto tau = slab(3, 4);
    auto w = width_le_one(tau);
    REQUIRE(w);
    CHECK(w->high - w->low == 1);
    auto vals = values_on(w->ambient, tau.vertices());
    auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
    CHECK(*hi - *lo == 1);

    auto q12 = LatticePolytope::from_points({make_ivec({0, 0}), make_ivec({2, 2})});
    CHECK_FALSE(width_le_one(q12));

    std::vector<IntVec> cube;
    for (unsigned m = 0; m < 8; ++m) cube.push_back(make_ivec({static_cast<long>(m & 1), static_cast<long>((m >> 1) & 1), static_cast<long>((m >> 2) & 1)}));
    auto wc = width_le_one(LatticePolytope::from_points(cube));
    REQUIRE(wc);
    CHECK(sup_norm(wc->functional) == 1);

    CHECK_THROWS_AS(width_le_one(LatticePolytope::from_points({make_ivec({1, 1})})), Error);
}

TEST_CASE("bounded width search") {
    auto w = width_upper(dilated_simplex(2, 2), 3);
    CHECK(w.high - w.low == 2);
    CHECK(w.functional == make_ivec({1, 0}));
    for (long b : {1, 2, 5}) {
        auto s = width_upper(LatticePolytope::from_points({make_ivec({0, 0}), make_ivec({5, 10})}), b);
        CHECK(s.high - s.low == 5);
    }
    CHECK(width_upper(hpt_polytope(), 2).high - width_upper(hpt_polytope(), 2).low >= 2);
}

TEST_CASE("width witnesses are sound and the two searches agree") {
    std::mt19937 rng(31);
    for (int k = 0; k < 80; ++k) {
        const std::size_t d = 2 + k % 3;
        auto p = LatticePolytope::from_points(oracle::random_points(rng, d, static_cast<std::size_t>(k % 5), 2));
        auto w1 = width_le_one(p);
        auto wu = width_upper(p, 3);
        auto vals = values_on(wu.functional, p.vertex_coords());
        CHECK(*std::min_element(vals.begin(), vals.end()) == wu.low);
        CHECK(*std::max_element(vals.begin(), vals.end()) == wu.high);
        if (w1) {
            auto v1 = values_on(w1->functional, p.vertex_coords());
            for (const auto& x : v1) CHECK((x == w1->low || x == w1->high));
            CHECK(w1->high - w1->low == 1);
            CHECK(width_upper(p, static_cast<long>(sup_norm(w1->functional).get_si())).high -
                      width_upper(p, static_cast<long>(sup_norm(w1->functional).get_si())).low ==
                  1);
        }
        if (wu.high - wu.low == 1) CHECK(w1);
    }
}

TEST_CASE("unimodular equivalence examples") {
    auto p = LatticePolytope::from_points({make_ivec({0, 0}), make_ivec({3, 0}), make_ivec({0, 1}), make_ivec({1, 2})});
    std::vector<IntVec> shifted;
    for (const auto& v : p.vertices()) shifted.push_back(add(v, make_ivec({4, -7})));
    auto m = unimodular_equivalent(p, LatticePolytope::from_points(shifted));
    REQUIRE(m);
    CHECK(m->A == IntMatrix::identity(2));
    CHECK(m->b == make_ivec({4, -7}));

    CHECK_FALSE(unimodular_equivalent(dilated_simplex(2, 1), dilated_simplex(2, 2)));

    // the middle slice u_0 = u_6 of the homogeneous quartic fivefold simplex
    auto q = homogeneous_simplex(6, 4);
    std::vector<IntVec> mid;
    for (const auto& x : q.lattice_points())
        if (x[0] == x[6]) mid.push_back(x);
    CHECK(unimodular_equivalent(LatticePolytope::from_points(mid), quartic_double_polytope(4)));
}

TEST_CASE("unimodular equivalence is symmetric and sound") {
    std::mt19937 rng(32);
    for (int k = 0; k < 30; ++k) {
        const std::size_t d = 2 + k % 2;
        auto p = LatticePolytope::from_points(oracle::random_points(rng, d, 3, 2));
        auto q = transform(p, random_unimodular(rng, d));
        auto other = LatticePolytope::from_points(oracle::random_points(rng, d, 3, 2));
        auto pq = unimodular_equivalent(p, q);
        auto qp = unimodular_equivalent(q, p);
        REQUIRE(pq);
        CHECK(qp);
        CHECK(abs_int(determinant(pq->A)) == 1);
        std::set<IntVec> image;
        for (const auto& x : p.lattice_points()) image.insert(pq->apply(x));
        CHECK(image == std::set<IntVec>(q.lattice_points().begin(), q.lattice_points().end()));
        CHECK(unimodular_equivalent(p, other).has_value() == unimodular_equivalent(other, p).has_value());
    }
}

TEST_CASE("alcove triangulations") {
    for (long d = 1; d <= 4; ++d) {
        auto a = alcove_triangulation(1, d);
        CHECK(a.simplices.size() == static_cast<std::size_t>(d));
        CHECK(a.verified);
    }
    CHECK(alcove_triangulation(2, 2).simplices.size() == 4);
    CHECK(alcove_triangulation(3, 2).simplices.size() == 8);
    for (auto [n, d] : std::vector<std::pair<std::size_t, long>>{{2, 3}, {3, 3}, {4, 2}, {3, 4}}) {
        auto a = alcove_triangulation(n, d);
        CHECK(a.verified);
        long expect = 1;
        for (std::size_t i = 0; i < n; ++i) expect *= d;
        REQUIRE(a.simplices.size() == static_cast<std::size_t>(expect));
        for (const auto& s : a.simplices) {
            IntMatrix M(n, n);
            for (std::size_t i = 1; i <= n; ++i)
                for (std::size_t j = 0; j < n; ++j) M(i - 1, j) = s[i][j] - s[0][j];
            CHECK(abs_int(determinant(M)) == 1);
        }
    }
}

TEST_CASE("unimodular triangulation of a transported simplex") {
    std::mt19937 rng(33);
    auto p = transform(dilated_simplex(3, 3), random_unimodular(rng, 3));
    auto t = unimodular_triangulation(p);
    REQUIRE(t);
    CHECK(t->cells().size() == 27);
    CHECK_FALSE(unimodular_triangulation(hpt_polytope()));
    auto shape = dilated_simplex_shape(p);
    REQUIRE(shape);
    CHECK(shape->first == 3);
    CHECK(shape->second == 3);
}

TEST_CASE("even degree bound") {
    CHECK(schreieder_even_bound(4) == 5);
    CHECK(schreieder_even_bound(6) == 20);
    CHECK(schreieder_even_bound(16) == 16403);
    CHECK_THROWS_AS(schreieder_even_bound(5), Error);
    CHECK_THROWS_AS(schreieder_even_bound(2), Error);
}

TEST_CASE("classification examples") {
    auto db = KnownPolytopeDB::builtin();
    auto h = classify_face(hpt_polytope(), "f0", db);
    REQUIRE(is_known_irrational(h));
    CHECK(std::get<KnownIrrational>(h).key == "hpt-quartic");
    CHECK_FALSE(std::get<KnownIrrational>(h).citation.empty());

    auto s = classify_face(slab(3, 4), "f1", db);
    REQUIRE(is_stably_rational(s));
    CHECK(status_name(s) == "width-one");

    auto a = classify_face(db.find("p1p4-case-a")->polytope, "f2", db);
    REQUIRE(is_stably_rational(a));
    CHECK(status_name(a) == "db-match");
    CHECK(std::get<DbMatch>(std::get<StablyRational>(a).reason).key == "p1p4-case-a");

    auto seg = classify_face(LatticePolytope::from_points({make_ivec({0, 0}), make_ivec({4, 4})}), "f3", db);
    CHECK(status_name(seg) == "low-dim");

    auto qd = classify_face(quartic_double_polytope(4), "f4", db);
    REQUIRE(is_known_irrational(qd));
    CHECK(std::get<KnownIrrational>(qd).key == "quartic-double-4");
}

TEST_CASE("parametric hypersurface rule") {
    auto db = KnownPolytopeDB::builtin();
    for (auto [n, d] : std::vector<std::pair<std::size_t, long>>{{3, 4}, {4, 4}, {5, 4}, {5, 5}, {5, 6}}) {
        CHECK(hypersurface_irrationality_citation(n, d));
        auto st = classify_face(dilated_simplex(n + 1, d), "f", db);
        REQUIRE(is_known_irrational(st));
        CHECK(std::get<KnownIrrational>(st).key ==
              "hypersurface-deg" + std::to_string(d) + "-dim" + std::to_string(n));
    }
    // cubic surfaces are rational, and no rule may claim otherwise
    CHECK_FALSE(hypersurface_irrationality_citation(2, 3));
    CHECK_FALSE(hypersurface_irrationality_citation(3, 3));
    CHECK_FALSE(hypersurface_irrationality_citation(6, 4));
    CHECK(hypersurface_irrationality_citation(5, 4));
    ClassifyOptions off;
    off.parametric_rules = false;
    CHECK(status_name(classify_face(dilated_simplex(4, 4), "f", db, off)) == "unknown");
    auto unk = classify_face(dilated_simplex(3, 3), "f9", db);
    REQUIRE(std::holds_alternative<Unknown>(unk));
    CHECK(std::get<Unknown>(unk).face_id == "f9");
    REQUIRE(std::get<Unknown>(unk).width_bound);
    CHECK(std::get<Unknown>(unk).width_bound->high - std::get<Unknown>(unk).width_bound->low == 3);
}

TEST_CASE("classification is invariant under unimodular maps") {
    auto db = KnownPolytopeDB::builtin();
    std::mt19937 rng(34);
    std::vector<LatticePolytope> faces{hpt_polytope(), quartic_double_polytope(4), slab(3, 4), dilated_simplex(4, 4),
                                       dilated_simplex(3, 3), bidegree_box(1, 1, 2, 2)};
    for (const auto& f : faces) {
        auto base = classify_face(f, "f", db);
        for (int k = 0; k < 3; ++k) {
            auto g = transform(f, random_unimodular(rng, f.ambient_dim()));
            auto st = classify_face(g, "f", db);
            CHECK(status_name(st) == status_name(base));
            if (is_known_irrational(base)) {
                REQUIRE(is_known_irrational(st));
                CHECK(std::get<KnownIrrational>(st).key == std::get<KnownIrrational>(base).key);
            }
        }
    }
}

TEST_CASE("registry") {
    auto db = KnownPolytopeDB::builtin();
    for (const char* key : {"hpt-quartic", "quartic-double-3", "quartic-double-4", "bideg-22-p2p3", "bideg-22-p2p2",
                            "p1p4-case-a", "p1p4-case-b"}) {
        const auto* e = db.find(key);
        REQUIRE(e);
        CHECK_FALSE(e->citation.empty());
    }
    CHECK_FALSE(db.find("p1p4-case-a")->irrational);
    CHECK(db.find("hpt-quartic")->irrational);
    CHECK(db.find("nope") == nullptr);

    auto extra = KnownPolytopeDB::from_json_text(
        R"([{"key":"toy","vertices":[[0,0],[3,0],[0,3]],"status":"irrational","citation":"test entry"}])");
    REQUIRE(extra.entries().size() == 1);
    db.merge(extra);
    CHECK(db.find("toy"));
    auto st = classify_face(dilated_simplex(2, 3), "f", db);
    REQUIRE(is_known_irrational(st));
    CHECK(std::get<KnownIrrational>(st).key == "toy");

    for (const char* bad : {"{", R"({"key":"x"})", R"([{"key":"x","vertices":[[0]],"status":"maybe","citation":""}])",
                            R"([{"vertices":[[0],[1]],"status":"rational","citation":""}])"}) {
        try {
            KnownPolytopeDB::from_json_text(bad);
            FAIL("expected an error for " << bad);
        } catch (const Error& e) {
            CHECK(e.code() == "Schema");
        }
    }
}

TEST_CASE("registry file matches the built-in entries") {
    auto file = KnownPolytopeDB::load(std::string(TROPIRRAT_DATA_DIR) + "/known_polytopes.json");
    auto db = KnownPolytopeDB::builtin();
    REQUIRE(file.entries().size() == db.entries().size());
    for (std::size_t i = 0; i < db.entries().size(); ++i) {
        CHECK(file.entries()[i].key == db.entries()[i].key);
        CHECK(file.entries()[i].polytope == db.entries()[i].polytope);
        CHECK(file.entries()[i].irrational == db.entries()[i].irrational);
        CHECK(file.entries()[i].citation == db.entries()[i].citation);
    }
}

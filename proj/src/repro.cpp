#include "tropirrat/repro.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <sstream>
#include <thread>

namespace tropirrat {

namespace {

using Checks = std::vector<ReproCheck>;

void expect(Checks& out, std::string what, std::string expected, std::string actual, std::string source) {
    bool pass = expected == actual;
    out.push_back({std::move(what), std::move(expected), std::move(actual), pass, std::move(source)});
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

template <class T>
std::string join(const std::vector<T>& xs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) os << " ";
        os << xs[i];
    }
    return os.str();
}

std::string verdict_name(const Certificate& c) {
    return c.verdict.verdict == Verdict::Nontrivial ? "nontrivial" : "inconclusive";
}

std::vector<std::size_t> interior_dims(const Subdivision& s) {
    std::vector<std::size_t> dims;
    for (auto f : interior_faces(s)) dims.push_back(s.faces()[f].dim);
    std::sort(dims.rbegin(), dims.rend());
    return dims;
}

// Values of a functional on the vertices of a face.
std::pair<Int, Int> functional_range(const Subdivision& s, std::size_t f, const IntVec& l) {
    auto vs = s.face_vertices(f);
    Int lo = dot(l, vs[0]), hi = lo;
    for (const auto& v : vs) {
        Int x = dot(l, v);
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return {lo, hi};
}

// Quartic fivefold: slice the degree 4 simplex in 7 homogeneous coordinates along u0 = u6.
void quartic_fivefold(Checks& out, const ClassifyOptions& opt) {
    const char* src = "quartic fivefold slicing along u0 = u6 and its symmetry argument";
    auto db = KnownPolytopeDB::builtin();
    IntVec l(7, Int(0));
    l[0] = 1;
    l[6] = -1;
    PipelineInput in;
    in.polytope = homogeneous_simplex(6, 4);
    in.slicing = Slicing{l, {Int(0)}};
    in.options = opt;
    auto first = certify(in, db);
    const auto& s = first.subdivision;
    expect(out, "interior face dims", "6 6 5", join(interior_dims(s)), src);

    std::vector<std::string> unknowns;
    std::optional<std::size_t> equator;
    for (auto f : interior_faces(s)) {
        if (s.faces()[f].dim == 5) equator = f;
        if (std::holds_alternative<Unknown>(first.statuses.at(f))) unknowns.push_back(s.faces()[f].id);
    }
    expect(out, "middle face equivalent to the quartic double fourfold polytope", "yes",
           yes_no(equator && unimodular_equivalent(s.face_polytope(*equator), quartic_double_polytope(4))), src);
    expect(out, "middle face status", "known-irrational quartic-double-4",
           equator ? status_name(first.statuses.at(*equator)) + " " +
                         (is_known_irrational(first.statuses.at(*equator))
                              ? std::get<KnownIrrational>(first.statuses.at(*equator)).key
                              : std::string("-"))
                   : "missing",
           src);
    expect(out, "unclassified 6-dimensional faces", "2", std::to_string(unknowns.size()), src);
    if (unknowns.size() != 2) return;

    // the two halves are exchanged by swapping u0 and u6
    in.assumptions.equal.emplace_back(SBTag::unknown(unknowns[0]), SBTag::unknown(unknowns[1]));
    auto c = certify(in, db);
    expect(out, "formal sum", "-[known:quartic-double-4] + 2[unknown:" + unknowns[0] + "]", c.sum.str(), src);
    expect(out, "verdict", "nontrivial", verdict_name(c), src);
    expect(out, "certificate re-check", "yes", yes_no(verify_certificate(c.json, db).ok), "re-running the pipeline");
}

// Quartic surface sliced by u0 + u1 = 1, 2, 3.
void quartic2_chain(Checks& out, const ClassifyOptions& opt) {
    const char* src = "quartic slicing along u0 + u1 = 1, 2, 3 with the bidegree (2,2) middle slice";
    auto db = KnownPolytopeDB::builtin();
    PipelineInput in;
    in.polytope = homogeneous_simplex(3, 4);
    in.slicing = Slicing{make_ivec({1, 1, 0, 0}), {Int(1), Int(2), Int(3)}};
    in.options = opt;
    auto c = certify(in, db);
    const auto& s = c.subdivision;
    expect(out, "interior faces", "7", std::to_string(interior_faces(s).size()), src);
    std::size_t width_one = 0, others = 0;
    std::string middle = "missing";
    for (auto f : interior_faces(s)) {
        auto [lo, hi] = functional_range(s, f, make_ivec({1, 1, 0, 0}));
        const auto& st = c.statuses.at(f);
        if (lo == 2 && hi == 2) {
            middle = status_name(st) + (is_known_irrational(st) ? " " + std::get<KnownIrrational>(st).key : "");
            continue;
        }
        ++others;
        if (auto* r = std::get_if<StablyRational>(&st); r && std::holds_alternative<WidthOne>(r->reason)) ++width_one;
    }
    expect(out, "other faces with width-one certificates", std::to_string(others), std::to_string(width_one), src);
    expect(out, "middle slice status", "known-irrational bideg-22", middle, src);
    expect(out, "single irrational face criterion", "yes", yes_no(check_irratpol(s, c.statuses)), src);
    expect(out, "verdict", "nontrivial", verdict_name(c), src);
}

// Divisors of bidegree (2,3) in P^1 x P^4, degenerated towards the HPT quartic.
void p1p4(Checks& out, const ClassifyOptions& opt) {
    const char* table = "published face-count table of the (2,3) divisor subdivision";
    const char* cls = "even-dimensional faces: width one or one of the two listed rational polytopes";
    auto db = KnownPolytopeDB::builtin();
    PipelineInput in;
    in.polytope = bidegree_box(1, 4, 2, 3);
    in.lifting = distance_lifting(in.polytope, hpt_polytope(), DistanceMode::NearestLatticePoint);
    in.options = opt;
    auto c = certify(in, db);
    const auto& s = c.subdivision;
    expect(out, "faces by dimension", "43 192 353 323 146 26", join(face_count_by_dim(s)), table);

    const auto& a = db.find("p1p4-case-a")->polytope;
    const auto& b = db.find("p1p4-case-b")->polytope;
    std::size_t even = 0, good = 0;
    for (auto f : interior_faces(s)) {
        const auto& sf = s.faces()[f];
        if (sf.dim < 2 || sf.dim % 2 != 0) continue;
        ++even;
        auto p = s.face_polytope(f);
        const bool w = width_le_one(p).has_value();
        const int matches = (unimodular_equivalent(p, a) ? 1 : 0) + (unimodular_equivalent(p, b) ? 1 : 0);
        if (w || matches == 1) ++good;
    }
    expect(out, "even-dimensional interior faces certified", std::to_string(even), std::to_string(good), cls);

    auto hpt = s.find_face(hpt_polytope().vertices());
    std::string hpt_status = "missing";
    if (hpt) {
        hpt_status = "dim " + std::to_string(s.faces()[*hpt].dim);
        if (auto it = c.statuses.find(*hpt); it != c.statuses.end() && is_known_irrational(it->second))
            hpt_status += " " + std::get<KnownIrrational>(it->second).key;
    }
    expect(out, "HPT polytope as a face", "dim 5 hpt-quartic", hpt_status, "the HPT polytope lies in 2D1 x 3D4");
    std::vector<std::string> known;
    for (const auto& [t, k] : c.sum.terms())
        if (t.kind == SBTag::Kind::Known) known.push_back(t.str());
    expect(out, "irrational classes in the sum", "known:hpt-quartic", join(known), cls);
    expect(out, "verdict", "nontrivial", verdict_name(c), cls);

    std::size_t bad = 0;
    for (std::size_t f = 0; f < s.faces().size(); ++f)
        if (euler_interior_identity(s, f) != 1) ++bad;
    expect(out, "faces violating the interior Euler identity", "0 of 1083",
           std::to_string(bad) + " of " + std::to_string(s.faces().size()), "Euler characteristic of the open star");
}

// The square [0,2]^2 sliced by v1 - v2 = -1, 0, 1.
void square_slicing(Checks& out, const ClassifyOptions&) {
    const char* src = "slicing of [0,2]^2 along v1 - v2 = -1, 0, 1; all pieces width one except the diagonal";
    auto sq = LatticePolytope::from_points({make_ivec({0, 0}), make_ivec({2, 0}), make_ivec({0, 2}), make_ivec({2, 2})});
    const IntVec l = make_ivec({1, -1});
    auto s = slice_subdivision(sq, l, {Int(-1), Int(0), Int(1)});
    std::map<std::string, std::size_t> named;
    for (auto f : interior_faces(s)) {
        auto [lo, hi] = functional_range(s, f, l);
        std::string name;
        if (lo == hi)
            name = "Q" + std::to_string(lo.get_si() + 1) + std::to_string(lo.get_si() + 2);
        else
            name = "Q" + std::to_string(lo.get_si() + 2);
        named[name] = f;
    }
    std::vector<std::string> names;
    for (const auto& [k, v] : named) names.push_back(k);
    expect(out, "interior faces", "Q0 Q01 Q1 Q12 Q2 Q23 Q3", join(names), src);
    std::vector<std::string> w1;
    for (const auto& [k, f] : named)
        if (width_le_one(s.face_polytope(f))) w1.push_back(k);
    expect(out, "faces with width-one certificates", "Q0 Q01 Q1 Q2 Q23 Q3", join(w1), src);
    if (named.count("Q12")) {
        auto w = width_upper(s.face_polytope(named["Q12"]), 3);
        expect(out, "width of Q12", "2", Int(w.high - w.low).get_str(), src);
    }
}

// 4 Delta_3 lifted by max(0, 1 - u0).
void linear_slab(Checks& out, const ClassifyOptions&) {
    const char* src = "the lifting max(0, 1 - u0) on the quartic simplex";
    auto D = homogeneous_simplex(3, 4);
    auto L = Lifting::from_function(D, [](const IntVec& u) { return Rat(u[0] == 0 ? 1 : 0); });
    auto s = lower_envelope_subdivision(L);
    expect(out, "maximal cells", "2", std::to_string(s.cells().size()), src);
    // vertices 4e_i and e0 + 3e_i: a prism and a simplex glued along a triangle
    expect(out, "faces by dimension", "7 12 8 2", join(face_count_by_dim(s)), "enumerated by hand");
    auto sliced = slice_subdivision(D, make_ivec({1, 0, 0, 0}), {Int(1)});
    expect(out, "same cells as slicing at u0 = 1", "yes", yes_no(s.cells() == sliced.cells() &&
                                                                 s.vertices() == sliced.vertices()),
           src);
}

void even_bound_table(Checks& out, const ClassifyOptions&) {
    const char* src = "published table of the even-degree bound";
    std::vector<std::string> got;
    for (long d = 4; d <= 16; d += 2) got.push_back(schreieder_even_bound(d).get_str());
    expect(out, "bound for d = 4, 6, ..., 16", "5 20 71 266 1037 4112 16403", join(got), src);
}

void ci_binomials(Checks& out, const ClassifyOptions&) {
    const char* src = "admissible index sets and prime-power binomial divisibility";
    auto one = ci_strata_sum({2});
    expect(out, "strata for (2)", "-[unknown:{(1,1),(1,2)}] + [unknown:{(1,1)}] + [unknown:{(1,2)}]", one.sum.str(), src);
    auto two = ci_strata_sum({2, 2});
    expect(out, "admissible sets for (2,2)", "9", std::to_string(two.admissible), src);
    expect(out, "coefficient of the deepest stratum for (2,2)", "1", two.deepest_coeff.get_str(), src);
    auto c4 = prime_power_binomial_certificate(4);
    expect(out, "certificate for d = 4", "p=2 nu=2 [4 6 4]",
           c4 ? "p=" + std::to_string(c4->p) + " nu=" + std::to_string(c4->nu) + " [" + join(c4->binomials) + "]"
              : "absent",
           src);
    std::vector<long> have, lack;
    for (long d : {2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16})
        (prime_power_binomial_certificate(d) ? have : lack).push_back(d);
    expect(out, "degrees with a certificate", "2 3 4 5 7 8 9 16", join(have), src);
    expect(out, "degrees without", "6 10 12", join(lack), src);
}

void hz_lattice_points(Checks& out, const ClassifyOptions&) {
    auto p = hz_polytope();
    expect(out, "lattice points", "5", std::to_string(p.lattice_points().size()),
           "the only lattice points of the HZ simplex are its vertices");
    expect(out, "lattice points are the vertices", "yes", yes_no(p.lattice_points() == p.vertices()),
           "the only lattice points of the HZ simplex are its vertices");
}

// Varying a hyperplane section: 4 Delta_3 cut at u0 = 1, delta = {u0 = 0}.
void hyperplane_variation(Checks& out, const ClassifyOptions& opt) {
    const char* src = "hyperplane-section variation: the slab u0 <= 1 has width one, the rest is triangulated";
    auto db = KnownPolytopeDB::builtin();
    auto D = homogeneous_simplex(3, 4);
    auto s = slice_subdivision(D, make_ivec({1, 0, 0, 0}), {Int(1)});
    const std::vector<IntVec> delta{make_ivec({0, 0, 0, 4}), make_ivec({0, 0, 4, 0}), make_ivec({0, 4, 0, 0})};
    std::map<std::size_t, Subdivision> subs;
    std::size_t upper = s.faces().size();
    for (auto f : interior_faces(s)) {
        auto [lo, hi] = functional_range(s, f, make_ivec({1, 0, 0, 0}));
        if (lo < 1) continue;  // the width-one slab keeps its trivial subdivision
        if (auto t = unimodular_triangulation(s.face_polytope(f))) subs.emplace(f, *t);
        if (s.faces()[f].dim == 3) upper = f;
    }
    expect(out, "triangulated faces", "2", std::to_string(subs.size()), src);
    auto rep = check_variation_certificate(D, delta, s, subs, db, opt);
    expect(out, "all conditions", "pass", rep.pass ? "pass" : "fail", src);

    subs.erase(upper);
    auto missing = check_variation_certificate(D, delta, s, subs, db, opt);
    std::vector<std::string> failed;
    for (const auto& c : missing.checks)
        if (!c.pass) failed.push_back(c.condition + ":" + c.face);
    expect(out, "without the upper triangulation", "c:" + (upper < s.faces().size() ? s.faces()[upper].id : "?"),
           join(failed), "a missing subdivision fails condition (c)");
}

struct Job {
    const char* name;
    void (*run)(Checks&, const ClassifyOptions&);
};

const std::vector<Job>& jobs() {
    static const std::vector<Job> all{
        {"quartic-fivefold", quartic_fivefold},
        {"quartic2-chain", quartic2_chain},
        {"p1p4", p1p4},
        {"subdivlemma2-Q", square_slicing},
        {"exam-linear", linear_slab},
        {"schreieder-table", even_bound_table},
        {"ci-binomials", ci_binomials},
        {"hz-lattice-points", hz_lattice_points},
        {"coro-hyperplane-variation", hyperplane_variation},
    };
    return all;
}

}  // namespace

std::vector<std::string> repro_names() {
    std::vector<std::string> out;
    for (const auto& j : jobs()) out.push_back(j.name);
    return out;
}

ReproResult run_repro(const std::string& name, const ClassifyOptions& options) {
    for (const auto& j : jobs()) {
        if (name != j.name) continue;
        ReproResult r;
        r.name = name;
        auto t0 = std::chrono::steady_clock::now();
        try {
            j.run(r.checks, options);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        r.pass = r.error.empty() && !r.checks.empty() &&
                 std::all_of(r.checks.begin(), r.checks.end(), [](const ReproCheck& c) { return c.pass; });
        return r;
    }
    std::string names;
    for (const auto& n : repro_names()) names += (names.empty() ? "" : ", ") + n;
    throw Error("UnknownJob", "'" + name + "'; available: " + names);
}

std::vector<ReproResult> run_repro_many(const std::vector<std::string>& names, unsigned jobs,
                                        const ClassifyOptions& options) {
    for (const auto& n : names) {
        const auto all = repro_names();
        if (std::find(all.begin(), all.end(), n) == all.end()) run_repro(n, options);  // throws
    }
    std::vector<ReproResult> results(names.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < names.size();) results[i] = run_repro(names[i], options);
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(names.size())));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return results;
}

}  // namespace tropirrat

#include "tropirrat/obstruction.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace tropirrat {

std::string SBTag::str() const {
    switch (kind) {
        case Kind::Point: return "point";
        case Kind::Known: return "known:" + name;
        default: return "unknown:" + name;
    }
}

SBTag SBTag::parse(const std::string& s) {
    if (s == "point") return point();
    if (s.rfind("known:", 0) == 0 && s.size() > 6) return known(s.substr(6));
    if (s.rfind("unknown:", 0) == 0 && s.size() > 8) return unknown(s.substr(8));
    throw Error("Schema", "bad class tag '" + s + "' (expected point, known:<key> or unknown:<id>)");
}

void FormalSum::add(const SBTag& tag, const Int& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(tag, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

Int FormalSum::coeff(const SBTag& tag) const {
    auto it = terms_.find(tag);
    return it == terms_.end() ? Int(0) : it->second;
}

std::string FormalSum::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [tag, c] : terms_) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        Int a = abs_int(c);
        if (a != 1) os << a.get_str();
        os << "[" << tag.str() << "]";
    }
    return os.str();
}

FormalSum FormalSum::operator-() const {
    FormalSum r;
    for (const auto& [t, c] : terms_) r.terms_.emplace(t, -c);
    return r;
}

FormalSum operator+(FormalSum a, const FormalSum& b) {
    for (const auto& [t, c] : b.terms_) a.add(t, c);
    return a;
}

SBTag face_tag(const Subdivision& s, std::size_t face, const RationalityStatus& st, bool shared_key) {
    if (is_stably_rational(st)) return SBTag::point();
    if (auto* k = std::get_if<KnownIrrational>(&st))
        return SBTag::known(shared_key ? k->key + "@" + s.faces()[face].id : k->key);
    return SBTag::unknown(std::get<Unknown>(st).face_id);
}

std::map<std::size_t, SBTag> face_tags(const Subdivision& s, const StatusMap& statuses) {
    std::vector<std::size_t> faces;
    std::map<std::string, int> key_count;
    for (auto f : interior_faces(s)) {
        if (s.faces()[f].dim < 2) continue;
        auto it = statuses.find(f);
        if (it == statuses.end()) throw Error("UnclassifiedFace", "no status for face " + s.faces()[f].id);
        if (auto* k = std::get_if<KnownIrrational>(&it->second)) ++key_count[k->key];
        faces.push_back(f);
    }
    std::map<std::size_t, SBTag> out;
    for (auto f : faces) {
        const auto& st = statuses.at(f);
        bool shared = false;
        if (auto* k = std::get_if<KnownIrrational>(&st)) shared = key_count[k->key] > 1;
        out.emplace(f, face_tag(s, f, st, shared));
    }
    return out;
}

FormalSum obstruction_sum(const Subdivision& s, const StatusMap& statuses) {
    const auto tags = face_tags(s, statuses);
    FormalSum sum;
    for (auto f : interior_faces(s)) {
        const auto& face = s.faces()[f];
        const Int sign = face.dim % 2 == 0 ? 1 : -1;
        if (face.dim == 0) continue;
        if (face.dim == 1)
            sum.add(SBTag::point(), sign * lattice_length(s.face_polytope(f)));
        else
            sum.add(tags.at(f), sign);
    }
    return sum;
}

FormalSum apply_equalities(const FormalSum& sum, const Assumptions& assumptions) {
    std::map<SBTag, SBTag> rep;
    auto find = [&](SBTag t) {
        while (rep.count(t) && rep.at(t) != t) t = rep.at(t);
        return t;
    };
    for (const auto& [a, b] : assumptions.equal) {
        SBTag ra = find(a), rb = find(b);
        if (ra == rb) continue;
        if (rb < ra) std::swap(ra, rb);
        rep[rb] = ra;
        rep.emplace(ra, ra);
    }
    FormalSum out;
    for (const auto& [t, c] : sum.terms()) out.add(find(t), c);
    return out;
}

namespace {

struct Group {
    std::vector<SBTag> tags;
    Int coeff = 0;
    bool has_point = false;
    bool has_known = false;
    bool not_point = false;
};

// Union-find over tag indices.
struct Dsu {
    std::vector<std::size_t> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

// Disjoint zero-sum-free sub-multisets of `pool` (value -> count) with the given sums.
class Cover {
public:
    Cover(std::map<Int, long> pool, std::vector<Int> needs) : pool_(std::move(pool)), needs_(std::move(needs)) {
        for (const auto& [v, c] : pool_) {
            values_.push_back(v);
            max_abs_ = std::max(max_abs_, abs_int(v));
        }
    }

    bool solve() {
        chosen_.assign(needs_.size(), {});
        return block(0);
    }
    /// Counts per value taken for each need, valid after solve() returned true.
    const std::vector<std::map<Int, long>>& chosen() const { return chosen_; }

private:
    bool block(std::size_t k) {
        if (k == needs_.size()) return true;
        Int limit = abs_int(needs_[k]) + 2 * max_abs_;
        std::map<Int, long> pick;
        return pick_values(k, 0, Int(0), Int(0), limit, pick);
    }

    bool pick_values(std::size_t k, std::size_t vi, const Int& sum, const Int& size, const Int& limit,
                     std::map<Int, long>& pick) {
        if (vi == values_.size()) {
            if (sum != needs_[k] || size == 0) return false;
            for (const auto& [v, c] : pick) pool_[v] -= c;
            chosen_[k] = pick;
            bool ok = block(k + 1);
            for (const auto& [v, c] : pick) pool_[v] += c;
            return ok;
        }
        const Int& v = values_[vi];
        const long avail = pool_[v];
        for (long c = 0; c <= avail && size + c <= limit; ++c) {
            if (c > 0) pick[v] = c;
            if (pick_values(k, vi + 1, sum + c * v, size + c, limit, pick)) return true;
        }
        pick.erase(v);
        return false;
    }

    std::map<Int, long> pool_;
    std::vector<Int> needs_;
    std::vector<Int> values_;
    Int max_abs_ = 0;
    std::vector<std::map<Int, long>> chosen_;
};

}  // namespace

VerdictResult verdict(const FormalSum& sum, std::size_t dim_delta, const Assumptions& assumptions) {
    VerdictResult res;
    auto& tr = res.transcript;
    const Int target = dim_delta % 2 == 0 ? 1 : -1;
    tr.push_back("sum: " + sum.str());
    tr.push_back("target: " + std::string(target > 0 ? "" : "-") + "[point] (dim " + std::to_string(dim_delta) + ")");

    // every tag that occurs anywhere
    std::vector<SBTag> tags{SBTag::point()};
    for (const auto& [t, c] : sum.terms()) tags.push_back(t);
    for (const auto& [a, b] : assumptions.distinct) tags.insert(tags.end(), {a, b});
    for (const auto& [a, b] : assumptions.equal) tags.insert(tags.end(), {a, b});
    tags.insert(tags.end(), assumptions.not_point.begin(), assumptions.not_point.end());
    std::sort(tags.begin(), tags.end());
    tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
    auto index = [&](const SBTag& t) {
        return static_cast<std::size_t>(std::lower_bound(tags.begin(), tags.end(), t) - tags.begin());
    };

    Dsu dsu(tags.size());
    for (const auto& [a, b] : assumptions.equal) dsu.unite(index(a), index(b));
    std::map<std::size_t, Group> groups;
    for (std::size_t i = 0; i < tags.size(); ++i) {
        auto& g = groups[dsu.find(i)];
        g.tags.push_back(tags[i]);
        g.coeff += sum.coeff(tags[i]);
        g.has_point |= tags[i].kind == SBTag::Kind::Point;
        g.has_known |= tags[i].kind == SBTag::Kind::Known;
    }
    for (const auto& t : assumptions.not_point) groups[dsu.find(index(t))].not_point = true;

    const std::size_t point_root = dsu.find(index(SBTag::point()));
    for (const auto& [root, g] : groups) {
        if (g.has_point && g.has_known)
            throw Error("BadAssumptions", "a registered irrational class is assumed equal to the point class");
        if (g.has_point && g.not_point)
            throw Error("BadAssumptions", "a class is assumed both equal and unequal to the point class");
    }
    std::set<std::pair<std::size_t, std::size_t>> distinct;
    for (const auto& [a, b] : assumptions.distinct) {
        auto ra = dsu.find(index(a)), rb = dsu.find(index(b));
        if (ra == rb)
            throw Error("BadAssumptions", a.str() + " and " + b.str() + " are assumed both equal and distinct");
        distinct.insert({std::min(ra, rb), std::max(ra, rb)});
    }
    for (const auto& [ra, rb] : distinct) {
        if (ra == point_root) groups[rb].not_point = true;
        if (rb == point_root) groups[ra].not_point = true;
    }

    Int total = 0;
    for (const auto& [root, g] : groups) total += g.coeff;
    tr.push_back("total coefficient " + total.get_str() + " (a class identification preserves it)");
    if (total != target) {
        tr.push_back("total differs from the target coefficient " + target.get_str() + ": no identification works");
        res.verdict = Verdict::Nontrivial;
        return res;
    }

    // Groups with coefficient zero can always be sent to a fresh class of their own.
    std::vector<std::size_t> constrained, free_groups;
    for (const auto& [root, g] : groups) {
        if (root == point_root || g.coeff == 0) continue;
        bool has_distinct = false;
        for (const auto& [ra, rb] : distinct)
            if (ra == root || rb == root) has_distinct = true;
        if (g.has_known || g.not_point || has_distinct)
            constrained.push_back(root);
        else
            free_groups.push_back(root);
    }
    std::map<Int, long> pool;
    for (auto r : free_groups) ++pool[groups[r].coeff];
    {
        std::ostringstream os;
        os << constrained.size() << " constrained class group(s), " << free_groups.size()
           << " unconstrained unknown group(s)";
        tr.push_back(os.str());
    }

    const std::size_t c = constrained.size();
    std::vector<int> label(c, 0);
    std::size_t examined = 0;
    bool found = false;
    std::vector<std::map<Int, long>> chosen;
    std::vector<int> block_labels;

    std::function<void(std::size_t, int)> rec = [&](std::size_t k, int used) {
        if (found) return;
        if (k == c) {
            ++examined;
            std::map<int, Int> block_sum;
            for (std::size_t i = 0; i < c; ++i)
                if (label[i] != 0) block_sum[label[i]] += groups[constrained[i]].coeff;
            std::vector<Int> needs;
            std::vector<int> labels;
            for (const auto& [l, s] : block_sum)
                if (s != 0) {
                    needs.push_back(-s);
                    labels.push_back(l);
                }
            Cover cover(pool, needs);
            if (cover.solve()) {
                found = true;
                chosen = cover.chosen();
                block_labels = labels;
            }
            return;
        }
        const auto& g = groups[constrained[k]];
        for (int l = 0; l <= used + 1 && !found; ++l) {
            if (l == 0 && (g.has_known || g.not_point)) continue;
            bool ok = true;
            for (std::size_t j = 0; j < k && ok; ++j) {
                if (label[j] != l) continue;
                auto a = std::min(constrained[j], constrained[k]), b = std::max(constrained[j], constrained[k]);
                if (distinct.count({a, b})) ok = false;
            }
            if (!ok) continue;
            label[k] = l;
            rec(k + 1, std::max(used, l));
        }
    };
    rec(0, 0);

    tr.push_back("examined " + std::to_string(examined) + " block assignment(s) of the constrained groups");
    if (!found) {
        tr.push_back("no identification reaches the target");
        res.verdict = Verdict::Nontrivial;
        return res;
    }
    res.verdict = Verdict::Inconclusive;
    for (const auto& [root, g] : groups)
        for (const auto& t : g.tags) res.assignment[t] = 0;
    int fresh = 1;
    for (int l : label) fresh = std::max(fresh, l + 1);
    for (std::size_t i = 0; i < c; ++i)
        for (const auto& t : groups[constrained[i]].tags) res.assignment[t] = label[i];
    for (const auto& [root, g] : groups)
        if (root != point_root && g.coeff == 0 && !g.tags.empty()) {
            for (const auto& t : g.tags) res.assignment[t] = fresh;
            ++fresh;
        }
    // free groups join the blocks they balance, the rest join the point class
    for (std::size_t b = 0; b < chosen.size(); ++b)
        for (auto [v, cnt] : chosen[b])
            for (auto r : free_groups) {
                if (cnt == 0) break;
                auto& g = groups[r];
                if (g.coeff != v || res.assignment[g.tags[0]] != 0) continue;
                for (const auto& t : g.tags) res.assignment[t] = block_labels[b];
                --cnt;
            }
    std::ostringstream os;
    os << "identification reaching the target:";
    for (const auto& [t, l] : res.assignment) os << " " << t.str() << "->" << l;
    tr.push_back(os.str());
    return res;
}

bool check_irratpol(const Subdivision& s, const StatusMap& statuses) {
    int known = 0;
    for (auto f : interior_faces(s)) {
        auto it = statuses.find(f);
        if (it == statuses.end()) {
            if (s.faces()[f].dim <= 1) continue;
            return false;
        }
        if (is_known_irrational(it->second))
            ++known;
        else if (!is_stably_rational(it->second))
            return false;
    }
    return known == 1;
}

namespace {

bool all_cells_unimodular(const Subdivision& q) {
    const auto& parent = q.parent();
    for (const auto& c : q.cell_polytopes()) {
        if (c.dim() != parent.dim() || c.vertices().size() != c.dim() + 1) return false;
        std::vector<IntVec> rows;
        IntVec o = *parent.affine().coords(c.vertices()[0]);
        for (std::size_t k = 1; k < c.vertices().size(); ++k)
            rows.push_back(sub(*parent.affine().coords(c.vertices()[k]), o));
        if (abs_int(determinant(IntMatrix::from_rows(rows, parent.dim()))) != 1) return false;
    }
    return true;
}

}  // namespace

VariationReport check_variation_certificate(const LatticePolytope& big, const std::vector<IntVec>& delta,
                                            const Subdivision& s, const std::map<std::size_t, Subdivision>& subs,
                                            const KnownPolytopeDB& db, const ClassifyOptions& options) {
    VariationReport rep;
    bool in_boundary = false;
    try {
        in_boundary = is_in_boundary(big, delta);
    } catch (const Error& e) {
        rep.checks.push_back({"pre", "delta", false, e.what()});
    }
    if (rep.checks.empty())
        rep.checks.push_back({"pre", "delta", in_boundary,
                              in_boundary ? "delta lies in a facet of the polytope" : "delta meets the interior"});

    auto face = s.find_face(delta);
    rep.checks.push_back({"a", face ? s.faces()[*face].id : "delta", face.has_value(),
                          face ? "delta is a face of the subdivision" : "delta is not a face of the subdivision"});

    std::set<std::size_t> delta_vertices;
    if (face) delta_vertices.insert(s.faces()[*face].vertices.begin(), s.faces()[*face].vertices.end());

    for (auto f : interior_faces(s)) {
        const auto& sf = s.faces()[f];
        auto poly = s.face_polytope(f);
        auto st = classify_face(poly, sf.id, db, options);

        bool meets = std::any_of(sf.vertices.begin(), sf.vertices.end(),
                                 [&](std::size_t v) { return delta_vertices.count(v) > 0; });
        if (meets)
            rep.checks.push_back({"b", sf.id, is_stably_rational(st), status_name(st) + ": " + status_citation(st)});

        auto it = subs.find(f);
        if (it == subs.end()) {
            if (is_stably_rational(st))
                rep.checks.push_back({"c", sf.id, true, "trivial subdivision; the face is " + status_name(st)});
            else
                rep.checks.push_back({"c", sf.id, false, "no subdivision supplied and the face is " + status_name(st)});
            continue;
        }
        const Subdivision& q = it->second;
        if (q.parent().vertices() != poly.vertices()) {
            rep.checks.push_back({"c", sf.id, false, "supplied subdivision is of a different polytope"});
            continue;
        }
        const bool unimodular = all_cells_unimodular(q);
        bool ok = true;
        std::string bad;
        for (auto g : interior_faces(q)) {
            RationalityStatus gs = StablyRational{LowDim{}};
            if (q.faces()[g].dim >= 2) {
                if (unimodular)
                    gs = StablyRational{UnimodularTriangulation{q.cells().size()}};
                else
                    gs = classify_face(q.face_polytope(g), sf.id + "/" + q.faces()[g].id, db, options);
            }
            if (!is_stably_rational(gs)) {
                ok = false;
                bad = q.faces()[g].id;
                break;
            }
        }
        std::string detail = q.provenance() + " subdivision with " + std::to_string(q.cells().size()) + " cell(s)";
        if (unimodular) detail += ", all unimodular simplices";
        if (!ok) detail += "; interior face " + bad + " is not certified stably rational";
        rep.checks.push_back({"c", sf.id, ok, detail});
    }
    rep.pass = std::all_of(rep.checks.begin(), rep.checks.end(), [](const VariationCheck& c) { return c.pass; });
    return rep;
}

CiStrata ci_strata_sum(const std::vector<long>& degrees) {
    if (degrees.empty()) throw Error("BadParameter", "need at least one degree");
    std::vector<std::pair<long, long>> S;
    for (std::size_t i = 0; i < degrees.size(); ++i) {
        if (degrees[i] < 1) throw Error("BadParameter", "degrees must be positive");
        for (long j = 1; j <= degrees[i]; ++j) S.emplace_back(static_cast<long>(i) + 1, j);
    }
    if (S.size() > 24) throw Error("BadParameter", "index set too large to enumerate");
    const long r = static_cast<long>(degrees.size()) + 1;
    auto name = [&](std::uint32_t mask) {
        std::string out = "{";
        bool first = true;
        for (std::size_t k = 0; k < S.size(); ++k)
            if (mask >> k & 1) {
                if (!first) out += ",";
                first = false;
                out += "(" + std::to_string(S[k].first) + "," + std::to_string(S[k].second) + ")";
            }
        return out + "}";
    };
    CiStrata res;
    const std::uint32_t full = (std::uint32_t(1) << S.size()) - 1;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        std::vector<bool> hit(degrees.size(), false);
        long size = 0;
        for (std::size_t k = 0; k < S.size(); ++k)
            if (mask >> k & 1) {
                hit[static_cast<std::size_t>(S[k].first - 1)] = true;
                ++size;
            }
        if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) continue;
        ++res.admissible;
        const Int sign = (size - r + 1) % 2 == 0 ? 1 : -1;
        res.sum.add(SBTag::unknown(name(mask)), sign);
        if (mask == full) {
            res.deepest = SBTag::unknown(name(mask));
            res.deepest_coeff = sign;
        }
        if (mask == full) break;
    }
    return res;
}

std::optional<PrimePowerCertificate> prime_power_binomial_certificate(long d) {
    if (d < 2) return std::nullopt;
    long p = 2;
    while (d % p != 0) ++p;
    long rest = d, nu = 0;
    while (rest % p == 0) {
        rest /= p;
        ++nu;
    }
    if (rest != 1) return std::nullopt;
    PrimePowerCertificate cert{p, nu, {}};
    for (long j = 1; j < d; ++j) {
        Int b;
        mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(j));
        if (b % p != 0) return std::nullopt;
        cert.binomials.push_back(b);
    }
    return cert;
}

}  // namespace tropirrat

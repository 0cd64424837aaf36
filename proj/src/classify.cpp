#include "tropirrat/classify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace tropirrat {

IntVec UnimodularMap::apply(const IntVec& x) const { return add(A.apply(x), b); }

namespace {

Int sup_norm(const IntVec& v) {
    Int m = 0;
    for (const auto& x : v) m = std::max(m, abs_int(x));
    return m;
}

// smaller is better: sup-norm first, then lexicographically larger
bool preferred(const IntVec& a, const IntVec& b) {
    Int na = sup_norm(a), nb = sup_norm(b);
    if (na != nb) return na < nb;
    Int la = 0, lb = 0;
    for (const auto& x : a) la += abs_int(x);
    for (const auto& x : b) lb += abs_int(x);
    if (la != lb) return la < lb;
    return a > b;
}

void normalize_sign(IntVec& v) {
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        return;
    }
}

WidthWitness make_witness(const LatticePolytope& p, IntVec l) {
    WidthWitness w;
    w.low = w.high = dot(l, p.vertex_coords()[0]);
    for (const auto& c : p.vertex_coords()) {
        Int v = dot(l, c);
        w.low = std::min(w.low, v);
        w.high = std::max(w.high, v);
    }
    w.ambient = p.affine().ambient_functional(l);
    w.functional = std::move(l);
    return w;
}

// Indices of vertex 0 followed by r vertices whose differences to it are independent.
std::vector<std::size_t> affine_basis_indices(const std::vector<IntVec>& coords, std::size_t r) {
    std::vector<std::size_t> idx{0};
    std::vector<IntVec> rows;
    for (std::size_t i = 1; i < coords.size() && rows.size() < r; ++i) {
        rows.push_back(sub(coords[i], coords[0]));
        if (rank(rows) == rows.size())
            idx.push_back(i);
        else
            rows.pop_back();
    }
    return idx;
}

}  // namespace

std::optional<WidthWitness> width_le_one(const LatticePolytope& p) {
    const std::size_t r = p.dim();
    if (r == 0) throw Error("BadParameter", "lattice width of a point");
    const auto& C = p.vertex_coords();
    auto basis = affine_basis_indices(C, r);
    std::vector<IntVec> rows;
    for (std::size_t k = 1; k <= r; ++k) rows.push_back(sub(C[basis[k]], C[0]));
    IntMatrix V = IntMatrix::from_rows(rows, r);

    std::optional<IntVec> best;
    for (std::size_t mask = 1; mask < (std::size_t(1) << r); ++mask) {
        RatVec eps(r);
        for (std::size_t k = 0; k < r; ++k) eps[k] = (mask >> k) & 1;
        auto sol = solve_rational(V, eps);
        IntVec l(r);
        bool integral = true;
        for (std::size_t k = 0; k < r && integral; ++k) {
            if (!is_integral(sol->particular[k]))
                integral = false;
            else
                l[k] = sol->particular[k].get_num();
        }
        if (!integral) continue;
        Int base = dot(l, C[0]);
        bool ok = true;
        for (const auto& c : C) {
            Int v = dot(l, c) - base;
            if (v != 0 && v != 1) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        normalize_sign(l);
        if (!best || preferred(l, *best)) best = l;
    }
    if (!best) return std::nullopt;
    return make_witness(p, *best);
}

WidthWitness width_upper(const LatticePolytope& p, long bound) {
    const std::size_t r = p.dim();
    if (r == 0) throw Error("BadParameter", "lattice width of a point");
    if (bound < 1) throw Error("BadParameter", "width search box must be at least 1");
    const auto& C = p.vertex_coords();
    std::optional<Int> best_width;
    IntVec best;
    IntVec l(r, Int(-bound));
    for (;;) {
        bool leading_positive = false, zero = true;
        for (const auto& x : l)
            if (x != 0) {
                leading_positive = x > 0;
                zero = false;
                break;
            }
        if (!zero && leading_positive) {
            Int g = 0;
            for (const auto& x : l) g = gcd(g, x);
            if (g == 1) {
                Int lo = dot(l, C[0]), hi = lo;
                for (const auto& c : C) {
                    Int v = dot(l, c);
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
                Int w = hi - lo;
                if (!best_width || w < *best_width || (w == *best_width && preferred(l, best))) {
                    best_width = w;
                    best = l;
                }
            }
        }
        std::size_t k = r;
        while (k > 0 && l[k - 1] == bound) l[--k] = -bound;
        if (k == 0) break;
        ++l[k - 1];
    }
    return make_witness(p, best);
}

namespace {

struct PairData {
    bool edge;
    Int length;
    bool operator==(const PairData&) const = default;
};

struct Shape {
    std::vector<std::vector<PairData>> pairs;
    std::vector<std::vector<Int>> vertex_sig;  // sorted incident edge lengths
};

Shape shape_of(const LatticePolytope& p) {
    const auto& V = p.vertices();
    const std::size_t nv = V.size();
    Shape s;
    s.pairs.assign(nv, std::vector<PairData>(nv, PairData{false, 0}));
    s.vertex_sig.assign(nv, {});
    for (std::size_t i = 0; i < nv; ++i)
        for (std::size_t j = 0; j < nv; ++j) {
            Int g = 0;
            for (std::size_t c = 0; c < V[i].size(); ++c) g = gcd(g, V[i][c] - V[j][c]);
            s.pairs[i][j].length = g;
        }
    for (const auto& e : p.face_lattice().faces()) {
        if (e.dim != 1) continue;
        auto a = e.vertices[0], b = e.vertices[1];
        s.pairs[a][b].edge = s.pairs[b][a].edge = true;
        s.vertex_sig[a].push_back(s.pairs[a][b].length);
        s.vertex_sig[b].push_back(s.pairs[a][b].length);
    }
    for (auto& v : s.vertex_sig) std::sort(v.begin(), v.end());
    return s;
}

std::vector<Int> edge_lengths(const Shape& s) {
    std::vector<Int> out;
    for (std::size_t i = 0; i < s.pairs.size(); ++i)
        for (std::size_t j = i + 1; j < s.pairs.size(); ++j)
            if (s.pairs[i][j].edge) out.push_back(s.pairs[i][j].length);
    std::sort(out.begin(), out.end());
    return out;
}

bool unimodular(const IntMatrix& M) {
    auto snf = smith_normal_form(M);
    for (std::size_t i = 0; i < M.rows(); ++i)
        if (snf.S(i, i) != 1) return false;
    return true;
}

}  // namespace

std::optional<UnimodularMap> unimodular_equivalent(const LatticePolytope& p, const LatticePolytope& q) {
    if (p.dim() != q.dim() || p.vertices().size() != q.vertices().size()) return std::nullopt;
    if (p.lattice_points().size() != q.lattice_points().size()) return std::nullopt;
    const std::size_t r = p.dim(), nv = p.vertices().size();
    const std::size_t np = p.ambient_dim(), nq = q.ambient_dim();
    if (r == 0) return UnimodularMap{IntMatrix(nq, np), q.vertices()[0]};

    Shape sp = shape_of(p), sq = shape_of(q);
    if (edge_lengths(sp) != edge_lengths(sq)) return std::nullopt;
    {
        auto a = sp.vertex_sig, b = sq.vertex_sig;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return std::nullopt;
    }

    const auto& Cp = p.vertex_coords();
    const auto& Cq = q.vertex_coords();
    auto basis = affine_basis_indices(Cp, r);
    std::vector<IntVec> vrows;
    for (std::size_t k = 1; k <= r; ++k) vrows.push_back(sub(Cp[basis[k]], Cp[basis[0]]));
    IntMatrix V = IntMatrix::from_rows(vrows, r);
    // columns of V^{-1}
    std::vector<RatVec> vinv_cols;
    for (std::size_t k = 0; k < r; ++k) {
        RatVec e(r, Rat(0));
        e[k] = 1;
        vinv_cols.push_back(solve_rational(V, e)->particular);
    }
    std::set<IntVec> q_set(Cq.begin(), Cq.end());

    std::vector<std::size_t> choice;
    std::vector<bool> used(nv, false);
    std::optional<UnimodularMap> found;

    auto finish = [&]() -> bool {
        // M = V^{-1} W, rows of W are the images of the basis differences
        IntMatrix M(r, r);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) {
                Rat s = 0;
                for (std::size_t k = 0; k < r; ++k) s += vinv_cols[k][i] * (Cq[choice[k + 1]][j] - Cq[choice[0]][j]);
                if (!is_integral(s)) return false;
                M(i, j) = s.get_num();
            }
        if (!unimodular(M)) return false;
        IntVec t(r);
        for (std::size_t j = 0; j < r; ++j) {
            Int s = Cq[choice[0]][j];
            for (std::size_t i = 0; i < r; ++i) s -= Cp[basis[0]][i] * M(i, j);
            t[j] = s;
        }
        for (const auto& c : Cp) {
            IntVec y = t;
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t i = 0; i < r; ++i) y[j] += c[i] * M(i, j);
            if (!q_set.count(y)) return false;
        }
        // ambient form: y = x K + (o_Q + t B_Q - o_P K) with K = Pi_P M B_Q
        IntMatrix Bq = IntMatrix::from_rows(q.affine().basis, nq);
        IntMatrix K = p.affine().left_inverse * M * Bq;
        IntVec b = q.affine().origin;
        for (std::size_t j = 0; j < nq; ++j) {
            for (std::size_t k = 0; k < r; ++k) b[j] += t[k] * Bq(k, j);
            for (std::size_t i = 0; i < np; ++i) b[j] -= p.affine().origin[i] * K(i, j);
        }
        found = UnimodularMap{K.transpose(), b};
        return true;
    };

    auto rec = [&](auto&& self, std::size_t k) -> bool {
        if (k == basis.size()) return finish();
        const std::size_t i = basis[k];
        for (std::size_t j = 0; j < nv; ++j) {
            if (used[j] || sp.vertex_sig[i] != sq.vertex_sig[j]) continue;
            bool ok = true;
            for (std::size_t m = 0; m < k && ok; ++m) ok = sp.pairs[basis[m]][i] == sq.pairs[choice[m]][j];
            if (!ok) continue;
            used[j] = true;
            choice.push_back(j);
            if (self(self, k + 1)) return true;
            choice.pop_back();
            used[j] = false;
        }
        return false;
    };
    rec(rec, 0);
    return found;
}

AlcoveTriangulation alcove_triangulation(std::size_t n, long d) {
    if (n < 1 || d < 1) throw Error("BadParameter", "alcove triangulation needs n >= 1 and d >= 1");
    auto simplex = dilated_simplex(n, d);
    auto to_x = [n](const IntVec& y) {
        IntVec x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] - (i + 1 < n ? y[i + 1] : Int(0));
        return x;
    };
    auto in_region = [n, d](const IntVec& y) {
        if (y[0] > d || y[n - 1] < 0) return false;
        for (std::size_t i = 0; i + 1 < n; ++i)
            if (y[i] < y[i + 1]) return false;
        return true;
    };

    AlcoveTriangulation out;
    std::vector<std::size_t> perm(n);
    IntVec z(n, Int(0));
    for (;;) {
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::vector<IntVec> ys{z};
            IntVec y = z;
            for (auto i : perm) {
                ++y[i];
                ys.push_back(y);
            }
            if (std::all_of(ys.begin(), ys.end(), in_region)) {
                std::vector<IntVec> xs;
                for (const auto& v : ys) xs.push_back(to_x(v));
                std::sort(xs.begin(), xs.end());
                out.simplices.push_back(std::move(xs));
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        std::size_t k = n;
        while (k > 0 && z[k - 1] == d - 1) z[--k] = 0;
        if (k == 0) break;
        ++z[k - 1];
    }
    std::sort(out.simplices.begin(), out.simplices.end());

    out.lifting = Lifting::from_function(simplex, [n](const IntVec& x) {
        IntVec y(n);
        Int s = 0;
        for (std::size_t i = n; i-- > 0;) {
            s += x[i];
            y[i] = s;
        }
        Int h = 0;
        for (std::size_t i = 0; i < n; ++i) {
            h += y[i] * y[i];
            for (std::size_t j = i + 1; j < n; ++j) h += (y[i] - y[j]) * (y[i] - y[j]);
        }
        return Rat(h);
    });

    bool ok = true;
    Int expected = 1;
    for (std::size_t i = 0; i < n; ++i) expected *= d;
    ok = Int(static_cast<unsigned long>(out.simplices.size())) == expected;
    for (const auto& s : out.simplices) {
        std::vector<IntVec> rows;
        for (std::size_t k = 1; k < s.size(); ++k) rows.push_back(sub(s[k], s[0]));
        if (abs_int(determinant(IntMatrix::from_rows(rows, n))) != 1) ok = false;
    }
    if (ok) {
        auto env = lower_envelope_subdivision(out.lifting);
        std::vector<std::vector<IntVec>> cells;
        for (const auto& c : env.cell_polytopes()) cells.push_back(c.vertices());
        std::sort(cells.begin(), cells.end());
        ok = cells == out.simplices;
    }
    out.verified = ok;
    return out;
}

std::optional<std::pair<std::size_t, long>> dilated_simplex_shape(const LatticePolytope& p) {
    const std::size_t m = p.dim();
    if (m == 0 || p.vertices().size() != m + 1) return std::nullopt;
    const auto& V = p.vertices();
    Int d = 0;
    for (std::size_t i = 0; i < V.size(); ++i)
        for (std::size_t j = i + 1; j < V.size(); ++j) {
            Int g = 0;
            for (std::size_t c = 0; c < V[i].size(); ++c) g = gcd(g, V[i][c] - V[j][c]);
            if (d == 0) d = g;
            if (g != d) return std::nullopt;
        }
    if (!d.fits_slong_p()) return std::nullopt;
    const long dd = d.get_si();
    if (!unimodular_equivalent(dilated_simplex(m, dd), p)) return std::nullopt;
    return std::make_pair(m, dd);
}

std::optional<Subdivision> unimodular_triangulation(const LatticePolytope& p) {
    auto shape = dilated_simplex_shape(p);
    if (!shape) return std::nullopt;
    auto [m, d] = *shape;
    auto alc = alcove_triangulation(m, d);
    if (!alc.verified) return std::nullopt;
    auto map = unimodular_equivalent(dilated_simplex(m, d), p);
    std::vector<std::pair<IntVec, Rat>> values;
    const auto& pts = alc.lifting.polytope.lattice_points();
    for (std::size_t i = 0; i < pts.size(); ++i) values.emplace_back(map->apply(pts[i]), alc.lifting.heights[i]);
    auto sub_div = lower_envelope_subdivision(Lifting::from_pairs(p, values));
    for (const auto& c : sub_div.cell_polytopes()) {
        if (c.vertices().size() != c.dim() + 1) return std::nullopt;
        std::vector<IntVec> rows;
        for (std::size_t k = 1; k < c.vertices().size(); ++k) rows.push_back(*p.affine().coords(c.vertices()[k]));
        for (auto& row : rows) row = sub(row, *p.affine().coords(c.vertices()[0]));
        if (abs_int(determinant(IntMatrix::from_rows(rows, m))) != 1) return std::nullopt;
    }
    return sub_div;
}

Int schreieder_even_bound(long d) {
    if (d < 4 || d % 2 != 0) throw Error("BadDegree", "the even-degree bound needs an even degree >= 4");
    Int p2;
    mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(d - 2));
    return p2 + 3 * d / 2 - 5;
}

std::optional<std::string> hypersurface_irrationality_citation(std::size_t n, long d) {
    if (n >= 3 && d >= 2) {
        Int p2;
        mpz_ui_pow_ui(p2.get_mpz_t(), 2, static_cast<unsigned long>(d - 2));
        if (p2 >= static_cast<unsigned long>(n))
            return "Schreieder: a very general hypersurface of degree d >= log2(n) + 2 and dimension n >= 3 "
                   "is stably irrational";
    }
    long e = (d % 2 == 0) ? d : d - 1;
    if (n >= 1 && e >= 4 && schreieder_even_bound(e) >= static_cast<unsigned long>(n))
        return "even-degree bound: a very general hypersurface of degree >= e (e even, e >= 4) and dimension "
               "n <= 2^(e-2) + 3e/2 - 5 is stably irrational";
    return std::nullopt;
}

bool is_stably_rational(const RationalityStatus& s) { return std::holds_alternative<StablyRational>(s); }
bool is_known_irrational(const RationalityStatus& s) { return std::holds_alternative<KnownIrrational>(s); }

std::string status_name(const RationalityStatus& s) {
    if (auto* r = std::get_if<StablyRational>(&s)) {
        switch (r->reason.index()) {
            case 0: return "width-one";
            case 1: return "unimodular-triangulation";
            case 2: return "db-match";
            default: return "low-dim";
        }
    }
    if (std::holds_alternative<KnownIrrational>(s)) return "known-irrational";
    return "unknown";
}

std::string status_citation(const RationalityStatus& s) {
    if (auto* r = std::get_if<StablyRational>(&s)) {
        switch (r->reason.index()) {
            case 0: return "lattice width one: the equation is linear in one variable";
            case 1: return "regular unimodular triangulation: every interior face is a unimodular simplex";
            case 2: return std::get<DbMatch>(r->reason).citation;
            default: return "points and finite point sets are stably rational by definition";
        }
    }
    if (auto* k = std::get_if<KnownIrrational>(&s)) return k->citation;
    return "";
}

RationalityStatus classify_face(const LatticePolytope& face, const std::string& face_id, const KnownPolytopeDB& db,
                                const ClassifyOptions& options) {
    if (face.dim() <= 1) return StablyRational{LowDim{}};
    if (auto w = width_le_one(face)) return StablyRational{WidthOne{*w}};
    auto matches = [&](const KnownPolytopeEntry& e) -> std::optional<UnimodularMap> {
        if (e.polytope.dim() != face.dim() || e.polytope.vertices().size() != face.vertices().size())
            return std::nullopt;
        return unimodular_equivalent(e.polytope, face);
    };
    for (const auto& e : db.entries()) {
        if (e.irrational) continue;
        if (auto m = matches(e)) return StablyRational{DbMatch{e.key, e.citation, *m}};
    }
    for (const auto& e : db.entries()) {
        if (!e.irrational) continue;
        if (auto m = matches(e)) return KnownIrrational{e.key, e.citation, *m};
    }
    if (options.parametric_rules) {
        if (auto shape = dilated_simplex_shape(face)) {
            auto [m, d] = *shape;
            if (auto c = hypersurface_irrationality_citation(m - 1, d)) {
                auto map = unimodular_equivalent(dilated_simplex(m, d), face);
                return KnownIrrational{"hypersurface-deg" + std::to_string(d) + "-dim" + std::to_string(m - 1), *c,
                                       map};
            }
        }
    }
    Unknown u{face_id, std::nullopt};
    if (options.width_bound > 0) u.width_bound = width_upper(face, options.width_bound);
    return u;
}

}  // namespace tropirrat

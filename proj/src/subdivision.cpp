#include "tropirrat/subdivision.hpp"

#include <algorithm>
#include <map>

namespace tropirrat {

Lifting Lifting::from_function(const LatticePolytope& p, const std::function<Rat(const IntVec&)>& h) {
    Lifting l{p, {}};
    for (const auto& m : p.lattice_points()) {
        l.heights.push_back(h(m));
        l.heights.back().canonicalize();
    }
    return l;
}

Lifting Lifting::from_pairs(const LatticePolytope& p, const std::vector<std::pair<IntVec, Rat>>& values) {
    const auto& pts = p.lattice_points();
    std::vector<std::optional<Rat>> h(pts.size());
    for (const auto& [m, v] : values) {
        auto it = std::lower_bound(pts.begin(), pts.end(), m);
        if (it == pts.end() || *it != m)
            throw Error("BadLifting", "height given at " + to_string(m) + ", which is not a lattice point");
        auto& slot = h[static_cast<std::size_t>(it - pts.begin())];
        if (slot) throw Error("BadLifting", "height given twice at " + to_string(m));
        slot = v;
        slot->canonicalize();
    }
    Lifting l{p, {}};
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!h[i]) throw Error("BadLifting", "no height at lattice point " + to_string(pts[i]));
        l.heights.push_back(*h[i]);
    }
    return l;
}

const Rat& Lifting::height(const IntVec& m) const {
    const auto& pts = polytope.lattice_points();
    auto it = std::lower_bound(pts.begin(), pts.end(), m);
    if (it == pts.end() || *it != m) throw Error("NotContained", to_string(m) + " is not a lattice point");
    return heights[static_cast<std::size_t>(it - pts.begin())];
}

Subdivision Subdivision::from_cells(const LatticePolytope& parent, const std::vector<std::vector<IntVec>>& cells,
                                    std::string provenance) {
    Subdivision s;
    s.parent_ = parent;
    s.provenance_ = std::move(provenance);
    for (const auto& c : cells) s.cell_polytopes_.push_back(LatticePolytope::from_points(c));
    std::sort(s.cell_polytopes_.begin(), s.cell_polytopes_.end(),
              [](const LatticePolytope& a, const LatticePolytope& b) { return a.vertices() < b.vertices(); });
    for (const auto& c : s.cell_polytopes_)
        for (const auto& v : c.vertices()) s.vertices_.push_back(v);
    std::sort(s.vertices_.begin(), s.vertices_.end());
    s.vertices_.erase(std::unique(s.vertices_.begin(), s.vertices_.end()), s.vertices_.end());

    auto global = [&](const IntVec& v) {
        return static_cast<std::size_t>(std::lower_bound(s.vertices_.begin(), s.vertices_.end(), v) -
                                        s.vertices_.begin());
    };

    std::map<std::vector<std::size_t>, std::size_t> face_dims;
    for (const auto& c : s.cell_polytopes_) {
        std::vector<std::size_t> ids;
        for (const auto& v : c.vertices()) ids.push_back(global(v));
        s.cells_.push_back(ids);
        for (const auto& e : c.face_lattice().faces()) {
            std::vector<std::size_t> g;
            for (auto i : e.vertices) g.push_back(ids[i]);
            std::sort(g.begin(), g.end());
            face_dims.emplace(std::move(g), e.dim);
        }
    }

    // parent facets through each vertex
    std::vector<std::vector<bool>> on_facet(s.vertices_.size());
    const bool has_facets = parent.dim() > 0;
    for (std::size_t i = 0; i < s.vertices_.size(); ++i) {
        auto c = parent.affine().coords(s.vertices_[i]);
        if (!c || !parent.contains_point(s.vertices_[i]))
            throw Error("NotContained", "cell vertex " + to_string(s.vertices_[i]) + " outside the parent");
        if (!has_facets) continue;
        for (const auto& f : parent.facets()) on_facet[i].push_back(dot(f.normal, *c) == f.offset);
    }

    for (auto& [verts, dim] : face_dims) {
        SubFace f;
        f.vertices = verts;
        f.dim = dim;
        if (has_facets) {
            for (std::size_t k = 0; k < parent.facets().size() && !f.boundary; ++k) {
                bool all = true;
                for (auto i : verts)
                    if (!on_facet[i][k]) {
                        all = false;
                        break;
                    }
                f.boundary = all;
            }
        }
        s.faces_.push_back(std::move(f));
    }
    std::sort(s.faces_.begin(), s.faces_.end(), [](const SubFace& a, const SubFace& b) {
        return std::tie(a.dim, a.vertices) < std::tie(b.dim, b.vertices);
    });
    for (std::size_t k = 0; k < s.faces_.size(); ++k) s.faces_[k].id = "f" + std::to_string(k);
    return s;
}

Subdivision Subdivision::trivial(const LatticePolytope& parent) {
    return from_cells(parent, {parent.vertices()}, "trivial");
}

std::vector<IntVec> Subdivision::face_vertices(std::size_t face) const {
    std::vector<IntVec> out;
    for (auto i : faces_.at(face).vertices) out.push_back(vertices_[i]);
    return out;
}

LatticePolytope Subdivision::face_polytope(std::size_t face) const {
    return LatticePolytope::from_points(face_vertices(face));
}

std::optional<std::size_t> Subdivision::find_face(const std::vector<IntVec>& verts) const {
    std::vector<std::size_t> ids;
    for (const auto& v : verts) {
        auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
        if (it == vertices_.end() || *it != v) return std::nullopt;
        ids.push_back(static_cast<std::size_t>(it - vertices_.begin()));
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (std::size_t k = 0; k < faces_.size(); ++k)
        if (faces_[k].vertices == ids) return k;
    return std::nullopt;
}

std::optional<std::size_t> Subdivision::find_face_by_id(const std::string& id) const {
    for (std::size_t k = 0; k < faces_.size(); ++k)
        if (faces_[k].id == id) return k;
    return std::nullopt;
}

Subdivision lower_envelope_subdivision(const Lifting& lifting) {
    const auto& P = lifting.polytope;
    const auto& pts = P.lattice_points();
    if (lifting.heights.size() != pts.size()) throw Error("BadLifting", "heights do not match the lattice points");
    const std::size_t r = P.dim();
    if (r == 0) return Subdivision::trivial(P);

    Int den = 1;
    for (const auto& h : lifting.heights) den = lcm(den, h.get_den());
    std::vector<IntVec> lifted;
    lifted.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        IntVec c = *P.affine().coords(pts[i]);
        Rat h = lifting.heights[i] * den;
        c.push_back(h.get_num());
        lifted.push_back(std::move(c));
    }
    if (affine_dimension(lifted) <= r) {
        return Subdivision::from_cells(P, {P.vertices()}, "lower-envelope");
    }
    auto hull = detail::convex_hull(lifted);
    std::vector<std::vector<IntVec>> cells;
    for (const auto& f : hull.facets) {
        if (f.normal[r] <= 0) continue;
        std::vector<IntVec> cell;
        for (auto i : f.points) cell.push_back(pts[i]);
        cells.push_back(std::move(cell));
    }
    return Subdivision::from_cells(P, cells, "lower-envelope");
}

Subdivision slice_subdivision(const LatticePolytope& p, const IntVec& functional, const std::vector<Int>& levels) {
    if (functional.size() != p.ambient_dim()) throw Error("DimMismatch", "functional has the wrong length");
    if (std::all_of(functional.begin(), functional.end(), [](const Int& x) { return x == 0; }))
        throw Error("ZeroVector", "slicing functional is zero");
    for (std::size_t i = 1; i < levels.size(); ++i)
        if (levels[i] <= levels[i - 1]) throw Error("BadParameter", "levels must be strictly increasing");

    const auto& verts = p.vertices();
    std::vector<Int> val;
    for (const auto& v : verts) val.push_back(dot(functional, v));
    Int lo = *std::min_element(val.begin(), val.end());
    Int hi = *std::max_element(val.begin(), val.end());
    std::vector<Int> bounds{lo};
    for (const auto& l : levels)
        if (l > lo && l < hi) bounds.push_back(l);
    bounds.push_back(hi);
    if (bounds.size() == 2) return Subdivision::from_cells(p, {verts}, "slicing");

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& e : p.face_lattice().faces())
        if (e.dim == 1) edges.emplace_back(e.vertices[0], e.vertices[1]);

    std::vector<std::vector<IntVec>> cells;
    for (std::size_t k = 0; k + 1 < bounds.size(); ++k) {
        const Int &a = bounds[k], &b = bounds[k + 1];
        std::vector<IntVec> cell;
        for (std::size_t i = 0; i < verts.size(); ++i)
            if (val[i] >= a && val[i] <= b) cell.push_back(verts[i]);
        for (auto [i, j] : edges) {
            for (const Int* L : {&a, &b}) {
                if ((val[i] - *L) * (val[j] - *L) >= 0) continue;
                Rat t(*L - val[i], val[j] - val[i]);
                t.canonicalize();
                IntVec x(verts[i].size());
                for (std::size_t c = 0; c < x.size(); ++c) {
                    Rat y = verts[i][c] + t * (verts[j][c] - verts[i][c]);
                    if (!is_integral(y))
                        throw Error("NotIntegral", "cut point of edge " + to_string(verts[i]) + "-" +
                                                       to_string(verts[j]) + " at level " + L->get_str() +
                                                       " is not a lattice point");
                    x[c] = y.get_num();
                }
                cell.push_back(std::move(x));
            }
        }
        cells.push_back(std::move(cell));
    }
    return Subdivision::from_cells(p, cells, "slicing");
}

Lifting slicing_lifting(const LatticePolytope& p, const IntVec& functional, const std::vector<Int>& levels) {
    return Lifting::from_function(p, [&](const IntVec& m) {
        Int v = dot(functional, m), h = 0;
        for (const auto& l : levels)
            if (v > l) h += v - l;
        return Rat(h);
    });
}

namespace {

Rat sq_dist(const RatVec& a, const IntVec& x) {
    Rat s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        Rat d = a[i] - x[i];
        s += d * d;
    }
    return s;
}

}  // namespace

Rat nearest_point_sq_dist(const LatticePolytope& t, const IntVec& x) {
    if (x.size() != t.ambient_dim()) throw Error("DimMismatch", "point has the wrong length");
    std::optional<Rat> best;
    for (const auto& face : t.face_lattice().faces()) {
        auto verts = t.face_vertices(face.vertices);
        RatVec y;
        if (verts.size() == 1) {
            y = to_rat(verts[0]);
        } else {
            // orthogonal projection onto the affine hull: (B B^T) c = B (x - o)
            auto lat = affine_lattice_basis(verts);
            const std::size_t k = lat.dim();
            IntMatrix G(k, k);
            RatVec rhs(k);
            IntVec d = sub(x, lat.origin);
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t j = 0; j < k; ++j) G(i, j) = dot(lat.basis[i], lat.basis[j]);
                rhs[i] = dot(lat.basis[i], d);
            }
            auto sol = solve_rational(G, rhs);
            y = to_rat(lat.origin);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < y.size(); ++j) y[j] += sol->particular[i] * lat.basis[i][j];
            if (!t.contains_point(y)) continue;
        }
        Rat d = sq_dist(y, x);
        if (!best || d < *best) best = d;
    }
    return *best;
}

Lifting distance_lifting(const LatticePolytope& p, const LatticePolytope& t, DistanceMode mode) {
    if (p.ambient_dim() != t.ambient_dim()) throw Error("DimMismatch", "ambient dimensions differ");
    if (mode == DistanceMode::Continuous)
        return Lifting::from_function(p, [&](const IntVec& m) { return nearest_point_sq_dist(t, m); });
    const auto& targets = t.lattice_points();
    return Lifting::from_function(p, [&](const IntVec& m) {
        std::optional<Int> best;
        for (const auto& z : targets) {
            IntVec d = sub(m, z);
            Int s = dot(d, d);
            if (!best || s < *best) best = s;
        }
        return Rat(*best);
    });
}

std::vector<std::size_t> interior_faces(const Subdivision& s) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < s.faces().size(); ++k)
        if (!s.faces()[k].boundary) out.push_back(k);
    return out;
}

std::vector<std::size_t> face_count_by_dim(const Subdivision& s) {
    std::vector<std::size_t> counts(s.parent().dim() + 1, 0);
    for (const auto& f : s.faces()) ++counts.at(f.dim);
    return counts;
}

long euler_interior_identity(const Subdivision& s, std::size_t face) {
    const auto& d = s.faces().at(face).vertices;
    const long top = static_cast<long>(s.parent().dim());
    long sum = 0;
    for (const auto& e : s.faces()) {
        if (e.boundary || e.dim < s.faces()[face].dim) continue;
        if (!std::includes(e.vertices.begin(), e.vertices.end(), d.begin(), d.end())) continue;
        sum += ((top - static_cast<long>(e.dim)) % 2 == 0) ? 1 : -1;
    }
    return sum;
}

}  // namespace tropirrat

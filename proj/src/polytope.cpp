#include "tropirrat/polytope.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <tuple>

namespace tropirrat {

FacePoset::FacePoset(std::vector<FaceEntry> faces) : faces_(std::move(faces)) {
    std::sort(faces_.begin(), faces_.end(), [](const FaceEntry& a, const FaceEntry& b) {
        return std::tie(a.dim, a.vertices) < std::tie(b.dim, b.vertices);
    });
}

std::vector<std::size_t> FacePoset::f_vector() const {
    std::vector<std::size_t> f;
    for (const auto& e : faces_) {
        if (f.size() <= e.dim) f.resize(e.dim + 1, 0);
        ++f[e.dim];
    }
    return f;
}

std::optional<std::size_t> FacePoset::find(const std::vector<std::size_t>& vertices) const {
    for (std::size_t i = 0; i < faces_.size(); ++i)
        if (faces_[i].vertices == vertices) return i;
    return std::nullopt;
}

bool FacePoset::contains(std::size_t b, std::size_t a) const {
    const auto& vb = faces_[b].vertices;
    const auto& va = faces_[a].vertices;
    return std::includes(vb.begin(), vb.end(), va.begin(), va.end());
}

struct LatticePolytope::Lazy {
    std::once_flag faces_once;
    FacePoset faces;
    std::once_flag points_once;
    std::vector<IntVec> points;
};

LatticePolytope LatticePolytope::from_points(const std::vector<IntVec>& input) {
    if (input.empty()) throw Error("EmptyInput", "polytope from no points");
    const std::size_t n = input.front().size();
    for (const auto& p : input)
        if (p.size() != n) throw Error("RaggedInput", "points of different lengths");
    std::vector<IntVec> pts = input;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    LatticePolytope P;
    P.ambient_dim_ = n;
    P.affine_ = affine_lattice_basis(pts);
    P.lazy_ = std::make_shared<Lazy>();
    const std::size_t r = P.affine_.dim();

    std::vector<IntVec> coords;
    coords.reserve(pts.size());
    for (const auto& p : pts) coords.push_back(*P.affine_.coords(p));

    if (r == 0) {
        P.vertices_ = {pts[0]};
        P.vertex_coords_ = {coords[0]};
        return P;
    }
    auto hull = detail::convex_hull(coords);
    std::vector<std::size_t> to_vertex(pts.size(), SIZE_MAX);
    for (std::size_t k = 0; k < hull.vertices.size(); ++k) {
        to_vertex[hull.vertices[k]] = k;
        P.vertices_.push_back(pts[hull.vertices[k]]);
        P.vertex_coords_.push_back(coords[hull.vertices[k]]);
    }
    for (auto& hf : hull.facets) {
        Facet f{std::move(hf.normal), std::move(hf.offset), {}};
        for (auto i : hf.points)
            if (to_vertex[i] != SIZE_MAX) f.vertices.push_back(to_vertex[i]);
        P.facets_.push_back(std::move(f));
    }
    return P;
}

const std::vector<Facet>& LatticePolytope::facets() const {
    if (dim() == 0) throw Error("NoFacets", "a point has no facets");
    return facets_;
}

const FacePoset& LatticePolytope::face_lattice() const {
    std::call_once(lazy_->faces_once, [this] {
        const std::size_t nv = vertices_.size();
        std::vector<std::size_t> all(nv);
        for (std::size_t i = 0; i < nv; ++i) all[i] = i;

        std::set<std::vector<std::size_t>> seen{all};
        std::vector<std::vector<std::size_t>> order{all};
        for (const auto& f : facets_)
            if (seen.insert(f.vertices).second) order.push_back(f.vertices);
        for (std::size_t k = 1; k < order.size(); ++k) {
            for (const auto& f : facets_) {
                std::vector<std::size_t> meet;
                std::set_intersection(order[k].begin(), order[k].end(), f.vertices.begin(),
                                      f.vertices.end(), std::back_inserter(meet));
                if (!meet.empty() && seen.insert(meet).second) order.push_back(std::move(meet));
            }
        }
        std::vector<FaceEntry> entries;
        entries.reserve(order.size());
        for (auto& vs : order) {
            FaceEntry e;
            std::vector<IntVec> c;
            for (auto i : vs) c.push_back(vertex_coords_[i]);
            e.dim = affine_dimension(c);
            for (std::size_t fi = 0; fi < facets_.size(); ++fi) {
                const auto& fv = facets_[fi].vertices;
                if (std::includes(fv.begin(), fv.end(), vs.begin(), vs.end())) e.facets.push_back(fi);
            }
            e.vertices = std::move(vs);
            entries.push_back(std::move(e));
        }
        lazy_->faces = FacePoset(std::move(entries));
    });
    return lazy_->faces;
}

const std::vector<IntVec>& LatticePolytope::lattice_points() const {
    std::call_once(lazy_->points_once, [this] {
        const std::size_t r = dim();
        auto& out = lazy_->points;
        if (r == 0) {
            out = vertices_;
            return;
        }
        IntVec lo = vertex_coords_[0], hi = vertex_coords_[0];
        for (const auto& c : vertex_coords_)
            for (std::size_t k = 0; k < r; ++k) {
                if (c[k] < lo[k]) lo[k] = c[k];
                if (c[k] > hi[k]) hi[k] = c[k];
            }
        const std::size_t nf = facets_.size();
        // tail[f][k]: largest possible value of sum_{j >= k} normal_j c_j over the box
        std::vector<std::vector<Int>> tail(nf, std::vector<Int>(r + 1, Int(0)));
        for (std::size_t f = 0; f < nf; ++f)
            for (std::size_t k = r; k-- > 0;) {
                const Int& a = facets_[f].normal[k];
                tail[f][k] = tail[f][k + 1] + std::max(Int(a * lo[k]), Int(a * hi[k]));
            }
        IntVec c(r);
        std::vector<std::vector<Int>> partial(r + 1, std::vector<Int>(nf, Int(0)));
        auto rec = [&](auto&& self, std::size_t k) -> void {
            if (k == r) {
                out.push_back(affine_.point(c));
                return;
            }
            for (Int x = lo[k]; x <= hi[k]; ++x) {
                bool ok = true;
                for (std::size_t f = 0; f < nf; ++f) {
                    partial[k + 1][f] = partial[k][f] + facets_[f].normal[k] * x;
                    if (partial[k + 1][f] + tail[f][k + 1] < facets_[f].offset) {
                        ok = false;
                        break;
                    }
                }
                if (!ok) continue;
                c[k] = x;
                self(self, k + 1);
            }
        };
        rec(rec, 0);
        std::sort(out.begin(), out.end());
    });
    return lazy_->points;
}

bool LatticePolytope::contains_point(const RatVec& x) const {
    if (x.size() != ambient_dim_) throw Error("DimMismatch", "point has the wrong length");
    auto c = affine_.rational_coords(x);
    if (!c) return false;
    for (const auto& f : facets_)
        if (dot(to_rat(f.normal), *c) < f.offset) return false;
    return true;
}

bool LatticePolytope::contains_point(const IntVec& x) const { return contains_point(to_rat(x)); }

std::vector<IntVec> LatticePolytope::face_vertices(const std::vector<std::size_t>& idx) const {
    std::vector<IntVec> out;
    out.reserve(idx.size());
    for (auto i : idx) out.push_back(vertices_[i]);
    return out;
}

std::optional<std::size_t> LatticePolytope::vertex_index(const IntVec& v) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
    if (it == vertices_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
}

bool contains_polytope(const LatticePolytope& p, const LatticePolytope& q) {
    if (p.ambient_dim() != q.ambient_dim()) throw Error("DimMismatch", "ambient dimensions differ");
    for (const auto& v : q.vertices())
        if (!p.contains_point(v)) return false;
    return true;
}

bool is_face_of(const LatticePolytope& p, const LatticePolytope& f) {
    if (!contains_polytope(p, f)) throw Error("NotContained", "candidate face is not inside the polytope");
    std::vector<std::size_t> idx;
    for (const auto& v : f.vertices()) {
        auto i = p.vertex_index(v);
        if (!i) return false;
        idx.push_back(*i);
    }
    std::sort(idx.begin(), idx.end());
    std::vector<std::size_t> closure(p.vertices().size());
    for (std::size_t i = 0; i < closure.size(); ++i) closure[i] = i;
    if (p.dim() > 0) {
        for (const auto& fc : p.facets()) {
            if (!std::includes(fc.vertices.begin(), fc.vertices.end(), idx.begin(), idx.end())) continue;
            std::vector<std::size_t> meet;
            std::set_intersection(closure.begin(), closure.end(), fc.vertices.begin(), fc.vertices.end(),
                                  std::back_inserter(meet));
            closure = std::move(meet);
        }
    }
    return closure == idx;
}

bool is_in_boundary(const LatticePolytope& big, const std::vector<IntVec>& delta) {
    std::vector<IntVec> coords;
    for (const auto& v : delta) {
        if (v.size() != big.ambient_dim()) throw Error("DimMismatch", "ambient dimensions differ");
        if (!big.contains_point(v)) throw Error("NotContained", "face vertex " + to_string(v) + " outside");
        coords.push_back(*big.affine().coords(v));
    }
    if (big.dim() == 0) return false;
    for (const auto& f : big.facets()) {
        bool all = true;
        for (const auto& c : coords)
            if (dot(f.normal, c) != f.offset) {
                all = false;
                break;
            }
        if (all) return true;
    }
    return false;
}

bool is_in_boundary(const LatticePolytope& big, const LatticePolytope& delta) {
    if (big.ambient_dim() != delta.ambient_dim()) throw Error("DimMismatch", "ambient dimensions differ");
    return is_in_boundary(big, delta.vertices());
}

Int lattice_length(const LatticePolytope& segment) {
    if (segment.dim() != 1) throw Error("NotASegment", "lattice length needs a 1-dimensional polytope");
    IntVec d = sub(segment.vertices()[1], segment.vertices()[0]);
    Int g = 0;
    for (const auto& x : d) g = gcd(g, x);
    return g;
}

namespace {

void require_positive(long x, const char* what) {
    if (x <= 0) throw Error("BadParameter", std::string(what) + " must be positive");
}

IntVec unit(std::size_t n, std::size_t i, long scale) {
    IntVec v(n, Int(0));
    v[i] = scale;
    return v;
}

}  // namespace

LatticePolytope dilated_simplex(std::size_t n, long d) {
    require_positive(static_cast<long>(n), "dimension");
    require_positive(d, "dilation factor");
    std::vector<IntVec> pts{IntVec(n, Int(0))};
    for (std::size_t i = 0; i < n; ++i) pts.push_back(unit(n, i, d));
    return LatticePolytope::from_points(pts);
}

LatticePolytope homogeneous_simplex(std::size_t n, long d) {
    require_positive(static_cast<long>(n), "dimension");
    require_positive(d, "degree");
    std::vector<IntVec> pts;
    for (std::size_t i = 0; i <= n; ++i) pts.push_back(unit(n + 1, i, d));
    return LatticePolytope::from_points(pts);
}

LatticePolytope product(const LatticePolytope& p, const LatticePolytope& q) {
    std::vector<IntVec> pts;
    for (const auto& a : p.vertices())
        for (const auto& b : q.vertices()) {
            IntVec v = a;
            v.insert(v.end(), b.begin(), b.end());
            pts.push_back(std::move(v));
        }
    return LatticePolytope::from_points(pts);
}

LatticePolytope hpt_polytope() {
    return LatticePolytope::from_points({make_ivec({0, 0, 0, 0, 0}), make_ivec({2, 0, 0, 0, 0}),
                                         make_ivec({0, 2, 0, 0, 0}), make_ivec({1, 1, 2, 0, 0}),
                                         make_ivec({1, 0, 0, 2, 0}), make_ivec({0, 1, 0, 0, 2})});
}

LatticePolytope quartic_double_polytope(std::size_t n) {
    require_positive(static_cast<long>(n), "dimension");
    std::vector<IntVec> pts{IntVec(n + 1, Int(0))};
    for (std::size_t i = 0; i < n; ++i) pts.push_back(unit(n + 1, i, 4));
    pts.push_back(unit(n + 1, n, 2));
    return LatticePolytope::from_points(pts);
}

LatticePolytope bidegree_box(std::size_t l, std::size_t m, long a, long b) {
    return product(dilated_simplex(l, a), dilated_simplex(m, b));
}

LatticePolytope hz_polytope() {
    return LatticePolytope::from_points({make_ivec({6, 14, 17, 65}), make_ivec({1, 0, 0, 0}),
                                         make_ivec({0, 1, 0, 0}), make_ivec({0, 0, 1, 0}),
                                         make_ivec({0, 0, 0, 1})});
}

}  // namespace tropirrat

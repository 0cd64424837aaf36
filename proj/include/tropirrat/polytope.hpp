#pragma once

// Lattice polytopes given by vertices, with facets and faces computed in the
// coordinates of their own affine lattice.

#include "tropirrat/arith.hpp"
#include "tropirrat/linalg.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace tropirrat {

/// Inequality normal . c >= offset on affine-lattice coordinates c.
struct Facet {
    IntVec normal;
    Int offset;
    std::vector<std::size_t> vertices;  // indices into the polytope's vertex list
};

/// A face of a polytope, stored by the indices of its vertices.
struct FaceEntry {
    std::vector<std::size_t> vertices;  // sorted
    std::size_t dim = 0;
    std::vector<std::size_t> facets;  // parent facets containing the face
};

class FacePoset {
public:
    FacePoset() = default;
    explicit FacePoset(std::vector<FaceEntry> faces);

    const std::vector<FaceEntry>& faces() const noexcept { return faces_; }
    std::size_t size() const noexcept { return faces_.size(); }
    /// Face counts indexed by dimension.
    std::vector<std::size_t> f_vector() const;
    /// Index of the face with exactly this (sorted) vertex set.
    std::optional<std::size_t> find(const std::vector<std::size_t>& vertices) const;
    /// True if face a is contained in face b.
    bool contains(std::size_t b, std::size_t a) const;

private:
    std::vector<FaceEntry> faces_;  // sorted by (dim, vertices)
};

class LatticePolytope {
public:
    LatticePolytope() = default;

    /// Convex hull of integer points. Throws Error("RaggedInput") on mixed lengths,
    /// Error("EmptyInput") on an empty list.
    static LatticePolytope from_points(const std::vector<IntVec>& points);

    std::size_t ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t dim() const noexcept { return affine_.dim(); }
    const std::vector<IntVec>& vertices() const noexcept { return vertices_; }
    const AffineLattice& affine() const noexcept { return affine_; }
    /// Affine-lattice coordinates of every vertex.
    const std::vector<IntVec>& vertex_coords() const noexcept { return vertex_coords_; }

    /// Irredundant inward facets. Throws Error("NoFacets") for a point.
    const std::vector<Facet>& facets() const;
    const FacePoset& face_lattice() const;
    /// Integer points, lexicographically sorted.
    const std::vector<IntVec>& lattice_points() const;

    /// Affine-lattice coordinates of a rational point if it lies in the polytope.
    bool contains_point(const RatVec& x) const;
    bool contains_point(const IntVec& x) const;

    /// Vertices of the face given by vertex indices.
    std::vector<IntVec> face_vertices(const std::vector<std::size_t>& idx) const;
    std::optional<std::size_t> vertex_index(const IntVec& v) const;

    friend bool operator==(const LatticePolytope& a, const LatticePolytope& b) {
        return a.vertices_ == b.vertices_;
    }

private:
    struct Lazy;

    std::size_t ambient_dim_ = 0;
    std::vector<IntVec> vertices_;
    std::vector<IntVec> vertex_coords_;
    AffineLattice affine_;
    std::vector<Facet> facets_;
    std::shared_ptr<Lazy> lazy_;
};

/// Every vertex of q satisfies every facet inequality of p (and lies in its affine hull).
bool contains_polytope(const LatticePolytope& p, const LatticePolytope& q);
/// f is a face of p. Throws Error("NotContained") when f is not inside p.
bool is_face_of(const LatticePolytope& p, const LatticePolytope& f);
/// delta lies in a facet of big. Throws Error("NotContained") when delta is not inside big.
bool is_in_boundary(const LatticePolytope& big, const LatticePolytope& delta);
bool is_in_boundary(const LatticePolytope& big, const std::vector<IntVec>& delta_vertices);

/// Lattice length of a segment. Throws Error("NotASegment") unless dim = 1.
Int lattice_length(const LatticePolytope& segment);

/// d times the standard simplex conv(0, e_1, ..., e_n) in R^n.
LatticePolytope dilated_simplex(std::size_t n, long d);
/// {u in R^{n+1}_{>=0} : u_0 + ... + u_n = d}, the Newton polytope of a degree d form.
LatticePolytope homogeneous_simplex(std::size_t n, long d);
LatticePolytope product(const LatticePolytope& p, const LatticePolytope& q);
/// Newton polytope of the Hassett-Pirutka-Tschinkel quartic in R^5.
LatticePolytope hpt_polytope();
/// {u in R^{n+1}_{>=0} : u_1 + ... + u_n + 2 u_{n+1} <= 4}.
LatticePolytope quartic_double_polytope(std::size_t n);
/// a Delta_l x b Delta_m.
LatticePolytope bidegree_box(std::size_t l, std::size_t m, long a, long b);
/// conv{(6,14,17,65), e_1, e_2, e_3, e_4}.
LatticePolytope hz_polytope();

namespace detail {

struct HullFacet {
    IntVec normal;
    Int offset;
    std::vector<std::size_t> points;  // input indices on the hyperplane, sorted
};

struct HullResult {
    std::vector<HullFacet> facets;
    std::vector<std::size_t> vertices;  // input indices of extreme points, sorted
};

/// Convex hull of distinct points spanning Z^r affinely (r >= 1).
HullResult convex_hull(const std::vector<IntVec>& points);

}  // namespace detail

}  // namespace tropirrat

#pragma once

// Regular integral subdivisions: lower envelopes of liftings and hyperplane slicings.

#include "tropirrat/polytope.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tropirrat {

/// Rational heights on the lattice points of a polytope.
struct Lifting {
    LatticePolytope polytope;
    std::vector<Rat> heights;  // aligned with polytope.lattice_points()

    /// Heights given by a function of the lattice point.
    static Lifting from_function(const LatticePolytope& p, const std::function<Rat(const IntVec&)>& h);
    /// Heights given as (point, value) pairs; every lattice point exactly once.
    static Lifting from_pairs(const LatticePolytope& p, const std::vector<std::pair<IntVec, Rat>>& values);
    const Rat& height(const IntVec& m) const;
};

struct SubFace {
    std::string id;                     // "f<k>" in (dim, vertices) order
    std::vector<std::size_t> vertices;  // indices into Subdivision::vertices(), sorted
    std::size_t dim = 0;
    bool boundary = false;
};

class Subdivision {
public:
    /// Assembles the face poset of a cell complex given by cell vertex lists.
    static Subdivision from_cells(const LatticePolytope& parent, const std::vector<std::vector<IntVec>>& cells,
                                  std::string provenance);
    static Subdivision trivial(const LatticePolytope& parent);

    const LatticePolytope& parent() const noexcept { return parent_; }
    const std::string& provenance() const noexcept { return provenance_; }
    /// Lexicographically sorted vertices of all cells.
    const std::vector<IntVec>& vertices() const noexcept { return vertices_; }
    const std::vector<std::vector<std::size_t>>& cells() const noexcept { return cells_; }
    const std::vector<LatticePolytope>& cell_polytopes() const noexcept { return cell_polytopes_; }
    /// Faces of all cells, sorted by (dim, vertex indices).
    const std::vector<SubFace>& faces() const noexcept { return faces_; }

    std::vector<IntVec> face_vertices(std::size_t face) const;
    LatticePolytope face_polytope(std::size_t face) const;
    /// Face with exactly these vertices (in any order), if any.
    std::optional<std::size_t> find_face(const std::vector<IntVec>& vertices) const;
    std::optional<std::size_t> find_face_by_id(const std::string& id) const;

private:
    LatticePolytope parent_;
    std::string provenance_;
    std::vector<IntVec> vertices_;
    std::vector<std::vector<std::size_t>> cells_;
    std::vector<LatticePolytope> cell_polytopes_;
    std::vector<SubFace> faces_;
};

/// Cells are the projections of the lower facets of the lifted point configuration.
Subdivision lower_envelope_subdivision(const Lifting& lifting);

/// Cuts p by the hyperplanes functional . x = level. Throws Error("NotIntegral")
/// if a cell vertex is not a lattice point.
Subdivision slice_subdivision(const LatticePolytope& p, const IntVec& functional, const std::vector<Int>& levels);

/// The convex piecewise-linear function sum_i max(0, functional . x - level_i),
/// whose lower envelope reproduces slice_subdivision.
Lifting slicing_lifting(const LatticePolytope& p, const IntVec& functional, const std::vector<Int>& levels);

/// Exact squared Euclidean distance from x to t.
Rat nearest_point_sq_dist(const LatticePolytope& t, const IntVec& x);

enum class DistanceMode {
    Continuous,          // squared distance to the polytope t
    NearestLatticePoint  // squared distance to the nearest lattice point of t
};

Lifting distance_lifting(const LatticePolytope& p, const LatticePolytope& t,
                         DistanceMode mode = DistanceMode::Continuous);

/// Indices of faces not contained in the boundary of the parent.
std::vector<std::size_t> interior_faces(const Subdivision& s);

std::vector<std::size_t> face_count_by_dim(const Subdivision& s);

/// Sum over interior faces e containing the given face of (-1)^(dim parent - dim e).
long euler_interior_identity(const Subdivision& s, std::size_t face);

}  // namespace tropirrat

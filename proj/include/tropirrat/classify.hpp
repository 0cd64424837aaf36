#pragma once

// Rationality classification of faces: lattice width, unimodular equivalence,
// unimodular triangulations of dilated simplices and the registry of known
// polytopes.

#include "tropirrat/polytope.hpp"
#include "tropirrat/subdivision.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tropirrat {

/// x -> A x + b on ambient coordinates (A is n_Q x n_P).
struct UnimodularMap {
    IntMatrix A;
    IntVec b;
    IntVec apply(const IntVec& x) const;
};

struct WidthWitness {
    IntVec functional;  // on affine-lattice coordinates, first non-zero entry positive
    IntVec ambient;     // the same functional on ambient coordinates (up to a constant)
    Int low;            // functional takes the values {low, ..., high} on the vertices
    Int high;
};

/// Width-one certificate in the polytope's own lattice, or nullopt when the
/// lattice width exceeds one. Complete for every vertex count: it tries all
/// level assignments of an affine basis of vertices. Throws Error("BadParameter") for a point.
std::optional<WidthWitness> width_le_one(const LatticePolytope& p);

/// Minimum width over primitive functionals with sup-norm <= bound (affine-lattice
/// coordinates). Ties go to the smallest sup-norm, then the smallest
/// 1-norm, then the lexicographically largest.
WidthWitness width_upper(const LatticePolytope& p, long bound);

std::optional<UnimodularMap> unimodular_equivalent(const LatticePolytope& p, const LatticePolytope& q);

struct AlcoveTriangulation {
    std::vector<std::vector<IntVec>> simplices;
    Lifting lifting;         // convex lifting inducing the triangulation
    bool verified = false;   // unimodular, d^n simplices, equal to the lower envelope of `lifting`
};

/// Triangulation of d Delta_n by the hyperplanes y_i in Z and y_i - y_j in Z,
/// where y_i = x_i + ... + x_n.
AlcoveTriangulation alcove_triangulation(std::size_t n, long d);

/// If p is unimodularly equivalent to d Delta_m, the transported alcove
/// triangulation as a lower-envelope subdivision of p.
std::optional<Subdivision> unimodular_triangulation(const LatticePolytope& p);

/// 2^(d-2) + 3d/2 - 5 for even d >= 4. Throws Error("BadDegree") otherwise.
Int schreieder_even_bound(long d);

// ---- statuses ----

struct WidthOne {
    WidthWitness witness;
};
struct UnimodularTriangulation {
    std::size_t simplices = 0;
};
struct DbMatch {
    std::string key;
    std::string citation;
    UnimodularMap map;
};
struct LowDim {};

struct StablyRational {
    std::variant<WidthOne, UnimodularTriangulation, DbMatch, LowDim> reason;
};
struct KnownIrrational {
    std::string key;
    std::string citation;
    std::optional<UnimodularMap> map;  // absent for parametric families
};
struct Unknown {
    std::string face_id;
    std::optional<WidthWitness> width_bound;  // best functional found by the bounded search
};

using RationalityStatus = std::variant<StablyRational, KnownIrrational, Unknown>;

bool is_stably_rational(const RationalityStatus& s);
bool is_known_irrational(const RationalityStatus& s);
/// Short name of the status ("width-one", "db-match", "known-irrational", ...).
std::string status_name(const RationalityStatus& s);
std::string status_citation(const RationalityStatus& s);

// ---- registry ----

struct KnownPolytopeEntry {
    std::string key;
    LatticePolytope polytope;
    bool irrational = true;
    std::string citation;
};

class KnownPolytopeDB {
public:
    /// The built-in entries.
    static KnownPolytopeDB builtin();
    /// Entries from a JSON array [{"key", "vertices", "status", "citation"}].
    static KnownPolytopeDB from_json_text(const std::string& text);
    static KnownPolytopeDB load(const std::string& path);

    void add(KnownPolytopeEntry e);
    void merge(const KnownPolytopeDB& other);
    const std::vector<KnownPolytopeEntry>& entries() const noexcept { return entries_; }
    const KnownPolytopeEntry* find(const std::string& key) const;

private:
    std::vector<KnownPolytopeEntry> entries_;
};

/// Detects d Delta_m up to unimodular equivalence; returns (m, d).
std::optional<std::pair<std::size_t, long>> dilated_simplex_shape(const LatticePolytope& p);

/// Parametric rule: a very general degree d hypersurface of dimension n is stably
/// irrational (citation string), or nullopt when no cited range covers (n, d).
std::optional<std::string> hypersurface_irrationality_citation(std::size_t n, long d);

struct ClassifyOptions {
    long width_bound = 3;         // box for the bounded width search on unknown faces
    bool parametric_rules = true;
};

RationalityStatus classify_face(const LatticePolytope& face, const std::string& face_id, const KnownPolytopeDB& db,
                                const ClassifyOptions& options = {});

}  // namespace tropirrat

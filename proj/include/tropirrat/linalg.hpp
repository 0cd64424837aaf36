#pragma once

// Integer lattice normal forms and exact linear algebra.
//
// Conventions: vectors are rows. The Hermite form is row-style: pivot columns
// strictly increase going down, pivots are positive, entries above a pivot lie
// in [0, pivot), zero rows sit at the bottom. Every routine is a pure function.

#include "tropirrat/arith.hpp"

#include <optional>
#include <vector>

namespace tropirrat {

struct HermiteResult {
    IntMatrix H;  // H = U * M
    IntMatrix U;  // unimodular
};

struct SmithResult {
    IntMatrix S;  // S = U * M * V, diagonal, S(i,i) | S(i+1,i+1), non-negative
    IntMatrix U;
    IntMatrix V;
};

struct RationalSolution {
    RatVec particular;
    std::vector<RatVec> kernel_basis;
};

HermiteResult hermite_normal_form(const IntMatrix& M);
SmithResult smith_normal_form(const IntMatrix& M);

/// Solves A x = b over Q. Returns nullopt when the system is inconsistent.
std::optional<RationalSolution> solve_rational(const IntMatrix& A, const RatVec& b);

/// Determinant via fraction-free (Bareiss) elimination.
Int determinant(const IntMatrix& M);

/// Rank via fraction-free elimination.
std::size_t rank(const IntMatrix& M);
std::size_t rank(const std::vector<IntVec>& rows);

/// Affine rank (dimension of the affine hull) of a non-empty point set.
std::size_t affine_dimension(const std::vector<IntVec>& points);

/// Divides out the content. Throws Error("ZeroVector") on the zero vector.
IntVec primitive_part(const IntVec& v);

/// Basis (as rows, Hermite-reduced) of {x in Z^n : A x = 0}.
std::vector<IntVec> integer_kernel(const IntMatrix& A);

/// Basis of Z^n intersected with the rational row space of `rows` (the saturation).
std::vector<IntVec> saturated_basis(const std::vector<IntVec>& rows, std::size_t n);

struct AffineLattice {
    IntVec origin;
    std::vector<IntVec> basis;  // rows, Hermite-reduced
    IntMatrix left_inverse;     // n x r, basis * left_inverse = I_r

    std::size_t dim() const noexcept { return basis.size(); }
    /// Integer coordinates of x with respect to (origin, basis); nullopt if x is
    /// not in origin + span_Z(basis).
    std::optional<IntVec> coords(const IntVec& x) const;
    /// Rational coordinates of x; nullopt if x is off the affine span.
    std::optional<RatVec> rational_coords(const RatVec& x) const;
    IntVec point(const IntVec& coords) const;
    /// Ambient functional l' with l'(x) = l(coords(x)) + const on the affine span.
    IntVec ambient_functional(const IntVec& l) const;
};

/// Origin (the lexicographically smallest point) and a basis of the lattice
/// M_P = Z^n intersected with the linear span of the differences p - origin.
AffineLattice affine_lattice_basis(const std::vector<IntVec>& points);

}  // namespace tropirrat

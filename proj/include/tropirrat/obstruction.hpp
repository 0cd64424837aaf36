#pragma once

// Formal sums of stable birational classes, the alternating-sum obstruction and
// its verdict, variation side conditions, and the complete-intersection counts.

#include "tropirrat/classify.hpp"
#include "tropirrat/subdivision.hpp"

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tropirrat {

struct SBTag {
    enum class Kind { Point, Known, Unknown };
    Kind kind = Kind::Point;
    std::string name;

    static SBTag point() { return {Kind::Point, ""}; }
    static SBTag known(std::string key) { return {Kind::Known, std::move(key)}; }
    static SBTag unknown(std::string id) { return {Kind::Unknown, std::move(id)}; }

    /// "point", "known:<key>", "unknown:<id>".
    std::string str() const;
    /// Inverse of str(). Throws Error("Schema") on other strings.
    static SBTag parse(const std::string& s);

    auto operator<=>(const SBTag&) const = default;
};

class FormalSum {
public:
    void add(const SBTag& tag, const Int& coeff);
    Int coeff(const SBTag& tag) const;
    const std::map<SBTag, Int>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }
    std::string str() const;

    FormalSum operator-() const;
    friend FormalSum operator+(FormalSum a, const FormalSum& b);
    friend bool operator==(const FormalSum&, const FormalSum&) = default;

private:
    std::map<SBTag, Int> terms_;  // no zero coefficients
};

struct Assumptions {
    std::vector<std::pair<SBTag, SBTag>> distinct;
    std::vector<SBTag> not_point;
    std::vector<std::pair<SBTag, SBTag>> equal;
};

/// Statuses keyed by subdivision face index.
using StatusMap = std::map<std::size_t, RationalityStatus>;

/// Tag of a classified face. Known tags carry the registry key; when several
/// interior faces share a key the face id is appended, since their hypersurfaces
/// need not be stably birational to each other.
SBTag face_tag(const Subdivision& s, std::size_t face, const RationalityStatus& st, bool shared_key);

/// Tags of the interior faces of dimension >= 2, keyed by face index.
std::map<std::size_t, SBTag> face_tags(const Subdivision& s, const StatusMap& statuses);

/// Sum over interior faces of (-1)^dim times the class of the face.
/// Throws Error("UnclassifiedFace") when an interior face has no status.
FormalSum obstruction_sum(const Subdivision& s, const StatusMap& statuses);

/// Replaces every tag by the smallest tag it is assumed equal to.
FormalSum apply_equalities(const FormalSum& sum, const Assumptions& assumptions);

enum class Verdict { Nontrivial, Inconclusive };

struct VerdictResult {
    Verdict verdict = Verdict::Inconclusive;
    std::vector<std::string> transcript;
    /// For Inconclusive: a class label per tag reaching the target (0 = point).
    std::map<SBTag, int> assignment;
};

/// Nontrivial iff no identification of classes allowed by the assumptions maps
/// the sum to (-1)^dim_delta [point]. Throws Error("BadAssumptions") if the
/// assumptions contradict each other.
VerdictResult verdict(const FormalSum& sum, std::size_t dim_delta, const Assumptions& assumptions);

/// Exactly one interior face is known irrational and all others are stably rational.
bool check_irratpol(const Subdivision& s, const StatusMap& statuses);

struct VariationCheck {
    std::string condition;  // "pre", "a", "b", "c"
    std::string face;       // face id or description
    bool pass = false;
    std::string detail;
};

struct VariationReport {
    bool pass = false;
    std::vector<VariationCheck> checks;
};

/// Side conditions for varying the class while keeping the boundary face delta:
/// (a) delta is a face of the subdivision, (b) interior faces meeting delta are
/// stably rational, (c) every interior face has a subdivision whose interior
/// faces are stably rational. A stably rational face without a supplied
/// subdivision uses its trivial subdivision.
VariationReport check_variation_certificate(const LatticePolytope& big, const std::vector<IntVec>& delta,
                                            const Subdivision& s, const std::map<std::size_t, Subdivision>& subs,
                                            const KnownPolytopeDB& db, const ClassifyOptions& options = {});

struct CiStrata {
    FormalSum sum;
    std::size_t admissible = 0;
    SBTag deepest;  // the stratum of the full index set
    Int deepest_coeff;
};

/// Signed sum over index sets T of {(i,j) : j <= d_i} meeting every i, with sign (-1)^(|T| - r + 1).
CiStrata ci_strata_sum(const std::vector<long>& degrees);

struct PrimePowerCertificate {
    long p = 0;
    long nu = 0;
    std::vector<Int> binomials;  // C(d, j) for j = 1..d-1
};

/// For d = p^nu, checks that p divides every C(d, j), 0 < j < d.
std::optional<PrimePowerCertificate> prime_power_binomial_certificate(long d);

}  // namespace tropirrat

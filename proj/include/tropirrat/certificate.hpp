#pragma once

// End-to-end pipeline: subdivision, face classification, obstruction sum and
// verdict, packaged as a JSON certificate that can be re-checked.

#include "tropirrat/json_io.hpp"
#include "tropirrat/obstruction.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tropirrat {

struct Slicing {
    IntVec functional;
    std::vector<Int> levels;
};

struct PipelineInput {
    LatticePolytope polytope;
    std::optional<Lifting> lifting;  // exactly one of lifting / slicing
    std::optional<Slicing> slicing;
    Assumptions assumptions;
    ClassifyOptions options;
    bool require_classified = false;
};

struct Certificate {
    Subdivision subdivision;
    StatusMap statuses;
    FormalSum raw_sum;  // before equality assumptions
    FormalSum sum;      // after equality assumptions
    VerdictResult verdict;
    bool full_dimensional = true;
    Json json;
};

/// Runs the pipeline. Throws Error("UnclassifiedFace") if require_classified is
/// set and some interior face of dimension >= 2 stays Unknown.
Certificate certify(const PipelineInput& input, const KnownPolytopeDB& db);

/// Accepts {"distinct": [[a, b]], "not_point": [a], "equal": [[a, b]]} or the
/// certificate list [{"kind", "tags"}] written by assumptions_to_json.
Assumptions assumptions_from_json(const Json& j);
Json assumptions_to_json(const Assumptions& a);
Slicing slicing_from_strings(const std::string& functional, const std::string& levels);

/// Inputs recorded in a certificate (polytope, subdivision source, assumptions).
PipelineInput pipeline_input_from_certificate(const Json& cert);

struct VerifyReport {
    bool ok = false;
    std::string detail;
};

/// Re-runs the pipeline from the inputs recorded in cert and compares the result byte for byte.
VerifyReport verify_certificate(const Json& cert, const KnownPolytopeDB& db);

}  // namespace tropirrat

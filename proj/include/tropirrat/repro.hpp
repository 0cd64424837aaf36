#pragma once

// Named reproduction jobs: each rebuilds a published computation and compares
// it with frozen golden values.

#include "tropirrat/certificate.hpp"

#include <string>
#include <vector>

namespace tropirrat {

struct ReproCheck {
    std::string what;
    std::string expected;
    std::string actual;
    bool pass = false;
    std::string source;  // where the golden value comes from
};

struct ReproResult {
    std::string name;
    bool pass = false;
    std::vector<ReproCheck> checks;
    double seconds = 0;
    std::string error;  // set when the job threw
};

/// Registered job names in output order.
std::vector<std::string> repro_names();

/// Throws Error("UnknownJob") for an unregistered name.
ReproResult run_repro(const std::string& name, const ClassifyOptions& options = {});

/// Runs the jobs on up to `jobs` threads; results keep the order of `names`.
std::vector<ReproResult> run_repro_many(const std::vector<std::string>& names, unsigned jobs,
                                        const ClassifyOptions& options = {});

}  // namespace tropirrat

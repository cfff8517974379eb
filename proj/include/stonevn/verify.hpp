#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stonevn/product_ring.hpp"
#include "stonevn/report.hpp"

namespace stonevn {

// Options for the acceptance pipeline. `mutate_break_join` replaces the join
// formula e + f - e*f by e + f in every join-consuming check; it exists so
// the final criterion can demonstrate that exactly the join-dependent
// criteria notice.
struct AcceptanceOptions {
    std::uint64_t seed = 0;
    double tolerance = 1e-9;
    bool mutate_break_join = false;
};

struct CriterionResult {
    int number = 0;
    std::string title;
    CheckReport report;
};

// Independent reference implementation of the quasi-inverse, injected by the
// test suite; kept out of this library so it cannot share code with the
// production path it is checking.
using QuasiInverseOracle = std::function<RingElement<Rational>(const RingElement<Rational>&)>;

// Runs the full battery of acceptance criteria, one result per criterion, in
// order. Deterministic for a fixed seed. When an oracle is supplied,
// criterion 1 additionally compares every quasi-inverse against it.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options,
                                            const QuasiInverseOracle& oracle = nullptr);

// Everything merged into a single report, with warnings for vacuous stages.
CheckReport full_pipeline_verify(const AcceptanceOptions& options,
                                 const QuasiInverseOracle& oracle = nullptr);

} // namespace stonevn

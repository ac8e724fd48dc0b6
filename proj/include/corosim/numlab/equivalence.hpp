#pragma once

#include "corosim/engine/engine.hpp"
#include "corosim/numlab/reduction.hpp"

#include <cstdint>
#include <vector>

namespace corosim {

// Deterministic pre-rounded input vector for a lab reduction kernel.
std::vector<FloatValue> seeded_values(std::uint64_t seed, std::int64_t n, FloatFormatKind kind);

// The value a reduction kernel produces when launched with the given grid
// size: a balanced plan with one chunk per grid unit.
FloatValue reduction_result(const ReductionSpec& spec, std::int64_t executed_grid);

struct EquivalenceResult {
    bool equivalent = false;
    bool transcripts_match = false;
    bool reductions_match = false;
    Rational max_delta;  // largest reduction divergence seen
};

// Runs every job (a) alone on an exclusive full-tier device and (b) under
// the scenario's own policy (with whatever migrations and preemptions it
// produces), then checks that each vctx executed the same sequence of
// launch configurations and that every reduction kernel's result is
// bit-identical. Holds whenever launch configurations are immutable;
// breaks under the grid-rewriting transform.
EquivalenceResult check_immutable_equivalence(const Scenario& scenario);
bool verify_immutable_equivalence(const Scenario& scenario);

}  // namespace corosim

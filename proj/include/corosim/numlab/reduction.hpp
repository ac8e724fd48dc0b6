#pragma once

#include "corosim/numlab/float_format.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace corosim {

// How a summation over n elements is partitioned across grid chunks.
// Chunks are contiguous and balanced (sizes differ by at most one);
// elements are accumulated left-to-right inside a chunk and chunk partials
// are combined left-to-right in chunk order (optionally as a balanced
// pairwise tree for sensitivity studies).
struct ReductionPlan {
    std::int64_t element_count = 0;
    std::vector<std::int64_t> chunk_bounds;  // ascending; front()==0, back()==element_count
    bool tree_combine = false;

    static ReductionPlan balanced(std::int64_t n, std::int64_t split_count);

    std::int64_t split_count() const {
        return static_cast<std::int64_t>(chunk_bounds.size()) - 1;
    }
    bool operator==(const ReductionPlan&) const = default;
};

// The absolute difference between two executions of the same summation
// under different plans. Zero exactly when the results are bit-identical.
struct CouplingDelta {
    bool bit_identical = false;
    bool finite = true;  // false when the executions diverge through infinities
    Rational delta;      // meaningful when finite
};

// Every intermediate addition is rounded in the target format. Inputs are
// expected to be pre-rounded so divergence is attributable to summation
// order alone.
FloatValue reduce_with_plan(std::span<const FloatValue> values, const FloatFormat& format,
                            const ReductionPlan& plan);

CouplingDelta coupling_delta(std::span<const FloatValue> values, const FloatFormat& format,
                             const ReductionPlan& plan_i, const ReductionPlan& plan_j);

}  // namespace corosim

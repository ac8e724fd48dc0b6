#pragma once

#include "corosim/rational.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace corosim {

struct BatchStats {
    Rational mean;
    Rational variance;  // population variance
};

// How far per-split statistics stray from the full-batch statistics when a
// batch is fragmented into smaller pieces.
struct BatchDivergenceReport {
    BatchStats full;
    std::vector<BatchStats> splits;
    Rational max_mean_deviation;
    Rational max_variance_deviation;
    Rational max_deviation;  // max over both statistics
};

// split_sizes partitions the batch contiguously; every split must be
// non-empty and the sizes must sum to the batch length.
BatchDivergenceReport batch_stats_divergence(std::span<const Rational> batch,
                                             std::span<const std::int64_t> split_sizes);

}  // namespace corosim

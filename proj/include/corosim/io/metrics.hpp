#pragma once

#include "corosim/engine/engine.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <vector>

namespace corosim {

// Nearest-rank summary of a latency sample set.
struct DistSummary {
    std::int64_t count = 0;
    Rational mean;
    Rational p50;
    Rational p90;
    Rational p99;
};

struct MetricsReport {
    Rational makespan;
    std::int64_t kernels_completed = 0;

    std::int64_t inference_completed = 0;
    std::int64_t training_kernels_completed = 0;
    Rational inference_throughput;  // completed requests per time unit
    Rational training_throughput;   // iteration kernels per time unit

    DistSummary ttft;  // first decode completion minus arrival
    DistSummary tpot;  // inter-token latency; needs >= 2 output tokens
    std::int64_t tpot_excluded = 0;

    std::int64_t slo_requests = 0;
    std::int64_t ttft_violations = 0;
    std::int64_t tpot_violations = 0;
    Rational ttft_violation_rate;  // violations / completed requests with an SLO
    Rational tpot_violation_rate;

    OverheadLedger ledger;

    // Per-vctx shared-run throughput relative to a paired exclusive run.
    std::map<VctxId, Rational> normalized_throughput;
    Rational aggregate_normalized;
};

// kth smallest with k = ceil(pct/100 * n) (nearest-rank), 1-indexed.
Rational nearest_rank_percentile(std::vector<Rational> samples, int pct);

MetricsReport compute_metrics(const SimulationReport& report);

// normalized(v) = exclusive span / shared span for the same job; the
// exclusive report must contain the job as vctx 0.
void add_normalization(MetricsReport& metrics, const SimulationReport& shared,
                       const std::map<VctxId, SimulationReport>& exclusive_runs);

// Convenience: runs the exclusive baseline for every job and attaches
// normalized throughput.
MetricsReport compute_metrics_normalized(const Scenario& scenario,
                                         const SimulationReport& shared);

nlohmann::ordered_json metrics_to_json(const MetricsReport& metrics);

}  // namespace corosim

#pragma once

#include "corosim/engine/engine.hpp"
#include "corosim/io/trace.hpp"

#include <map>
#include <string>
#include <vector>

namespace corosim {

// How inference requests expand into kernels: prefill is compute-bound and
// scales with the prompt, decode is memory-bound with one short kernel per
// output token.
struct InferenceProfile {
    Rational prefill_cost_per_token{1, 1000};
    Rational decode_cost{1, 20};  // one decode step; ~512-token prefill = 10 steps
    Rational prefill_saturation{9, 10};
    Rational prefill_mem_bound{1, 10};
    Rational prefill_bw_demand{3, 10};
    Rational decode_saturation{1, 5};
    Rational decode_mem_bound{4, 5};
    Rational decode_bw_demand{1, 2};
    std::int64_t tokens_per_grid_unit = 8;  // prefill grid = ceil(prompt / this)
    std::int64_t decode_grid = 8;
    std::uint64_t weights_bytes = 0;
    std::uint64_t kv_cache_bytes = 0;
    std::uint64_t activation_bytes = 0;
    std::int64_t reduction_elements = 0;  // > 0 attaches a reduction spec
    FloatFormatKind reduction_format = FloatFormatKind::FP16;
};

struct TrainingProfile {
    Rational iteration_cost{1};
    Rational saturation{1};
    Rational mem_bound{1, 5};
    Rational bw_demand{2, 5};
    Rational host_gap{0};  // input-pipeline stall between iterations
    int iterations = 50;
    std::int64_t grid = 128;
    std::uint64_t weights_bytes = 0;
    std::uint64_t optimizer_bytes = 0;
    std::uint64_t activation_bytes = 0;
    std::int64_t reduction_elements = 0;
    FloatFormatKind reduction_format = FloatFormatKind::FP16;
};

struct WorkloadProfiles {
    std::map<std::string, InferenceProfile> inference = {{"default", {}}};
    std::map<std::string, TrainingProfile> training = {{"default", {}}};
};

struct ExpandedWorkload {
    std::vector<JobSpec> jobs;
    std::vector<RequestMeta> requests;
    std::map<std::string, VctxId> job_ids;  // trace job_id -> vctx
};

// Deterministic expansion: same records and profiles give identical kernels.
// Requests sharing a job_id become one vctx, processed in arrival order.
ExpandedWorkload expand_workload(const std::vector<RequestTraceRecord>& records,
                                 const WorkloadProfiles& profiles);

}  // namespace corosim

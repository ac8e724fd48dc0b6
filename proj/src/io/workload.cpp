#include "corosim/io/workload.hpp"

#include "corosim/errors.hpp"

namespace corosim {

namespace {

// Stable per-kernel seed for lab reductions.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    std::uint64_t h = a * 0x9e3779b97f4a7c15ULL + b + 0x517cc1b727220a95ULL;
    h ^= h >> 31;
    h *= 0xbf58476d1ce4e5b9ULL;
    h ^= h >> 29;
    return h;
}

struct JobBuilder {
    JobSpec spec;
    std::size_t index = 0;
    std::string kind;
    bool has_regions = false;
};

void add_regions(JobSpec& job, std::initializer_list<std::uint64_t> sizes) {
    std::int32_t next = 0;
    for (std::uint64_t bytes : sizes) {
        if (bytes == 0) {
            ++next;
            continue;
        }
        MemoryRegion r;
        r.id = RegionId(next++);
        r.bytes = bytes;
        job.regions.push_back(std::move(r));
    }
}

std::vector<RegionId> touching(const JobSpec& job, std::initializer_list<std::int32_t> ids) {
    std::vector<RegionId> out;
    for (std::int32_t id : ids) {
        for (const MemoryRegion& r : job.regions) {
            if (r.id.value == id) out.push_back(r.id);
        }
    }
    return out;
}

}  // namespace

ExpandedWorkload expand_workload(const std::vector<RequestTraceRecord>& records,
                                 const WorkloadProfiles& profiles) {
    ExpandedWorkload out;
    std::map<std::string, std::size_t> job_index;
    std::map<std::string, std::string> job_kind;
    std::int32_t next_request = 0;

    for (const RequestTraceRecord& rec : records) {
        auto kind_it = job_kind.try_emplace(rec.job_id, rec.kind).first;
        if (kind_it->second != rec.kind) {
            throw SimError(Errc::ConfigError,
                           "job '" + rec.job_id + "' mixes inference and training records");
        }
        auto [it, fresh] = job_index.try_emplace(rec.job_id, out.jobs.size());
        if (fresh) {
            JobSpec job;
            job.name = rec.job_id;
            job.priority = rec.priority;
            if (rec.kind == "inference") {
                auto pit = profiles.inference.find(rec.profile);
                if (pit == profiles.inference.end()) {
                    throw SimError(Errc::ConfigError,
                                   "unknown inference profile '" + rec.profile + "'");
                }
                add_regions(job, {pit->second.weights_bytes, pit->second.kv_cache_bytes,
                                  pit->second.activation_bytes});
            } else {
                auto pit = profiles.training.find(rec.profile);
                if (pit == profiles.training.end()) {
                    throw SimError(Errc::ConfigError,
                                   "unknown training profile '" + rec.profile + "'");
                }
                add_regions(job, {pit->second.weights_bytes, pit->second.optimizer_bytes,
                                  pit->second.activation_bytes});
            }
            out.jobs.push_back(std::move(job));
            out.job_ids[rec.job_id] = VctxId(static_cast<std::int32_t>(it->second));
        }
        std::size_t ji = it->second;
        JobSpec& job = out.jobs[ji];
        VctxId vctx(static_cast<std::int32_t>(ji));

        RequestMeta meta;
        meta.id = RequestId(next_request++);
        meta.vctx = vctx;
        meta.arrival = rec.arrival_time;
        meta.slo = rec.slo;

        if (rec.kind == "inference") {
            const InferenceProfile& prof = profiles.inference.at(rec.profile);
            meta.inference = true;
            meta.output_tokens = rec.output_tokens;

            Kernel prefill;
            prefill.signature.semantic_id = "prefill/" + rec.profile;
            prefill.signature.grid_size =
                (rec.prompt_tokens + prof.tokens_per_grid_unit - 1) / prof.tokens_per_grid_unit;
            prefill.base_duration = prof.prefill_cost_per_token * rec.prompt_tokens;
            prefill.compute_saturation = prof.prefill_saturation;
            prefill.mem_bound_fraction = prof.prefill_mem_bound;
            prefill.mem_bw_demand = prof.prefill_bw_demand;
            prefill.phase = Phase::Prefill;
            prefill.touched_regions = touching(job, {0, 1, 2});
            prefill.arrival_floor = rec.arrival_time;
            prefill.request = meta.id;
            if (prof.reduction_elements > 0) {
                prefill.reduction = ReductionSpec{
                    prof.reduction_elements,
                    mix_seed(static_cast<std::uint64_t>(ji), job.kernels.size()),
                    prof.reduction_format};
            }
            job.kernels.push_back(std::move(prefill));

            for (int t = 0; t < rec.output_tokens; ++t) {
                Kernel decode;
                decode.signature.semantic_id = "decode/" + rec.profile;
                decode.signature.grid_size = prof.decode_grid;
                decode.base_duration = prof.decode_cost;
                decode.compute_saturation = prof.decode_saturation;
                decode.mem_bound_fraction = prof.decode_mem_bound;
                decode.mem_bw_demand = prof.decode_bw_demand;
                decode.phase = Phase::Decode;
                decode.touched_regions = touching(job, {0, 1});
                decode.arrival_floor = rec.arrival_time;
                decode.request = meta.id;
                decode.decode_index = t;
                if (prof.reduction_elements > 0) {
                    decode.reduction = ReductionSpec{
                        prof.reduction_elements,
                        mix_seed(static_cast<std::uint64_t>(ji), job.kernels.size()),
                        prof.reduction_format};
                }
                job.kernels.push_back(std::move(decode));
            }
        } else {
            const TrainingProfile& prof = profiles.training.at(rec.profile);
            meta.inference = false;
            int iters = rec.iterations > 0 ? rec.iterations : prof.iterations;
            for (int i = 0; i < iters; ++i) {
                Kernel iter;
                iter.signature.semantic_id = "train/" + rec.profile;
                iter.signature.grid_size = prof.grid;
                iter.base_duration = prof.iteration_cost;
                iter.compute_saturation = prof.saturation;
                iter.mem_bound_fraction = prof.mem_bound;
                iter.mem_bw_demand = prof.bw_demand;
                iter.phase = Phase::Training;
                iter.touched_regions = touching(job, {0, 1, 2});
                iter.arrival_floor = rec.arrival_time;
                iter.gap_after_prev = prof.host_gap;
                iter.request = meta.id;
                if (prof.reduction_elements > 0) {
                    iter.reduction = ReductionSpec{
                        prof.reduction_elements,
                        mix_seed(static_cast<std::uint64_t>(ji), job.kernels.size()),
                        prof.reduction_format};
                }
                job.kernels.push_back(std::move(iter));
            }
        }
        out.requests.push_back(std::move(meta));
    }
    return out;
}

}  // namespace corosim

#pragma once

#include "corosim/engine/engine.hpp"
#include "corosim/rational.hpp"

#include <string>
#include <vector>

namespace corosim::test {

// A job that streams `count` identical kernels back to back.
inline JobSpec stream_job(const std::string& name, int count, const Rational& base,
                          const Rational& saturation, const Rational& mem_bound = 0,
                          const Rational& bw_demand = 0, const Rational& host_gap = 0,
                          PriorityClass priority = PriorityClass::BestEffort,
                          const Rational& arrival = 0) {
    JobSpec job;
    job.name = name;
    job.priority = priority;
    for (int i = 0; i < count; ++i) {
        Kernel k;
        k.signature.semantic_id = name;
        k.signature.grid_size = 32;
        k.base_duration = base;
        k.compute_saturation = saturation;
        k.mem_bound_fraction = mem_bound;
        k.mem_bw_demand = bw_demand;
        k.phase = Phase::Training;
        k.arrival_floor = arrival;
        k.gap_after_prev = host_gap;
        job.kernels.push_back(std::move(k));
    }
    return job;
}

inline Scenario basic_scenario(std::vector<Rational> tiers, std::vector<JobSpec> jobs,
                               const std::string& policy = "slo-aware") {
    Scenario s;
    s.devices.push_back({std::move(tiers), false, Rational(1), 128});
    s.jobs = std::move(jobs);
    s.policy.name = policy;
    return s;
}

// Zeroes every modeled cost so timing assertions stay closed-form.
inline void strip_costs(Scenario& s) {
    s.config.costs.ctx_switch_overhead = 0;
    s.config.costs.preempt_overhead = 0;
    s.config.costs.remap_fixed = 0;
    s.config.costs.fault_fixed = 0;
}

}  // namespace corosim::test

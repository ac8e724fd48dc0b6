#pragma once

#include "corosim/core/types.hpp"
#include "corosim/rational.hpp"

#include <vector>

namespace corosim {

// Exactly the pctxs with a running kernel on one device, with each
// kernel's bandwidth demand. Device memory bandwidth is not partitioned,
// so demands couple across contexts.
struct ContentionSnapshot {
    struct Entry {
        PctxId pctx;
        Rational tier;
        Rational mem_bw_demand;
    };
    std::vector<Entry> running;

    Rational total_demand() const {
        Rational sum = 0;
        for (const Entry& e : running) sum += e.mem_bw_demand;
        return sum;
    }
};

// Slowdown factor >= 1 for a kernel on a given tier under the snapshot's
// aggregate bandwidth demand (which includes the kernel's own demand).
//
//   compute_factor = max(1, s / tier)
//   bw_factor      = (1 - m) + m * max(1, total_demand)
//   factor         = compute_factor * bw_factor
//
// Effective duration = base_duration * factor.
Rational kernel_speed(const Kernel& kernel, const QuotaTier& tier,
                      const ContentionSnapshot& contention);

// Same formula with the aggregate demand supplied directly.
Rational slowdown_factor(const Rational& compute_saturation, const Rational& mem_bound_fraction,
                         const Rational& tier_fraction, const Rational& total_demand);

}  // namespace corosim

#pragma once

#include "corosim/core/types.hpp"
#include "corosim/ids.hpp"
#include "corosim/rational.hpp"

#include <cstdint>
#include <vector>

namespace corosim {

// Partition of a vctx's state for one migration: regions the next kernel
// needs are copied eagerly, remaining dirty state follows lazily in the
// background, and clean regions already resident on the target move not at
// all.
struct MigrationSet {
    std::vector<RegionId> eager;
    std::vector<RegionId> lazy;
    std::uint64_t eager_bytes = 0;
    std::uint64_t lazy_bytes = 0;
};

// eager = touched(next_kernel) that are dirty or not resident on dst;
// lazy  = remaining dirty working-set regions.
// Throws TraceViolation if the kernel touches a region outside the
// vctx's declared working set.
MigrationSet compute_migration_set(const VirtualContext& vctx, const Kernel& next_kernel,
                                   PctxId dst);

// Eager-everything variant used by emergency migration off a failing
// device, where the source may not survive long enough for lazy pulls.
MigrationSet full_eager_set(const VirtualContext& vctx);

struct MigrationRecord {
    VctxId vctx;
    PctxId src;  // invalid id when the vctx was unbound (cold placement)
    PctxId dst;
    std::uint64_t eager_bytes = 0;
    std::uint64_t lazy_bytes = 0;
    Rational start;
    Rational end;  // when the vctx resumes on dst
    int demand_faults = 0;
    bool emergency = false;
    bool aborted = false;
};

struct PreemptionRecord {
    VctxId vctx;
    PctxId pctx;
    Rational signal_time;
    Rational boundary_wait;  // time from signal to the yield boundary
    Rational overhead;       // preempt_overhead * segment length
};

struct DispatchOutcome {
    enum class Kind { Direct, Remap, Defer };
    enum class DeferReason { None, PolicyDefer, PoolExhausted, NotReady, PolicyError };
    Kind kind = Kind::Defer;
    PctxId remap_target;
    DeferReason reason = DeferReason::None;
};

}  // namespace corosim

#include "corosim/runtime/migration.hpp"

#include "corosim/errors.hpp"
#include "corosim/runtime/costs.hpp"

#include <algorithm>

namespace corosim {

void CostParameters::validate() const {
    if (ctx_switch_overhead < 0 || ctx_switch_overhead >= 1 || preempt_overhead < 0 ||
        preempt_overhead >= 1) {
        throw SimError(Errc::ConfigError, "overhead fractions must lie in [0, 1)");
    }
    if (copy_bandwidth <= 0) throw SimError(Errc::ConfigError, "copy bandwidth must be positive");
    if (remap_fixed < 0 || fault_fixed < 0) {
        throw SimError(Errc::ConfigError, "fixed costs must be non-negative");
    }
}

MigrationSet compute_migration_set(const VirtualContext& vctx, const Kernel& next_kernel,
                                   PctxId dst) {
    MigrationSet set;
    for (RegionId r : next_kernel.touched_regions) {
        auto it = vctx.working_set.find(r);
        if (it == vctx.working_set.end()) {
            throw SimError(Errc::TraceViolation,
                           "kernel " + std::to_string(next_kernel.id.value) + " touches region " +
                               std::to_string(r.value) + " outside vctx working set");
        }
        const MemoryRegion& region = it->second;
        if (region.dirty || !region.resident_on.count(dst)) {
            set.eager.push_back(r);
            set.eager_bytes += region.bytes;
        }
    }
    std::sort(set.eager.begin(), set.eager.end());
    set.eager.erase(std::unique(set.eager.begin(), set.eager.end()), set.eager.end());
    set.eager_bytes = 0;
    for (RegionId r : set.eager) set.eager_bytes += vctx.working_set.at(r).bytes;

    for (const auto& [rid, region] : vctx.working_set) {
        if (!region.dirty) continue;
        if (std::binary_search(set.eager.begin(), set.eager.end(), rid)) continue;
        set.lazy.push_back(rid);
        set.lazy_bytes += region.bytes;
    }
    return set;
}

MigrationSet full_eager_set(const VirtualContext& vctx) {
    MigrationSet set;
    for (const auto& [rid, region] : vctx.working_set) {
        set.eager.push_back(rid);
        set.eager_bytes += region.bytes;
    }
    return set;
}

}  // namespace corosim

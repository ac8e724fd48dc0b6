#pragma once

#include "corosim/ids.hpp"
#include "corosim/numlab/float_format.hpp"
#include "corosim/rational.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace corosim {

// Share of the device's SMs granted to a physical context. Fixed at pool
// creation; elasticity comes only from rebinding, never from resizing.
struct QuotaTier {
    Rational fraction;  // in (0, 1]
};

enum class Phase { Prefill, Decode, Training, Other };
enum class PriorityClass { LatencyCritical, BestEffort };

const char* phase_name(Phase p);
const char* priority_name(PriorityClass p);

struct KernelSignature {
    std::string semantic_id;
    std::int64_t grid_size = 1;

    auto operator<=>(const KernelSignature&) const = default;
};

// Ties a kernel to the determinism lab: the kernel models a summation over
// element_count seeded values, partitioned into grid_size chunks.
struct ReductionSpec {
    std::int64_t element_count = 0;
    std::uint64_t value_seed = 0;
    FloatFormatKind format = FloatFormatKind::FP16;
};

// An immutable launch record. The launch configuration (signature) never
// changes after creation, whatever happens to the resources underneath.
struct Kernel {
    KernelId id;
    VctxId vctx;
    KernelSignature signature;
    Rational base_duration;       // time at full quota with no contention; > 0
    Rational compute_saturation;  // s in (0, 1]: smallest quota giving full speed
    Rational mem_bw_demand;       // fraction of device bandwidth requested; >= 0
    Rational mem_bound_fraction;  // m in [0, 1]
    std::vector<RegionId> touched_regions;
    Phase phase = Phase::Other;
    std::optional<ReductionSpec> reduction;

    // Readiness: the kernel may start no earlier than arrival_floor, and no
    // earlier than gap_after_prev past its predecessor's completion.
    Rational arrival_floor;
    Rational gap_after_prev;

    // Request bookkeeping for metrics; not part of the kernel's identity.
    RequestId request;
    int decode_index = -1;  // 0-based among a request's decode kernels, -1 otherwise

    std::uint64_t fingerprint() const;
};

struct MemoryRegion {
    RegionId id;
    std::uint64_t bytes = 0;  // > 0
    bool dirty = false;
    std::set<PctxId> resident_on;
};

enum class VctxStatus { Active, Failed, Stranded };

// A job's persistent logical execution handle. Survives migrations; its
// pending order is program order and is never reordered.
struct VirtualContext {
    VctxId id;
    PriorityClass priority_class = PriorityClass::BestEffort;
    std::deque<KernelId> pending;
    std::map<RegionId, MemoryRegion> working_set;
    std::int64_t logical_progress = 0;
    VctxStatus status = VctxStatus::Active;
};

// An ephemeral quota-tiered resource container; at most one bound vctx.
struct PhysicalContext {
    PctxId id;
    DeviceId device;
    QuotaTier tier;
    std::optional<VctxId> bound;
    std::vector<KernelId> hw_queue;
    bool rck_flag = false;  // cooperative preemption signal

    bool is_bound() const { return bound.has_value(); }
};

struct Device {
    DeviceId id;
    std::int64_t total_sm = 128;
    Rational total_bandwidth = 1;  // demands are fractions of this
    std::vector<PctxId> pctx_pool;
    bool standby = false;
    bool failed = false;
};

// Partial injective map vctx -> pctx, kept consistent with pctx.bound.
class BindingTable {
  public:
    std::optional<PctxId> pctx_of(VctxId v) const;
    std::optional<VctxId> vctx_of(PctxId p) const;
    bool empty() const { return forward_.empty(); }
    std::size_t size() const { return forward_.size(); }
    const std::map<VctxId, PctxId>& entries() const { return forward_; }

    friend void bind(BindingTable& table, VirtualContext& vctx, PhysicalContext& pctx);
    friend void unbind(BindingTable& table, VirtualContext& vctx, PhysicalContext& pctx);

  private:
    std::map<VctxId, PctxId> forward_;
    std::map<PctxId, VctxId> reverse_;
};

// Throws BindConflict if pctx is already bound, DoubleBind if vctx is
// already mapped.
void bind(BindingTable& table, VirtualContext& vctx, PhysicalContext& pctx);
void unbind(BindingTable& table, VirtualContext& vctx, PhysicalContext& pctx);

// Populates device.pctx_pool with one unbound pctx per fraction, appending
// to the shared store. All allocation happens here, never on dispatch.
// Throws InvalidTier for fractions outside (0, 1].
void create_pool(Device& device, const std::vector<Rational>& tier_fractions,
                 std::vector<PhysicalContext>& store);

// Smallest tier fraction in the device's pool (quarantine ceiling).
Rational min_tier(const Device& device, const std::vector<PhysicalContext>& store);

// Sum of tiers of currently bound pctxs; spatial feasibility demands <= 1.
Rational bound_tier_sum(const Device& device, const std::vector<PhysicalContext>& store);

}  // namespace corosim

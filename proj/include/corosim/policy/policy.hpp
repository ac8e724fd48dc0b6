#pragma once

#include "corosim/core/types.hpp"
#include "corosim/ids.hpp"
#include "corosim/policy/predictor.hpp"
#include "corosim/rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace corosim {

// Latency objectives for one request.
struct SloSpec {
    Rational ttft_deadline;
    Rational tpot_deadline;
    std::optional<Rational> e2e_deadline;
};

// Read-only snapshot handed to policy hooks. Policies observe; all
// mutation flows through the returned decision.
struct PolicyView {
    struct QueuedEntry {
        KernelSignature signature;
        Rational base_hint;
    };
    struct PctxEntry {
        PctxId id;
        DeviceId device;
        Rational tier;
        bool standby = false;
        std::optional<VctxId> bound;
        bool available = true;  // false while resetting or on a failed device
        std::optional<KernelId> running_kernel;
        KernelSignature running_signature;
        Rational running_remaining;  // wall time at current pricing
        Phase running_phase = Phase::Other;
        PriorityClass running_priority = PriorityClass::BestEffort;
        std::vector<QueuedEntry> queued;  // dispatched but not yet running
    };
    struct VctxEntry {
        VctxId id;
        PriorityClass priority = PriorityClass::BestEffort;
        bool quarantined = false;
        bool bound = false;
        std::int64_t pending = 0;
        Phase head_phase = Phase::Other;
        bool decoding = false;  // head of pending (or running kernel) is a decode step
    };

    Rational now;
    std::vector<PctxEntry> pctxs;  // pool order across devices
    std::vector<VctxEntry> vctxs;
    std::map<DeviceId, Rational> bound_tier_sums;
    std::map<DeviceId, Rational> min_tiers;
    const DurationPredictor* predictor = nullptr;
    std::int64_t active_vctx_count = 0;  // vctxs with work left

    const PctxEntry* pctx(PctxId id) const;
    const VctxEntry* vctx(VctxId id) const;
    // Whether binding this pctx keeps the device's bound tier sum <= 1.
    bool feasible_bind(const PctxEntry& p) const;
};

// One kernel launch awaiting a decision.
struct LaunchContext {
    VctxId vctx;
    const Kernel* kernel = nullptr;
    Rational request_arrival;
    std::optional<SloSpec> slo;
    bool pool_exhausted = false;  // set when OnCongestion fires
};

struct PolicyDecision {
    enum class Kind { DispatchDirect, DispatchRemap, DispatchDefer, Preempt, NoAction };
    Kind kind = Kind::NoAction;
    PctxId target;  // remap destination or preemption victim

    static PolicyDecision direct() { return {Kind::DispatchDirect, {}}; }
    static PolicyDecision remap(PctxId to) { return {Kind::DispatchRemap, to}; }
    static PolicyDecision defer() { return {Kind::DispatchDefer, {}}; }
    static PolicyDecision preempt(PctxId victim) { return {Kind::Preempt, victim}; }
    static PolicyDecision no_action() { return {Kind::NoAction, {}}; }
};

// Remaining time of the running kernel plus predicted durations of queued
// kernels on the pctx, under current pricing.
Rational predict_hol_blocking(const PolicyView& view, const PolicyView::PctxEntry& pctx,
                              const DurationPredictor& predictor);

// Scheduling policies are pure, synchronous callbacks: the same view and
// launch must always yield the same decision. The framework validates
// decisions before applying them and converts illegal ones to Defer.
class Policy {
  public:
    virtual ~Policy() = default;
    virtual std::string_view name() const = 0;

    virtual PolicyDecision on_launch(const PolicyView& view, const LaunchContext& launch) const = 0;
    virtual PolicyDecision on_completion(const PolicyView& view, const LaunchContext& next) const {
        (void)view;
        (void)next;
        return PolicyDecision::no_action();
    }
    virtual PolicyDecision on_congestion(const PolicyView& view,
                                         const LaunchContext& launch) const {
        (void)view;
        (void)launch;
        return PolicyDecision::defer();
    }

    // Lower keys are served first when several launches are waiting.
    virtual int launch_order_key(const LaunchContext& launch) const {
        (void)launch;
        return 0;
    }
    // Next instant at which deferred launches should be re-examined even
    // without a state-change event (time-driven policies).
    virtual std::optional<Rational> next_review_time(const PolicyView& view) const {
        (void)view;
        return std::nullopt;
    }
};

}  // namespace corosim

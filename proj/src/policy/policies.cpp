#include "corosim/policy/policies.hpp"

#include "corosim/errors.hpp"

#include <algorithm>

namespace corosim {

const PolicyView::PctxEntry* PolicyView::pctx(PctxId id) const {
    for (const auto& p : pctxs) {
        if (p.id == id) return &p;
    }
    return nullptr;
}

const PolicyView::VctxEntry* PolicyView::vctx(VctxId id) const {
    for (const auto& v : vctxs) {
        if (v.id == id) return &v;
    }
    return nullptr;
}

bool PolicyView::feasible_bind(const PctxEntry& p) const {
    auto it = bound_tier_sums.find(p.device);
    Rational sum = it == bound_tier_sums.end() ? Rational(0) : it->second;
    return sum + p.tier <= 1;
}

Rational predict_hol_blocking(const PolicyView& view, const PolicyView::PctxEntry& pctx,
                              const DurationPredictor& predictor) {
    (void)view;
    Rational total = pctx.running_kernel ? pctx.running_remaining : Rational(0);
    for (const auto& q : pctx.queued) total += predictor.predict(q.signature, q.base_hint);
    return total;
}

namespace {

// Absolute deadline steering a launch, if its request carries an SLO.
// Prefill races the request's first-token deadline; each decode step gets a
// per-token budget from now.
std::optional<Rational> launch_deadline(const PolicyView& view, const LaunchContext& launch) {
    if (!launch.slo || !launch.kernel) return std::nullopt;
    switch (launch.kernel->phase) {
        case Phase::Prefill: return launch.request_arrival + launch.slo->ttft_deadline;
        case Phase::Decode: return view.now + launch.slo->tpot_deadline;
        default: return std::nullopt;
    }
}

bool predicted_miss(const PolicyView& view, const LaunchContext& launch,
                    const PolicyView::PctxEntry& pctx) {
    auto deadline = launch_deadline(view, launch);
    if (!deadline) return false;
    Rational hol = predict_hol_blocking(view, pctx, *view.predictor);
    Rational duration = view.predictor->predict(launch.kernel->signature,
                                                launch.kernel->base_duration);
    return view.now + hol + duration > *deadline;
}

bool eligible_bind(const PolicyView& view, const PolicyView::PctxEntry& p, bool quarantined) {
    if (p.bound || !p.available || p.standby) return false;
    if (!view.feasible_bind(p)) return false;
    if (quarantined) {
        auto it = view.min_tiers.find(p.device);
        if (it == view.min_tiers.end() || p.tier != it->second) return false;
    }
    return true;
}

// Placement for an unbound vctx: aim for min(saturation, fair share) and
// take the smallest free feasible tier at or above that, falling back to
// the largest one below it.
const PolicyView::PctxEntry* pick_bind_target(const PolicyView& view,
                                              const LaunchContext& launch) {
    const auto* v = view.vctx(launch.vctx);
    bool quarantined = v && v->quarantined;
    Rational want = launch.kernel->compute_saturation;
    if (view.active_vctx_count > 1) {
        Rational fair(1, static_cast<long>(view.active_vctx_count));
        if (fair < want) want = fair;
    }
    const PolicyView::PctxEntry* above = nullptr;
    const PolicyView::PctxEntry* below = nullptr;
    for (const auto& p : view.pctxs) {
        if (!eligible_bind(view, p, quarantined)) continue;
        if (p.tier >= want) {
            if (!above || p.tier < above->tier) above = &p;
        } else {
            if (!below || p.tier > below->tier) below = &p;
        }
    }
    return above ? above : below;
}

// Preemption victim: strictly lower priority class than the launcher,
// then largest remaining time, then lowest pctx id.
const PolicyView::PctxEntry* pick_victim(const PolicyView& view, const LaunchContext& launch,
                                         const Rational& min_tier, bool spare_decode) {
    const auto* self = view.vctx(launch.vctx);
    PriorityClass mine = self ? self->priority : PriorityClass::BestEffort;
    if (mine != PriorityClass::LatencyCritical) return nullptr;
    const PolicyView::PctxEntry* victim = nullptr;
    for (const auto& p : view.pctxs) {
        if (!p.bound || !p.available || p.standby) continue;
        if (p.tier <= min_tier) continue;
        const auto* holder = view.vctx(*p.bound);
        if (!holder || holder->priority != PriorityClass::BestEffort) continue;
        if (spare_decode && p.running_phase == Phase::Decode) continue;
        if (!victim || p.running_remaining > victim->running_remaining ||
            (p.running_remaining == victim->running_remaining && p.id < victim->id)) {
            victim = &p;
        }
    }
    return victim;
}

PolicyDecision slo_aware_decide(const PolicyView& view, const LaunchContext& launch,
                                bool spare_decode) {
    const auto* v = view.vctx(launch.vctx);
    if (!v) return PolicyDecision::defer();

    if (v->bound) {
        const PolicyView::PctxEntry* bound = nullptr;
        for (const auto& p : view.pctxs) {
            if (p.bound && *p.bound == launch.vctx) bound = &p;
        }
        if (!bound) return PolicyDecision::defer();
        if (!predicted_miss(view, launch, *bound)) return PolicyDecision::direct();

        // Predicted miss: a free higher tier first, then reclaim one.
        const PolicyView::PctxEntry* upgrade = nullptr;
        for (const auto& p : view.pctxs) {
            if (!eligible_bind(view, p, v->quarantined)) continue;
            if (p.tier <= bound->tier) continue;
            if (!upgrade || p.tier > upgrade->tier) upgrade = &p;
        }
        if (upgrade) return PolicyDecision::remap(upgrade->id);
        if (const auto* victim = pick_victim(view, launch, bound->tier, spare_decode)) {
            return PolicyDecision::preempt(victim->id);
        }
        // Defer while waiting could still help: the deadline has not passed
        // yet and the pool holds a tier above the current binding. An
        // already-blown deadline or a pool with nothing better dispatches
        // directly; the violation is recorded either way.
        auto deadline = launch_deadline(view, launch);
        if (deadline && view.now <= *deadline) {
            for (const auto& p : view.pctxs) {
                if (!p.standby && p.tier > bound->tier) return PolicyDecision::defer();
            }
        }
        return PolicyDecision::direct();
    }

    if (const auto* target = pick_bind_target(view, launch)) {
        return PolicyDecision::remap(target->id);
    }
    if (const auto* victim = pick_victim(view, launch, Rational(0), spare_decode)) {
        return PolicyDecision::preempt(victim->id);
    }
    return PolicyDecision::defer();
}

}  // namespace

PolicyDecision SloAwarePolicy::on_launch(const PolicyView& view,
                                         const LaunchContext& launch) const {
    return slo_aware_decide(view, launch, /*spare_decode=*/false);
}

PolicyDecision SloAwarePolicy::on_congestion(const PolicyView& view,
                                             const LaunchContext& launch) const {
    if (const auto* victim = pick_victim(view, launch, Rational(0), /*spare_decode=*/false)) {
        return PolicyDecision::preempt(victim->id);
    }
    return PolicyDecision::defer();
}

int SloAwarePolicy::launch_order_key(const LaunchContext& launch) const {
    (void)launch;
    return 0;
}

PolicyDecision TpotFirstPolicy::on_launch(const PolicyView& view,
                                          const LaunchContext& launch) const {
    if (launch.kernel && launch.kernel->phase == Phase::Prefill && launch.slo) {
        // Admission test: decode-step estimate times active decode count
        // against the per-token deadline.
        std::int64_t active_decode = 0;
        Rational step_estimate = 0;
        for (const auto& p : view.pctxs) {
            if (!p.running_kernel || p.running_phase != Phase::Decode) continue;
            ++active_decode;
            Rational est = view.predictor->predict(p.running_signature);
            if (est > step_estimate) step_estimate = est;
        }
        if (active_decode > 0 &&
            step_estimate * Rational(static_cast<long>(active_decode + 1)) >
                launch.slo->tpot_deadline) {
            return PolicyDecision::defer();
        }
    }
    return slo_aware_decide(view, launch, /*spare_decode=*/true);
}

PolicyDecision TpotFirstPolicy::on_congestion(const PolicyView& view,
                                              const LaunchContext& launch) const {
    bool spare = launch.kernel && launch.kernel->phase == Phase::Prefill;
    if (const auto* victim = pick_victim(view, launch, Rational(0), spare)) {
        return PolicyDecision::preempt(victim->id);
    }
    return PolicyDecision::defer();
}

int TpotFirstPolicy::launch_order_key(const LaunchContext& launch) const {
    if (!launch.kernel) return 1;
    switch (launch.kernel->phase) {
        case Phase::Decode: return 0;
        case Phase::Prefill: return 2;
        default: return 1;
    }
}

TemporalBaselinePolicy::TemporalBaselinePolicy(Rational quantum) : quantum_(std::move(quantum)) {
    if (quantum_ <= 0) throw SimError(Errc::ConfigError, "temporal quantum must be positive");
}

std::optional<VctxId> TemporalBaselinePolicy::owner_at(const PolicyView& view) const {
    std::vector<VctxId> active;
    for (const auto& v : view.vctxs) {
        if (v.pending > 0 || v.bound) active.push_back(v.id);
    }
    if (active.empty()) return std::nullopt;
    BigInt slot = numerator(view.now / quantum_) / denominator(view.now / quantum_);
    auto idx = static_cast<std::size_t>(slot % active.size());
    return active[idx];
}

PolicyDecision TemporalBaselinePolicy::on_launch(const PolicyView& view,
                                                 const LaunchContext& launch) const {
    auto owner = owner_at(view);
    if (!owner || *owner != launch.vctx) return PolicyDecision::defer();

    const auto* v = view.vctx(launch.vctx);
    if (v && v->bound) return PolicyDecision::direct();
    for (const auto& p : view.pctxs) {
        if (p.tier == 1 && !p.bound && p.available && !p.standby && view.feasible_bind(p)) {
            return PolicyDecision::remap(p.id);
        }
    }
    return PolicyDecision::defer();  // full-tier pctx still draining
}

std::optional<Rational> TemporalBaselinePolicy::next_review_time(const PolicyView& view) const {
    Rational slots = view.now / quantum_;
    BigInt whole = numerator(slots) / denominator(slots);
    return Rational(whole + 1) * quantum_;
}

StaticPartitionPolicy::StaticPartitionPolicy(std::map<VctxId, PctxId> assignments)
    : assignments_(std::move(assignments)) {}

PolicyDecision StaticPartitionPolicy::on_launch(const PolicyView& view,
                                                const LaunchContext& launch) const {
    auto it = assignments_.find(launch.vctx);
    if (it == assignments_.end()) return PolicyDecision::defer();  // validated at load
    const auto* v = view.vctx(launch.vctx);
    if (v && v->bound) return PolicyDecision::direct();
    const auto* p = view.pctx(it->second);
    if (p && !p->bound && p->available && view.feasible_bind(*p)) {
        return PolicyDecision::remap(p->id);
    }
    return PolicyDecision::defer();
}

std::unique_ptr<Policy> make_policy(const PolicyConfig& config) {
    if (config.name == "slo-aware") return std::make_unique<SloAwarePolicy>();
    if (config.name == "tpot-first") return std::make_unique<TpotFirstPolicy>();
    if (config.name == "temporal") {
        return std::make_unique<TemporalBaselinePolicy>(config.quantum);
    }
    if (config.name == "static") {
        return std::make_unique<StaticPartitionPolicy>(config.assignments);
    }
    std::string valid;
    for (const auto& n : policy_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw SimError(Errc::ConfigError,
                   "unknown policy '" + config.name + "' (valid: " + valid + ")");
}

const std::vector<std::string>& policy_names() {
    static const std::vector<std::string> names = {"slo-aware", "tpot-first", "temporal",
                                                   "static"};
    return names;
}

}  // namespace corosim

#pragma once

#include "corosim/policy/policy.hpp"

#include <map>
#include <memory>
#include <string>

namespace corosim {

// Config surface shared by the built-in policies.
struct PolicyConfig {
    std::string name = "slo-aware";
    Rational quantum{5};                      // temporal baseline time slice
    Rational predictor_alpha{3, 10};          // EWMA smoothing
    Rational cold_start_prediction{1000000};  // pessimistic default
    std::map<VctxId, PctxId> assignments;     // static partition map
};

// Default policy: dispatch directly while deadlines hold; on a predicted
// miss prefer a free higher tier, then preempt the lowest-priority holder,
// then defer.
class SloAwarePolicy : public Policy {
  public:
    std::string_view name() const override { return "slo-aware"; }
    PolicyDecision on_launch(const PolicyView& view, const LaunchContext& launch) const override;
    PolicyDecision on_congestion(const PolicyView& view,
                                 const LaunchContext& launch) const override;
    int launch_order_key(const LaunchContext& launch) const override;
};

// Prioritizes decode over prefill: decode launches are served first and a
// new prefill is deferred while admitting it is predicted to push any
// active decode past its per-token deadline.
class TpotFirstPolicy : public SloAwarePolicy {
  public:
    std::string_view name() const override { return "tpot-first"; }
    PolicyDecision on_launch(const PolicyView& view, const LaunchContext& launch) const override;
    PolicyDecision on_congestion(const PolicyView& view,
                                 const LaunchContext& launch) const override;
    int launch_order_key(const LaunchContext& launch) const override;
};

// Round-robin exclusive ownership of the full-tier pctx for a fixed
// quantum; everything else defers. The degenerate 0%/100% point of the
// spatial schedule space.
class TemporalBaselinePolicy : public Policy {
  public:
    explicit TemporalBaselinePolicy(Rational quantum);
    std::string_view name() const override { return "temporal"; }
    PolicyDecision on_launch(const PolicyView& view, const LaunchContext& launch) const override;
    std::optional<Rational> next_review_time(const PolicyView& view) const override;

    // Exposed for tests: which vctx owns the device at `now`.
    std::optional<VctxId> owner_at(const PolicyView& view) const;

  private:
    Rational quantum_;
};

// Fixed vctx -> pctx assignment; always direct, never remaps or preempts.
class StaticPartitionPolicy : public Policy {
  public:
    explicit StaticPartitionPolicy(std::map<VctxId, PctxId> assignments);
    std::string_view name() const override { return "static"; }
    PolicyDecision on_launch(const PolicyView& view, const LaunchContext& launch) const override;
    const std::map<VctxId, PctxId>& assignments() const { return assignments_; }

  private:
    std::map<VctxId, PctxId> assignments_;
};

// Throws ConfigError for unknown names (the CLI reports the valid list).
std::unique_ptr<Policy> make_policy(const PolicyConfig& config);
const std::vector<std::string>& policy_names();

}  // namespace corosim

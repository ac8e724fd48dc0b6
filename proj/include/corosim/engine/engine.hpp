#pragma once

#include "corosim/core/types.hpp"
#include "corosim/engine/event.hpp"
#include "corosim/engine/speed.hpp"
#include "corosim/errors.hpp"
#include "corosim/policy/policies.hpp"
#include "corosim/policy/policy.hpp"
#include "corosim/runtime/costs.hpp"
#include "corosim/runtime/migration.hpp"

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace corosim {

struct FaultSpec {
    enum class Kind { LocalException, GlobalException, SoftHang };
    Kind kind = Kind::LocalException;
    PctxId pctx;      // local exception / soft hang target
    DeviceId device;  // global exception target
    Rational inject_time;
    Rational stretch{10};  // soft hang slowdown, > 1
};

struct QuarantineState {
    VctxId vctx;
    Rational demoted_tier;
    Rational flagged_at;
};

struct DeviceSpec {
    std::vector<Rational> tiers;
    bool standby = false;
    Rational total_bandwidth{1};
    std::int64_t total_sm = 128;
};

struct JobSpec {
    std::string name;
    PriorityClass priority = PriorityClass::BestEffort;
    std::vector<Kernel> kernels;        // program order; ids are assigned at load
    std::vector<MemoryRegion> regions;  // declared working set
};

struct RequestMeta {
    RequestId id;
    VctxId vctx;
    Rational arrival;
    bool inference = true;
    int output_tokens = 0;
    std::optional<SloSpec> slo;
};

struct EngineConfig {
    CostParameters costs;
    int segments_per_kernel = 16;  // cooperative yield granularity
    bool release_on_idle = true;
    bool hang_detection = false;
    Rational hang_threshold{3};
    Rational reset_delay{1, 10};  // pctx downtime after a local exception
    std::uint64_t event_budget = 2000000;
    bool capture_log = false;
    // Negative-control transform modeling kernel atomization: launches are
    // reshaped to fit the tier they land on. Breaks semantic determinism by
    // construction; never enabled outside the determinism lab.
    bool atomize_to_fit = false;
};

struct Scenario {
    std::vector<DeviceSpec> devices;
    std::vector<JobSpec> jobs;
    std::vector<RequestMeta> requests;
    std::vector<FaultSpec> faults;
    EngineConfig config;
    PolicyConfig policy;
    std::uint64_t seed = 0;
};

struct TranscriptEntry {
    VctxId vctx;
    KernelId kernel;
    KernelSignature executed;  // signature actually launched
    Rational start;
    Rational finish;
    PctxId pctx;
    Rational tier;
};

struct OverheadLedger {
    Rational ctx_switch_total;
    std::int64_t ctx_switches = 0;
    Rational preempt_total;
    std::int64_t preemptions = 0;
    Rational migration_total;  // remap_fixed + eager copy time
    std::int64_t migrations = 0;
    Rational demand_fault_total;
    std::int64_t demand_faults = 0;

    Rational total() const {
        return ctx_switch_total + preempt_total + migration_total + demand_fault_total;
    }
};

struct KernelExec {
    Rational first_start;
    Rational finish;
    Rational exec_time;  // wall time spent running (overheads included)
    // (interval length, work rate divisor) pieces while work was retiring.
    std::vector<std::pair<Rational, Rational>> work_intervals;
};

struct RequestOutcome {
    RequestMeta meta;
    bool completed = false;
    Rational prefill_finish;
    Rational first_decode_finish;
    Rational last_finish;
    int kernels_done = 0;
    int kernel_count = 0;
};

struct SimulationReport {
    Rational end_clock;
    std::uint64_t events_processed = 0;
    std::int64_t kernels_completed = 0;
    std::map<VctxId, std::vector<KernelSignature>> vctx_transcripts;
    std::vector<TranscriptEntry> transcript;  // global start order
    OverheadLedger ledger;
    std::vector<MigrationRecord> migrations;
    std::vector<PreemptionRecord> preemptions;
    std::vector<QuarantineState> quarantines;
    std::map<VctxId, VctxStatus> vctx_status;
    std::map<VctxId, std::int64_t> logical_progress;
    std::map<VctxId, std::uint64_t> kernel_fingerprints;  // xor over all kernels, load + end
    std::map<VctxId, Rational> first_arrival;  // earliest kernel arrival per vctx
    std::map<VctxId, Rational> last_finish;    // latest kernel completion per vctx
    std::vector<RequestOutcome> requests;
    std::map<KernelId, KernelExec> kernel_exec;
    std::vector<std::string> event_log;  // JSON lines when capture_log is set
    std::int64_t policy_errors = 0;
    bool hit_event_budget = false;
};

// Deterministic single-threaded discrete-event engine. One instance per
// simulation; instances share no mutable state, so independent runs can go
// on separate threads.
class SimEngine {
  public:
    // Policy defaults to the one named in scenario.policy.
    explicit SimEngine(Scenario scenario, std::unique_ptr<Policy> policy = nullptr);
    ~SimEngine();

    SimEngine(const SimEngine&) = delete;
    SimEngine& operator=(const SimEngine&) = delete;

    // Runs to quiescence (or `until`). Throws EventBudgetExceeded past the
    // configured event cap.
    SimulationReport run(std::optional<Rational> until = std::nullopt);

    static SimulationReport simulate(const Scenario& scenario);

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Derived scenario: one job alone on a single full-tier device, statically
// bound. The normalization baseline for throughput metrics.
Scenario exclusive_baseline(const Scenario& scenario, std::size_t job_index);

}  // namespace corosim

#include "corosim/engine/engine.hpp"

#include <json.hpp>

#include <algorithm>
#include <cassert>
#include <functional>
#include <utility>

namespace corosim {

namespace {

// Smallest segment-boundary work point at or above `work`; boundaries
// subdivide the kernel into B equal work segments.
Rational next_boundary_work(const Rational& work, const Rational& base, int segments) {
    Rational seg = base / segments;
    Rational ratio = work / seg;
    BigInt num = numerator(ratio);
    BigInt den = denominator(ratio);
    BigInt k = (num + den - 1) / den;  // ceil, work >= 0
    Rational target = Rational(k) * seg;
    return target > base ? base : target;
}

std::int64_t atomized_grid(std::int64_t grid, const Rational& tier) {
    BigInt scaled = BigInt(grid) * numerator(tier) / denominator(tier);
    std::int64_t g = scaled.convert_to<std::int64_t>();
    return g < 1 ? 1 : g;
}

}  // namespace

struct SimEngine::Impl {
    // One started (possibly paused) kernel instance.
    struct RunState {
        KernelId kernel;
        VctxId vctx;
        PctxId pctx;
        KernelSignature executed;
        Rational work_done;
        Rational overhead_left;  // wall time burned before work retires
        Rational factor{1};
        Rational stretch{1};
        Rational last_update;
        Rational exec_accum;
        Rational first_start;
        std::uint64_t generation = 0;
        bool yield_pending = false;
        Rational yield_target;
        Rational yield_overhead;
        Rational yield_signal_time;
        bool emergency_yield = false;
        bool hang_armed = false;
        Rational hang_needed;  // threshold * prediction, captured at first start
        std::vector<std::pair<Rational, Rational>> work_intervals;
    };

    struct VctxState {
        VirtualContext core;
        std::vector<Kernel> kernels;          // by position
        std::map<KernelId, std::size_t> kernel_pos;
        std::size_t next_arrival = 0;         // first kernel not yet arrived
        Rational last_finish;
        bool has_last_finish = false;
        std::optional<RunState> paused;
        PctxId running_on;                    // invalid when not running
        bool migrating = false;
        std::uint64_t migration_gen = 0;
        std::vector<RegionId> pending_eager;  // regions landing at migration end
        PctxId migration_dst;
        int active_migration = -1;            // index into migrations_
        bool fresh_bind = false;              // next dispatch pays the switch cost
        bool quarantined = false;
        bool emergency_pending = false;

        struct LazyItem {
            RegionId region;
            Rational bytes_left;
        };
        std::deque<LazyItem> lazy_queue;
        Rational lazy_cursor;
        PctxId lazy_dst;
    };

    Scenario scenario;
    std::unique_ptr<Policy> policy;
    DurationPredictor predictor;

    std::vector<Device> devices;
    std::vector<PhysicalContext> pctxs;
    std::vector<Rational> pctx_unavailable_until;
    std::vector<VctxState> vctxs;
    BindingTable binding;
    std::map<PctxId, RunState> runs;

    Clock clock;
    EventQueue queue;
    SimulationReport report;
    std::map<RequestId, std::size_t> request_index;
    Rational last_review_scheduled{-1};
    bool ran = false;

    explicit Impl(Scenario s, std::unique_ptr<Policy> p)
        : scenario(std::move(s)),
          policy(std::move(p)),
          predictor(scenario.policy.predictor_alpha, scenario.policy.cold_start_prediction) {
        if (!policy) policy = make_policy(scenario.policy);
        scenario.config.costs.validate();
        if (scenario.config.segments_per_kernel < 1) {
            throw SimError(Errc::ConfigError, "segments_per_kernel must be >= 1");
        }
        build_devices();
        build_jobs();
        validate_policy_requirements();
        build_requests();
        schedule_initial_events();
    }

    // ---- construction ------------------------------------------------

    void build_devices() {
        if (scenario.devices.empty()) {
            throw SimError(Errc::ConfigError, "scenario needs at least one device");
        }
        for (std::size_t i = 0; i < scenario.devices.size(); ++i) {
            const DeviceSpec& spec = scenario.devices[i];
            Device dev;
            dev.id = DeviceId(static_cast<std::int32_t>(i));
            dev.total_sm = spec.total_sm;
            dev.total_bandwidth = spec.total_bandwidth;
            dev.standby = spec.standby;
            create_pool(dev, spec.tiers, pctxs);
            devices.push_back(std::move(dev));
        }
        pctx_unavailable_until.assign(pctxs.size(), Rational(0));
    }

    void build_jobs() {
        std::int32_t next_kernel_id = 0;
        for (std::size_t i = 0; i < scenario.jobs.size(); ++i) {
            const JobSpec& job = scenario.jobs[i];
            VctxState vs;
            vs.core.id = VctxId(static_cast<std::int32_t>(i));
            vs.core.priority_class = job.priority;
            for (const MemoryRegion& r : job.regions) {
                if (r.bytes == 0) {
                    throw SimError(Errc::ConfigError, "region bytes must be positive");
                }
                MemoryRegion region = r;
                region.dirty = false;
                region.resident_on.clear();
                vs.core.working_set[region.id] = std::move(region);
            }
            Rational prev_floor{0};
            std::uint64_t fp = 0;
            for (Kernel k : job.kernels) {
                k.id = KernelId(next_kernel_id++);
                k.vctx = vs.core.id;
                if (k.base_duration <= 0) {
                    throw SimError(Errc::ConfigError, "kernel base_duration must be positive");
                }
                if (k.compute_saturation <= 0 || k.compute_saturation > 1) {
                    throw SimError(Errc::ConfigError, "compute_saturation must lie in (0, 1]");
                }
                if (k.mem_bound_fraction < 0 || k.mem_bound_fraction > 1 || k.mem_bw_demand < 0) {
                    throw SimError(Errc::ConfigError, "invalid kernel memory parameters");
                }
                if (k.signature.grid_size < 1) {
                    throw SimError(Errc::ConfigError, "grid_size must be >= 1");
                }
                if (k.arrival_floor < prev_floor) {
                    throw SimError(Errc::ConfigError,
                                   "kernel arrival floors must be non-decreasing");
                }
                prev_floor = k.arrival_floor;
                for (RegionId r : k.touched_regions) {
                    if (!vs.core.working_set.count(r)) {
                        throw SimError(Errc::TraceViolation,
                                       "kernel touches region outside the declared working set");
                    }
                }
                fp ^= k.fingerprint();
                vs.kernel_pos[k.id] = vs.kernels.size();
                vs.kernels.push_back(std::move(k));
            }
            report.kernel_fingerprints[vs.core.id] = fp;
            vctxs.push_back(std::move(vs));
        }
    }

    void validate_policy_requirements() {
        if (scenario.policy.name == "temporal") {
            bool has_full = false;
            for (const PhysicalContext& p : pctxs) {
                if (p.tier.fraction == 1) has_full = true;
            }
            if (!has_full) {
                throw SimError(Errc::ConfigError,
                               "temporal baseline needs a full-tier pctx in the pool");
            }
        }
        if (scenario.policy.name == "static") {
            for (const VctxState& v : vctxs) {
                auto it = scenario.policy.assignments.find(v.core.id);
                if (it == scenario.policy.assignments.end()) {
                    throw SimError(Errc::ConfigError,
                                   "static partition leaves vctx " +
                                       std::to_string(v.core.id.value) + " unassigned");
                }
                if (it->second.value < 0 ||
                    it->second.value >= static_cast<std::int32_t>(pctxs.size())) {
                    throw SimError(Errc::ConfigError, "static partition maps to unknown pctx");
                }
            }
        }
    }

    void build_requests() {
        for (std::size_t i = 0; i < scenario.requests.size(); ++i) {
            const RequestMeta& meta = scenario.requests[i];
            RequestOutcome out;
            out.meta = meta;
            report.requests.push_back(std::move(out));
            request_index[meta.id] = i;
        }
        for (const VctxState& v : vctxs) {
            for (const Kernel& k : v.kernels) {
                if (!k.request.valid()) continue;
                auto it = request_index.find(k.request);
                if (it != request_index.end()) report.requests[it->second].kernel_count++;
            }
        }
    }

    void schedule_initial_events() {
        for (const VctxState& v : vctxs) {
            Rational last{-1};
            for (const Kernel& k : v.kernels) {
                if (k.arrival_floor != last) {
                    Event e;
                    e.time = k.arrival_floor;
                    e.kind = EventKind::Arrival;
                    e.vctx = v.core.id;
                    queue.schedule(clock.now, e);
                    last = k.arrival_floor;
                }
            }
        }
        for (std::size_t i = 0; i < scenario.faults.size(); ++i) {
            const FaultSpec& f = scenario.faults[i];
            if (f.kind == FaultSpec::Kind::SoftHang && f.stretch <= 1) {
                throw SimError(Errc::ConfigError, "soft hang stretch must exceed 1");
            }
            Event e;
            e.time = f.inject_time;
            e.kind = EventKind::FaultInjected;
            e.aux = static_cast<std::int64_t>(i);
            queue.schedule(clock.now, e);
        }
    }

    // ---- small helpers -----------------------------------------------

    VctxState& vstate(VctxId id) { return vctxs[id.value]; }
    PhysicalContext& pstate(PctxId id) { return pctxs[id.value]; }
    Device& device_of(PctxId id) { return devices[pctxs[id.value].device.value]; }

    bool pctx_available(const PhysicalContext& p) const {
        if (devices[p.device.value].failed) return false;
        return pctx_unavailable_until[p.id.value] <= clock.now;
    }

    const Kernel* head_kernel(VctxState& v) {
        if (v.paused) return &v.kernels[v.kernel_pos.at(v.paused->kernel)];
        if (v.core.pending.empty()) return nullptr;
        return &v.kernels[v.kernel_pos.at(v.core.pending.front())];
    }

    Rational ready_time(VctxState& v) {
        if (v.paused) return clock.now;
        const Kernel* k = head_kernel(v);
        Rational t = k->arrival_floor;
        if (v.has_last_finish) {
            Rational gated = v.last_finish + k->gap_after_prev;
            if (gated > t) t = gated;
        }
        return t;
    }

    bool launchable(VctxState& v) {
        if (v.core.status != VctxStatus::Active || v.migrating || v.running_on.valid()) {
            return false;
        }
        if (v.emergency_pending) return false;
        if (!v.paused && v.core.pending.empty()) return false;
        return ready_time(v) <= clock.now;
    }

    std::optional<SloSpec> slo_of(const Kernel& k) {
        if (!k.request.valid()) return std::nullopt;
        auto it = request_index.find(k.request);
        if (it == request_index.end()) return std::nullopt;
        return report.requests[it->second].meta.slo;
    }

    Rational request_arrival_of(const Kernel& k) {
        if (!k.request.valid()) return k.arrival_floor;
        auto it = request_index.find(k.request);
        if (it == request_index.end()) return k.arrival_floor;
        return report.requests[it->second].meta.arrival;
    }

    // ---- event log -----------------------------------------------------

    void log_event(const Rational& t, std::uint64_t seq, EventKind kind,
                   const std::function<void(nlohmann::ordered_json&)>& fill) {
        if (!scenario.config.capture_log) return;
        nlohmann::ordered_json j;
        j["t"] = to_decimal_string(t);
        j["seq"] = seq;
        j["kind"] = event_kind_name(kind);
        if (fill) fill(j);
        report.event_log.push_back(j.dump());
    }

    void log_plain(EventKind kind, const std::function<void(nlohmann::ordered_json&)>& fill) {
        log_event(clock.now, queue.allocate_seq(), kind, fill);
    }

    // ---- policy view ---------------------------------------------------

    PolicyView build_view() {
        PolicyView view;
        view.now = clock.now;
        view.predictor = &predictor;
        for (const Device& d : devices) {
            Rational sum = 0;
            for (PctxId pid : d.pctx_pool) {
                if (pctxs[pid.value].is_bound()) sum += pctxs[pid.value].tier.fraction;
            }
            view.bound_tier_sums[d.id] = sum;
            view.min_tiers[d.id] = min_tier(d, pctxs);
        }
        for (const PhysicalContext& p : pctxs) {
            PolicyView::PctxEntry e;
            e.id = p.id;
            e.device = p.device;
            e.tier = p.tier.fraction;
            e.standby = devices[p.device.value].standby;
            e.bound = p.bound;
            e.available = pctx_available(p);
            auto it = runs.find(p.id);
            if (it != runs.end()) {
                const RunState& run = it->second;
                const Kernel& k = kernel_of(run);
                e.running_kernel = run.kernel;
                e.running_signature = run.executed;
                e.running_phase = k.phase;
                e.running_priority = vctxs[run.vctx.value].core.priority_class;
                Rational remaining_work = k.base_duration - run.work_done;
                e.running_remaining =
                    run.overhead_left + remaining_work * run.factor * run.stretch;
            }
            view.pctxs.push_back(std::move(e));
        }
        for (VctxState& v : vctxs) {
            PolicyView::VctxEntry e;
            e.id = v.core.id;
            e.priority = v.core.priority_class;
            e.quarantined = v.quarantined;
            e.bound = binding.pctx_of(v.core.id).has_value();
            e.pending = static_cast<std::int64_t>(v.core.pending.size()) + (v.paused ? 1 : 0);
            const Kernel* head = v.core.status == VctxStatus::Active ? head_kernel(v) : nullptr;
            if (head) e.head_phase = head->phase;
            e.decoding = (head && head->phase == Phase::Decode) ||
                         (v.running_on.valid() &&
                          kernel_of(runs.at(v.running_on)).phase == Phase::Decode);
            if (v.core.status == VctxStatus::Active &&
                (v.running_on.valid() || v.paused || !v.core.pending.empty())) {
                view.active_vctx_count++;
            }
            view.vctxs.push_back(std::move(e));
        }
        return view;
    }

    const Kernel& kernel_of(const RunState& run) {
        VctxState& v = vstate(run.vctx);
        return v.kernels[v.kernel_pos.at(run.kernel)];
    }

    LaunchContext launch_context(VctxState& v) {
        LaunchContext lc;
        lc.vctx = v.core.id;
        lc.kernel = head_kernel(v);
        if (lc.kernel) {
            lc.slo = slo_of(*lc.kernel);
            lc.request_arrival = request_arrival_of(*lc.kernel);
        }
        return lc;
    }

    // ---- pricing -------------------------------------------------------

    void advance_run(RunState& run, const Rational& now) {
        Rational elapsed = now - run.last_update;
        if (elapsed <= 0) {
            run.last_update = now;
            return;
        }
        run.exec_accum += elapsed;
        Rational for_work = elapsed;
        if (run.overhead_left > 0) {
            Rational burn = run.overhead_left < elapsed ? run.overhead_left : elapsed;
            run.overhead_left -= burn;
            for_work -= burn;
        }
        if (for_work > 0) {
            Rational rate = run.factor * run.stretch;
            run.work_done += for_work / rate;
            run.work_intervals.emplace_back(for_work, rate);
        }
        run.last_update = now;
    }

    void reprice_device(DeviceId dev) {
        ContentionSnapshot snap;
        for (PctxId pid : devices[dev.value].pctx_pool) {
            auto it = runs.find(pid);
            if (it == runs.end()) continue;
            advance_run(it->second, clock.now);
            const Kernel& k = kernel_of(it->second);
            snap.running.push_back({pid, pctxs[pid.value].tier.fraction, k.mem_bw_demand});
        }
        Rational total = snap.total_demand();
        for (PctxId pid : devices[dev.value].pctx_pool) {
            auto it = runs.find(pid);
            if (it == runs.end()) continue;
            RunState& run = it->second;
            const Kernel& k = kernel_of(run);
            run.factor = slowdown_factor(k.compute_saturation, k.mem_bound_fraction,
                                         pctxs[pid.value].tier.fraction, total);
            schedule_run_event(run);
        }
    }

    void schedule_run_event(RunState& run) {
        run.generation++;
        const Kernel& k = kernel_of(run);
        Rational rate = run.factor * run.stretch;
        Event e;
        e.vctx = run.vctx;
        e.pctx = run.pctx;
        e.kernel = run.kernel;
        e.generation = run.generation;
        if (run.yield_pending) {
            e.kind = EventKind::PreemptSignal;
            e.phase = 1;
            e.time = clock.now + run.overhead_left + (run.yield_target - run.work_done) * rate;
        } else {
            e.kind = EventKind::KernelFinish;
            e.time = clock.now + run.overhead_left + (k.base_duration - run.work_done) * rate;
        }
        queue.schedule(clock.now, e);
    }

    // ---- dispatch paths --------------------------------------------------

    void start_or_resume(VctxState& v) {
        auto bound = binding.pctx_of(v.core.id);
        assert(bound);
        PhysicalContext& p = pstate(*bound);

        RunState run;
        if (v.paused) {
            run = std::move(*v.paused);
            v.paused.reset();
        } else {
            const Kernel& k = v.kernels[v.kernel_pos.at(v.core.pending.front())];
            run.kernel = k.id;
            run.vctx = v.core.id;
            run.first_start = clock.now;
            run.executed = k.signature;
            if (scenario.config.atomize_to_fit && p.tier.fraction < 1) {
                run.executed.grid_size = atomized_grid(k.signature.grid_size, p.tier.fraction);
            }
        }
        run.pctx = p.id;
        run.last_update = clock.now;
        run.yield_pending = false;

        const Kernel& k = kernel_of(run);

        // Demand faults: touched regions not resident here are pulled
        // synchronously before work starts.
        Rational fault_delay = service_demand_faults(v, k, p.id);
        run.overhead_left += fault_delay;

        if (v.fresh_bind) {
            // First dispatch crossing a bind change pays the context-switch
            // cost: a fraction of the kernel's first segment at the rate in
            // effect when work begins.
            Rational seg = k.base_duration / scenario.config.segments_per_kernel;
            Rational factor_now = projected_factor(k, p);
            Rational charge = scenario.config.costs.ctx_switch_overhead * seg * factor_now;
            run.overhead_left += charge;
            report.ledger.ctx_switch_total += charge;
            report.ledger.ctx_switches++;
            v.fresh_bind = false;
        }

        p.hw_queue.assign(1, run.kernel);
        v.running_on = p.id;
        bool first_time = run.exec_accum == 0;
        KernelSignature executed = run.executed;
        runs[p.id] = std::move(run);

        log_plain(EventKind::KernelStart, [&](nlohmann::ordered_json& j) {
            j["vctx"] = v.core.id.value;
            j["pctx"] = p.id.value;
            j["kernel"] = executed.semantic_id;
            j["grid"] = executed.grid_size;
            j["resumed"] = !first_time;
        });

        reprice_device(p.device);
        arm_hang_check(runs.at(p.id), first_time);
    }

    Rational projected_factor(const Kernel& k, const PhysicalContext& p) {
        Rational total = k.mem_bw_demand;
        for (PctxId pid : devices[p.device.value].pctx_pool) {
            if (pid == p.id) continue;
            auto it = runs.find(pid);
            if (it == runs.end()) continue;
            total += kernel_of(it->second).mem_bw_demand;
        }
        return slowdown_factor(k.compute_saturation, k.mem_bound_fraction, p.tier.fraction, total);
    }

    void arm_hang_check(RunState& run, bool first_time) {
        if (!scenario.config.hang_detection) return;
        VctxState& v = vstate(run.vctx);
        if (v.quarantined) return;
        const Kernel& k = kernel_of(run);
        if (first_time) {
            Rational pred = predictor.predict(run.executed, k.base_duration);
            run.hang_needed = scenario.config.hang_threshold * pred;
            run.hang_armed = true;
        }
        if (!run.hang_armed) return;
        if (run.exec_accum >= run.hang_needed) return;  // handled at next check
        Event e;
        e.kind = EventKind::HangCheck;
        e.pctx = run.pctx;
        e.vctx = run.vctx;
        e.kernel = run.kernel;
        e.time = clock.now + (run.hang_needed - run.exec_accum);
        queue.schedule(clock.now, e);
    }

    Rational service_demand_faults(VctxState& v, const Kernel& k, PctxId dst) {
        advance_lazy(v, clock.now);
        Rational delay = 0;
        for (RegionId rid : k.touched_regions) {
            MemoryRegion& region = v.core.working_set.at(rid);
            if (region.resident_on.count(dst)) continue;
            if (v.migrating || std::find(v.pending_eager.begin(), v.pending_eager.end(), rid) !=
                                   v.pending_eager.end()) {
                continue;  // eager copy already in flight
            }
            Rational bytes = Rational(static_cast<long long>(region.bytes));
            for (auto it = v.lazy_queue.begin(); it != v.lazy_queue.end(); ++it) {
                if (it->region == rid) {
                    bytes = it->bytes_left;
                    v.lazy_queue.erase(it);
                    break;
                }
            }
            Rational cost =
                scenario.config.costs.fault_fixed + bytes / scenario.config.costs.copy_bandwidth;
            delay += cost;
            region.resident_on.insert(dst);
            region.dirty = false;
            report.ledger.demand_fault_total += cost;
            report.ledger.demand_faults++;
            if (v.active_migration >= 0) {
                report.migrations[v.active_migration].demand_faults++;
            }
        }
        if (delay > 0) v.lazy_cursor += delay;  // fault service preempts background copying
        return delay;
    }

    void advance_lazy(VctxState& v, const Rational& now) {
        if (v.lazy_queue.empty()) {
            v.lazy_cursor = now;
            return;
        }
        if (v.lazy_cursor < now) {
            Rational budget = (now - v.lazy_cursor) * scenario.config.costs.copy_bandwidth;
            while (!v.lazy_queue.empty() && budget > 0) {
                auto& head = v.lazy_queue.front();
                if (head.bytes_left <= budget) {
                    budget -= head.bytes_left;
                    MemoryRegion& region = v.core.working_set.at(head.region);
                    region.resident_on.insert(v.lazy_dst);
                    region.dirty = false;
                    v.lazy_queue.pop_front();
                } else {
                    head.bytes_left -= budget;
                    budget = 0;
                }
            }
            v.lazy_cursor = now;
        }
    }

    void begin_migration(VctxState& v, PctxId dst, bool emergency) {
        auto src = binding.pctx_of(v.core.id);
        if (src) do_unbind(v, *src);
        v.lazy_queue.clear();  // a new migration supersedes outstanding transfers

        MigrationSet set;
        if (emergency) {
            set = full_eager_set(v.core);
        } else if (const Kernel* next = head_kernel(v)) {
            set = compute_migration_set(v.core, *next, dst);
        }

        bind(binding, v.core, pstate(dst));
        v.fresh_bind = true;
        v.migrating = true;
        v.migration_gen++;
        v.migration_dst = dst;
        v.pending_eager = set.eager;

        Rational copy_time =
            Rational(static_cast<long long>(set.eager_bytes)) / scenario.config.costs.copy_bandwidth;
        Rational resume = clock.now + scenario.config.costs.remap_fixed + copy_time;

        MigrationRecord rec;
        rec.vctx = v.core.id;
        rec.src = src.value_or(PctxId{});
        rec.dst = dst;
        rec.eager_bytes = set.eager_bytes;
        rec.lazy_bytes = set.lazy_bytes;
        rec.start = clock.now;
        rec.end = resume;
        rec.emergency = emergency;
        v.active_migration = static_cast<int>(report.migrations.size());
        report.migrations.push_back(rec);

        report.ledger.migration_total += resume - clock.now;
        report.ledger.migrations++;

        v.lazy_cursor = resume;
        v.lazy_dst = dst;
        for (RegionId rid : set.lazy) {
            v.lazy_queue.push_back(
                {rid, Rational(static_cast<long long>(v.core.working_set.at(rid).bytes))});
        }

        Event e;
        e.kind = EventKind::MigrationDone;
        e.vctx = v.core.id;
        e.pctx = dst;
        e.generation = v.migration_gen;
        e.time = resume;
        queue.schedule(clock.now, e);
    }

    void do_unbind(VctxState& v, PctxId pid) {
        unbind(binding, v.core, pstate(pid));
        v.fresh_bind = false;
    }

    // ---- decision application -------------------------------------------

    bool decision_changes_state(const PolicyDecision& d) {
        return d.kind == PolicyDecision::Kind::DispatchDirect ||
               d.kind == PolicyDecision::Kind::DispatchRemap ||
               d.kind == PolicyDecision::Kind::Preempt;
    }

    // Validates and applies; illegal decisions degrade to Defer (fail-safe).
    DispatchOutcome apply_decision(VctxState& v, const PolicyDecision& decision) {
        using K = PolicyDecision::Kind;
        auto fail = [&](const char* why) {
            report.policy_errors++;
            log_plain(EventKind::LaunchReady, [&](nlohmann::ordered_json& j) {
                j["vctx"] = v.core.id.value;
                j["policy_error"] = why;
            });
            return DispatchOutcome{DispatchOutcome::Kind::Defer, {},
                                   DispatchOutcome::DeferReason::PolicyError};
        };

        switch (decision.kind) {
            case K::NoAction:
            case K::DispatchDefer:
                return {DispatchOutcome::Kind::Defer, {},
                        DispatchOutcome::DeferReason::PolicyDefer};
            case K::DispatchDirect: {
                auto bound = binding.pctx_of(v.core.id);
                if (!bound) return fail("direct dispatch while unbound");
                if (runs.count(*bound)) return fail("direct dispatch to a busy pctx");
                if (!pctx_available(pstate(*bound))) return fail("pctx not available");
                start_or_resume(v);
                return {DispatchOutcome::Kind::Direct, *bound, {}};
            }
            case K::DispatchRemap: {
                if (decision.target.value < 0 ||
                    decision.target.value >= static_cast<std::int32_t>(pctxs.size())) {
                    return fail("remap to unknown pctx");
                }
                PhysicalContext& p = pstate(decision.target);
                if (p.is_bound()) return fail("remap to a bound pctx");
                if (!pctx_available(p)) return fail("remap to an unavailable pctx");
                Rational sum = 0;
                for (PctxId pid : device_of(p.id).pctx_pool) {
                    if (pctxs[pid.value].is_bound()) sum += pctxs[pid.value].tier.fraction;
                }
                if (sum + p.tier.fraction > 1) return fail("remap violates spatial feasibility");
                if (v.quarantined && p.tier.fraction != min_tier(device_of(p.id), pctxs)) {
                    return fail("quarantined vctx above minimal tier");
                }
                begin_migration(v, p.id, false);
                return {DispatchOutcome::Kind::Remap, p.id, {}};
            }
            case K::Preempt: {
                if (decision.target.value < 0 ||
                    decision.target.value >= static_cast<std::int32_t>(pctxs.size())) {
                    return fail("preempt of unknown pctx");
                }
                PhysicalContext& p = pstate(decision.target);
                if (!p.is_bound()) {
                    // Signaled, not fatal: preempting an unbound pctx is a no-op.
                    log_plain(EventKind::PreemptSignal, [&](nlohmann::ordered_json& j) {
                        j["pctx"] = p.id.value;
                        j["noop"] = true;
                    });
                    return {DispatchOutcome::Kind::Defer, {},
                            DispatchOutcome::DeferReason::PolicyDefer};
                }
                if (p.bound == v.core.id) return fail("self-preemption");
                signal_preempt(p.id, false);
                return {DispatchOutcome::Kind::Defer, {},
                        DispatchOutcome::DeferReason::PolicyDefer};
            }
        }
        return {DispatchOutcome::Kind::Defer, {}, DispatchOutcome::DeferReason::PolicyDefer};
    }

    void signal_preempt(PctxId pid, bool emergency) {
        PhysicalContext& p = pstate(pid);
        if (!p.is_bound()) return;
        if (p.rck_flag) {
            if (emergency) {
                auto it = runs.find(pid);
                if (it != runs.end()) it->second.emergency_yield = true;
                vstate(*p.bound).emergency_pending = true;
            }
            return;  // already yielding
        }
        p.rck_flag = true;
        VctxState& v = vstate(*p.bound);
        log_plain(EventKind::PreemptSignal, [&](nlohmann::ordered_json& j) {
            j["pctx"] = pid.value;
            j["vctx"] = v.core.id.value;
            j["asserted"] = true;
        });

        auto it = runs.find(pid);
        if (it == runs.end()) {
            // Bound but idle (or still migrating in): nothing to interrupt.
            Rational prior_tier = p.tier.fraction;
            if (v.migrating) {
                report.migrations[v.active_migration].aborted = true;
                v.migrating = false;
                v.migration_gen++;
                v.pending_eager.clear();
                v.lazy_queue.clear();
            }
            do_unbind(v, pid);
            report.preemptions.push_back({v.core.id, pid, clock.now, Rational(0), Rational(0)});
            report.ledger.preemptions++;
            if (emergency) emergency_migrate(v, prior_tier);
            return;
        }

        RunState& run = it->second;
        advance_run(run, clock.now);
        const Kernel& k = kernel_of(run);
        Rational seg = k.base_duration / scenario.config.segments_per_kernel;
        run.yield_pending = true;
        run.yield_target =
            next_boundary_work(run.work_done, k.base_duration, scenario.config.segments_per_kernel);
        run.yield_overhead =
            scenario.config.costs.preempt_overhead * seg * run.factor * run.stretch;
        run.yield_signal_time = clock.now;
        run.emergency_yield = emergency;
        if (emergency) v.emergency_pending = true;
        schedule_run_event(run);
    }

    // ---- event handlers ---------------------------------------------------

    void on_arrival(const Event& e) {
        VctxState& v = vstate(e.vctx);
        while (v.next_arrival < v.kernels.size() &&
               v.kernels[v.next_arrival].arrival_floor <= clock.now) {
            if (v.core.status == VctxStatus::Active) {
                v.core.pending.push_back(v.kernels[v.next_arrival].id);
            }
            v.next_arrival++;
        }
    }

    void on_kernel_finish(const Event& e) {
        auto it = runs.find(e.pctx);
        if (it == runs.end() || it->second.generation != e.generation) return;
        RunState run = std::move(it->second);
        runs.erase(it);
        finish_run(run);
        pump_launches();
    }

    void finish_run(RunState& run) {
        advance_run(run, clock.now);
        VctxState& v = vstate(run.vctx);
        const Kernel& k = kernel_of(run);
        PhysicalContext& p = pstate(run.pctx);

        // Work conservation: retired work must equal the base duration
        // exactly in rational arithmetic.
        assert(run.work_done == k.base_duration);

        report.transcript.push_back({v.core.id, k.id, run.executed, run.first_start, clock.now,
                                     p.id, p.tier.fraction});
        report.vctx_transcripts[v.core.id].push_back(run.executed);
        report.kernels_completed++;
        predictor.observe(run.executed, run.exec_accum);

        KernelExec exec;
        exec.first_start = run.first_start;
        exec.finish = clock.now;
        exec.exec_time = run.exec_accum;
        exec.work_intervals = run.work_intervals;
        report.kernel_exec[k.id] = std::move(exec);

        v.core.logical_progress++;
        if (!v.core.pending.empty() && v.core.pending.front() == k.id) {
            v.core.pending.pop_front();
        }
        v.last_finish = clock.now;
        v.has_last_finish = true;
        v.running_on = PctxId{};
        p.hw_queue.clear();

        for (RegionId rid : k.touched_regions) {
            MemoryRegion& region = v.core.working_set.at(rid);
            region.dirty = true;
            region.resident_on.clear();
            region.resident_on.insert(p.id);
        }

        update_request(k);

        log_plain(EventKind::KernelFinish, [&](nlohmann::ordered_json& j) {
            j["vctx"] = v.core.id.value;
            j["pctx"] = p.id.value;
            j["kernel"] = run.executed.semantic_id;
            j["grid"] = run.executed.grid_size;
            j["exec"] = to_decimal_string(run.exec_accum);
        });

        reprice_device(p.device);

        // Completion hook.
        {
            PolicyView view = build_view();
            LaunchContext next = launch_context(v);
            PolicyDecision d = policy->on_completion(view, next);
            if (d.kind == PolicyDecision::Kind::Preempt) {
                apply_decision(v, d);
            }
        }

        // Next kernel readiness and idle release.
        if (v.core.status != VctxStatus::Active) return;
        if (!v.core.pending.empty()) {
            Rational ready = ready_time(v);
            if (ready > clock.now) {
                Event le;
                le.kind = EventKind::LaunchReady;
                le.vctx = v.core.id;
                le.time = ready;
                queue.schedule(clock.now, le);
                if (scenario.config.release_on_idle) release_binding(v);
            }
        } else if (scenario.config.release_on_idle) {
            release_binding(v);
        }
    }

    void release_binding(VctxState& v) {
        auto bound = binding.pctx_of(v.core.id);
        if (bound && !runs.count(*bound)) do_unbind(v, *bound);
    }

    void update_request(const Kernel& k) {
        if (!k.request.valid()) return;
        auto it = request_index.find(k.request);
        if (it == request_index.end()) return;
        RequestOutcome& out = report.requests[it->second];
        out.kernels_done++;
        out.last_finish = clock.now;
        if (k.phase == Phase::Prefill) out.prefill_finish = clock.now;
        if (k.phase == Phase::Decode && k.decode_index == 0) out.first_decode_finish = clock.now;
        if (out.kernels_done == out.kernel_count) out.completed = true;
    }

    void on_preempt_boundary(const Event& e) {
        if (e.phase == 2) {  // pctx cleanup elapsed; capacity is free again
            pump_launches();
            return;
        }
        auto it = runs.find(e.pctx);
        if (it == runs.end() || it->second.generation != e.generation) return;
        RunState run = std::move(it->second);
        runs.erase(it);

        advance_run(run, clock.now);
        VctxState& v = vstate(run.vctx);
        PhysicalContext& p = pstate(run.pctx);
        const Kernel& k = kernel_of(run);

        Rational wait = clock.now - run.yield_signal_time;
        Rational overhead = run.yield_overhead;
        bool emergency = run.emergency_yield;

        report.preemptions.push_back({v.core.id, p.id, run.yield_signal_time, wait, overhead});
        report.ledger.preempt_total += overhead;
        report.ledger.preemptions++;
        pctx_unavailable_until[p.id.value] = clock.now + overhead;

        log_plain(EventKind::PreemptSignal, [&](nlohmann::ordered_json& j) {
            j["pctx"] = p.id.value;
            j["vctx"] = v.core.id.value;
            j["yield"] = true;
            j["boundary_wait"] = to_decimal_string(wait);
            j["overhead"] = to_decimal_string(overhead);
        });

        Rational prior_tier = p.tier.fraction;
        if (run.yield_target == k.base_duration) {
            // The next boundary was the end of the kernel: it completes and
            // only the cleanup cost remains.
            run.yield_pending = false;
            finish_run(run);
            auto still = binding.pctx_of(v.core.id);
            if (still && *still == p.id) do_unbind(v, *still);
        } else {
            run.yield_pending = false;
            v.paused = std::move(run);
            v.running_on = PctxId{};
            p.hw_queue.clear();
            do_unbind(v, p.id);
            reprice_device(p.device);
        }

        if (emergency) emergency_migrate(v, prior_tier);

        Event free_evt;
        free_evt.kind = EventKind::PreemptSignal;
        free_evt.phase = 2;
        free_evt.pctx = p.id;
        free_evt.time = clock.now + overhead;
        queue.schedule(clock.now, free_evt);

        pump_launches();
    }

    void on_migration_done(const Event& e) {
        VctxState& v = vstate(e.vctx);
        if (!v.migrating || v.migration_gen != e.generation) return;
        v.migrating = false;
        for (RegionId rid : v.pending_eager) {
            MemoryRegion& region = v.core.working_set.at(rid);
            region.resident_on.insert(v.migration_dst);
            region.dirty = false;
        }
        v.pending_eager.clear();

        const MigrationRecord& rec = report.migrations[v.active_migration];
        log_plain(EventKind::MigrationDone, [&](nlohmann::ordered_json& j) {
            j["vctx"] = v.core.id.value;
            j["src"] = rec.src.value;
            j["dst"] = rec.dst.value;
            j["eager_bytes"] = rec.eager_bytes;
            j["lazy_bytes"] = rec.lazy_bytes;
            j["start"] = to_decimal_string(rec.start);
            j["end"] = to_decimal_string(rec.end);
            j["emergency"] = rec.emergency;
        });
        pump_launches();
    }

    void on_hang_check(const Event& e) {
        auto it = runs.find(e.pctx);
        if (it == runs.end() || it->second.kernel != e.kernel) return;
        RunState& run = it->second;
        advance_run(run, clock.now);
        VctxState& v = vstate(run.vctx);
        if (v.quarantined || !run.hang_armed) return;
        if (run.exec_accum >= run.hang_needed) {
            Rational demoted = min_tier(device_of(run.pctx), pctxs);
            report.quarantines.push_back({v.core.id, demoted, clock.now});
            v.quarantined = true;
            log_plain(EventKind::HangCheck, [&](nlohmann::ordered_json& j) {
                j["vctx"] = v.core.id.value;
                j["pctx"] = run.pctx.value;
                j["flagged"] = true;
                j["elapsed"] = to_decimal_string(run.exec_accum);
            });
            signal_preempt(run.pctx, false);
            pump_launches();
        } else {
            Event again = e;
            again.time = clock.now + (run.hang_needed - run.exec_accum);
            queue.schedule(clock.now, again);
        }
    }

    // ---- faults -------------------------------------------------------------

    void on_fault(const Event& e) {
        const FaultSpec& f = scenario.faults[static_cast<std::size_t>(e.aux)];
        switch (f.kind) {
            case FaultSpec::Kind::LocalException: apply_local_exception(f); break;
            case FaultSpec::Kind::GlobalException: apply_global_exception(f); break;
            case FaultSpec::Kind::SoftHang: apply_soft_hang(f); break;
        }
        pump_launches();
    }

    void apply_local_exception(const FaultSpec& f) {
        PhysicalContext& p = pstate(f.pctx);
        if (!p.is_bound()) {
            log_plain(EventKind::FaultInjected, [&](nlohmann::ordered_json& j) {
                j["fault"] = "local";
                j["pctx"] = f.pctx.value;
                j["effect"] = "none";
            });
            return;
        }
        VctxState& v = vstate(*p.bound);
        log_plain(EventKind::FaultInjected, [&](nlohmann::ordered_json& j) {
            j["fault"] = "local";
            j["pctx"] = f.pctx.value;
            j["vctx"] = v.core.id.value;
        });

        if (v.migrating) {
            // Fault lands mid-migration: the transfer is abandoned and the
            // destination context returns to the pool clean.
            report.migrations[v.active_migration].aborted = true;
            v.migrating = false;
            v.migration_gen++;
            v.pending_eager.clear();
            v.lazy_queue.clear();
        }
        auto it = runs.find(p.id);
        if (it != runs.end()) {
            runs.erase(it);
            reprice_device(p.device);
        }
        terminate_vctx(v, VctxStatus::Failed);
        do_unbind(v, p.id);
        pctx_unavailable_until[p.id.value] = clock.now + scenario.config.reset_delay;
    }

    void terminate_vctx(VctxState& v, VctxStatus status) {
        v.core.status = status;
        v.core.pending.clear();
        v.paused.reset();
        v.running_on = PctxId{};
        v.lazy_queue.clear();
        v.migration_gen++;
        v.migrating = false;
    }

    void apply_global_exception(const FaultSpec& f) {
        Device& dev = devices[f.device.value];
        dev.failed = true;
        log_plain(EventKind::FaultInjected, [&](nlohmann::ordered_json& j) {
            j["fault"] = "global";
            j["device"] = f.device.value;
        });
        for (PctxId pid : dev.pctx_pool) {
            PhysicalContext& p = pstate(pid);
            if (!p.is_bound()) continue;
            VctxState& v = vstate(*p.bound);
            Rational prior_tier = p.tier.fraction;
            if (v.migrating) {
                report.migrations[v.active_migration].aborted = true;
                v.migrating = false;
                v.migration_gen++;
                v.pending_eager.clear();
                v.lazy_queue.clear();
                do_unbind(v, pid);
                emergency_migrate(v, prior_tier);
            } else if (runs.count(pid)) {
                signal_preempt(pid, true);
            } else {
                do_unbind(v, pid);
                emergency_migrate(v, prior_tier);
            }
        }
    }

    void emergency_migrate(VctxState& v, const Rational& current_tier) {
        v.emergency_pending = false;

        // Deterministic standby selection: first healthy standby device,
        // smallest adequate tier, falling back to the largest smaller one.
        PctxId target;
        for (Device& dev : devices) {
            if (dev.failed || !dev.standby) continue;
            Rational sum = 0;
            for (PctxId pid : dev.pctx_pool) {
                if (pctxs[pid.value].is_bound()) sum += pctxs[pid.value].tier.fraction;
            }
            const PhysicalContext* above = nullptr;
            const PhysicalContext* below = nullptr;
            for (PctxId pid : dev.pctx_pool) {
                const PhysicalContext& p = pctxs[pid.value];
                if (p.is_bound()) continue;
                if (sum + p.tier.fraction > 1) continue;
                if (p.tier.fraction >= current_tier) {
                    if (!above || p.tier.fraction < above->tier.fraction) above = &p;
                } else if (!below || p.tier.fraction > below->tier.fraction) {
                    below = &p;
                }
            }
            const PhysicalContext* chosen = above ? above : below;
            if (chosen) {
                target = chosen->id;
                break;
            }
        }
        if (!target.valid()) {
            terminate_vctx(v, VctxStatus::Stranded);
            log_plain(EventKind::MigrationDone, [&](nlohmann::ordered_json& j) {
                j["vctx"] = v.core.id.value;
                j["stranded"] = true;
            });
            return;
        }
        Device& dst_dev = device_of(target);
        dst_dev.standby = false;  // hosts live work from now on
        begin_migration(v, target, true);
        report.migrations.back().emergency = true;
    }

    void apply_soft_hang(const FaultSpec& f) {
        auto it = runs.find(f.pctx);
        log_plain(EventKind::FaultInjected, [&](nlohmann::ordered_json& j) {
            j["fault"] = "soft_hang";
            j["pctx"] = f.pctx.value;
            j["effect"] = it == runs.end() ? "none" : "stall";
        });
        if (it == runs.end()) return;
        RunState& run = it->second;
        advance_run(run, clock.now);
        run.stretch = f.stretch;
        schedule_run_event(run);
    }

    // ---- launch pump ---------------------------------------------------------

    bool pool_exhausted() {
        for (const PhysicalContext& p : pctxs) {
            if (p.is_bound() || !pctx_available(p)) continue;
            if (devices[p.device.value].standby) continue;
            Rational sum = 0;
            for (PctxId pid : device_of(p.id).pctx_pool) {
                if (pctxs[pid.value].is_bound()) sum += pctxs[pid.value].tier.fraction;
            }
            if (sum + p.tier.fraction <= 1) return false;
        }
        return true;
    }

    void pump_launches() {
        bool changed = true;
        int guard = 0;
        while (changed) {
            changed = false;
            if (++guard > 10000) {
                throw SimError(Errc::EventBudgetExceeded, "launch pump did not settle");
            }
            std::vector<VctxId> ready;
            for (VctxState& v : vctxs) {
                if (launchable(v)) ready.push_back(v.core.id);
            }
            if (ready.empty()) break;
            std::stable_sort(ready.begin(), ready.end(), [&](VctxId a, VctxId b) {
                VctxState& va = vstate(a);
                VctxState& vb = vstate(b);
                LaunchContext la = launch_context(va);
                LaunchContext lb = launch_context(vb);
                int ka = policy->launch_order_key(la);
                int kb = policy->launch_order_key(lb);
                if (ka != kb) return ka < kb;
                if (va.core.priority_class != vb.core.priority_class) {
                    return va.core.priority_class == PriorityClass::LatencyCritical;
                }
                return a < b;
            });
            for (VctxId id : ready) {
                VctxState& v = vstate(id);
                if (!launchable(v)) continue;  // an earlier decision may have consumed it
                PolicyView view = build_view();
                LaunchContext lc = launch_context(v);
                PolicyDecision decision = policy->on_launch(view, lc);
                DispatchOutcome outcome = apply_decision(v, decision);
                if (outcome.kind != DispatchOutcome::Kind::Defer) {
                    changed = true;
                    continue;
                }
                bool unbound = !binding.pctx_of(v.core.id).has_value();
                if (unbound && outcome.reason == DispatchOutcome::DeferReason::PolicyDefer &&
                    pool_exhausted()) {
                    lc.pool_exhausted = true;
                    PolicyView view2 = build_view();
                    PolicyDecision d2 = policy->on_congestion(view2, lc);
                    if (d2.kind == PolicyDecision::Kind::Preempt) {
                        DispatchOutcome o2 = apply_decision(v, d2);
                        (void)o2;  // a preempt frees capacity later, not now
                    }
                }
            }
        }
        schedule_review();
    }

    void schedule_review() {
        bool any_waiting = false;
        for (VctxState& v : vctxs) {
            if (launchable(v)) any_waiting = true;
        }
        if (!any_waiting) return;
        PolicyView view = build_view();
        auto t = policy->next_review_time(view);
        if (!t || *t <= clock.now || *t == last_review_scheduled) return;
        last_review_scheduled = *t;
        Event e;
        e.kind = EventKind::LaunchReady;
        e.time = *t;
        e.phase = 1;  // review tick
        queue.schedule(clock.now, e);
    }

    // ---- invariants ------------------------------------------------------------

    void check_invariants() {
        for (const Device& d : devices) {
            Rational sum = 0;
            for (PctxId pid : d.pctx_pool) {
                const PhysicalContext& p = pctxs[pid.value];
                if (p.is_bound()) {
                    sum += p.tier.fraction;
                    auto back = binding.vctx_of(p.id);
                    if (!back || *back != *p.bound) {
                        throw std::logic_error("binding table inconsistent with pctx.bound");
                    }
                } else if (!p.hw_queue.empty()) {
                    throw std::logic_error("unbound pctx with a non-empty hw queue");
                }
            }
            if (sum > 1) throw std::logic_error("bound tier sum exceeds device capacity");
        }
        for (const auto& [vid, pid] : binding.entries()) {
            if (pctxs[pid.value].bound != vid) {
                throw std::logic_error("forward binding without matching pctx.bound");
            }
        }
    }

    // ---- run loop ----------------------------------------------------------------

    SimulationReport run(std::optional<Rational> until) {
        if (ran) throw SimError(Errc::ConfigError, "engine instances are single-use");
        ran = true;
        pump_launches();
        while (!queue.empty()) {
            if (until && queue.top().time > *until) break;
            Event e = queue.pop();
            clock.advance_to(e.time);
            if (!event_valid(e)) continue;
            report.events_processed++;
            if (report.events_processed > scenario.config.event_budget) {
                report.hit_event_budget = true;
                throw SimError(Errc::EventBudgetExceeded,
                               "event budget of " +
                                   std::to_string(scenario.config.event_budget) + " exceeded");
            }
            log_queue_event(e);
            dispatch_event(e);
            check_invariants();
        }
        if (until && *until > clock.now) clock.advance_to(*until);
        finalize();
        return std::move(report);
    }

    bool event_valid(const Event& e) {
        switch (e.kind) {
            case EventKind::KernelFinish: {
                auto it = runs.find(e.pctx);
                return it != runs.end() && it->second.generation == e.generation;
            }
            case EventKind::PreemptSignal: {
                if (e.phase == 2) return true;
                auto it = runs.find(e.pctx);
                return it != runs.end() && it->second.generation == e.generation;
            }
            case EventKind::MigrationDone: {
                VctxState& v = vstate(e.vctx);
                return v.migrating && v.migration_gen == e.generation;
            }
            case EventKind::HangCheck: {
                auto it = runs.find(e.pctx);
                return it != runs.end() && it->second.kernel == e.kernel;
            }
            default: return true;
        }
    }

    void log_queue_event(const Event& e) {
        log_event(e.time, e.seq, e.kind, [&](nlohmann::ordered_json& j) {
            if (e.vctx.valid()) j["vctx"] = e.vctx.value;
            if (e.pctx.valid()) j["pctx"] = e.pctx.value;
            if (e.kernel.valid()) j["kernel_id"] = e.kernel.value;
            if (e.device.valid()) j["device"] = e.device.value;
            if (e.phase) j["phase"] = e.phase;
            if (e.aux >= 0) j["aux"] = e.aux;
        });
    }

    void dispatch_event(const Event& e) {
        switch (e.kind) {
            case EventKind::Arrival:
                on_arrival(e);
                pump_launches();
                break;
            case EventKind::LaunchReady: pump_launches(); break;
            case EventKind::KernelStart: break;  // synthetic only
            case EventKind::KernelFinish: on_kernel_finish(e); break;
            case EventKind::PreemptSignal: on_preempt_boundary(e); break;
            case EventKind::MigrationDone: on_migration_done(e); break;
            case EventKind::FaultInjected: on_fault(e); break;
            case EventKind::HangCheck: on_hang_check(e); break;
        }
    }

    void finalize() {
        report.end_clock = clock.now;
        for (VctxState& v : vctxs) {
            report.vctx_status[v.core.id] = v.core.status;
            report.logical_progress[v.core.id] = v.core.logical_progress;
            if (!v.kernels.empty()) {
                report.first_arrival[v.core.id] = v.kernels.front().arrival_floor;
            }
            if (v.has_last_finish) report.last_finish[v.core.id] = v.last_finish;
            std::uint64_t fp = 0;
            for (const Kernel& k : v.kernels) fp ^= k.fingerprint();
            if (fp != report.kernel_fingerprints[v.core.id]) {
                throw std::logic_error("kernel records mutated during the run");
            }
        }
    }
};

SimEngine::SimEngine(Scenario scenario, std::unique_ptr<Policy> policy)
    : impl_(std::make_unique<Impl>(std::move(scenario), std::move(policy))) {}

SimEngine::~SimEngine() = default;

SimulationReport SimEngine::run(std::optional<Rational> until) { return impl_->run(until); }

SimulationReport SimEngine::simulate(const Scenario& scenario) {
    SimEngine engine(scenario);
    return engine.run();
}

Scenario exclusive_baseline(const Scenario& scenario, std::size_t job_index) {
    Scenario solo;
    solo.config = scenario.config;
    solo.config.atomize_to_fit = false;
    solo.devices.push_back({{Rational(1)}, false, Rational(1), 128});
    solo.jobs.push_back(scenario.jobs.at(job_index));
    for (const RequestMeta& r : scenario.requests) {
        if (r.vctx.value == static_cast<std::int32_t>(job_index)) {
            RequestMeta meta = r;
            meta.vctx = VctxId(0);
            solo.requests.push_back(meta);
        }
    }
    solo.policy.name = "static";
    solo.policy.assignments = {{VctxId(0), PctxId(0)}};
    solo.seed = scenario.seed;
    return solo;
}

}  // namespace corosim

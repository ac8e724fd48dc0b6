#include "corosim/io/metrics.hpp"

#include "corosim/errors.hpp"

#include <algorithm>

namespace corosim {

Rational nearest_rank_percentile(std::vector<Rational> samples, int pct) {
    if (samples.empty()) throw SimError(Errc::InvalidSplit, "percentile of an empty sample set");
    std::sort(samples.begin(), samples.end());
    std::size_t n = samples.size();
    std::size_t k = (static_cast<std::size_t>(pct) * n + 99) / 100;  // ceil(pct/100 * n)
    if (k == 0) k = 1;
    return samples[k - 1];
}

namespace {

DistSummary summarize(const std::vector<Rational>& samples) {
    DistSummary s;
    s.count = static_cast<std::int64_t>(samples.size());
    if (samples.empty()) return s;
    Rational sum = 0;
    for (const Rational& x : samples) sum += x;
    s.mean = sum / Rational(static_cast<long>(samples.size()));
    s.p50 = nearest_rank_percentile(samples, 50);
    s.p90 = nearest_rank_percentile(samples, 90);
    s.p99 = nearest_rank_percentile(samples, 99);
    return s;
}

}  // namespace

MetricsReport compute_metrics(const SimulationReport& report) {
    MetricsReport m;
    m.makespan = report.end_clock;
    m.kernels_completed = report.kernels_completed;
    m.ledger = report.ledger;

    std::vector<Rational> ttft_samples;
    std::vector<Rational> tpot_samples;
    for (const RequestOutcome& r : report.requests) {
        if (!r.meta.inference || !r.completed) continue;
        m.inference_completed++;
        Rational ttft = r.first_decode_finish - r.meta.arrival;
        ttft_samples.push_back(ttft);
        std::optional<Rational> tpot;
        if (r.meta.output_tokens >= 2) {
            tpot = (r.last_finish - r.first_decode_finish) /
                   Rational(r.meta.output_tokens - 1);
            tpot_samples.push_back(*tpot);
        } else {
            m.tpot_excluded++;
        }
        if (r.meta.slo) {
            m.slo_requests++;
            if (ttft > r.meta.slo->ttft_deadline) m.ttft_violations++;
            if (tpot && *tpot > r.meta.slo->tpot_deadline) m.tpot_violations++;
        }
    }
    m.ttft = summarize(ttft_samples);
    m.tpot = summarize(tpot_samples);
    if (m.slo_requests > 0) {
        m.ttft_violation_rate = Rational(m.ttft_violations) / Rational(m.slo_requests);
        m.tpot_violation_rate = Rational(m.tpot_violations) / Rational(m.slo_requests);
    }

    for (const RequestOutcome& r : report.requests) {
        if (!r.meta.inference && r.kernels_done > 0) {
            m.training_kernels_completed += r.kernels_done;
        }
    }
    if (m.makespan > 0) {
        m.inference_throughput = Rational(m.inference_completed) / m.makespan;
        m.training_throughput = Rational(m.training_kernels_completed) / m.makespan;
    }
    return m;
}

void add_normalization(MetricsReport& metrics, const SimulationReport& shared,
                       const std::map<VctxId, SimulationReport>& exclusive_runs) {
    metrics.aggregate_normalized = 0;
    for (const auto& [vid, solo] : exclusive_runs) {
        auto shared_first = shared.first_arrival.find(vid);
        auto shared_last = shared.last_finish.find(vid);
        auto solo_first = solo.first_arrival.find(VctxId(0));
        auto solo_last = solo.last_finish.find(VctxId(0));
        if (shared_first == shared.first_arrival.end() ||
            shared_last == shared.last_finish.end() ||
            solo_first == solo.first_arrival.end() || solo_last == solo.last_finish.end()) {
            metrics.normalized_throughput[vid] = 0;
            continue;
        }
        Rational shared_span = shared_last->second - shared_first->second;
        Rational solo_span = solo_last->second - solo_first->second;
        Rational normalized =
            shared_span > 0 ? solo_span / shared_span : Rational(0);
        metrics.normalized_throughput[vid] = normalized;
        metrics.aggregate_normalized += normalized;
    }
}

MetricsReport compute_metrics_normalized(const Scenario& scenario,
                                         const SimulationReport& shared) {
    MetricsReport m = compute_metrics(shared);
    std::map<VctxId, SimulationReport> solos;
    for (std::size_t i = 0; i < scenario.jobs.size(); ++i) {
        Scenario solo = exclusive_baseline(scenario, i);
        solos[VctxId(static_cast<std::int32_t>(i))] = SimEngine::simulate(solo);
    }
    add_normalization(m, shared, solos);
    return m;
}

namespace {

nlohmann::ordered_json dist_json(const DistSummary& d) {
    nlohmann::ordered_json j;
    j["count"] = d.count;
    if (d.count > 0) {
        j["mean"] = to_decimal_string(d.mean);
        j["p50"] = to_decimal_string(d.p50);
        j["p90"] = to_decimal_string(d.p90);
        j["p99"] = to_decimal_string(d.p99);
    }
    return j;
}

}  // namespace

nlohmann::ordered_json metrics_to_json(const MetricsReport& m) {
    nlohmann::ordered_json j;
    j["makespan"] = to_decimal_string(m.makespan);
    j["kernels_completed"] = m.kernels_completed;
    j["inference_completed"] = m.inference_completed;
    j["training_kernels_completed"] = m.training_kernels_completed;
    j["inference_throughput"] = to_decimal_string(m.inference_throughput, 12);
    j["training_throughput"] = to_decimal_string(m.training_throughput, 12);
    j["ttft"] = dist_json(m.ttft);
    j["tpot"] = dist_json(m.tpot);
    j["tpot_excluded"] = m.tpot_excluded;
    j["slo"] = {{"requests", m.slo_requests},
                {"ttft_violations", m.ttft_violations},
                {"tpot_violations", m.tpot_violations},
                {"ttft_violation_rate", to_decimal_string(m.ttft_violation_rate, 12)},
                {"tpot_violation_rate", to_decimal_string(m.tpot_violation_rate, 12)}};
    j["overheads"] = {{"ctx_switch_total", to_decimal_string(m.ledger.ctx_switch_total)},
                      {"ctx_switches", m.ledger.ctx_switches},
                      {"preempt_total", to_decimal_string(m.ledger.preempt_total)},
                      {"preemptions", m.ledger.preemptions},
                      {"migration_total", to_decimal_string(m.ledger.migration_total)},
                      {"migrations", m.ledger.migrations},
                      {"demand_fault_total", to_decimal_string(m.ledger.demand_fault_total)},
                      {"demand_faults", m.ledger.demand_faults},
                      {"total_added_latency", to_decimal_string(m.ledger.total())}};
    if (!m.normalized_throughput.empty()) {
        nlohmann::ordered_json norm;
        for (const auto& [vid, value] : m.normalized_throughput) {
            norm[std::to_string(vid.value)] = to_decimal_string(value, 12);
        }
        j["normalized_throughput"] = norm;
        j["aggregate_normalized"] = to_decimal_string(m.aggregate_normalized, 12);
    }
    return j;
}

}  // namespace corosim

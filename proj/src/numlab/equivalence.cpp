#include "corosim/numlab/equivalence.hpp"

#include "corosim/rng.hpp"

namespace corosim {

std::vector<FloatValue> seeded_values(std::uint64_t seed, std::int64_t n, FloatFormatKind kind) {
    FloatFormat format = FloatFormat::of(kind);
    Rng rng(seed);
    std::vector<FloatValue> values;
    values.reserve(static_cast<std::size_t>(n));
    for (std::int64_t i = 0; i < n; ++i) {
        Rational x = rational_from_double(rng.uniform(-1.0, 1.0));
        values.push_back(round_to(format, x));
    }
    return values;
}

FloatValue reduction_result(const ReductionSpec& spec, std::int64_t executed_grid) {
    std::vector<FloatValue> values = seeded_values(spec.value_seed, spec.element_count,
                                                   spec.format);
    std::int64_t g = executed_grid < 1 ? 1 : executed_grid;
    ReductionPlan plan = ReductionPlan::balanced(spec.element_count, g);
    return reduce_with_plan(values, FloatFormat::of(spec.format), plan);
}

namespace {

struct VctxOutputs {
    std::vector<KernelSignature> launches;
    std::vector<FloatValue> reductions;  // one per reduction-tagged kernel, in order
};

std::map<VctxId, VctxOutputs> collect(const Scenario& scenario, const SimulationReport& report,
                                      const std::map<VctxId, std::size_t>& job_of_vctx) {
    std::map<VctxId, VctxOutputs> out;
    for (const auto& [vid, sigs] : report.vctx_transcripts) {
        out[vid].launches = sigs;
    }
    for (const TranscriptEntry& t : report.transcript) {
        const JobSpec& job = scenario.jobs[job_of_vctx.at(t.vctx)];
        const Kernel* record = nullptr;
        for (const Kernel& k : job.kernels) {
            if (k.id == t.kernel) record = &k;
        }
        if (record && record->reduction) {
            out[t.vctx].reductions.push_back(
                reduction_result(*record->reduction, t.executed.grid_size));
        }
    }
    return out;
}

}  // namespace

EquivalenceResult check_immutable_equivalence(const Scenario& scenario) {
    EquivalenceResult result;
    result.transcripts_match = true;
    result.reductions_match = true;
    result.max_delta = 0;

    SimulationReport shared = SimEngine::simulate(scenario);
    std::map<VctxId, std::size_t> shared_jobs;
    for (std::size_t i = 0; i < scenario.jobs.size(); ++i) {
        shared_jobs[VctxId(static_cast<std::int32_t>(i))] = i;
    }
    auto shared_out = collect(scenario, shared, shared_jobs);

    for (std::size_t i = 0; i < scenario.jobs.size(); ++i) {
        Scenario solo_scenario = exclusive_baseline(scenario, i);
        SimulationReport solo = SimEngine::simulate(solo_scenario);
        std::map<VctxId, std::size_t> solo_jobs{{VctxId(0), 0}};
        auto solo_out = collect(solo_scenario, solo, solo_jobs);

        VctxId vid(static_cast<std::int32_t>(i));
        const VctxOutputs& a = solo_out[VctxId(0)];
        const VctxOutputs& b = shared_out[vid];
        if (a.launches != b.launches) result.transcripts_match = false;
        if (a.reductions.size() != b.reductions.size()) {
            result.reductions_match = false;
        } else {
            for (std::size_t k = 0; k < a.reductions.size(); ++k) {
                if (!(a.reductions[k] == b.reductions[k])) {
                    result.reductions_match = false;
                    if (a.reductions[k].is_finite() && b.reductions[k].is_finite()) {
                        Rational d = abs(Rational(a.reductions[k].value - b.reductions[k].value));
                        if (d > result.max_delta) result.max_delta = d;
                    }
                }
            }
        }
    }
    result.equivalent = result.transcripts_match && result.reductions_match;
    return result;
}

bool verify_immutable_equivalence(const Scenario& scenario) {
    return check_immutable_equivalence(scenario).equivalent;
}

}  // namespace corosim

#include "corosim/io/scenario.hpp"

#include "corosim/errors.hpp"
#include "corosim/io/trace.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace corosim {

using nlohmann::json;

Rational rational_field(const json& value) {
    if (value.is_string()) return rational_from_decimal(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<std::int64_t>());
    if (value.is_number_float()) return rational_from_double(value.get<double>());
    throw SimError(Errc::ConfigError, "expected a number or decimal string");
}

namespace {

Rational rat_or(const json& j, const char* key, const Rational& fallback) {
    if (!j.contains(key)) return fallback;
    return rational_field(j.at(key));
}

std::optional<SloSpec> slo_from(const json& j) {
    if (!j.is_object()) return std::nullopt;
    SloSpec s;
    s.ttft_deadline = rational_field(j.at("ttft"));
    s.tpot_deadline = rational_field(j.at("tpot"));
    if (j.contains("e2e")) s.e2e_deadline = rational_field(j.at("e2e"));
    return s;
}

void load_inference_profile(InferenceProfile& p, const json& j) {
    p.prefill_cost_per_token = rat_or(j, "prefill_cost_per_token", p.prefill_cost_per_token);
    p.decode_cost = rat_or(j, "decode_cost", p.decode_cost);
    p.prefill_saturation = rat_or(j, "prefill_saturation", p.prefill_saturation);
    p.prefill_mem_bound = rat_or(j, "prefill_mem_bound", p.prefill_mem_bound);
    p.prefill_bw_demand = rat_or(j, "prefill_bw_demand", p.prefill_bw_demand);
    p.decode_saturation = rat_or(j, "decode_saturation", p.decode_saturation);
    p.decode_mem_bound = rat_or(j, "decode_mem_bound", p.decode_mem_bound);
    p.decode_bw_demand = rat_or(j, "decode_bw_demand", p.decode_bw_demand);
    p.tokens_per_grid_unit = j.value("tokens_per_grid_unit", p.tokens_per_grid_unit);
    p.decode_grid = j.value("decode_grid", p.decode_grid);
    p.weights_bytes = j.value("weights_bytes", p.weights_bytes);
    p.kv_cache_bytes = j.value("kv_cache_bytes", p.kv_cache_bytes);
    p.activation_bytes = j.value("activation_bytes", p.activation_bytes);
    p.reduction_elements = j.value("reduction_elements", p.reduction_elements);
    if (j.contains("reduction_format")) {
        p.reduction_format = format_from_name(j.at("reduction_format").get<std::string>());
    }
}

void load_training_profile(TrainingProfile& p, const json& j) {
    p.iteration_cost = rat_or(j, "iteration_cost", p.iteration_cost);
    p.saturation = rat_or(j, "saturation", p.saturation);
    p.mem_bound = rat_or(j, "mem_bound", p.mem_bound);
    p.bw_demand = rat_or(j, "bw_demand", p.bw_demand);
    p.host_gap = rat_or(j, "host_gap", p.host_gap);
    p.iterations = j.value("iterations", p.iterations);
    p.grid = j.value("grid", p.grid);
    p.weights_bytes = j.value("weights_bytes", p.weights_bytes);
    p.optimizer_bytes = j.value("optimizer_bytes", p.optimizer_bytes);
    p.activation_bytes = j.value("activation_bytes", p.activation_bytes);
    p.reduction_elements = j.value("reduction_elements", p.reduction_elements);
    if (j.contains("reduction_format")) {
        p.reduction_format = format_from_name(j.at("reduction_format").get<std::string>());
    }
}

RequestTemplate template_from(const json& j) {
    RequestTemplate t;
    t.kind = j.value("kind", t.kind);
    t.prompt_tokens = j.value("prompt_tokens", t.prompt_tokens);
    t.prompt_tokens_max = j.value("prompt_tokens_max", t.prompt_tokens_max);
    t.output_tokens = j.value("output_tokens", t.output_tokens);
    t.output_tokens_max = j.value("output_tokens_max", t.output_tokens_max);
    t.iterations = j.value("iterations", t.iterations);
    if (j.contains("slo")) t.slo = slo_from(j.at("slo"));
    std::string prio = j.value("priority", std::string("latency_critical"));
    t.priority = prio == "best_effort" ? PriorityClass::BestEffort
                                       : PriorityClass::LatencyCritical;
    t.streams = j.value("streams", t.streams);
    t.job_prefix = j.value("job_prefix", t.job_prefix);
    t.profile = j.value("profile", t.profile);
    return t;
}

std::vector<RequestTraceRecord> workload_records(const json& w, const std::string& base_dir,
                                                 std::uint64_t seed) {
    if (w.contains("records")) {
        std::string text;
        for (const json& r : w.at("records")) text += r.dump() + "\n";
        return parse_trace_string(text);
    }
    if (w.contains("trace_file")) {
        std::filesystem::path p = w.at("trace_file").get<std::string>();
        if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
        std::ifstream in(p);
        if (!in) {
            throw SimError(Errc::ConfigError, "cannot open trace file " + p.string());
        }
        return parse_trace(in);
    }
    if (w.contains("generator")) {
        const json& g = w.at("generator");
        std::string type = g.value("type", std::string("poisson"));
        RequestTemplate tmpl =
            g.contains("template") ? template_from(g.at("template")) : RequestTemplate{};
        double duration = g.value("duration", 100.0);
        if (type == "poisson") {
            return gen_poisson(g.value("rate", 1.0), duration, tmpl, seed);
        }
        if (type == "burst") {
            return gen_burst(g.value("base_rate", 1.0), g.value("burst_rate", 10.0),
                             g.value("burst_duration", 2.0), g.value("period", 20.0), duration,
                             tmpl, seed);
        }
        throw SimError(Errc::ConfigError, "unknown generator type '" + type + "'");
    }
    return {};
}

}  // namespace

Scenario scenario_from_json(const json& config, const std::string& base_dir) {
    Scenario s;
    s.seed = config.value("seed", 0ULL);

    if (!config.contains("devices") || !config.at("devices").is_array() ||
        config.at("devices").empty()) {
        throw SimError(Errc::ConfigError, "config needs a non-empty devices array");
    }
    for (const json& d : config.at("devices")) {
        DeviceSpec spec;
        for (const json& t : d.at("tiers")) spec.tiers.push_back(rational_field(t));
        spec.standby = d.value("standby", false);
        spec.total_bandwidth = rat_or(d, "total_bandwidth", spec.total_bandwidth);
        spec.total_sm = d.value("total_sm", spec.total_sm);
        s.devices.push_back(std::move(spec));
    }

    s.policy.name = config.value("policy", std::string("slo-aware"));
    if (config.contains("policy_params")) {
        const json& pp = config.at("policy_params");
        s.policy.quantum = rat_or(pp, "quantum", s.policy.quantum);
        s.policy.predictor_alpha = rat_or(pp, "alpha", s.policy.predictor_alpha);
        s.policy.cold_start_prediction =
            rat_or(pp, "cold_start", s.policy.cold_start_prediction);
        if (pp.contains("assignments")) {
            for (const auto& [key, value] : pp.at("assignments").items()) {
                s.policy.assignments[VctxId(std::stoi(key))] =
                    PctxId(value.get<std::int32_t>());
            }
        }
    }

    if (config.contains("cost_parameters")) {
        const json& c = config.at("cost_parameters");
        CostParameters& costs = s.config.costs;
        costs.ctx_switch_overhead = rat_or(c, "ctx_switch_overhead", costs.ctx_switch_overhead);
        costs.preempt_overhead = rat_or(c, "preempt_overhead", costs.preempt_overhead);
        costs.copy_bandwidth = rat_or(c, "copy_bandwidth", costs.copy_bandwidth);
        costs.remap_fixed = rat_or(c, "remap_fixed", costs.remap_fixed);
        costs.fault_fixed = rat_or(c, "fault_fixed", costs.fault_fixed);
    }
    s.config.segments_per_kernel = config.value("segments_per_kernel", 16);
    s.config.release_on_idle = config.value("release_on_idle", true);
    s.config.hang_detection = config.value("hang_detection", false);
    s.config.hang_threshold = rat_or(config, "hang_threshold", s.config.hang_threshold);
    s.config.reset_delay = rat_or(config, "reset_delay", s.config.reset_delay);
    s.config.event_budget = config.value("event_budget", s.config.event_budget);
    s.config.capture_log = config.value("capture_log", s.config.capture_log);
    s.config.atomize_to_fit = config.value("atomize_to_fit", false);

    WorkloadProfiles profiles;
    if (config.contains("profiles")) {
        const json& p = config.at("profiles");
        if (p.contains("inference")) {
            for (const auto& [name, body] : p.at("inference").items()) {
                InferenceProfile prof;
                load_inference_profile(prof, body);
                profiles.inference[name] = prof;
            }
        }
        if (p.contains("training")) {
            for (const auto& [name, body] : p.at("training").items()) {
                TrainingProfile prof;
                load_training_profile(prof, body);
                profiles.training[name] = prof;
            }
        }
    }

    std::vector<RequestTraceRecord> records;
    if (config.contains("workload")) {
        records = workload_records(config.at("workload"), base_dir, s.seed);
    }
    if (config.contains("slo")) {
        auto fallback = slo_from(config.at("slo"));
        for (RequestTraceRecord& r : records) {
            if (!r.slo) r.slo = fallback;
        }
    }
    ExpandedWorkload expanded = expand_workload(records, profiles);
    s.jobs = std::move(expanded.jobs);
    s.requests = std::move(expanded.requests);

    if (config.contains("faults")) {
        for (const json& f : config.at("faults")) {
            FaultSpec spec;
            std::string kind = f.at("kind").get<std::string>();
            if (kind == "local") {
                spec.kind = FaultSpec::Kind::LocalException;
                spec.pctx = PctxId(f.at("pctx").get<std::int32_t>());
            } else if (kind == "global") {
                spec.kind = FaultSpec::Kind::GlobalException;
                spec.device = DeviceId(f.at("device").get<std::int32_t>());
            } else if (kind == "soft_hang") {
                spec.kind = FaultSpec::Kind::SoftHang;
                spec.pctx = PctxId(f.at("pctx").get<std::int32_t>());
                spec.stretch = rat_or(f, "stretch", spec.stretch);
            } else {
                throw SimError(Errc::ConfigError, "unknown fault kind '" + kind + "'");
            }
            spec.inject_time = rational_field(f.at("time"));
            s.faults.push_back(spec);
        }
    }
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SimError(Errc::ConfigError, "cannot open scenario file " + path);
    json config;
    try {
        in >> config;
    } catch (const json::exception& e) {
        throw SimError(Errc::ParseError, std::string("scenario JSON: ") + e.what());
    }
    return scenario_from_json(config, std::filesystem::path(path).parent_path().string());
}

}  // namespace corosim

#include "corosim/io/trace.hpp"

#include "corosim/errors.hpp"
#include "corosim/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace corosim {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Rational parse_time(const json& v, int line, const char* field) {
    std::optional<Rational> r;
    if (v.is_string()) {
        r = try_rational_from_decimal(v.get<std::string>());
    } else if (v.is_number_integer()) {
        r = Rational(v.get<std::int64_t>());
    } else if (v.is_number_float()) {
        r = rational_from_double(v.get<double>());
    }
    if (!r) {
        throw SimError(Errc::ParseError, "line " + std::to_string(line) + ": field '" + field +
                                             "' is not a time");
    }
    return *r;
}

std::optional<SloSpec> parse_slo(const json& j, int line) {
    if (!j.contains("slo")) return std::nullopt;
    const json& s = j.at("slo");
    if (!s.is_object() || !s.contains("ttft") || !s.contains("tpot")) {
        throw SimError(Errc::ParseError,
                       "line " + std::to_string(line) + ": slo needs ttft and tpot");
    }
    SloSpec slo;
    slo.ttft_deadline = parse_time(s.at("ttft"), line, "slo.ttft");
    slo.tpot_deadline = parse_time(s.at("tpot"), line, "slo.tpot");
    if (s.contains("e2e")) slo.e2e_deadline = parse_time(s.at("e2e"), line, "slo.e2e");
    if (slo.ttft_deadline <= 0 || slo.tpot_deadline <= 0 ||
        (slo.e2e_deadline && *slo.e2e_deadline <= 0)) {
        throw SimError(Errc::ParseError, "line " + std::to_string(line) + ": deadlines must be positive");
    }
    return slo;
}

RequestTraceRecord parse_record(const std::string& text, int line) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw SimError(Errc::ParseError, "line " + std::to_string(line) + ": " + e.what());
    }
    RequestTraceRecord rec;
    if (!j.contains("arrival_time") || !j.contains("job_id") || !j.contains("kind")) {
        throw SimError(Errc::ParseError, "line " + std::to_string(line) +
                                             ": arrival_time, job_id, and kind are required");
    }
    rec.arrival_time = parse_time(j.at("arrival_time"), line, "arrival_time");
    if (rec.arrival_time < 0) {
        throw SimError(Errc::ParseError,
                       "line " + std::to_string(line) + ": negative arrival_time");
    }
    rec.job_id = j.at("job_id").get<std::string>();
    rec.kind = j.at("kind").get<std::string>();
    if (rec.kind == "inference") {
        rec.prompt_tokens = j.value("prompt_tokens", 0);
        rec.output_tokens = j.value("output_tokens", 0);
        if (rec.prompt_tokens <= 0 || rec.output_tokens <= 0) {
            throw SimError(Errc::ParseError,
                           "line " + std::to_string(line) +
                               ": inference records need positive prompt_tokens and output_tokens");
        }
    } else if (rec.kind == "training") {
        rec.iterations = j.value("iterations", 0);
        if (rec.iterations < 0) {
            throw SimError(Errc::ParseError,
                           "line " + std::to_string(line) + ": negative iterations");
        }
    } else {
        throw SimError(Errc::ParseError, "line " + std::to_string(line) + ": unknown kind '" +
                                             rec.kind + "'");
    }
    rec.slo = parse_slo(j, line);
    std::string prio = j.value("priority", std::string("best_effort"));
    if (prio == "latency_critical") {
        rec.priority = PriorityClass::LatencyCritical;
    } else if (prio == "best_effort") {
        rec.priority = PriorityClass::BestEffort;
    } else {
        throw SimError(Errc::ParseError,
                       "line " + std::to_string(line) + ": unknown priority '" + prio + "'");
    }
    rec.profile = j.value("profile", std::string("default"));
    return rec;
}

}  // namespace

std::vector<RequestTraceRecord> parse_trace(std::istream& stream) {
    std::vector<RequestTraceRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        records.push_back(parse_record(line, line_no));
    }
    std::stable_sort(records.begin(), records.end(),
                     [](const RequestTraceRecord& a, const RequestTraceRecord& b) {
                         return a.arrival_time < b.arrival_time;
                     });
    return records;
}

std::vector<RequestTraceRecord> parse_trace_string(const std::string& text) {
    std::istringstream in(text);
    return parse_trace(in);
}

std::string serialize_record(const RequestTraceRecord& record) {
    ordered_json j;
    j["arrival_time"] = to_decimal_string(record.arrival_time);
    j["job_id"] = record.job_id;
    j["kind"] = record.kind;
    if (record.kind == "inference") {
        j["prompt_tokens"] = record.prompt_tokens;
        j["output_tokens"] = record.output_tokens;
    } else {
        j["iterations"] = record.iterations;
    }
    if (record.slo) {
        ordered_json s;
        s["ttft"] = to_decimal_string(record.slo->ttft_deadline);
        s["tpot"] = to_decimal_string(record.slo->tpot_deadline);
        if (record.slo->e2e_deadline) s["e2e"] = to_decimal_string(*record.slo->e2e_deadline);
        j["slo"] = s;
    }
    j["priority"] = priority_name(record.priority);
    if (record.profile != "default") j["profile"] = record.profile;
    return j.dump();
}

void serialize_trace(const std::vector<RequestTraceRecord>& records, std::ostream& out) {
    for (const RequestTraceRecord& r : records) out << serialize_record(r) << '\n';
}

namespace {

// Quantize to nanoseconds so decimal serialization is lossless.
Rational quantize(double t) {
    double scaled = std::round(t * 1e9);
    return Rational(static_cast<long long>(scaled)) / Rational(1000000000);
}

RequestTraceRecord stamp(const RequestTemplate& tmpl, Rng& rng, int index, const Rational& at) {
    RequestTraceRecord rec;
    rec.arrival_time = at;
    rec.job_id = tmpl.job_prefix + "-" + std::to_string(index % std::max(1, tmpl.streams));
    rec.kind = tmpl.kind;
    rec.priority = tmpl.priority;
    rec.slo = tmpl.slo;
    rec.profile = tmpl.profile;
    if (tmpl.kind == "inference") {
        rec.prompt_tokens = tmpl.prompt_tokens_max > tmpl.prompt_tokens
                                ? static_cast<int>(rng.uniform_int(tmpl.prompt_tokens,
                                                                   tmpl.prompt_tokens_max))
                                : tmpl.prompt_tokens;
        rec.output_tokens = tmpl.output_tokens_max > tmpl.output_tokens
                                ? static_cast<int>(rng.uniform_int(tmpl.output_tokens,
                                                                   tmpl.output_tokens_max))
                                : tmpl.output_tokens;
    } else {
        rec.iterations = tmpl.iterations;
    }
    return rec;
}

}  // namespace

std::vector<RequestTraceRecord> gen_poisson(double rate, double duration,
                                            const RequestTemplate& tmpl, std::uint64_t seed) {
    std::vector<RequestTraceRecord> out;
    if (rate <= 0 || duration <= 0) return out;
    Rng rng(seed);
    double t = 0;
    int index = 0;
    while (true) {
        t += rng.exponential(rate);
        if (t >= duration) break;
        out.push_back(stamp(tmpl, rng, index++, quantize(t)));
    }
    return out;
}

std::vector<RequestTraceRecord> gen_burst(double base_rate, double burst_rate,
                                          double burst_duration, double period, double duration,
                                          const RequestTemplate& tmpl, std::uint64_t seed) {
    std::vector<RequestTraceRecord> out;
    if (duration <= 0 || period <= 0 || burst_duration < 0 || burst_duration > period) return out;
    Rng rng(seed);
    double t = 0;
    int index = 0;
    while (t < duration) {
        double in_period = std::fmod(t, period);
        bool bursting = in_period < burst_duration;
        double rate = bursting ? burst_rate : base_rate;
        double seg_end = t - in_period + (bursting ? burst_duration : period);
        if (rate <= 0) {
            t = seg_end;
            continue;
        }
        double gap = rng.exponential(rate);
        if (t + gap >= seg_end) {
            // No arrival before the rate changes; jump to the switch point.
            t = seg_end;
            continue;
        }
        t += gap;
        if (t >= duration) break;
        out.push_back(stamp(tmpl, rng, index++, quantize(t)));
    }
    return out;
}

}  // namespace corosim

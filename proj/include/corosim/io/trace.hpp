#pragma once

#include "corosim/core/types.hpp"
#include "corosim/policy/policy.hpp"
#include "corosim/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace corosim {

// One request as it appears in a JSON Lines trace file. Times are decimal
// strings on the wire so replay is exact.
struct RequestTraceRecord {
    Rational arrival_time;
    std::string job_id;
    std::string kind;       // "inference" or "training"
    int prompt_tokens = 0;  // inference
    int output_tokens = 0;  // inference
    int iterations = 0;     // training; 0 falls back to the profile
    std::optional<SloSpec> slo;
    PriorityClass priority = PriorityClass::BestEffort;
    std::string profile = "default";

    bool operator==(const RequestTraceRecord&) const = default;
};

// Parses one record per line, reporting malformed lines by number, and
// returns records stably sorted by arrival time.
std::vector<RequestTraceRecord> parse_trace(std::istream& stream);
std::vector<RequestTraceRecord> parse_trace_string(const std::string& text);

std::string serialize_record(const RequestTraceRecord& record);
void serialize_trace(const std::vector<RequestTraceRecord>& records, std::ostream& out);

// Template stamped out by the generators. Token counts may be randomized
// over [value, value_max] when value_max > value. Requests round-robin
// over `streams` job ids.
struct RequestTemplate {
    std::string kind = "inference";
    int prompt_tokens = 256;
    int prompt_tokens_max = 0;
    int output_tokens = 32;
    int output_tokens_max = 0;
    int iterations = 50;
    std::optional<SloSpec> slo;
    PriorityClass priority = PriorityClass::LatencyCritical;
    int streams = 1;
    std::string job_prefix = "job";
    std::string profile = "default";
};

// Poisson arrivals at `rate` over [0, duration). Deterministic per seed;
// arrival times are quantized to 1e-9 so serialization round-trips exactly.
std::vector<RequestTraceRecord> gen_poisson(double rate, double duration,
                                            const RequestTemplate& tmpl, std::uint64_t seed);

// Arrival rate alternates between base_rate and burst_rate: each period
// opens with `burst_duration` at the burst rate.
std::vector<RequestTraceRecord> gen_burst(double base_rate, double burst_rate,
                                          double burst_duration, double period, double duration,
                                          const RequestTemplate& tmpl, std::uint64_t seed);

}  // namespace corosim

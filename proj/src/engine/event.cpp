#include "corosim/engine/event.hpp"

#include "corosim/errors.hpp"

namespace corosim {

const char* event_kind_name(EventKind kind) {
    switch (kind) {
        case EventKind::Arrival: return "Arrival";
        case EventKind::LaunchReady: return "LaunchReady";
        case EventKind::KernelStart: return "KernelStart";
        case EventKind::KernelFinish: return "KernelFinish";
        case EventKind::PreemptSignal: return "PreemptSignal";
        case EventKind::MigrationDone: return "MigrationDone";
        case EventKind::FaultInjected: return "FaultInjected";
        case EventKind::HangCheck: return "HangCheck";
    }
    return "?";
}

std::uint64_t EventQueue::schedule(const Rational& now, Event event) {
    if (event.time < now) {
        throw SimError(Errc::CausalityViolation,
                       "event at t=" + to_decimal_string(event.time) + " scheduled after t=" +
                           to_decimal_string(now));
    }
    event.seq = next_seq_++;
    std::uint64_t seq = event.seq;
    heap_.push(std::move(event));
    return seq;
}

Event EventQueue::pop() {
    Event e = heap_.top();
    heap_.pop();
    return e;
}

void Clock::advance_to(const Rational& t) {
    if (t < now) {
        throw SimError(Errc::CausalityViolation, "clock moved backwards to " +
                                                     to_decimal_string(t) + " from " +
                                                     to_decimal_string(now));
    }
    now = t;
}

}  // namespace corosim

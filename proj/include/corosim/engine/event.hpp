#pragma once

#include "corosim/ids.hpp"
#include "corosim/rational.hpp"

#include <cstdint>
#include <queue>
#include <vector>

namespace corosim {

enum class EventKind {
    Arrival,
    LaunchReady,
    KernelStart,
    KernelFinish,
    PreemptSignal,
    MigrationDone,
    FaultInjected,
    HangCheck,
};

const char* event_kind_name(EventKind kind);

struct Event {
    Rational time;
    std::uint64_t seq = 0;  // assigned at enqueue; tie-break for equal times
    EventKind kind = EventKind::Arrival;

    VctxId vctx;
    PctxId pctx;
    KernelId kernel;
    DeviceId device;
    std::uint64_t generation = 0;  // run/migration version guard
    int phase = 0;                 // sub-step payload (e.g. preempt boundary vs complete)
    std::int64_t aux = -1;         // fault / request index
};

// Min-heap on (time, seq). seq is a monotone counter assigned at enqueue,
// so equal-time events dequeue in enqueue order.
class EventQueue {
  public:
    // Returns the assigned seq. Throws CausalityViolation when the event
    // lies in the past relative to `now`.
    std::uint64_t schedule(const Rational& now, Event event);

    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    const Event& top() const { return heap_.top(); }
    Event pop();
    std::uint64_t next_seq() const { return next_seq_; }
    // Synchronously-applied actions log entries from the same counter.
    std::uint64_t allocate_seq() { return next_seq_++; }

  private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };
    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    std::uint64_t next_seq_ = 0;
};

// Monotone simulation clock.
struct Clock {
    Rational now;
    void advance_to(const Rational& t);  // throws CausalityViolation if t < now
};

}  // namespace corosim

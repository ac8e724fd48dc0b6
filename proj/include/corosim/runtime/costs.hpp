#pragma once

#include "corosim/rational.hpp"

namespace corosim {

// Cost calibration for the coroutine mechanisms. The two overhead
// fractions default to the measured 4% context-switch and 12% preemption
// overheads; both are charged against the affected kernel segment, not as
// absolute times.
struct CostParameters {
    Rational ctx_switch_overhead{1, 25};   // 0.04
    Rational preempt_overhead{3, 25};      // 0.12
    Rational copy_bandwidth{8 * 1024 * 1024};  // bytes per time unit
    Rational remap_fixed{1, 10};
    Rational fault_fixed{1, 20};  // per demand fault

    void validate() const;  // throws ConfigError
};

}  // namespace corosim

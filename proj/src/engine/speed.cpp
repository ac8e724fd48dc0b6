#include "corosim/engine/speed.hpp"

namespace corosim {

Rational slowdown_factor(const Rational& compute_saturation, const Rational& mem_bound_fraction,
                         const Rational& tier_fraction, const Rational& total_demand) {
    Rational compute = compute_saturation / tier_fraction;
    if (compute < 1) compute = 1;
    Rational oversubscription = total_demand < 1 ? Rational(1) : total_demand;
    Rational bw = (Rational(1) - mem_bound_fraction) + mem_bound_fraction * oversubscription;
    return compute * bw;
}

Rational kernel_speed(const Kernel& kernel, const QuotaTier& tier,
                      const ContentionSnapshot& contention) {
    return slowdown_factor(kernel.compute_saturation, kernel.mem_bound_fraction, tier.fraction,
                           contention.total_demand());
}

}  // namespace corosim

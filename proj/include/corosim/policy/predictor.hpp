#pragma once

#include "corosim/core/types.hpp"
#include "corosim/rational.hpp"

#include <map>
#include <optional>

namespace corosim {

// Per-signature EWMA over observed effective durations. Cold-start order:
// caller-provided hint, then the largest duration seen for the same
// semantic id at any grid size, then a configured pessimistic default.
class DurationPredictor {
  public:
    explicit DurationPredictor(Rational alpha = Rational(3, 10),
                               Rational cold_default = Rational(1000000));

    void observe(const KernelSignature& sig, const Rational& effective_duration);
    Rational predict(const KernelSignature& sig,
                     const std::optional<Rational>& hint = std::nullopt) const;
    bool has_observation(const KernelSignature& sig) const;

    const Rational& alpha() const { return alpha_; }

  private:
    Rational alpha_;
    Rational cold_default_;
    std::map<std::pair<std::string, std::int64_t>, Rational> ewma_;
    std::map<std::string, Rational> max_by_semantic_;
};

}  // namespace corosim

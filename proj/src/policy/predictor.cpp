#include "corosim/policy/predictor.hpp"

#include "corosim/errors.hpp"

namespace corosim {

DurationPredictor::DurationPredictor(Rational alpha, Rational cold_default)
    : alpha_(std::move(alpha)), cold_default_(std::move(cold_default)) {
    if (alpha_ <= 0 || alpha_ > 1) {
        throw SimError(Errc::ConfigError, "predictor alpha must lie in (0, 1]");
    }
}

void DurationPredictor::observe(const KernelSignature& sig, const Rational& effective_duration) {
    auto key = std::make_pair(sig.semantic_id, sig.grid_size);
    auto it = ewma_.find(key);
    if (it == ewma_.end()) {
        ewma_.emplace(key, effective_duration);
    } else {
        it->second = alpha_ * effective_duration + (Rational(1) - alpha_) * it->second;
    }
    auto& max_seen = max_by_semantic_[sig.semantic_id];
    if (effective_duration > max_seen) max_seen = effective_duration;
}

Rational DurationPredictor::predict(const KernelSignature& sig,
                                    const std::optional<Rational>& hint) const {
    auto it = ewma_.find(std::make_pair(sig.semantic_id, sig.grid_size));
    if (it != ewma_.end()) return it->second;
    if (hint) return *hint;
    auto sem = max_by_semantic_.find(sig.semantic_id);
    if (sem != max_by_semantic_.end()) return sem->second;
    return cold_default_;
}

bool DurationPredictor::has_observation(const KernelSignature& sig) const {
    return ewma_.count(std::make_pair(sig.semantic_id, sig.grid_size)) > 0;
}

}  // namespace corosim

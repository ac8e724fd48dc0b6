#include "corosim/core/types.hpp"

#include "corosim/errors.hpp"

namespace corosim {

const char* phase_name(Phase p) {
    switch (p) {
        case Phase::Prefill: return "prefill";
        case Phase::Decode: return "decode";
        case Phase::Training: return "training";
        case Phase::Other: return "other";
    }
    return "?";
}

const char* priority_name(PriorityClass p) {
    return p == PriorityClass::LatencyCritical ? "latency_critical" : "best_effort";
}

namespace {

void hash_mix(std::uint64_t& h, std::uint64_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

void hash_string(std::uint64_t& h, const std::string& s) {
    hash_mix(h, s.size());
    for (char c : s) hash_mix(h, static_cast<unsigned char>(c));
}

void hash_rational(std::uint64_t& h, const Rational& r) {
    hash_string(h, numerator(r).str());
    hash_string(h, denominator(r).str());
}

}  // namespace

std::uint64_t Kernel::fingerprint() const {
    std::uint64_t h = 0x811c9dc5ULL;
    hash_string(h, signature.semantic_id);
    hash_mix(h, static_cast<std::uint64_t>(signature.grid_size));
    hash_rational(h, base_duration);
    hash_rational(h, compute_saturation);
    hash_rational(h, mem_bound_fraction);
    for (RegionId r : touched_regions) hash_mix(h, static_cast<std::uint64_t>(r.value));
    return h;
}

std::optional<PctxId> BindingTable::pctx_of(VctxId v) const {
    auto it = forward_.find(v);
    if (it == forward_.end()) return std::nullopt;
    return it->second;
}

std::optional<VctxId> BindingTable::vctx_of(PctxId p) const {
    auto it = reverse_.find(p);
    if (it == reverse_.end()) return std::nullopt;
    return it->second;
}

void bind(BindingTable& table, VirtualContext& vctx, PhysicalContext& pctx) {
    if (pctx.is_bound() || table.reverse_.count(pctx.id)) {
        throw SimError(Errc::BindConflict, "pctx " + std::to_string(pctx.id.value) + " is bound");
    }
    if (table.forward_.count(vctx.id)) {
        throw SimError(Errc::DoubleBind, "vctx " + std::to_string(vctx.id.value) + " is mapped");
    }
    table.forward_[vctx.id] = pctx.id;
    table.reverse_[pctx.id] = vctx.id;
    pctx.bound = vctx.id;
}

void unbind(BindingTable& table, VirtualContext& vctx, PhysicalContext& pctx) {
    auto it = table.forward_.find(vctx.id);
    if (it == table.forward_.end() || it->second != pctx.id || pctx.bound != vctx.id) {
        throw SimError(Errc::BindConflict, "unbind of a pair that is not bound");
    }
    table.forward_.erase(it);
    table.reverse_.erase(pctx.id);
    pctx.bound.reset();
    // The context's dispatch queue does not survive rebinding.
    pctx.hw_queue.clear();
    pctx.rck_flag = false;
}

void create_pool(Device& device, const std::vector<Rational>& tier_fractions,
                 std::vector<PhysicalContext>& store) {
    if (tier_fractions.empty()) {
        throw SimError(Errc::InvalidTier, "pool needs at least one tier");
    }
    for (const Rational& f : tier_fractions) {
        if (f <= 0 || f > 1) {
            throw SimError(Errc::InvalidTier, "tier fraction " + to_decimal_string(f) +
                                                  " outside (0, 1]");
        }
    }
    for (const Rational& f : tier_fractions) {
        PhysicalContext pctx;
        pctx.id = PctxId(static_cast<std::int32_t>(store.size()));
        pctx.device = device.id;
        pctx.tier = QuotaTier{f};
        store.push_back(std::move(pctx));
        device.pctx_pool.push_back(store.back().id);
    }
}

Rational min_tier(const Device& device, const std::vector<PhysicalContext>& store) {
    Rational best = 2;
    for (PctxId p : device.pctx_pool) {
        const Rational& f = store[p.value].tier.fraction;
        if (f < best) best = f;
    }
    return best;
}

Rational bound_tier_sum(const Device& device, const std::vector<PhysicalContext>& store) {
    Rational sum = 0;
    for (PctxId p : device.pctx_pool) {
        if (store[p.value].is_bound()) sum += store[p.value].tier.fraction;
    }
    return sum;
}

}  // namespace corosim

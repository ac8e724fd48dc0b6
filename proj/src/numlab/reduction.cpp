#include "corosim/numlab/reduction.hpp"

#include "corosim/errors.hpp"

namespace corosim {

ReductionPlan ReductionPlan::balanced(std::int64_t n, std::int64_t split_count) {
    if (n < 0 || split_count < 1) {
        throw SimError(Errc::PlanMismatch, "balanced plan needs n >= 0 and splits >= 1");
    }
    ReductionPlan plan;
    plan.element_count = n;
    plan.chunk_bounds.reserve(split_count + 1);
    for (std::int64_t i = 0; i <= split_count; ++i) {
        plan.chunk_bounds.push_back(i * n / split_count);
    }
    return plan;
}

namespace {

FloatValue fold(std::span<const FloatValue> values, const FloatFormat& format) {
    FloatValue acc = FloatValue::finite(Rational(0));
    bool first = true;
    for (const FloatValue& v : values) {
        if (first) {
            acc = v;
            first = false;
        } else {
            acc = add_rounded(format, acc, v);
        }
    }
    return acc;
}

FloatValue combine_tree(std::vector<FloatValue> partials, const FloatFormat& format) {
    if (partials.empty()) return FloatValue::finite(Rational(0));
    while (partials.size() > 1) {
        std::vector<FloatValue> next;
        next.reserve((partials.size() + 1) / 2);
        for (std::size_t i = 0; i + 1 < partials.size(); i += 2) {
            next.push_back(add_rounded(format, partials[i], partials[i + 1]));
        }
        if (partials.size() % 2 == 1) next.push_back(partials.back());
        partials = std::move(next);
    }
    return partials.front();
}

}  // namespace

FloatValue reduce_with_plan(std::span<const FloatValue> values, const FloatFormat& format,
                            const ReductionPlan& plan) {
    if (static_cast<std::int64_t>(values.size()) != plan.element_count) {
        throw SimError(Errc::PlanMismatch, "value count does not match plan element count");
    }
    if (plan.chunk_bounds.size() < 2 || plan.chunk_bounds.front() != 0 ||
        plan.chunk_bounds.back() != plan.element_count) {
        throw SimError(Errc::PlanMismatch, "chunk bounds do not partition the input");
    }
    std::vector<FloatValue> partials;
    partials.reserve(plan.split_count());
    for (std::size_t c = 0; c + 1 < plan.chunk_bounds.size(); ++c) {
        std::int64_t lo = plan.chunk_bounds[c];
        std::int64_t hi = plan.chunk_bounds[c + 1];
        if (hi < lo) throw SimError(Errc::PlanMismatch, "descending chunk bound");
        partials.push_back(fold(values.subspan(lo, hi - lo), format));
    }
    if (plan.tree_combine) return combine_tree(std::move(partials), format);
    return fold(partials, format);
}

CouplingDelta coupling_delta(std::span<const FloatValue> values, const FloatFormat& format,
                             const ReductionPlan& plan_i, const ReductionPlan& plan_j) {
    if (plan_i.element_count != plan_j.element_count) {
        throw SimError(Errc::PlanMismatch, "plans cover different element counts");
    }
    FloatValue a = reduce_with_plan(values, format, plan_i);
    FloatValue b = reduce_with_plan(values, format, plan_j);
    CouplingDelta out;
    out.bit_identical = a == b;
    if (a.is_finite() && b.is_finite()) {
        out.finite = true;
        out.delta = abs(Rational(a.value - b.value));
    } else {
        out.finite = out.bit_identical;
        out.delta = Rational(0);
    }
    return out;
}

}  // namespace corosim

#pragma once

#include "corosim/rational.hpp"

#include <string>
#include <string_view>

namespace corosim {

enum class FloatFormatKind { FP16, BF16, FP32 };

const char* format_name(FloatFormatKind kind);
FloatFormatKind format_from_name(std::string_view name);  // throws ConfigError

// A binary interchange format described by its bit layout. Rounding is
// round-to-nearest ties-to-even, subnormals are supported, and overflow
// saturates to +/-infinity.
struct FloatFormat {
    int exponent_bits;
    int fraction_bits;

    static FloatFormat of(FloatFormatKind kind);

    int bias() const { return (1 << (exponent_bits - 1)) - 1; }
    long min_normal_exp() const { return 1 - bias(); }
    long max_normal_exp() const { return bias(); }
    Rational max_finite() const;
    // Spacing of representable values in the binade of 2^exp (clamped to the
    // subnormal quantum below the normal range).
    Rational quantum(long exp) const;
};

// A value of an emulated format: a finite exact rational or an infinity.
// Emulated arithmetic never produces NaN from finite inputs except
// inf + (-inf), kept for completeness.
struct FloatValue {
    enum class Cls { Finite, PosInf, NegInf, NaN };
    Cls cls = Cls::Finite;
    Rational value;  // meaningful only when finite

    static FloatValue finite(Rational v) { return {Cls::Finite, std::move(v)}; }
    static FloatValue pos_inf() { return {Cls::PosInf, {}}; }
    static FloatValue neg_inf() { return {Cls::NegInf, {}}; }
    static FloatValue nan() { return {Cls::NaN, {}}; }

    bool is_finite() const { return cls == Cls::Finite; }
    bool operator==(const FloatValue& other) const {
        if (cls != other.cls) return false;
        return cls != Cls::Finite || value == other.value;
    }
};

// Correctly rounds an exact rational into the format.
FloatValue round_to(const FloatFormat& format, const Rational& real_value);

// One emulated addition: exact sum, then one rounding step.
FloatValue add_rounded(const FloatFormat& format, const FloatValue& a, const FloatValue& b);

std::string to_string(const FloatValue& v);

}  // namespace corosim

#include "corosim/numlab/float_format.hpp"

#include "corosim/errors.hpp"

namespace corosim {

const char* format_name(FloatFormatKind kind) {
    switch (kind) {
        case FloatFormatKind::FP16: return "fp16";
        case FloatFormatKind::BF16: return "bf16";
        case FloatFormatKind::FP32: return "fp32";
    }
    return "?";
}

FloatFormatKind format_from_name(std::string_view name) {
    if (name == "fp16") return FloatFormatKind::FP16;
    if (name == "bf16") return FloatFormatKind::BF16;
    if (name == "fp32") return FloatFormatKind::FP32;
    throw SimError(Errc::ConfigError, "unknown float format '" + std::string(name) +
                                          "' (expected fp16, bf16, or fp32)");
}

FloatFormat FloatFormat::of(FloatFormatKind kind) {
    switch (kind) {
        case FloatFormatKind::FP16: return {5, 10};
        case FloatFormatKind::BF16: return {8, 7};
        case FloatFormatKind::FP32: return {8, 23};
    }
    return {8, 23};
}

Rational FloatFormat::max_finite() const {
    // (2 - 2^-fraction_bits) * 2^max_normal_exp
    return (Rational(2) - pow2(-fraction_bits)) * pow2(max_normal_exp());
}

Rational FloatFormat::quantum(long exp) const {
    long e = exp < min_normal_exp() ? min_normal_exp() : exp;
    return pow2(e - fraction_bits);
}

FloatValue round_to(const FloatFormat& format, const Rational& real_value) {
    if (real_value == 0) return FloatValue::finite(Rational(0));
    bool negative = real_value < 0;
    Rational mag = negative ? Rational(-real_value) : real_value;

    long exp = floor_log2_abs(mag);
    Rational q = format.quantum(exp);

    // Scaled magnitude mag/q = num / den; round to integer, ties to even.
    Rational scaled = mag / q;
    BigInt num = numerator(scaled);
    BigInt den = denominator(scaled);
    BigInt units = num / den;
    BigInt rem = num % den;
    BigInt twice = rem * 2;
    if (twice > den || (twice == den && (units & 1) != 0)) units += 1;

    Rational rounded = Rational(units) * q;
    // Rounding up at the top of a binade lands exactly on the next power of
    // two, which is representable; only the overflow check remains.
    if (rounded > format.max_finite()) {
        return negative ? FloatValue::neg_inf() : FloatValue::pos_inf();
    }
    return FloatValue::finite(negative ? -rounded : rounded);
}

FloatValue add_rounded(const FloatFormat& format, const FloatValue& a, const FloatValue& b) {
    using Cls = FloatValue::Cls;
    if (a.cls == Cls::NaN || b.cls == Cls::NaN) return FloatValue::nan();
    if (!a.is_finite() || !b.is_finite()) {
        if (a.is_finite()) return b;
        if (b.is_finite()) return a;
        return a.cls == b.cls ? a : FloatValue::nan();
    }
    return round_to(format, a.value + b.value);
}

std::string to_string(const FloatValue& v) {
    switch (v.cls) {
        case FloatValue::Cls::Finite: return to_decimal_string(v.value);
        case FloatValue::Cls::PosInf: return "inf";
        case FloatValue::Cls::NegInf: return "-inf";
        case FloatValue::Cls::NaN: return "nan";
    }
    return "?";
}

}  // namespace corosim

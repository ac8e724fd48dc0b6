#include "corosim/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace corosim {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace

std::optional<Rational> try_rational_from_decimal(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    if (text.front() == '-' || text.front() == '+') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }
    if (text.empty()) return std::nullopt;

    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return std::nullopt;
        BigInt d(std::string(den));
        if (d == 0) return std::nullopt;
        Rational r(BigInt(std::string(num)), d);
        return negative ? -r : r;
    }

    std::string_view whole = text;
    std::string_view frac;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        whole = text.substr(0, dot);
        frac = text.substr(dot + 1);
        if (whole.empty() && frac.empty()) return std::nullopt;
        if (!whole.empty() && !all_digits(whole)) return std::nullopt;
        if (!frac.empty() && !all_digits(frac)) return std::nullopt;
    } else if (!all_digits(whole)) {
        return std::nullopt;
    }

    BigInt numer = whole.empty() ? BigInt(0) : BigInt(std::string(whole));
    BigInt denom = 1;
    for (char c : frac) {
        numer = numer * 10 + (c - '0');
        denom *= 10;
    }
    Rational r(numer, denom);
    return negative ? -r : r;
}

Rational rational_from_decimal(std::string_view text) {
    auto r = try_rational_from_decimal(text);
    if (!r) throw std::invalid_argument("not a decimal number: '" + std::string(text) + "'");
    return *r;
}

std::string to_decimal_string(const Rational& value, int max_frac_digits) {
    BigInt num = numerator(value);
    BigInt den = denominator(value);
    bool negative = num < 0;
    if (negative) num = -num;

    BigInt whole = num / den;
    BigInt rem = num % den;
    std::string digits;
    for (int i = 0; i < max_frac_digits && rem != 0; ++i) {
        rem *= 10;
        BigInt d = rem / den;
        rem %= den;
        digits.push_back(static_cast<char>('0' + static_cast<int>(d)));
    }
    if (rem != 0 && rem * 2 >= den) {
        // Round half-up on the truncated tail.
        int i = static_cast<int>(digits.size()) - 1;
        for (; i >= 0; --i) {
            if (digits[i] != '9') {
                digits[i]++;
                break;
            }
            digits[i] = '0';
        }
        if (i < 0) whole += 1;
    }
    while (!digits.empty() && digits.back() == '0') digits.pop_back();

    std::string out;
    if (negative && (whole != 0 || !digits.empty())) out.push_back('-');
    out += whole.str();
    if (!digits.empty()) {
        out.push_back('.');
        out += digits;
    }
    return out;
}

double to_double(const Rational& value) {
    return value.convert_to<double>();
}

Rational rational_from_double(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
    if (value == 0.0) return Rational(0);
    int exp = 0;
    double mant = std::frexp(value, &exp);  // mant in [0.5, 1)
    // 53 doublings make the mantissa integral for any finite double.
    auto scaled = static_cast<long long>(std::ldexp(mant, 53));
    return Rational(scaled) * pow2(exp - 53);
}

long floor_log2_abs(const Rational& value) {
    BigInt num = abs(numerator(value));
    BigInt den = denominator(value);
    if (num == 0) throw std::invalid_argument("floor_log2_abs(0)");
    long e = static_cast<long>(msb(num)) - static_cast<long>(msb(den));
    // msb difference is within 1 of the true exponent; correct by comparison.
    // |value| >= 2^e  <=>  num * 2^-e >= den.
    auto at_least = [&](long k) {
        if (k >= 0) return num >= (den << k);
        return (num << -k) >= den;
    };
    if (!at_least(e)) --e;
    if (at_least(e + 1)) ++e;
    return e;
}

Rational pow2(long exp) {
    BigInt one = 1;
    if (exp >= 0) return Rational(one << exp, 1);
    return Rational(one, one << -exp);
}

}  // namespace corosim

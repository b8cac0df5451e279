#pragma once

// Independent oracles for the test suites: brute-force partial sums written
// against gmpxx directly, without going through the library's series code.

#include "cantor/basis.hpp"
#include "cantor/codec.hpp"
#include "cantor/numerics.hpp"

#include <gmpxx.h>

#include <random>
#include <vector>

namespace cantor::testing {

/// sum_{k<=n} sign_k e_k / (q_1...q_k) with the digits of rep, summed naively.
inline mpq_class brute_sum(const Representation& rep, std::size_t n) {
    mpq_class sum = 0, scale = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        scale /= rep.base_at(k);
        const int sign = rep.polarity == Polarity::Positive ? 1 : (k % 2 == 0 ? 1 : -1);
        sum += sign * rep.digit_at(k) * scale;
    }
    return sum;
}

inline mpq_class to_mpq(const Rational& r) { return r.raw(); }

/// |a - b| <= eps.
inline bool close(const mpq_class& a, const mpq_class& b, const mpq_class& eps) {
    mpq_class d = a - b;
    return abs(d) <= eps;
}

inline mpq_class pow_inv(int q, unsigned n) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(q), n);
    return mpq_class(1, p);
}

/// A random digit string that is valid for the spec at the given polarity:
/// preperiod of length <= 4, period of length 1..4.
inline Representation random_periodic(const BaseSpec& spec, Polarity p, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> len(0, 4), plen(1, 4);
    const std::size_t m = static_cast<std::size_t>(len(rng));
    // Period lengths are multiples of the base period so every tail digit fits its level.
    const std::size_t bp = p == Polarity::NegaConstant ? 1 : spec.period_length();
    const std::size_t per = static_cast<std::size_t>(plen(rng)) * bp * 2;
    Representation r;
    r.spec = spec;
    r.polarity = p;
    r.tail = TailKind::Periodic;
    const std::size_t shift = p == Polarity::NegaConstant ? 0 : spec.preperiod_length();
    const std::size_t lead = std::max(m, shift);
    for (std::size_t k = 1; k <= lead; ++k) {
        const int q = p == Polarity::NegaConstant ? spec.cap : spec.q(k);
        r.digits.push_back(std::uniform_int_distribution<int>(0, q - 1)(rng));
    }
    for (std::size_t k = 1; k <= per; ++k) {
        const int q = p == Polarity::NegaConstant ? spec.cap : spec.q(lead + k);
        r.tail_digits.push_back(std::uniform_int_distribution<int>(0, q - 1)(rng));
    }
    return r;
}

/// Uniform random rational with denominator den in [lo, hi].
inline Rational random_rational(const Rational& lo, const Rational& hi, long den, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(0, den);
    return lo + (hi - lo) * Rational(d(rng), den);
}

}  // namespace cantor::testing

#pragma once

// The base sequence Q = (q_k) of a Cantor-type numeral system, stored as an
// eventually periodic list, plus the cap q that bounds every q_k.

#include "cantor/numerics.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace cantor {

struct BaseSpec {
    std::vector<int> preperiod;
    std::vector<int> period;
    int cap = 2;

    /// The constant sequence q_k = q with cap q.
    static BaseSpec constant(int q) { return {{}, {q}, q}; }

    /// q_k for k >= 1.
    int q(std::size_t k) const;
    std::size_t preperiod_length() const { return preperiod.size(); }
    std::size_t period_length() const { return period.size(); }
    int max_base() const;

    friend bool operator==(const BaseSpec&, const BaseSpec&) = default;
};

/// One violated constraint of a BaseSpec.
struct SpecViolation {
    std::string message;
};

/// Every violated constraint, in index order; empty means valid.
std::vector<SpecViolation> validate(const BaseSpec& spec);

/// Throws std::invalid_argument listing the violations, if any.
void require_valid(const BaseSpec& spec);

/// Digit set {0, ..., q_n - 1} at one level.
struct Alphabet {
    std::size_t level;
    int size;
    bool contains(int digit) const { return digit >= 0 && digit < size; }
};

Alphabet alphabet(const BaseSpec& spec, std::size_t level);

/// Right endpoint a0 = sum_k (q_{2k} - 1) / (q_1 ... q_{2k}) of the
/// alternating system's domain [a0 - 1, a0]. The value is computed in closed
/// form, so the enclosure is always exact.
Enclosure a0(const BaseSpec& spec, const Rational& tol = Rational(1, 1000000));

/// Exact a0, for internal callers that do not need an enclosure.
Rational a0_exact(const BaseSpec& spec);

/// The spec of the sequence q_{n+1}, q_{n+2}, ...; cap unchanged.
BaseSpec shifted(const BaseSpec& spec, std::size_t n);

/// q_1 q_2 ... q_n.
Integer base_product(const BaseSpec& spec, std::size_t n);

/// Joint period of the sequence and of the sign pattern (-1)^k.
std::size_t parity_period(const BaseSpec& spec);

/// {"preperiod":[...], "period":[...], "cap": n}
BaseSpec parse_base_spec_json(std::string_view json_text);
std::string base_spec_to_json(const BaseSpec& spec);

}  // namespace cantor

#pragma once

// Positive Cantor series, alternating (nega-Q) Cantor series and nega-q
// expansions: digit strings with an eventually periodic tail, exact decoding,
// greedy/shift-based encoding, dual representations of rational points,
// cylinders and the shift operator.

#include "cantor/basis.hpp"
#include "cantor/numerics.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cantor {

enum class Polarity {
    Positive,      // sum e_k / (q_1...q_k)
    Alternating,   // sum (-1)^k e_k / (q_1...q_k)
    NegaConstant,  // sum (-1)^k e_k / cap^k
};

enum class TailKind { Zeros, Periodic, Truncated };

std::string to_string(Polarity p);
Polarity parse_polarity(std::string_view text);

struct Representation {
    BaseSpec spec;
    Polarity polarity = Polarity::Alternating;
    std::vector<int> digits;       // e_1 ... e_m
    TailKind tail = TailKind::Zeros;
    std::vector<int> tail_digits;  // repeating block after e_m (Periodic only)

    static Representation finite(BaseSpec spec, Polarity p, std::vector<int> digits);
    static Representation periodic(BaseSpec spec, Polarity p, std::vector<int> digits, std::vector<int> tail);
    static Representation truncated(BaseSpec spec, Polarity p, std::vector<int> digits);

    /// Base at level k: q_k, or the cap for nega-q expansions.
    int base_at(std::size_t k) const;
    /// Digit at level k >= 1; throws for levels past a truncated prefix.
    int digit_at(std::size_t k) const;
    bool knows_digit(std::size_t k) const { return tail != TailKind::Truncated || k <= digits.size(); }
    /// Preperiod length of the base sequence the digits are measured against.
    std::size_t base_preperiod() const;
    std::size_t base_period() const;
    /// Level after which both digits and bases are periodic, and their joint period.
    std::size_t periodic_start() const;
    std::size_t joint_period() const;

    friend bool operator==(const Representation&, const Representation&) = default;
};

/// Throws std::invalid_argument naming the first level whose digit is out of range.
void validate_representation(const Representation& rep);

/// (-1)^k for signed expansions, +1 for positive ones.
int series_sign(Polarity p, std::size_t k);

/// Exact value for Zeros/Periodic tails; for Truncated, the cylinder of the
/// known prefix (width 1/(q_1...q_m), or cap^-m for nega-q).
Enclosure decode(const Representation& rep);

/// Exact value of a representation with a Zeros or Periodic tail.
Rational decode_exact(const Representation& rep);

/// Partial sum of the first n levels.
Rational partial_sum(const Representation& rep, std::size_t n);

/// Greedy positive Cantor digits of x in [0, 1]. Returns a Zeros tail for
/// Q-rational x, a Periodic tail when the remainder cycles within m levels,
/// and a Truncated prefix of m digits otherwise. encode_positive(1) is the
/// all-(q_k - 1) periodic representation.
Representation encode_positive(const Rational& x, const BaseSpec& spec, std::size_t m);

/// Nega-Q digits of x in [a0 - 1, a0] via the shift remainder
/// r_k = -q_k r_{k-1} - e_k, choosing the larger admissible digit on ties.
Representation encode_alternating(const Rational& x, const BaseSpec& spec, std::size_t m);

/// Nega-q digits of x in [-cap/(cap+1), 1/(cap+1)].
Representation encode_nega(const Rational& x, const BaseSpec& spec, std::size_t m);

enum class ExtremalTail {
    Min,  // positive: zeros; signed: [q_{m+1}-1] 0 [q_{m+3}-1] 0 ...
    Max,  // positive: all q_k - 1; signed: 0 [q_{m+2}-1] 0 [q_{m+4}-1] ...
};

/// prefix followed by the extremal tail starting at level prefix.size() + 1.
Representation with_extremal_tail(const BaseSpec& spec, Polarity p, const std::vector<int>& prefix,
                                  ExtremalTail which);

struct RationalPoint {
    bool dual = false;
    std::optional<Representation> other;
    /// Level m of the last digit the two forms share up to a unit change.
    std::size_t level = 0;
};

/// Detects the two-representation points (Q-rational / nega-Q-rational)
/// and returns the other member of the pair.
RationalPoint is_rational_point(const Representation& rep);

/// False only for the member of a dual pair that is not kept: the
/// all-(q_k - 1) tail for positive series, the decremented form
/// ...[e_m - 1] 0 [q_{m+2}-1] 0 ... for signed series.
bool is_canonical(const Representation& rep);

/// Canonical member of the dual pair; also folds an all-zero periodic tail
/// into a Zeros tail. Idempotent.
Representation normalize(const Representation& rep);

struct Cylinder {
    BaseSpec spec;
    std::vector<int> base;
    Polarity polarity = Polarity::Alternating;
};

/// Exact (inf, sup) of the cylinder.
std::pair<Enclosure, Enclosure> cylinder_interval(const Cylinder& cyl);

/// Drops the first n digits; the result lives in the system shifted by n.
Representation shift(const Representation& rep, std::size_t n);

/// Digit-string text: "0,2,0,2" (zeros tail), "1,2|1,2" (periodic tail after
/// '|'), "1,2|..." (truncated).
struct DigitText {
    std::vector<int> digits;
    TailKind tail = TailKind::Zeros;
    std::vector<int> tail_digits;
};

DigitText parse_digit_text(std::string_view text);
std::string format_digits(const Representation& rep);
Representation from_text(const BaseSpec& spec, Polarity p, std::string_view text);

}  // namespace cantor

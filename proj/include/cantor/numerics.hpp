#pragma once

// Exact rational arithmetic, certified enclosures and the small set of
// certified numerical primitives (geometric tails, bisection, integer-power
// logarithm bracketing, eventually periodic series) used by every other
// module. Nothing in here touches binary floating point except the decimal
// rendering helpers used for display.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cantor {

using Integer = mpz_class;

/// An exact rational number, always stored in canonical reduced form.
class Rational {
public:
    Rational() = default;
    Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(int n) : v_(n) {}   // NOLINT(google-explicit-constructor)
    Rational(long num, long den);
    explicit Rational(const Integer& n) : v_(n) {}
    Rational(const Integer& num, const Integer& den);

    /// Parses "p/q", "-7", "0.125" or "1e-9" exactly.
    static Rational parse(std::string_view text);

    Integer numerator() const { return v_.get_num(); }
    Integer denominator() const { return v_.get_den(); }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return v_.get_den() == 1; }

    Rational abs() const;
    Integer floor() const;
    Integer ceil() const;
    Rational reciprocal() const;
    Rational pow(unsigned long e) const;

    /// "p/q", or "p" when the denominator is 1.
    std::string str() const { return v_.get_str(); }
    /// Decimal rendering with `digits` significant digits (display only).
    std::string decimal(int digits = 12) const;
    /// Nearest double; display and test oracles only.
    double to_double() const { return v_.get_d(); }

    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { Rational r; r.v_ = -a.v_; return r; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r);

    const mpq_class& raw() const { return v_; }

private:
    mpq_class v_;
};

Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

/// Integer power with exact integers.
Integer ipow(const Integer& base, unsigned long e);

/// A closed interval [lo, hi] of rationals certified to contain some real value.
struct Enclosure {
    Rational lo;
    Rational hi;

    Enclosure() = default;
    Enclosure(Rational l, Rational h);
    static Enclosure point(const Rational& x) { return {x, x}; }

    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / Rational(2); }
    bool is_exact() const { return lo == hi; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const Enclosure& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const Enclosure& o) const { return lo <= o.hi && o.lo <= hi; }
    /// Sign of every point of the enclosure, or 0 when it straddles/touches zero.
    int certain_sign() const;
    Enclosure abs() const;

    friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
    friend Enclosure operator-(const Enclosure& a);
    friend Enclosure operator*(const Rational& s, const Enclosure& e);
    /// Division by an enclosure that excludes zero.
    friend Enclosure operator/(const Enclosure& a, const Enclosure& b);
    friend bool operator==(const Enclosure&, const Enclosure&) = default;
};

/// Smallest enclosure containing both arguments.
Enclosure hull(const Enclosure& a, const Enclosure& b);

class bracket_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class iteration_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an enumeration would exceed the configured cell budget.
class resource_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Upper bound on |sum t_k| for any series with |t_0| <= first_term_abs and
/// |t_{k+1}| <= ratio_abs * |t_k|.
Rational geometric_tail_bound(const Rational& first_term_abs, const Rational& ratio_abs);

/// Iteration cap used by bisect_root: ceil(log2((hi - lo) / tol)) + 8.
std::size_t bisection_cap(const Rational& lo, const Rational& hi, const Rational& tol);

using RationalMap = std::function<Rational(const Rational&)>;

/// Root of a strictly monotone map with a sign change on [lo, hi], enclosed to
/// width <= tol. The result always satisfies f(result.lo) * f(result.hi) <= 0.
Enclosure bisect_root(const RationalMap& f, Rational lo, Rational hi, const Rational& tol);

/// Encloses log_base(arg) for arg >= 1 to width <= tol using only exact
/// comparisons base^a <=> arg^b (a Stern-Brocot walk over a/b). Exact when
/// the logarithm is rational.
Enclosure log_bracket(const Integer& base, const Rational& arg, const Rational& tol);

/// One term of a product series: the series is sum_k coeff_k * prod_{j<k} ratio_j.
struct SeriesTerm {
    Rational coeff;
    Rational ratio;
};

/// Exact value of sum_{k>=1} coeff_k * prod_{j<k} ratio_j when the terms
/// (coeff_k, ratio_k) repeat with `period` for k > `start`. The product of
/// the ratios over one period must be < 1 in absolute value.
Rational eventually_periodic_sum(std::size_t start, std::size_t period,
                                 const std::function<SeriesTerm(std::size_t)>& term);

/// Least common multiple on sizes.
std::size_t lcm_size(std::size_t a, std::size_t b);

/// Enumeration budget: CANTOR_ATLAS_MAX_CELLS when set to a positive integer,
/// otherwise 10^7.
std::uint64_t cell_budget();

/// Throws resource_error when `cells` exceeds `budget`.
void require_budget(const Integer& cells, std::uint64_t budget, std::string_view what);

}  // namespace cantor

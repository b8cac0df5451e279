#include "cantor/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <string>

namespace cantor {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("zero denominator");
    v_.canonicalize();
}

Rational::Rational(const Integer& num, const Integer& den) : v_(num, den) {
    if (den == 0) throw std::domain_error("zero denominator");
    v_.canonicalize();
}

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

Integer parse_integer(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw std::invalid_argument("malformed integer");
    Integer n(std::string(s), 10);
    return neg ? Integer(-n) : n;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    if (text.empty()) throw std::invalid_argument("empty rational");

    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        const Integer num = parse_integer(text.substr(0, slash));
        std::string_view den_text = text.substr(slash + 1);
        if (!all_digits(den_text)) throw std::invalid_argument("malformed denominator in '" + std::string(text) + "'");
        const Integer den(std::string(den_text), 10);
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    }

    bool neg = false;
    std::string_view s = text;
    if (s.front() == '-' || s.front() == '+') {
        neg = s.front() == '-';
        s.remove_prefix(1);
    }
    long exponent = 0;
    if (const auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        const Integer ex = parse_integer(s.substr(e + 1));
        if (!ex.fits_slong_p() || ::abs(ex) > 100000) throw std::invalid_argument("exponent out of range");
        exponent = ex.get_si();
        s = s.substr(0, e);
    }
    std::string mantissa;
    if (const auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = s.substr(0, dot);
        std::string_view frac_part = s.substr(dot + 1);
        if ((int_part.empty() && frac_part.empty()) ||
            (!int_part.empty() && !all_digits(int_part)) ||
            (!frac_part.empty() && !all_digits(frac_part)))
            throw std::invalid_argument("malformed decimal '" + std::string(text) + "'");
        mantissa = std::string(int_part) + std::string(frac_part);
        exponent -= static_cast<long>(frac_part.size());
    } else {
        if (!all_digits(s)) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
        mantissa = std::string(s);
    }
    Integer m(mantissa, 10);
    if (neg) m = -m;
    Integer scale = ipow(Integer(10), static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
    return exponent < 0 ? Rational(m, scale) : Rational(Integer(m * scale));
}

Rational Rational::abs() const {
    Rational r;
    r.v_ = ::abs(v_);
    return r;
}

Integer Rational::floor() const {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

Integer Rational::ceil() const {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

Rational Rational::reciprocal() const {
    if (is_zero()) throw std::domain_error("reciprocal of zero");
    return Rational(v_.get_den(), v_.get_num());
}

Rational Rational::pow(unsigned long e) const {
    return Rational(ipow(v_.get_num(), e), ipow(v_.get_den(), e));
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
}

std::string Rational::decimal(int digits) const {
    if (digits < 1) digits = 1;
    if (is_zero()) return "0";
    const Rational a = this->abs();
    // e = floor(log10 |x|)
    long e = static_cast<long>(mpz_sizeinbase(a.numerator().get_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(a.denominator().get_mpz_t(), 10));
    auto pow10 = [](long k) {
        return k >= 0 ? Rational(ipow(Integer(10), static_cast<unsigned long>(k)))
                      : Rational(Integer(1), ipow(Integer(10), static_cast<unsigned long>(-k)));
    };
    while (pow10(e) > a) --e;
    while (pow10(e + 1) <= a) ++e;

    // Round |x| * 10^(digits-1-e) half-up to an integer with `digits` digits.
    const Rational scaled = a * pow10(digits - 1 - e);
    Integer n = (scaled + Rational(1, 2)).floor();
    if (n == ipow(Integer(10), static_cast<unsigned long>(digits))) {
        n /= 10;
        ++e;
    }
    std::string ds = n.get_str();
    ds.resize(static_cast<std::size_t>(digits), '0');

    std::string out = sign() < 0 ? "-" : "";
    if (e >= -6 && e < digits) {
        if (e >= 0) {
            out += ds.substr(0, static_cast<std::size_t>(e + 1));
            std::string frac = ds.substr(static_cast<std::size_t>(e + 1));
            while (!frac.empty() && frac.back() == '0') frac.pop_back();
            if (!frac.empty()) out += "." + frac;
        } else {
            std::string frac = std::string(static_cast<std::size_t>(-e - 1), '0') + ds;
            while (!frac.empty() && frac.back() == '0') frac.pop_back();
            out += "0." + frac;
        }
    } else {
        std::string frac = ds.substr(1);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        out += ds.substr(0, 1);
        if (!frac.empty()) out += "." + frac;
        out += "e" + std::to_string(e);
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

Integer ipow(const Integer& base, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// ---------------------------------------------------------------------------
// Enclosure

Enclosure::Enclosure(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (hi < lo) throw std::invalid_argument("enclosure with lo > hi");
}

int Enclosure::certain_sign() const {
    if (lo.sign() > 0) return 1;
    if (hi.sign() < 0) return -1;
    return 0;
}

Enclosure Enclosure::abs() const {
    if (lo.sign() >= 0) return *this;
    if (hi.sign() <= 0) return {-hi, -lo};
    return {Rational(0), max(-lo, hi)};
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) { return {a.lo + b.lo, a.hi + b.hi}; }
Enclosure operator-(const Enclosure& a, const Enclosure& b) { return {a.lo - b.hi, a.hi - b.lo}; }
Enclosure operator-(const Enclosure& a) { return {-a.hi, -a.lo}; }

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
    const Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    return {min(min(p1, p2), min(p3, p4)), max(max(p1, p2), max(p3, p4))};
}

Enclosure operator*(const Rational& s, const Enclosure& e) {
    return s.sign() >= 0 ? Enclosure{s * e.lo, s * e.hi} : Enclosure{s * e.hi, s * e.lo};
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
    if (b.certain_sign() == 0) throw std::domain_error("enclosure division by an interval containing zero");
    return a * Enclosure{b.hi.reciprocal(), b.lo.reciprocal()};
}

Enclosure hull(const Enclosure& a, const Enclosure& b) { return {min(a.lo, b.lo), max(a.hi, b.hi)}; }

// ---------------------------------------------------------------------------

Rational geometric_tail_bound(const Rational& first_term_abs, const Rational& ratio_abs) {
    if (ratio_abs >= Rational(1)) throw std::domain_error("non-contracting tail");
    if (ratio_abs.sign() < 0 || first_term_abs.sign() < 0)
        throw std::domain_error("tail bound needs non-negative magnitudes");
    return first_term_abs / (Rational(1) - ratio_abs);
}

std::size_t bisection_cap(const Rational& lo, const Rational& hi, const Rational& tol) {
    const Rational ratio = (hi - lo) / tol;
    std::size_t k = 0;
    if (ratio > Rational(1)) {
        // smallest k with 2^k >= ceil(ratio)
        const Integer c = ratio.ceil() - 1;
        k = mpz_sizeinbase(c.get_mpz_t(), 2);
    }
    return k + 8;
}

Enclosure bisect_root(const RationalMap& f, Rational lo, Rational hi, const Rational& tol) {
    if (tol.sign() <= 0) throw std::domain_error("bisection tolerance must be positive");
    if (hi < lo) std::swap(lo, hi);
    const int s_lo = f(lo).sign();
    const int s_hi = f(hi).sign();
    if (s_lo == 0) return Enclosure::point(lo);
    if (s_hi == 0) return Enclosure::point(hi);
    if (s_lo == s_hi) throw bracket_error("bisection endpoints have the same sign");

    const std::size_t cap = bisection_cap(lo, hi, tol);
    std::size_t iterations = 0;
    while (hi - lo > tol) {
        if (iterations++ >= cap) throw iteration_error("bisection did not converge within its iteration cap");
        Rational mid = (lo + hi) / Rational(2);
        const int s = f(mid).sign();
        if (s == 0) return Enclosure::point(mid);
        if (s == s_lo)
            lo = std::move(mid);
        else
            hi = std::move(mid);
    }
    return {lo, hi};
}

namespace {

struct Fraction {
    Integer a;  // numerator
    Integer b;  // denominator (0 encodes +infinity)
};

}  // namespace

Enclosure log_bracket(const Integer& base, const Rational& arg, const Rational& tol) {
    if (base < 2) throw std::domain_error("logarithm base must be >= 2");
    if (arg < Rational(1)) throw std::domain_error("log_bracket needs arg >= 1");
    if (tol.sign() <= 0) throw std::domain_error("logarithm tolerance must be positive");
    if (arg == Rational(1)) return Enclosure::point(Rational(0));

    const Integer num = arg.numerator();
    const Integer den = arg.denominator();
    // sign of a/b - log_base(arg), i.e. compare base^a * den^b with num^b
    auto compare = [&](const Fraction& f) {
        const unsigned long a = f.a.get_ui();
        const unsigned long b = f.b.get_ui();
        const Integer lhs = ipow(base, a) * ipow(den, b);
        const Integer rhs = ipow(num, b);
        return cmp(lhs, rhs);
    };
    auto exact = [](const Fraction& f) { return Enclosure::point(Rational(f.a, f.b)); };

    Fraction left{0, 1};
    Fraction right{1, 0};
    const Rational inv_tol = tol.reciprocal();

    while (right.b == 0 || Rational(Integer(left.b * right.b)) < inv_tol) {
        const Fraction mediant{left.a + right.a, left.b + right.b};
        const int c = compare(mediant);
        if (c == 0) return exact(mediant);
        const bool move_left = c < 0;  // mediant below the logarithm
        const Fraction& from = move_left ? left : right;
        const Fraction& toward = move_left ? right : left;

        auto candidate = [&](const Integer& k) { return Fraction{from.a + k * toward.a, from.b + k * toward.b}; };
        auto still_on_side = [&](const Fraction& f, bool& hit) {
            const int s = compare(f);
            if (s == 0) hit = true;
            return move_left ? s < 0 : s > 0;
        };

        // Steps beyond this count cannot be needed for the requested width.
        Integer k_cap = 0;
        if (toward.b > 0) {
            k_cap = (inv_tol / Rational(toward.b) / Rational(toward.b)).ceil() + 1;
        }

        Integer good = 1;  // k = 1 is the mediant itself
        Integer bad = 0;   // 0 while no off-side k is known
        Integer step = 2;
        bool hit = false;
        for (;;) {
            if (k_cap != 0 && step > k_cap) {
                if (k_cap <= good) break;
                step = k_cap;
            }
            const Fraction f = candidate(step);
            if (still_on_side(f, hit)) {
                good = step;
                if (k_cap != 0 && step == k_cap) break;
                step *= 2;
            } else {
                if (hit) return exact(f);
                bad = step;
                break;
            }
        }
        if (bad == 0) bad = good + 1;
        while (bad - good > 1) {
            const Integer mid = (good + bad) / 2;
            const Fraction f = candidate(mid);
            if (still_on_side(f, hit)) {
                good = mid;
            } else {
                if (hit) return exact(f);
                bad = mid;
            }
        }
        if (move_left)
            left = candidate(good);
        else
            right = candidate(good);
    }
    return {Rational(left.a, left.b), Rational(right.a, right.b)};
}

std::size_t lcm_size(std::size_t a, std::size_t b) { return std::lcm(a, b); }

Rational eventually_periodic_sum(std::size_t start, std::size_t period,
                                 const std::function<SeriesTerm(std::size_t)>& term) {
    if (period == 0) throw std::invalid_argument("series period must be positive");
    Rational sum(0);
    Rational prod(1);
    for (std::size_t k = 1; k <= start; ++k) {
        SeriesTerm t = term(k);
        sum += t.coeff * prod;
        prod *= t.ratio;
    }
    Rational block(0);
    Rational block_prod(1);
    for (std::size_t i = 1; i <= period; ++i) {
        SeriesTerm t = term(start + i);
        block += t.coeff * block_prod;
        block_prod *= t.ratio;
    }
    if (block_prod.abs() >= Rational(1)) throw std::domain_error("non-contracting periodic series");
    return sum + prod * block / (Rational(1) - block_prod);
}

std::uint64_t cell_budget() {
    constexpr std::uint64_t fallback = 10'000'000;
    const char* env = std::getenv("CANTOR_ATLAS_MAX_CELLS");
    if (env == nullptr || *env == '\0') return fallback;
    std::uint64_t v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec != std::errc() || ptr != end || v == 0) return fallback;
    return v;
}

void require_budget(const Integer& cells, std::uint64_t budget, std::string_view what) {
    if (cells > Integer(std::to_string(budget)))
        throw resource_error(std::string(what) + " needs " + cells.get_str() + " cells, budget is " +
                             std::to_string(budget) + " (CANTOR_ATLAS_MAX_CELLS)");
}

}  // namespace cantor

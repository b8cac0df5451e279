#include "cantor/codec.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <utility>

namespace cantor {

std::string to_string(Polarity p) {
    switch (p) {
        case Polarity::Positive: return "positive";
        case Polarity::Alternating: return "alternating";
        case Polarity::NegaConstant: return "nega";
    }
    return "?";
}

Polarity parse_polarity(std::string_view text) {
    if (text == "positive" || text == "+") return Polarity::Positive;
    if (text == "alternating" || text == "-") return Polarity::Alternating;
    if (text == "nega" || text == "nega-q" || text == "negaconstant") return Polarity::NegaConstant;
    throw std::invalid_argument("unknown polarity '" + std::string(text) + "'");
}

Representation Representation::finite(BaseSpec spec, Polarity p, std::vector<int> digits) {
    return {std::move(spec), p, std::move(digits), TailKind::Zeros, {}};
}

Representation Representation::periodic(BaseSpec spec, Polarity p, std::vector<int> digits, std::vector<int> tail) {
    if (tail.empty()) throw std::invalid_argument("periodic tail must be nonempty");
    return {std::move(spec), p, std::move(digits), TailKind::Periodic, std::move(tail)};
}

Representation Representation::truncated(BaseSpec spec, Polarity p, std::vector<int> digits) {
    return {std::move(spec), p, std::move(digits), TailKind::Truncated, {}};
}

int Representation::base_at(std::size_t k) const {
    return polarity == Polarity::NegaConstant ? spec.cap : spec.q(k);
}

int Representation::digit_at(std::size_t k) const {
    if (k == 0) throw std::out_of_range("digits are indexed from 1");
    if (k <= digits.size()) return digits[k - 1];
    switch (tail) {
        case TailKind::Zeros: return 0;
        case TailKind::Periodic: return tail_digits[(k - digits.size() - 1) % tail_digits.size()];
        case TailKind::Truncated: break;
    }
    throw std::out_of_range("digit " + std::to_string(k) + " is past the truncated prefix");
}

std::size_t Representation::base_preperiod() const {
    return polarity == Polarity::NegaConstant ? 0 : spec.preperiod_length();
}

std::size_t Representation::base_period() const {
    return polarity == Polarity::NegaConstant ? 1 : spec.period_length();
}

std::size_t Representation::periodic_start() const { return std::max(digits.size(), base_preperiod()); }

std::size_t Representation::joint_period() const {
    std::size_t p = base_period();
    if (polarity != Polarity::Positive) p = lcm_size(p, 2);
    if (tail == TailKind::Periodic) p = lcm_size(p, tail_digits.size());
    return p;
}

int series_sign(Polarity p, std::size_t k) {
    if (p == Polarity::Positive) return 1;
    return k % 2 == 0 ? 1 : -1;
}

void validate_representation(const Representation& rep) {
    require_valid(rep.spec);
    auto check = [&](std::size_t k) {
        const int d = rep.digit_at(k);
        const int q = rep.base_at(k);
        if (d < 0 || d >= q)
            throw std::invalid_argument("invalid digit " + std::to_string(d) + " at level " + std::to_string(k) +
                                        " (base " + std::to_string(q) + ")");
    };
    for (std::size_t k = 1; k <= rep.digits.size(); ++k) check(k);
    if (rep.tail == TailKind::Periodic) {
        if (rep.tail_digits.empty()) throw std::invalid_argument("periodic tail must be nonempty");
        const std::size_t end = rep.periodic_start() + rep.joint_period();
        for (std::size_t k = rep.digits.size() + 1; k <= end; ++k) check(k);
    }
}

Rational partial_sum(const Representation& rep, std::size_t n) {
    Rational sum(0);
    Integer denom = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        denom *= rep.base_at(k);
        const int d = rep.digit_at(k);
        if (d != 0) sum += Rational(Integer(series_sign(rep.polarity, k) * d), denom);
    }
    return sum;
}

Rational decode_exact(const Representation& rep) {
    switch (rep.tail) {
        case TailKind::Zeros: return partial_sum(rep, rep.digits.size());
        case TailKind::Periodic:
            return eventually_periodic_sum(rep.periodic_start(), rep.joint_period(), [&](std::size_t k) {
                const int q = rep.base_at(k);
                return SeriesTerm{Rational(series_sign(rep.polarity, k) * rep.digit_at(k), q), Rational(1, q)};
            });
        case TailKind::Truncated: break;
    }
    throw std::invalid_argument("truncated representation has no exact value");
}

namespace {

// a0 of the system shifted by n, for the representation's polarity.
Rational shifted_a0(const Representation& rep, std::size_t n) {
    if (rep.polarity == Polarity::NegaConstant) return Rational(1, rep.spec.cap + 1);
    return a0_exact(shifted(rep.spec, n));
}

Rational level_product_inverse(const Representation& rep, std::size_t n) {
    Integer p = 1;
    for (std::size_t k = 1; k <= n; ++k) p *= rep.base_at(k);
    return Rational(Integer(1), p);
}

}  // namespace

Enclosure decode(const Representation& rep) {
    validate_representation(rep);
    if (rep.tail != TailKind::Truncated) return Enclosure::point(decode_exact(rep));

    const std::size_t m = rep.digits.size();
    const Rational s = partial_sum(rep, m);
    const Rational scale = level_product_inverse(rep, m);
    if (rep.polarity == Polarity::Positive) return {s, s + scale};
    const Rational top = shifted_a0(rep, m);
    const Rational e1 = s + Rational(series_sign(rep.polarity, m)) * (top - Rational(1)) * scale;
    const Rational e2 = s + Rational(series_sign(rep.polarity, m)) * top * scale;
    return {min(e1, e2), max(e1, e2)};
}

namespace {

struct EncodedDigits {
    std::vector<int> digits;
    TailKind tail = TailKind::Truncated;
    std::vector<int> tail_digits;
};

// Shared greedy/shift digit loop. The remainder after k digits lives in the
// system shifted by k; (phase, remainder) repeating means the digits cycle.
EncodedDigits encode_core(const Rational& x, const BaseSpec& spec, bool is_signed, std::size_t m) {
    const std::size_t pre = spec.preperiod_length();
    const std::size_t per = spec.period_length();
    auto phase = [&](std::size_t k) { return k < pre + per ? k : pre + (k - pre) % per; };

    std::vector<Rational> top;  // a0 of each distinct shifted system
    if (is_signed) {
        top.reserve(pre + per);
        for (std::size_t c = 0; c < pre + per; ++c) top.push_back(a0_exact(shifted(spec, c)));
    }

    EncodedDigits out;
    std::map<std::pair<std::size_t, Rational>, std::size_t> seen;
    Rational r = x;
    seen.emplace(std::make_pair(phase(0), r), 0);
    for (std::size_t k = 1; k <= m; ++k) {
        const int q = spec.q(k);
        int digit = 0;
        if (!is_signed) {
            const Integer f = (Rational(q) * r).floor();
            digit = static_cast<int>(std::min<long>(f.get_si(), q - 1));
            r = Rational(q) * r - Rational(digit);
        } else {
            const Rational v = -Rational(q) * r - top[phase(k)];
            const Integer lo = std::max<Integer>(v.ceil(), Integer(0));
            const Integer hi = std::min<Integer>((v + Rational(1)).floor(), Integer(q - 1));
            if (lo > hi) throw std::logic_error("no admissible digit at level " + std::to_string(k));
            digit = static_cast<int>(hi.get_si());
            r = -Rational(q) * r - Rational(digit);
        }
        out.digits.push_back(digit);
        if (r.is_zero()) {
            out.tail = TailKind::Zeros;
            return out;
        }
        auto [it, inserted] = seen.emplace(std::make_pair(phase(k), r), k);
        if (!inserted) {
            const std::size_t i = it->second;
            out.tail = TailKind::Periodic;
            out.tail_digits.assign(out.digits.begin() + static_cast<std::ptrdiff_t>(i), out.digits.end());
            out.digits.resize(i);
            return out;
        }
    }
    return out;
}

Representation assemble(const BaseSpec& spec, Polarity p, EncodedDigits enc) {
    Representation rep{spec, p, std::move(enc.digits), enc.tail, std::move(enc.tail_digits)};
    // Signed series keep parity-aligned tails so the sign pattern repeats with the block.
    if (p != Polarity::Positive && rep.tail == TailKind::Periodic && rep.tail_digits.size() % 2 == 1) {
        const auto block = rep.tail_digits;
        rep.tail_digits.insert(rep.tail_digits.end(), block.begin(), block.end());
    }
    return rep;
}

}  // namespace

Representation encode_positive(const Rational& x, const BaseSpec& spec, std::size_t m) {
    require_valid(spec);
    if (x.sign() < 0 || x > Rational(1)) throw std::domain_error("x must lie in [0, 1]");
    return assemble(spec, Polarity::Positive, encode_core(x, spec, false, m));
}

Representation encode_alternating(const Rational& x, const BaseSpec& spec, std::size_t m) {
    const Rational top = a0_exact(spec);
    if (x < top - Rational(1) || x > top)
        throw std::domain_error("x must lie in [a0 - 1, a0] = [" + (top - Rational(1)).str() + ", " + top.str() + "]");
    return assemble(spec, Polarity::Alternating, encode_core(x, spec, true, m));
}

Representation encode_nega(const Rational& x, const BaseSpec& spec, std::size_t m) {
    require_valid(spec);
    const BaseSpec flat = BaseSpec::constant(spec.cap);
    const Rational top(1, spec.cap + 1);
    if (x < top - Rational(1) || x > top)
        throw std::domain_error("x must lie in [-q/(q+1), 1/(q+1)]");
    return assemble(spec, Polarity::NegaConstant, encode_core(x, flat, true, m));
}

Representation with_extremal_tail(const BaseSpec& spec, Polarity p, const std::vector<int>& prefix,
                                  ExtremalTail which) {
    Representation rep{spec, p, prefix, TailKind::Zeros, {}};
    const std::size_t start = prefix.size() + 1;
    auto pattern = [&](std::size_t k) {
        const int top = rep.base_at(k) - 1;
        if (p == Polarity::Positive) return which == ExtremalTail::Max ? top : 0;
        const bool even_offset = (k - start) % 2 == 0;
        if (which == ExtremalTail::Min) return even_offset ? top : 0;
        return even_offset ? 0 : top;
    };
    if (p == Polarity::Positive && which == ExtremalTail::Min) return rep;
    for (std::size_t k = start; k <= rep.base_preperiod(); ++k) rep.digits.push_back(pattern(k));
    std::size_t len = rep.base_period();
    if (p != Polarity::Positive) len = lcm_size(len, 2);
    const std::size_t first = rep.digits.size() + 1;
    rep.tail = TailKind::Periodic;
    for (std::size_t k = first; k < first + len; ++k) rep.tail_digits.push_back(pattern(k));
    return rep;
}

namespace {

bool periodic_all_zero(const Representation& rep) {
    return rep.tail == TailKind::Periodic &&
           std::all_of(rep.tail_digits.begin(), rep.tail_digits.end(), [](int d) { return d == 0; });
}

Representation fold_zero_tail(Representation rep) {
    if (periodic_all_zero(rep)) {
        rep.tail = TailKind::Zeros;
        rep.tail_digits.clear();
    }
    return rep;
}

struct PatternStart {
    std::size_t start;  // first level of the extremal tail
    ExtremalTail kind;  // which tail starts there
};

// Earliest level from which a signed representation follows an extremal tail.
std::optional<PatternStart> signed_pattern_start(const Representation& rep) {
    if (rep.tail != TailKind::Periodic) return std::nullopt;
    const std::size_t s0 = rep.periodic_start() + 1;
    const int d0 = rep.digit_at(s0);
    ExtremalTail kind;
    if (d0 == rep.base_at(s0) - 1)
        kind = ExtremalTail::Min;
    else if (d0 == 0)
        kind = ExtremalTail::Max;
    else
        return std::nullopt;
    for (std::size_t k = s0; k < s0 + rep.joint_period(); ++k) {
        const bool even_offset = (k - s0) % 2 == 0;
        const bool top_here = (kind == ExtremalTail::Min) == even_offset;
        const int expected = top_here ? rep.base_at(k) - 1 : 0;
        if (rep.digit_at(k) != expected) return std::nullopt;
    }
    std::size_t s = s0;
    while (s > 1) {
        const int d = rep.digit_at(s - 1);
        // Min at s extends to Max at s-1 through a zero, Max at s to Min through a top digit.
        if (kind == ExtremalTail::Min && d == 0) {
            kind = ExtremalTail::Max;
        } else if (kind == ExtremalTail::Max && d == rep.base_at(s - 1) - 1) {
            kind = ExtremalTail::Min;
        } else {
            break;
        }
        --s;
    }
    return PatternStart{s, kind};
}

// Earliest level from which a positive representation is all q_k - 1.
std::optional<std::size_t> positive_max_run_start(const Representation& rep) {
    if (rep.tail != TailKind::Periodic) return std::nullopt;
    const std::size_t s0 = rep.periodic_start() + 1;
    for (std::size_t k = s0; k < s0 + rep.joint_period(); ++k)
        if (rep.digit_at(k) != rep.base_at(k) - 1) return std::nullopt;
    std::size_t s = s0;
    while (s > 1 && rep.digit_at(s - 1) == rep.base_at(s - 1) - 1) --s;
    return s;
}

std::vector<int> prefix_digits(const Representation& rep, std::size_t n) {
    std::vector<int> out;
    out.reserve(n);
    for (std::size_t k = 1; k <= n; ++k) out.push_back(rep.digit_at(k));
    return out;
}

}  // namespace

RationalPoint is_rational_point(const Representation& input) {
    validate_representation(input);
    const Representation rep = fold_zero_tail(input);
    RationalPoint none;
    if (rep.tail == TailKind::Truncated) return none;

    if (rep.polarity == Polarity::Positive) {
        if (rep.tail == TailKind::Zeros) {
            std::size_t last = rep.digits.size();
            while (last > 0 && rep.digits[last - 1] == 0) --last;
            if (last == 0) return none;
            std::vector<int> prefix = prefix_digits(rep, last);
            prefix.back() -= 1;
            return {true, with_extremal_tail(rep.spec, rep.polarity, prefix, ExtremalTail::Max), last};
        }
        const auto s = positive_max_run_start(rep);
        if (!s || *s == 1) return none;
        std::vector<int> prefix = prefix_digits(rep, *s - 1);
        prefix.back() += 1;
        return {true, Representation::finite(rep.spec, rep.polarity, prefix), *s - 1};
    }

    const auto start = signed_pattern_start(rep);
    if (!start || start->start == 1) return none;
    const std::size_t m = start->start - 1;
    std::vector<int> prefix = prefix_digits(rep, m);
    if (start->kind == ExtremalTail::Min) {
        prefix.back() -= 1;
        return {true, with_extremal_tail(rep.spec, rep.polarity, prefix, ExtremalTail::Max), m};
    }
    prefix.back() += 1;
    return {true, with_extremal_tail(rep.spec, rep.polarity, prefix, ExtremalTail::Min), m};
}

bool is_canonical(const Representation& input) {
    validate_representation(input);
    const Representation rep = fold_zero_tail(input);
    if (rep.polarity == Polarity::Positive) {
        const auto s = positive_max_run_start(rep);
        return !(s && *s > 1);
    }
    const auto start = signed_pattern_start(rep);
    return !(start && start->start > 1 && start->kind == ExtremalTail::Max);
}

Representation normalize(const Representation& input) {
    Representation rep = fold_zero_tail(input);
    if (is_canonical(rep)) return rep;
    return *is_rational_point(rep).other;
}

std::pair<Enclosure, Enclosure> cylinder_interval(const Cylinder& cyl) {
    if (cyl.base.empty()) throw std::invalid_argument("cylinder rank must be >= 1");
    const auto lo_rep = with_extremal_tail(cyl.spec, cyl.polarity, cyl.base, ExtremalTail::Min);
    const auto hi_rep = with_extremal_tail(cyl.spec, cyl.polarity, cyl.base, ExtremalTail::Max);
    validate_representation(lo_rep);
    const Rational a = decode_exact(lo_rep);
    const Rational b = decode_exact(hi_rep);
    return {Enclosure::point(min(a, b)), Enclosure::point(max(a, b))};
}

Representation shift(const Representation& rep, std::size_t n) {
    const std::size_t m = rep.digits.size();
    Representation out{shifted(rep.spec, n), rep.polarity, {}, rep.tail, rep.tail_digits};
    if (n <= m) {
        out.digits.assign(rep.digits.begin() + static_cast<std::ptrdiff_t>(n), rep.digits.end());
        return out;
    }
    switch (rep.tail) {
        case TailKind::Truncated:
            throw std::out_of_range("cannot shift " + std::to_string(n) + " digits past a truncated prefix of " +
                                    std::to_string(m));
        case TailKind::Zeros: return out;
        case TailKind::Periodic: {
            const std::size_t t = rep.tail_digits.size();
            const std::size_t r = (n - m) % t;
            out.tail_digits.clear();
            for (std::size_t i = 0; i < t; ++i) out.tail_digits.push_back(rep.tail_digits[(r + i) % t]);
            return out;
        }
    }
    return out;
}

namespace {

std::vector<int> parse_digit_list(std::string_view s) {
    std::vector<int> out;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw std::invalid_argument("empty digit in digit list");
        if (!std::all_of(cur.begin(), cur.end(), [](unsigned char c) { return std::isdigit(c); }))
            throw std::invalid_argument("malformed digit '" + cur + "'");
        if (cur.size() > 9) throw std::invalid_argument("digit too large '" + cur + "'");
        out.push_back(std::stoi(cur));
        cur.clear();
    };
    bool any = false;
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        any = true;
        if (c == ',')
            flush();
        else
            cur.push_back(c);
    }
    if (any) flush();
    return out;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

}  // namespace

DigitText parse_digit_text(std::string_view text) {
    DigitText out;
    const auto bar = text.find('|');
    out.digits = parse_digit_list(text.substr(0, bar));
    if (bar == std::string_view::npos) return out;
    std::string_view rest = text.substr(bar + 1);
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front()))) rest.remove_prefix(1);
    while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) rest.remove_suffix(1);
    if (rest.empty()) return out;
    if (rest == "..." || rest == "?") {
        out.tail = TailKind::Truncated;
        return out;
    }
    out.tail = TailKind::Periodic;
    out.tail_digits = parse_digit_list(rest);
    return out;
}

std::string format_digits(const Representation& rep) {
    std::string s = join(rep.digits);
    if (rep.tail == TailKind::Periodic) s += "|" + join(rep.tail_digits);
    if (rep.tail == TailKind::Truncated) s += "|...";
    return s;
}

Representation from_text(const BaseSpec& spec, Polarity p, std::string_view text) {
    DigitText t = parse_digit_text(text);
    Representation rep{spec, p, std::move(t.digits), t.tail, std::move(t.tail_digits)};
    validate_representation(rep);
    return rep;
}

}  // namespace cantor

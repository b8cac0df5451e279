#include "cantor/salem.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>

namespace cantor {

SalemMatrix SalemMatrix::constant(std::vector<Rational> column) { return {{std::move(column)}, 0}; }

const std::vector<Rational>& SalemMatrix::column(std::size_t n) const {
    if (n == 0) throw std::out_of_range("matrix levels are indexed from 1");
    if (period_start >= columns.size()) throw std::logic_error("salem matrix has an empty period");
    if (n <= columns.size()) return columns[n - 1];
    return columns[period_start + (n - 1 - period_start) % period_length()];
}

Rational SalemMatrix::bound() const {
    Rational b(0);
    for (const auto& col : columns)
        for (const auto& v : col) b = max(b, v.abs());
    return b;
}

BaseSpec SalemMatrix::spec() const {
    BaseSpec s;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        const int size = static_cast<int>(columns[i].size());
        (i < period_start ? s.preperiod : s.period).push_back(size);
    }
    s.cap = s.max_base();
    return s;
}

std::vector<MatrixViolation> validate_matrix(const SalemMatrix& p) {
    std::vector<MatrixViolation> out;
    if (p.columns.empty() || p.period_start >= p.columns.size()) {
        out.push_back({3, 0, std::nullopt, "empty period: period_start must index an existing column"});
        return out;
    }
    for (std::size_t c = 0; c < p.columns.size(); ++c) {
        const std::size_t level = c + 1;
        const auto& col = p.columns[c];
        const std::string at = "level " + std::to_string(level);
        if (col.size() < 2) {
            out.push_back({2, level, std::nullopt, at + ": column needs at least 2 entries"});
            continue;
        }
        Rational sum(0);
        for (std::size_t i = 0; i < col.size(); ++i) {
            if (col[i] <= Rational(-1) || col[i] >= Rational(1))
                out.push_back({1, level, i, at + ": p_" + std::to_string(i) + " = " + col[i].str() + " not in (-1, 1)"});
            sum += col[i];
        }
        if (sum != Rational(1)) out.push_back({2, level, std::nullopt, at + ": column sums to " + sum.str()});
        Rational b(0);
        for (std::size_t i = 1; i < col.size(); ++i) {
            b += col[i - 1];
            if (b <= Rational(0) || b >= Rational(1))
                out.push_back({4, level, i, at + ": beta_" + std::to_string(i) + " = " + b.str() + " not in (0, 1)"});
        }
    }
    if (p.bound() >= Rational(1))
        out.push_back({3, 0, std::nullopt, "max |p| = " + p.bound().str() + " is not < 1, products need not vanish"});
    return out;
}

void require_valid_matrix(const SalemMatrix& p) {
    const auto violations = validate_matrix(p);
    if (violations.empty()) return;
    std::string msg = "invalid salem matrix:";
    for (const auto& v : violations) msg += " [" + std::to_string(v.condition) + "] " + v.message + ";";
    throw std::invalid_argument(msg);
}

SalemMatrix parse_salem_matrix_json(std::string_view json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("salem matrix is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("salem matrix must be a JSON object");
    for (const auto& [key, value] : j.items())
        if (key != "columns" && key != "period_start")
            throw std::invalid_argument("unknown salem matrix field '" + key + "'");
    if (!j.contains("columns") || !j["columns"].is_array())
        throw std::invalid_argument("salem matrix needs a \"columns\" array");
    SalemMatrix p;
    for (const auto& col : j["columns"]) {
        if (!col.is_array()) throw std::invalid_argument("each column must be an array");
        std::vector<Rational> c;
        for (const auto& v : col) {
            if (v.is_string())
                c.push_back(Rational::parse(v.get<std::string>()));
            else if (v.is_number())
                c.push_back(Rational::parse(v.dump()));
            else
                throw std::invalid_argument("matrix entries must be numbers or rational strings");
        }
        p.columns.push_back(std::move(c));
    }
    if (j.contains("period_start")) {
        if (!j["period_start"].is_number_unsigned()) throw std::invalid_argument("period_start must be a nonnegative integer");
        p.period_start = j["period_start"].get<std::size_t>();
    }
    if (p.columns.empty() || p.period_start >= p.columns.size())
        throw std::invalid_argument("period_start must index an existing column");
    return p;
}

std::string salem_matrix_to_json(const SalemMatrix& p) {
    nlohmann::json cols = nlohmann::json::array();
    for (const auto& col : p.columns) {
        nlohmann::json c = nlohmann::json::array();
        for (const auto& v : col) c.push_back(v.str());
        cols.push_back(c);
    }
    nlohmann::json j;
    j["columns"] = cols;
    j["period_start"] = p.period_start;
    return j.dump();
}

std::string to_string(SwapMode m) {
    switch (m) {
        case SwapMode::Plain: return "plain";
        case SwapMode::EvenSwap: return "even-swap";
        case SwapMode::OddSwap: return "odd-swap";
    }
    return "?";
}

SwapMode parse_swap_mode(std::string_view text) {
    if (text == "plain" || text == "F") return SwapMode::Plain;
    if (text == "even-swap" || text == "even") return SwapMode::EvenSwap;
    if (text == "odd-swap" || text == "odd") return SwapMode::OddSwap;
    throw std::invalid_argument("unknown salem mode '" + std::string(text) + "' (plain, even-swap, odd-swap)");
}

Polarity mode_polarity(SwapMode m) {
    switch (m) {
        case SwapMode::Plain: return Polarity::Positive;
        case SwapMode::EvenSwap: return Polarity::Alternating;
        case SwapMode::OddSwap: return Polarity::NegaConstant;
    }
    return Polarity::Positive;
}

Rational beta(const SalemMatrix& p, int i, std::size_t n) {
    const auto& col = p.column(n);
    if (i < 0 || static_cast<std::size_t>(i) >= col.size())
        throw std::invalid_argument("digit " + std::to_string(i) + " out of range at level " + std::to_string(n));
    Rational b(0);
    for (int j = 0; j < i; ++j) b += col[static_cast<std::size_t>(j)];
    return b;
}

int reflect_digit(const SalemMatrix& p, SwapMode mode, int i, std::size_t n) {
    const bool even = n % 2 == 0;
    const bool swap = (mode == SwapMode::EvenSwap && even) || (mode == SwapMode::OddSwap && !even);
    return swap ? p.size_at(n) - 1 - i : i;
}

namespace {

void check_compatible(const Representation& x, const SalemMatrix& p, SwapMode mode) {
    if (x.polarity != mode_polarity(mode))
        throw std::invalid_argument("mode " + to_string(mode) + " reads " + to_string(mode_polarity(mode)) +
                                    " digits, got " + to_string(x.polarity));
    validate_representation(x);
    const std::size_t horizon = std::max(x.base_preperiod(), p.preperiod_length()) +
                                lcm_size(x.base_period(), p.period_length());
    for (std::size_t k = 1; k <= horizon; ++k)
        if (x.base_at(k) != p.size_at(k))
            throw std::invalid_argument("level " + std::to_string(k) + ": matrix column has " +
                                        std::to_string(p.size_at(k)) + " entries but the base is " +
                                        std::to_string(x.base_at(k)));
}

SeriesTerm salem_term(const Representation& x, const SalemMatrix& p, SwapMode mode, std::size_t k) {
    const int r = reflect_digit(p, mode, x.digit_at(k), k);
    return {beta(p, r, k), p.column(k)[static_cast<std::size_t>(r)]};
}

}  // namespace

Enclosure eval_salem(const Representation& x, const SalemMatrix& p, SwapMode mode, std::optional<std::size_t> m) {
    require_valid_matrix(p);
    check_compatible(x, p, mode);
    if (!m && x.tail != TailKind::Truncated) {
        const std::size_t start = std::max(x.periodic_start(), p.preperiod_length());
        std::size_t period = lcm_size(x.joint_period(), p.period_length());
        if (mode != SwapMode::Plain) period = lcm_size(period, 2);
        return Enclosure::point(eventually_periodic_sum(
            start, period, [&](std::size_t k) { return salem_term(x, p, mode, k); }));
    }
    const std::size_t levels = m.value_or(x.digits.size());
    if (x.tail == TailKind::Truncated && levels > x.digits.size())
        throw std::invalid_argument("truncation level " + std::to_string(levels) + " exceeds the " +
                                    std::to_string(x.digits.size()) + " known digits");
    const Rational contraction = Rational(1) / (Rational(1) - p.bound());
    Rational sum(0);
    Rational prod(1);
    Enclosure acc{-contraction, contraction};
    for (std::size_t k = 1; k <= levels; ++k) {
        const SeriesTerm t = salem_term(x, p, mode, k);
        sum += t.coeff * prod;
        prod *= t.ratio;
        const Rational radius = prod.abs() * contraction;
        acc = {max(acc.lo, sum - radius), min(acc.hi, sum + radius)};
    }
    return acc;
}

Rational example2_decode(const Representation& x) {
    if (x.tail == TailKind::Truncated) throw std::invalid_argument("example2_decode needs an exact tail");
    validate_representation(x);
    return eventually_periodic_sum(x.periodic_start(), lcm_size(x.joint_period(), 2), [&](std::size_t k) {
        const int q = x.base_at(k);
        const int sign = k % 2 == 1 ? 1 : -1;
        return SeriesTerm{Rational(sign * (1 + x.digit_at(k)), q), Rational(1, q)};
    });
}

Rational mode_argument(const Representation& x, SwapMode mode) {
    if (mode == SwapMode::EvenSwap) return example2_decode(x);
    return decode_exact(x);
}

std::string to_string(ProductLimit c) {
    switch (c) {
        case ProductLimit::ToZero: return "to_zero";
        case ProductLimit::Nonzero: return "nonzero";
        case ProductLimit::Divergent: return "divergent";
        case ProductLimit::Oscillating: return "oscillating";
    }
    return "?";
}

namespace {

struct ProductClass {
    ProductLimit limit;
    Rational period_product;
};

ProductClass classify_product(const SalemMatrix& p, const std::function<Rational(const std::vector<Rational>&)>& pick) {
    Rational pre(1);
    for (std::size_t c = 0; c < p.period_start; ++c)
        pre *= Rational(static_cast<long>(p.columns[c].size())) * pick(p.columns[c]);
    Rational r(1);
    for (std::size_t c = p.period_start; c < p.columns.size(); ++c)
        r *= Rational(static_cast<long>(p.columns[c].size())) * pick(p.columns[c]);
    ProductLimit limit;
    if (pre.is_zero() || r.abs() < Rational(1))
        limit = ProductLimit::ToZero;
    else if (r == Rational(1))
        limit = ProductLimit::Nonzero;
    else if (r == Rational(-1))
        limit = ProductLimit::Oscillating;
    else
        limit = ProductLimit::Divergent;
    return {limit, r};
}

}  // namespace

TheoremReport theorem_conditions(const SalemMatrix& p) {
    require_valid_matrix(p);
    TheoremReport out;
    out.alternation = true;
    for (std::size_t c = 0; c < p.columns.size() && out.alternation; ++c) {
        const auto& col = p.columns[c];
        for (std::size_t e = 1; e < col.size(); ++e) {
            if ((col[e] * col[e - 1]).sign() >= 0) {
                out.alternation = false;
                out.alternation_failure_level = c + 1;
                break;
            }
        }
    }
    const auto first = classify_product(p, [](const std::vector<Rational>& col) { return col.front(); });
    const auto last = classify_product(p, [](const std::vector<Rational>& col) { return col.back(); });
    out.first_column = first.limit;
    out.last_column = last.limit;
    out.first_period_product = first.period_product;
    out.last_period_product = last.period_product;
    out.limits_nonzero = first.limit != ProductLimit::ToZero && last.limit != ProductLimit::ToZero;
    out.extra_condition = true;
    for (const auto& col : p.columns) {
        const Rational v = Rational(static_cast<long>(col.size())) * col.back();
        out.extra_condition = out.extra_condition && (v >= Rational(1) || v <= Rational(1));
    }
    out.swapped_hypotheses = out.alternation && out.limits_nonzero;
    out.plain_hypotheses = out.swapped_hypotheses && out.extra_condition;
    return out;
}

std::vector<QuotientSample> difference_quotient_probe(const SalemMatrix& p, SwapMode mode, const Representation& x0,
                                                      std::size_t depth) {
    if (x0.tail == TailKind::Truncated) throw std::invalid_argument("probe needs an exact tail at x0");
    check_compatible(x0, p, mode);
    const Rational f0 = eval_salem(x0, p, mode).lo;
    const Rational a0 = mode_argument(x0, mode);
    std::vector<QuotientSample> out;
    for (std::size_t n = 1; n <= depth; ++n) {
        const std::size_t level = n + 1;
        Representation xn = x0;
        std::size_t known = xn.digits.size();
        const std::size_t step = xn.tail == TailKind::Periodic ? xn.tail_digits.size() : 1;
        while (known < level) known += step;
        xn.digits.clear();
        for (std::size_t k = 1; k <= known; ++k) xn.digits.push_back(x0.digit_at(k));
        int& d = xn.digits[level - 1];
        d = d + 1 < xn.base_at(level) ? d + 1 : d - 1;
        QuotientSample s;
        s.n = n;
        s.dx = mode_argument(xn, mode) - a0;
        if (s.dx.is_zero()) throw std::invalid_argument("approach point " + std::to_string(n) + " coincides with x0");
        s.dy = eval_salem(xn, p, mode).lo - f0;
        s.quotient = s.dy / s.dx;
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<SalemCell> salem_graph_cells(const SalemMatrix& p, std::size_t depth, std::uint64_t max_cells) {
    require_valid_matrix(p);
    if (depth == 0) throw std::invalid_argument("depth must be >= 1");
    const BaseSpec spec = p.spec();
    require_budget(base_product(spec, depth), max_cells, "salem graph at depth " + std::to_string(depth));
    bool positive = true;
    for (const auto& col : p.columns)
        for (const auto& v : col) positive = positive && v.sign() > 0;
    const Rational contraction = Rational(1) / (Rational(1) - p.bound());

    std::vector<SalemCell> out;
    std::vector<int> base;
    std::function<void(std::size_t, const Rational&, const Rational&, const Rational&, const Rational&)> walk =
        [&](std::size_t n, const Rational& xs, const Rational& width, const Rational& ys, const Rational& prod) {
            if (n > depth) {
                // Past the prefix, F adds prod * G with G the function of the shifted matrix.
                Enclosure y = positive ? Enclosure{min(ys, ys + prod), max(ys, ys + prod)}
                                       : Enclosure{ys - prod.abs() * contraction, ys + prod.abs() * contraction};
                out.push_back({base, {xs, xs + width}, y});
                return;
            }
            const auto& col = p.column(n);
            const Rational w = width / Rational(static_cast<long>(col.size()));
            Rational b(0);
            for (std::size_t d = 0; d < col.size(); ++d) {
                base.push_back(static_cast<int>(d));
                walk(n + 1, xs + w * Rational(static_cast<long>(d)), w, ys + b * prod, prod * col[d]);
                base.pop_back();
                b += col[d];
            }
        };
    walk(1, Rational(0), Rational(1), Rational(0), Rational(1));
    return out;
}

}  // namespace cantor

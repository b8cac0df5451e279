#include "cantor/fractalh.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace cantor {

std::vector<int> FractalParams::theta() const {
    std::vector<int> out;
    for (int a = 1; a < q; ++a)
        if (a != u) out.push_back(a);
    return out;
}

void require_valid(const FractalParams& p) {
    if (p.q < 4) throw std::invalid_argument("q must be >= 4, got " + std::to_string(p.q));
    if (p.u < 0 || p.u >= p.q)
        throw std::invalid_argument("u must lie in {0, ..., q-1}, got " + std::to_string(p.u));
}

int RunDigits::alpha_at(std::size_t n) const {
    if (n == 0) throw std::out_of_range("alphas are indexed from 1");
    if (n <= alphas.size()) return alphas[n - 1];
    if (tail == RunTail::Truncated) throw std::out_of_range("alpha " + std::to_string(n) + " is past the prefix");
    return tail_alphas[(n - alphas.size() - 1) % tail_alphas.size()];
}

void validate_run_digits(const RunDigits& x) {
    require_valid(x.params);
    auto check = [&](int a) {
        if (!x.params.allows(a))
            throw std::invalid_argument("alpha " + std::to_string(a) + " is not in {1..q-1} \\ {u} for q=" +
                                        std::to_string(x.params.q) + ", u=" + std::to_string(x.params.u));
    };
    for (int a : x.alphas) check(a);
    if (x.tail == RunTail::Periodic) {
        if (x.tail_alphas.empty()) throw std::invalid_argument("periodic alpha tail must be nonempty");
        for (int a : x.tail_alphas) check(a);
    }
}

namespace {

void append_run(std::vector<int>& raw, int alpha, int u) {
    raw.insert(raw.end(), static_cast<std::size_t>(alpha - 1), u);
    raw.push_back(alpha);
}

Rational neg_q_power(int q, long e) {
    const Rational p = Rational(-q).pow(static_cast<unsigned long>(e < 0 ? -e : e));
    return e < 0 ? p.reciprocal() : p;
}

// Nega-q cylinder of rank r whose prefix sums to s.
Enclosure nega_cylinder(const Rational& s, std::size_t r, int q) {
    const Rational scale = neg_q_power(q, -static_cast<long>(r));
    const Rational a = s + scale * Rational(-q, q + 1);
    const Rational b = s + scale * Rational(1, q + 1);
    return {min(a, b), max(a, b)};
}

}  // namespace

Representation expand_runs(const RunDigits& x) {
    validate_run_digits(x);
    Representation rep{BaseSpec::constant(x.params.q), Polarity::NegaConstant, {}, TailKind::Periodic, {}};
    for (int a : x.alphas) append_run(rep.digits, a, x.params.u);
    if (x.tail == RunTail::Truncated) {
        rep.tail = TailKind::Truncated;
        return rep;
    }
    for (int a : x.tail_alphas) append_run(rep.tail_digits, a, x.params.u);
    return rep;
}

RunParse parse_run_structure(const std::vector<int>& raw, const FractalParams& params) {
    require_valid(params);
    RunParse out;
    std::vector<int> alphas;
    std::size_t run = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const int d = raw[i];
        if (d < 0 || d >= params.q) {
            out.failure_position = i + 1;
            return out;
        }
        if (d == params.u) {
            ++run;
            if (static_cast<int>(run) + 1 > params.q - 1) {
                out.failure_position = i + 1;
                return out;
            }
            continue;
        }
        if (d != static_cast<int>(run) + 1 || !params.allows(d)) {
            out.failure_position = i + 1;
            return out;
        }
        alphas.push_back(d);
        run = 0;
    }
    out.alphas = std::move(alphas);
    out.pending_run = run;
    return out;
}

RunDigits parse_runs(const Representation& raw, const FractalParams& params) {
    require_valid(params);
    if (raw.polarity != Polarity::NegaConstant || raw.spec.cap != params.q)
        throw std::invalid_argument("run structure is read from nega-" + std::to_string(params.q) + " digits");
    RunDigits out{params, {}, RunTail::Periodic, {}};
    if (raw.tail == TailKind::Zeros) throw std::invalid_argument("a zeros tail is not in the run language");
    if (raw.tail == TailKind::Truncated) {
        const RunParse p = parse_run_structure(raw.digits, params);
        if (!p.member())
            throw std::invalid_argument("not in the run language at digit " + std::to_string(p.failure_position));
        out.alphas = *p.alphas;
        out.tail = RunTail::Truncated;
        return out;
    }
    // Walk alpha boundaries until one repeats its phase inside the raw tail.
    const std::size_t d = raw.digits.size();
    const std::size_t t = raw.tail_digits.size();
    std::map<std::size_t, std::size_t> seen;  // tail phase -> alpha index
    std::vector<int> alphas;
    std::size_t pos = 0;
    const std::size_t limit = d + t * (t + 1) * static_cast<std::size_t>(params.q) + 1;
    while (pos <= limit) {
        if (pos >= d) {
            const std::size_t phase = (pos - d) % t;
            auto [it, inserted] = seen.emplace(phase, alphas.size());
            if (!inserted) {
                out.alphas.assign(alphas.begin(), alphas.begin() + static_cast<std::ptrdiff_t>(it->second));
                out.tail_alphas.assign(alphas.begin() + static_cast<std::ptrdiff_t>(it->second), alphas.end());
                return out;
            }
        }
        std::size_t run = 0;
        while (true) {
            const std::size_t k = pos + run + 1;
            const int digit = raw.digit_at(k);
            if (digit == params.u) {
                ++run;
                if (static_cast<int>(run) + 1 > params.q - 1)
                    throw std::invalid_argument("not in the run language at digit " + std::to_string(k));
                continue;
            }
            if (digit != static_cast<int>(run) + 1 || !params.allows(digit))
                throw std::invalid_argument("not in the run language at digit " + std::to_string(k));
            alphas.push_back(digit);
            pos = k;
            break;
        }
    }
    throw std::logic_error("run parse did not close a cycle");
}

Representation h_forward(const RunDigits& x) {
    validate_run_digits(x);
    Representation y{BaseSpec::constant(x.params.q), Polarity::NegaConstant, x.alphas, TailKind::Periodic,
                     x.tail_alphas};
    if (x.tail == RunTail::Truncated) y.tail = TailKind::Truncated;
    return y;
}

Enclosure h_inverse_closed_form(const RunDigits& x) {
    validate_run_digits(x);
    const int q = x.params.q;
    const int u = x.params.u;
    const Rational base(-u, q + 1);
    if (x.tail == RunTail::Periodic) {
        return Enclosure::point(base + eventually_periodic_sum(x.alphas.size(), x.tail_alphas.size(), [&](std::size_t n) {
                                    const int a = x.alpha_at(n);
                                    const Rational r = neg_q_power(q, -a);
                                    return SeriesTerm{Rational(a - u) * r, r};
                                }));
    }
    Rational s = base;
    long exponent = 0;
    for (int a : x.alphas) {
        exponent += a;
        s += Rational(a - u) * neg_q_power(q, -exponent);
    }
    // |a - u| <= q - 1 and each later alpha adds at least 1 to the exponent.
    const Rational radius = neg_q_power(q, -exponent).abs();
    return {s - radius, s + radius};
}

HInverse h_inverse(const Representation& y, const FractalParams& params) {
    require_valid(params);
    if (y.polarity != Polarity::NegaConstant || y.spec.cap != params.q)
        throw std::invalid_argument("h inverse takes nega-" + std::to_string(params.q) + " digits");
    if (y.tail == TailKind::Zeros) throw std::domain_error("digit 0 is not in {1..q-1} \\ {u}");
    auto check = [&](int a) {
        if (!params.allows(a))
            throw std::domain_error("digit " + std::to_string(a) + " is not in {1..q-1} \\ {u}");
    };
    for (int a : y.digits) check(a);
    for (int a : y.tail_digits) check(a);
    HInverse out;
    out.x = {params, y.digits, y.tail == TailKind::Truncated ? RunTail::Truncated : RunTail::Periodic, y.tail_digits};
    out.raw_value = decode(expand_runs(out.x));
    out.closed_value = h_inverse_closed_form(out.x);
    return out;
}

std::string to_string(DimensionMethod m) {
    switch (m) {
        case DimensionMethod::MoranRoot: return "moran_root";
        case DimensionMethod::LogRatio: return "log_ratio";
        case DimensionMethod::BoxSlope: return "box_slope";
    }
    return "?";
}

namespace {

Rational moran_poly(const std::vector<int>& theta, const Rational& t) {
    Rational s(-1);
    Rational power(1);
    int e = 0;
    for (int p : theta) {
        for (; e < p; ++e) power *= t;
        s += power;
    }
    return s;
}

}  // namespace

DimensionResult dim_D(const FractalParams& params, const Rational& tol) {
    require_valid(params);
    if (tol.sign() <= 0) throw std::domain_error("tolerance must be positive");
    const std::vector<int> theta = params.theta();
    const Integer q = params.q;
    // t = q^{-a} turns the equation into a polynomial, increasing in t, with
    // its root in [1/2, 1).
    Rational t_tol = tol / Rational(8);
    Rational log_tol = tol / Rational(4);
    for (int attempt = 0; attempt < 8; ++attempt) {
        const Enclosure t = bisect_root([&](const Rational& x) { return moran_poly(theta, x); }, Rational(1, 2),
                                        Rational(1), t_tol);
        const Rational lo = log_bracket(q, t.hi.reciprocal(), log_tol).lo;
        const Rational hi = log_bracket(q, t.lo.reciprocal(), log_tol).hi;
        if (hi - lo <= tol) {
            DimensionResult out;
            out.value = {lo, hi};
            out.method = DimensionMethod::MoranRoot;
            long sum_p = 0;
            for (int p : theta) sum_p += p;
            // |d/da sum q^{-pa}| <= ln q * sum p <= (q - 1) sum p
            out.residual = Rational(sum_p * (params.q - 1)) * out.value.width() / Rational(2);
            out.t = t;
            return out;
        }
        t_tol /= Rational(2);
        log_tol /= Rational(2);
    }
    throw iteration_error("Moran enclosure did not reach the requested width");
}

bool moran_brackets_one(const FractalParams& params, const DimensionResult& r) {
    if (!r.t) return false;
    const std::vector<int> theta = params.theta();
    if (moran_poly(theta, r.t->hi).sign() < 0 || moran_poly(theta, r.t->lo).sign() > 0) return false;
    const Integer q = params.q;
    // q^{-a/b} >= t_hi  <=>  t_hi^b q^a <= 1 (and the reverse at the upper end)
    auto scaled = [&](const Rational& t, const Rational& alpha) {
        const Integer a = alpha.numerator();
        const unsigned long b = alpha.denominator().get_ui();
        Rational v = t.pow(b);
        const Rational qa = Rational(ipow(q, Integer(::abs(a)).get_ui()));
        return a.get_si() >= 0 ? v * qa : v / qa;
    };
    return scaled(r.t->hi, r.value.lo) <= Rational(1) && scaled(r.t->lo, r.value.hi) >= Rational(1);
}

DimensionResult dim_E(const FractalParams& params, const Rational& tol) {
    require_valid(params);
    DimensionResult out;
    out.value = log_bracket(Integer(params.q), Rational(params.tau()), tol);
    out.method = DimensionMethod::LogRatio;
    return out;
}

std::string to_string(Monotonicity m) {
    switch (m) {
        case Monotonicity::Decreasing: return "decreasing";
        case Monotonicity::Increasing: return "increasing";
        case Monotonicity::NonMonotone: return "non_monotone";
    }
    return "?";
}

Monotonicity monotonicity_class(const FractalParams& params) {
    require_valid(params);
    if (params.u <= 1) return Monotonicity::Decreasing;
    if (params.u >= params.q - 2) return Monotonicity::Increasing;
    return Monotonicity::NonMonotone;
}

std::string to_string(ScanVerdict v) {
    switch (v) {
        case ScanVerdict::Consistent: return "consistent";
        case ScanVerdict::Inconsistent: return "inconsistent";
        case ScanVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

RunDigits random_run_digits(const FractalParams& params, std::mt19937_64& rng) {
    const std::vector<int> theta = params.theta();
    std::uniform_int_distribution<std::size_t> pick(0, theta.size() - 1);
    std::uniform_int_distribution<int> pre_len(0, 3);
    std::uniform_int_distribution<int> per_len(1, 3);
    RunDigits x{params, {}, RunTail::Periodic, {}};
    for (int i = pre_len(rng); i > 0; --i) x.alphas.push_back(theta[pick(rng)]);
    for (int i = per_len(rng); i > 0; --i) x.tail_alphas.push_back(theta[pick(rng)]);
    return x;
}

WitnessScan monotonicity_witness_scan(const FractalParams& params, std::size_t samples, std::uint64_t seed) {
    require_valid(params);
    WitnessScan out;
    out.expected = monotonicity_class(params);
    std::mt19937_64 rng(seed);
    std::size_t attempts = 0;
    while (out.samples < samples && attempts < 4 * samples + 16) {
        ++attempts;
        const RunDigits a = random_run_digits(params, rng);
        const RunDigits b = random_run_digits(params, rng);
        const Rational xa = decode_exact(expand_runs(a));
        const Rational xb = decode_exact(expand_runs(b));
        if (xa == xb) continue;
        const Rational ya = decode_exact(h_forward(a));
        const Rational yb = decode_exact(h_forward(b));
        ++out.samples;
        const int s = (xb - xa).sign() * (yb - ya).sign();
        if (s > 0) {
            ++out.ordered;
            if (!out.ordered_example) out.ordered_example = OrderPair{a, b, xa, xb, ya, yb};
        } else if (s < 0) {
            ++out.anti_ordered;
            if (!out.anti_example) out.anti_example = OrderPair{a, b, xa, xb, ya, yb};
        }
    }
    switch (out.expected) {
        case Monotonicity::Decreasing:
            out.verdict = out.ordered == 0 ? ScanVerdict::Consistent : ScanVerdict::Inconsistent;
            break;
        case Monotonicity::Increasing:
            out.verdict = out.anti_ordered == 0 ? ScanVerdict::Consistent : ScanVerdict::Inconsistent;
            break;
        case Monotonicity::NonMonotone:
            out.verdict = out.ordered > 0 && out.anti_ordered > 0 ? ScanVerdict::Consistent : ScanVerdict::Inconclusive;
            break;
    }
    return out;
}

Enclosure shift_commutation_residual(const RunDigits& x, std::size_t n) {
    validate_run_digits(x);
    if (x.tail == RunTail::Truncated && n > x.alphas.size())
        throw std::invalid_argument("shift past the known alphas");
    std::size_t raw_shift = 0;
    Rational prefix(0);
    for (std::size_t k = 1; k <= n; ++k) {
        raw_shift += static_cast<std::size_t>(x.alpha_at(k));
        prefix += Rational(x.alpha_at(k)) * neg_q_power(x.params.q, -static_cast<long>(k));
    }
    const RunDigits shifted_x = parse_runs(shift(expand_runs(x), raw_shift), x.params);
    const Enclosure lhs = decode(h_forward(shifted_x));
    const Enclosure rhs = neg_q_power(x.params.q, static_cast<long>(n)) *
                          (decode(h_forward(x)) - Enclosure::point(prefix));
    return lhs - rhs;
}

Integer count_graph_squares(const FractalParams& params, std::size_t m, std::uint64_t max_cells) {
    require_valid(params);
    if (m == 0) throw std::invalid_argument("rank must be >= 1");
    require_budget(ipow(params.tau(), m), max_cells, "square count at rank " + std::to_string(m));
    const std::vector<int> theta = params.theta();
    Integer count = 0;
    std::function<void(std::size_t)> walk = [&](std::size_t depth) {
        if (depth == m) {
            ++count;
            return;
        }
        for (std::size_t i = 0; i < theta.size(); ++i) walk(depth + 1);
    };
    walk(0);
    return count;
}

std::vector<Box> h_graph_boxes(const FractalParams& params, std::size_t m, std::uint64_t max_cells) {
    require_valid(params);
    if (m == 0) throw std::invalid_argument("rank must be >= 1");
    require_budget(ipow(params.tau(), m), max_cells, "graph boxes at rank " + std::to_string(m));
    const int q = params.q;
    const std::vector<int> theta = params.theta();
    std::vector<Box> out;
    std::function<void(std::size_t, std::size_t, const Rational&, const Rational&)> walk =
        [&](std::size_t depth, std::size_t raw_len, const Rational& xs, const Rational& ys) {
            if (depth == m) {
                out.push_back({nega_cylinder(xs, raw_len, q), nega_cylinder(ys, m, q)});
                return;
            }
            for (int a : theta) {
                Rational x = xs;
                for (int k = 1; k < a; ++k) x += Rational(params.u) * neg_q_power(q, -static_cast<long>(raw_len + k));
                x += Rational(a) * neg_q_power(q, -static_cast<long>(raw_len + a));
                const Rational y = ys + Rational(a) * neg_q_power(q, -static_cast<long>(depth + 1));
                walk(depth + 1, raw_len + static_cast<std::size_t>(a), x, y);
            }
        };
    walk(0, 0, Rational(0), Rational(0));
    std::sort(out.begin(), out.end(), [](const Box& a, const Box& b) { return a.x.lo < b.x.lo; });
    return out;
}

Integer count_grid_cells(const std::vector<Box>& boxes, const Rational& origin_x, const Rational& origin_y,
                         const Rational& side, std::uint64_t max_cells) {
    if (side.sign() <= 0) throw std::invalid_argument("grid side must be positive");
    // Cells are half-open; a degenerate interval sits in the cell of its point.
    auto index_range = [&](const Enclosure& e, const Rational& origin) {
        const Rational a = (e.lo - origin) / side;
        const Rational b = (e.hi - origin) / side;
        const Integer lo = a.floor();
        const Integer hi = e.is_exact() ? lo : std::max<Integer>(lo, Integer(b.ceil() - 1));
        return std::make_pair(lo, hi);
    };
    auto key_less = [](const std::pair<Integer, Integer>& l, const std::pair<Integer, Integer>& r) {
        const int c = cmp(l.first, r.first);
        return c != 0 ? c < 0 : cmp(l.second, r.second) < 0;
    };
    std::set<std::pair<Integer, Integer>, decltype(key_less)> seen(key_less);
    for (const Box& box : boxes) {
        const auto [i0, i1] = index_range(box.x, origin_x);
        const auto [j0, j1] = index_range(box.y, origin_y);
        require_budget(Integer(seen.size()) + (i1 - i0 + 1) * (j1 - j0 + 1), max_cells, "grid count");
        for (Integer i = i0; i <= i1; ++i)
            for (Integer j = j0; j <= j1; ++j) seen.emplace(i, j);
    }
    return Integer(std::to_string(seen.size()));
}

Enclosure box_slope(const std::vector<std::pair<std::size_t, Integer>>& counts, int base, const Rational& tol) {
    if (counts.size() < 2) throw std::invalid_argument("box slope needs counts at two ranks");
    const auto& [m1, n1] = counts.front();
    const auto& [m2, n2] = counts.back();
    if (m2 <= m1) throw std::invalid_argument("box slope needs increasing ranks");
    if (n1 <= 0 || n2 <= 0) throw std::invalid_argument("box counts must be positive");
    const Rational span(static_cast<long>(m2 - m1));
    const Rational ratio(n2, n1);
    Enclosure log = ratio >= Rational(1) ? log_bracket(Integer(base), ratio, tol * span)
                                         : -log_bracket(Integer(base), ratio.reciprocal(), tol * span);
    return {log.lo / span, log.hi / span};
}

BoxDimension box_dim_estimate(const FractalParams& params, std::size_t m_lo, std::size_t m_hi, const Rational& tol,
                              std::uint64_t max_cells) {
    require_valid(params);
    if (m_lo == 0 || m_hi <= m_lo) throw std::invalid_argument("need 1 <= m_lo < m_hi");
    const Rational origin(-params.q, params.q + 1);
    BoxDimension out;
    for (std::size_t m = m_lo; m <= m_hi; ++m) {
        const auto boxes = h_graph_boxes(params, m, max_cells);
        const Rational side(Integer(1), ipow(params.q, m));
        out.counts.emplace_back(m, count_grid_cells(boxes, origin, origin, side, max_cells));
    }
    out.result.value = box_slope(out.counts, params.q, tol);
    out.result.method = DimensionMethod::BoxSlope;
    return out;
}

std::vector<ProbeSample> nondiff_probe_h(const std::vector<int>& prefix, int c, int alt, const FractalParams& params,
                                         const std::vector<int>& tail) {
    require_valid(params);
    if (!params.allows(c) || !params.allows(alt) || c == alt)
        throw std::invalid_argument("c and alt must be distinct digits of {1..q-1} \\ {u}");
    const std::vector<int> tail_alphas = tail.empty() ? std::vector<int>{params.theta().front()} : tail;
    const int q = params.q;
    std::vector<ProbeSample> out;
    long prefix_sum = 0;
    for (std::size_t n = 1; n <= prefix.size() + 1; ++n) {
        std::vector<int> head(prefix.begin(), prefix.begin() + static_cast<std::ptrdiff_t>(n - 1));
        RunDigits x0{params, head, RunTail::Periodic, tail_alphas};
        RunDigits xn = x0;
        x0.alphas.push_back(c);
        xn.alphas.push_back(alt);
        const Rational dx = decode_exact(expand_runs(xn)) - decode_exact(expand_runs(x0));
        const Rational dy = decode_exact(h_forward(xn)) - decode_exact(h_forward(x0));
        ProbeSample s;
        s.n = n;
        s.quotient = dy / dx;
        s.predicted_exponent = prefix_sum + alt + c - static_cast<long>(n);
        const Rational denom = Rational(alt) * neg_q_power(q, c) - Rational(c) * neg_q_power(q, alt);
        s.predicted = Rational(alt - c) / denom * neg_q_power(q, s.predicted_exponent);
        out.push_back(std::move(s));
        if (n <= prefix.size()) prefix_sum += prefix[n - 1];
    }
    return out;
}

}  // namespace cantor

#include "cantor/mapf.hpp"

#include <algorithm>
#include <functional>

namespace cantor {

namespace {

void require_alternating(const Representation& rep) {
    if (rep.polarity != Polarity::Alternating)
        throw std::invalid_argument("f acts on alternating Cantor representations, got " + to_string(rep.polarity));
}

void require_exact(const Representation& rep) {
    if (rep.tail == TailKind::Truncated) throw std::invalid_argument("operation needs a zeros or periodic tail");
}

// sum_{n<=k} e_n / (-q)^n
Rational nega_prefix(const Representation& rep, std::size_t k) {
    const Rational step(-1, rep.spec.cap);
    Rational sum(0);
    Rational scale(1);
    for (std::size_t n = 1; n <= k; ++n) {
        scale *= step;
        const int d = rep.digit_at(n);
        if (d != 0) sum += Rational(d) * scale;
    }
    return sum;
}

Rational neg_cap_power(int cap, std::size_t k) {
    return Rational(-cap).pow(static_cast<unsigned long>(k));
}

// f contribution of the extremal tail starting at level m + 1, scaled as it
// sits in the full series.
Rational extremal_tail_image(const BaseSpec& spec, std::size_t m, ExtremalTail which) {
    return f_digitwise(with_extremal_tail(spec, Polarity::Alternating, std::vector<int>(m, 0), which));
}

Rational extremal_tail_value(const BaseSpec& spec, std::size_t m, ExtremalTail which) {
    return decode_exact(with_extremal_tail(spec, Polarity::Alternating, std::vector<int>(m, 0), which));
}

}  // namespace

Rational f_digitwise(const Representation& rep) {
    require_exact(rep);
    const std::size_t m = rep.digits.size();
    if (rep.tail == TailKind::Zeros) return nega_prefix(rep, m);
    const Rational step(-1, rep.spec.cap);
    return eventually_periodic_sum(m, rep.tail_digits.size(), [&](std::size_t k) {
        return SeriesTerm{Rational(rep.digit_at(k)) * step, step};
    });
}

Enclosure eval_f(const Representation& rep) {
    require_alternating(rep);
    validate_representation(rep);
    if (!is_canonical(rep))
        throw std::invalid_argument("f is defined on canonical representations; got the decremented dual form " +
                                    format_digits(rep));
    if (rep.tail != TailKind::Truncated) return Enclosure::point(f_digitwise(rep));
    const std::size_t m = rep.digits.size();
    const Rational s = nega_prefix(rep, m);
    const Rational a = s + extremal_tail_image(rep.spec, m, ExtremalTail::Min);
    const Rational b = s + extremal_tail_image(rep.spec, m, ExtremalTail::Max);
    return {min(a, b), max(a, b)};
}

Enclosure symmetry_residual(const Representation& input) {
    require_alternating(input);
    require_exact(input);
    validate_representation(input);
    const Representation x = normalize(input);

    // a0 - x as positive Cantor digits
    Representation c{x.spec, Polarity::Positive, {}, TailKind::Periodic, {}};
    auto complement = [&](std::size_t k) { return k % 2 == 1 ? x.digit_at(k) : x.base_at(k) - 1 - x.digit_at(k); };
    const std::size_t start = x.periodic_start();
    const std::size_t period = x.joint_period();
    for (std::size_t k = 1; k <= start; ++k) c.digits.push_back(complement(k));
    for (std::size_t k = start + 1; k <= start + period; ++k) c.tail_digits.push_back(complement(k));

    const Rational a0v = a0_exact(x.spec);
    if (decode_exact(c) != a0v - decode_exact(x))
        throw std::logic_error("complement digits do not represent a0 - x");

    const Rational step(1, x.spec.cap);
    const Rational f_complement = eventually_periodic_sum(start, period, [&](std::size_t k) {
        return SeriesTerm{Rational(c.digit_at(k)) * step, step};
    });
    const Rational f_a0 = f_digitwise(with_extremal_tail(x.spec, Polarity::Alternating, {}, ExtremalTail::Max));
    return Enclosure::point(f_digitwise(x) + f_complement - f_a0);
}

Enclosure commute_shift_residual(const Representation& input, std::size_t k) {
    require_alternating(input);
    validate_representation(input);
    const Representation x = normalize(input);
    const Enclosure lhs = eval_f(shift(x, k));
    const Enclosure y = eval_f(x);
    const Rational scale = neg_cap_power(x.spec.cap, k);
    const Enclosure rhs = scale * (y - Enclosure::point(nega_prefix(x, k)));
    return lhs - rhs;
}

std::string to_string(RangeClass c) {
    switch (c) {
        case RangeClass::InRange: return "in_range";
        case RangeClass::ExcludedC1: return "excluded_c1";
        case RangeClass::ExcludedC2: return "excluded_c2";
    }
    return "?";
}

RangeReport range_membership(const Representation& y, const BaseSpec& spec) {
    require_valid(spec);
    if (y.polarity != Polarity::NegaConstant) throw std::invalid_argument("range membership takes a nega-q digit string");
    if (y.spec.cap != spec.cap)
        throw std::invalid_argument("nega-q base " + std::to_string(y.spec.cap) + " differs from cap " +
                                    std::to_string(spec.cap));
    validate_representation(y);
    const Representation x{spec, Polarity::Alternating, y.digits, y.tail, y.tail_digits};
    const std::size_t horizon =
        x.tail == TailKind::Truncated ? x.digits.size() : x.periodic_start() + x.joint_period();
    for (std::size_t k = 1; k <= horizon; ++k)
        if (x.digit_at(k) >= x.base_at(k)) return {RangeClass::ExcludedC1, k};
    if (x.tail == TailKind::Truncated) return {};
    const RationalPoint rp = is_rational_point(x);
    if (rp.dual && !is_canonical(x) && f_digitwise(x) != f_digitwise(*rp.other))
        return {RangeClass::ExcludedC2, rp.level};
    return {};
}

Rational jump_formula(const BaseSpec& spec, std::size_t n) {
    require_valid(spec);
    const BaseSpec tail = shifted(spec, n);
    const Rational inv(1, spec.cap);
    const Rational sum = eventually_periodic_sum(tail.preperiod_length(), tail.period_length(), [&](std::size_t k) {
        return SeriesTerm{Rational(tail.q(k) - 1) * inv, inv};
    });
    return (Rational(1) - sum) * Rational(Integer(1), ipow(spec.cap, n));
}

JumpReport jump_at(const Representation& point, std::size_t n) {
    require_alternating(point);
    require_exact(point);
    const RationalPoint rp = is_rational_point(point);
    if (!rp.dual) throw std::invalid_argument("point " + format_digits(point) + " is not nega-Q-rational");
    if (rp.level != n)
        throw std::invalid_argument("dual forms switch at level " + std::to_string(rp.level) + ", not " +
                                    std::to_string(n));
    const bool given_kept = is_canonical(point);
    const Representation& kept = given_kept ? point : *rp.other;
    const Representation& rejected = given_kept ? *rp.other : point;
    const Rational fk = f_digitwise(kept);
    const Rational fr = f_digitwise(rejected);
    JumpReport out;
    out.level = n;
    // At even levels the rejected cylinder lies to the left of the point.
    out.right = n % 2 == 0 ? fk : fr;
    out.left = n % 2 == 0 ? fr : fk;
    out.jump = out.right - out.left;
    out.formula = jump_formula(point.spec, n);
    return out;
}

std::string to_string(DiscontinuityClass c) {
    switch (c) {
        case DiscontinuityClass::Empty: return "empty";
        case DiscontinuityClass::Finite: return "finite";
        case DiscontinuityClass::Infinite: return "infinite";
    }
    return "?";
}

DiscontinuityClass classify_discontinuities(const BaseSpec& spec) {
    require_valid(spec);
    auto below_cap = [&](int q) { return q != spec.cap; };
    if (std::any_of(spec.period.begin(), spec.period.end(), below_cap)) return DiscontinuityClass::Infinite;
    if (std::any_of(spec.preperiod.begin(), spec.preperiod.end(), below_cap)) return DiscontinuityClass::Finite;
    return DiscontinuityClass::Empty;
}

OrderVerdict monotone_witness(const Representation& x1, const Representation& x2) {
    require_exact(x1);
    require_exact(x2);
    const Rational v1 = decode_exact(x1);
    const Rational v2 = decode_exact(x2);
    if (v1 == v2) throw std::invalid_argument("monotone witness needs two distinct points");
    OrderVerdict out;
    out.x_order = (v2 - v1).sign();
    out.f_order = (eval_f(x2).lo - eval_f(x1).lo).sign();
    out.consistent = out.x_order == out.f_order;
    return out;
}

Enclosure functional_system_residual(const Representation& input, std::size_t kmax) {
    require_alternating(input);
    validate_representation(input);
    const Representation x = normalize(input);
    const Rational inv(1, x.spec.cap);
    Enclosure worst = Enclosure::point(Rational(0));
    Enclosure prev = eval_f(x);
    for (std::size_t k = 1; k <= kmax; ++k) {
        const Enclosure next = eval_f(shift(x, k));
        const Enclosure r = (prev + Enclosure::point(Rational(x.digit_at(k)) * inv) + inv * next).abs();
        worst = {max(worst.lo, r.lo), max(worst.hi, r.hi)};
        prev = next;
    }
    return worst;
}

Rational telescoped_reconstruction(const Representation& input, std::size_t k) {
    require_alternating(input);
    require_exact(input);
    const Representation x = normalize(input);
    return nega_prefix(x, k) + f_digitwise(shift(x, k)) / neg_cap_power(x.spec.cap, k);
}

namespace {

void validate_cylinder(const Cylinder& cyl) {
    if (cyl.polarity != Polarity::Alternating) throw std::invalid_argument("cylinder must be alternating");
    if (cyl.base.empty()) throw std::invalid_argument("cylinder rank must be >= 1");
    validate_representation(Representation::finite(cyl.spec, cyl.polarity, cyl.base));
}

}  // namespace

Rational derivative_ratio(const Cylinder& cyl) {
    validate_cylinder(cyl);
    const std::size_t m = cyl.base.size();
    const BaseSpec tail = shifted(cyl.spec, m);
    const Rational inv(1, cyl.spec.cap);
    const Rational sum = eventually_periodic_sum(tail.preperiod_length(), tail.period_length(), [&](std::size_t k) {
        return SeriesTerm{Rational(tail.q(k) - 1) * inv, inv};
    });
    return Rational(base_product(cyl.spec, m), ipow(cyl.spec.cap, m)) * sum;
}

Rational derivative_ratio_measured(const Cylinder& cyl) {
    validate_cylinder(cyl);
    const auto lo = with_extremal_tail(cyl.spec, cyl.polarity, cyl.base, ExtremalTail::Min);
    const auto hi = with_extremal_tail(cyl.spec, cyl.polarity, cyl.base, ExtremalTail::Max);
    return (f_digitwise(hi) - f_digitwise(lo)).abs() * Rational(base_product(cyl.spec, cyl.base.size()));
}

Rational derivative_contraction(const BaseSpec& spec) {
    require_valid(spec);
    Rational r(1);
    for (int q : spec.period) r *= Rational(q, spec.cap);
    return r;
}

Rational integral_closed_form(const BaseSpec& spec) {
    require_valid(spec);
    const Rational inv(1, spec.cap);
    return eventually_periodic_sum(spec.preperiod_length(), spec.period_length(), [&](std::size_t k) {
        return SeriesTerm{Rational(spec.q(k) - 1, 2 * spec.cap), inv};
    });
}

RiemannResult integral_riemann(const BaseSpec& spec, std::size_t depth, std::uint64_t max_cells) {
    require_valid(spec);
    if (depth == 0) throw std::invalid_argument("depth must be >= 1");
    const Integer cells = base_product(spec, depth);
    require_budget(cells, max_cells, "integral at depth " + std::to_string(depth));

    // Sum over cylinders of q^m * (image of the prefix), kept as an integer.
    std::vector<Integer> weight(depth + 1);
    for (std::size_t n = 1; n <= depth; ++n) {
        weight[n] = ipow(spec.cap, depth - n);
        if (n % 2 == 1) weight[n] = -weight[n];
    }
    Integer total = 0;
    std::function<void(std::size_t, const Integer&)> walk = [&](std::size_t n, const Integer& acc) {
        if (n > depth) {
            total += acc;
            return;
        }
        const int q = spec.q(n);
        for (int d = 0; d < q; ++d) walk(n + 1, acc + weight[n] * d);
    };
    walk(1, Integer(0));

    const Rational t_min = extremal_tail_image(spec, depth, ExtremalTail::Min);
    const Rational t_max = extremal_tail_image(spec, depth, ExtremalTail::Max);
    const Rational mean_prefix = Rational(total, cells * ipow(spec.cap, depth));
    RiemannResult out;
    out.value = {mean_prefix + min(t_min, t_max), mean_prefix + max(t_min, t_max)};
    out.depth = depth;
    out.cells = cells;
    return out;
}

std::vector<CylinderImage> f_graph_cells(const BaseSpec& spec, std::size_t depth, std::uint64_t max_cells) {
    require_valid(spec);
    if (depth == 0) throw std::invalid_argument("depth must be >= 1");
    require_budget(base_product(spec, depth), max_cells, "graph at depth " + std::to_string(depth));

    const Rational x_min = extremal_tail_value(spec, depth, ExtremalTail::Min);
    const Rational x_max = extremal_tail_value(spec, depth, ExtremalTail::Max);
    const Rational y_min = extremal_tail_image(spec, depth, ExtremalTail::Min);
    const Rational y_max = extremal_tail_image(spec, depth, ExtremalTail::Max);

    std::vector<CylinderImage> out;
    std::vector<int> base;
    std::function<void(std::size_t, const Rational&, const Rational&, const Rational&, const Rational&)> walk =
        [&](std::size_t n, const Rational& xs, const Rational& ys, const Rational& xscale, const Rational& yscale) {
            if (n > depth) {
                const Rational xa = xs + x_min, xb = xs + x_max;
                const Rational ya = ys + y_min, yb = ys + y_max;
                out.push_back({base, {min(xa, xb), max(xa, xb)}, {min(ya, yb), max(ya, yb)}});
                return;
            }
            const int q = spec.q(n);
            const Rational xs_next = xscale / Rational(-q);
            const Rational ys_next = yscale / Rational(-spec.cap);
            for (int d = 0; d < q; ++d) {
                base.push_back(d);
                walk(n + 1, xs + xs_next * d, ys + ys_next * d, xs_next, ys_next);
                base.pop_back();
            }
        };
    walk(1, Rational(0), Rational(0), Rational(1), Rational(1));
    std::sort(out.begin(), out.end(), [](const CylinderImage& a, const CylinderImage& b) { return a.x.lo < b.x.lo; });
    return out;
}

}  // namespace cantor

#include "cantor/fractalh.hpp"

#include "../support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace cantor;

namespace {
const FractalParams p05{5, 0};
const FractalParams p04{4, 0};
const FractalParams p14{4, 1};

RunDigits periodic(FractalParams p, std::vector<int> pre, std::vector<int> tail) {
    return RunDigits{p, std::move(pre), RunTail::Periodic, std::move(tail)};
}

// Oracle: scan sum_{p in theta} q^{-p a} - 1 on a grid of step 1e-6, then bisect in doubles.
double moran_oracle(const FractalParams& p) {
    auto g = [&](double a) {
        double s = -1;
        for (int d : p.theta()) s += std::pow(p.q, -d * a);
        return s;
    };
    double lo = 0;
    for (double a = 1e-6; a <= 2; a += 1e-6) {
        if (g(a) <= 0) {
            lo = a - 1e-6;
            break;
        }
    }
    double hi = lo + 1e-6;
    for (int i = 0; i < 60; ++i) {
        const double mid = (lo + hi) / 2;
        (g(mid) > 0 ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}
}  // namespace

TEST_CASE("parameter validation") {
    CHECK(p05.theta() == std::vector<int>{1, 2, 3, 4});
    CHECK(p14.theta() == std::vector<int>{2, 3});
    CHECK(p14.tau() == 2);
    CHECK_THROWS_AS(require_valid(FractalParams{3, 0}), std::invalid_argument);
    CHECK_THROWS_AS(require_valid(FractalParams{5, 5}), std::invalid_argument);
    CHECK_THROWS_AS(validate_run_digits(periodic(p14, {1}, {2})), std::invalid_argument);
}

TEST_CASE("expansion writes each alpha as a run") {
    const RunDigits x = periodic(p05, {3, 1}, {2});
    CHECK(format_digits(expand_runs(x)) == "0,0,3,1|0,2");
    CHECK(decode_exact(expand_runs(periodic(p05, {}, {2}))) == Rational(1, 12));
    CHECK(decode_exact(h_forward(periodic(p05, {}, {2}))) == Rational(-1, 3));
}

TEST_CASE("run parsing") {
    const RunParse ok = parse_run_structure({0, 0, 3, 1, 0, 2}, p05);
    REQUIRE(ok.member());
    CHECK(*ok.alphas == std::vector<int>{3, 1, 2});
    const RunParse bad = parse_run_structure({0, 3}, p05);
    CHECK_FALSE(bad.member());
    CHECK(bad.failure_position == 2);
    const RunParse pending = parse_run_structure({0, 2, 0, 0}, p05);
    CHECK(pending.member());
    CHECK(pending.pending_run == 2);
}

TEST_CASE("bijection round trips and closed form") {
    std::mt19937_64 rng(31);
    for (const FractalParams& p : {p05, FractalParams{5, 2}, FractalParams{5, 4}, p04}) {
        for (int i = 0; i < 100; ++i) {
            const RunDigits x = random_run_digits(p, rng);
            const Representation raw = expand_runs(x);
            const RunDigits back = parse_runs(raw, p);
            CHECK(decode_exact(expand_runs(back)) == decode_exact(raw));
            const HInverse inv = h_inverse(h_forward(x), p);
            CHECK(inv.raw_value == inv.closed_value);
            CHECK(inv.raw_value.lo == decode_exact(raw));
            for (std::size_t n = 1; n <= 3; ++n) CHECK(shift_commutation_residual(x, n) == Enclosure::point(0));
        }
    }
    CHECK(h_inverse_closed_form(periodic(FractalParams{6, 2}, {}, {1})) == Enclosure::point(Rational(-1, 7)));
}

TEST_CASE("Moran root against a grid scan") {
    const Rational tol(1, 1000000000);
    for (const FractalParams& p : {p04, p14}) {
        const DimensionResult r = dim_D(p, tol);
        CHECK(r.value.width() <= tol);
        CHECK(moran_brackets_one(p, r));
        const double oracle = moran_oracle(p);
        CHECK(r.value.lo.to_double() <= oracle + 1e-9);
        CHECK(r.value.hi.to_double() >= oracle - 1e-9);
    }
}

TEST_CASE("log_q |theta| by integer powers") {
    const DimensionResult r = dim_E(p04, Rational(1, 1000000));
    // 3^b vs 4^a: a/b below log_4 3 iff 4^a < 3^b.
    CHECK(ipow(Integer(4), r.value.lo.numerator().get_ui()) <= ipow(Integer(3), r.value.lo.denominator().get_ui()));
    CHECK(ipow(Integer(4), r.value.hi.numerator().get_ui()) >= ipow(Integer(3), r.value.hi.denominator().get_ui()));
}

TEST_CASE("monotonicity classes") {
    CHECK(monotonicity_class(p05) == Monotonicity::Decreasing);
    CHECK(monotonicity_class(FractalParams{5, 2}) == Monotonicity::NonMonotone);
    const WitnessScan s = monotonicity_witness_scan(FractalParams{5, 2}, 200);
    CHECK(s.verdict == ScanVerdict::Consistent);
    // Fixed reversal pair: (2) periodic vs (1) periodic.
    const Rational xa = decode_exact(expand_runs(periodic(p05, {}, {1})));
    const Rational xb = decode_exact(expand_runs(periodic(p05, {}, {2})));
    const Rational ya = decode_exact(h_forward(periodic(p05, {}, {1})));
    const Rational yb = decode_exact(h_forward(periodic(p05, {}, {2})));
    CHECK(xa == Rational(-1, 6));
    CHECK(ya == Rational(-1, 6));
    CHECK(xa < xb);
    CHECK(ya > yb);
}

TEST_CASE("square counts by prefix enumeration") {
    for (std::size_t m = 1; m <= 6; ++m) CHECK(count_graph_squares(p04, m) == ipow(Integer(3), m));
    CHECK(h_graph_boxes(p05, 2).size() == 16);
    CHECK_THROWS_AS(count_graph_squares(p04, 12, 100), resource_error);
}

TEST_CASE("box counting sanity") {
    const Rational tol(1, 1000000);
    // Unit square covered by one box: N(m) = 4^m, slope 2 in base 2.
    const std::vector<Box> square{Box{Enclosure(0, 1), Enclosure(0, 1)}};
    const std::vector<Box> point{Box{Enclosure::point(Rational(1, 3)), Enclosure::point(Rational(1, 3))}};
    std::vector<std::pair<std::size_t, Integer>> sq, pt;
    for (std::size_t m = 2; m <= 6; ++m) {
        const Rational side = Rational(1) / Rational(ipow(Integer(2), m));
        sq.emplace_back(m, count_grid_cells(square, 0, 0, side));
        pt.emplace_back(m, count_grid_cells(point, 0, 0, side));
    }
    CHECK(box_slope(sq, 2, tol).contains(Rational(2)));
    CHECK(box_slope(pt, 2, tol).contains(Rational(0)));

    const BoxDimension b = box_dim_estimate(p05, 3, 5);
    CHECK(b.result.value.lo >= Rational(8, 10));
    CHECK(b.result.value.hi <= Rational(12, 10));
}

TEST_CASE("non-differentiability probe quotients grow") {
    const auto samples = nondiff_probe_h({2, 3, 1, 2}, 1, 2, p05);
    REQUIRE(samples.size() == 5);
    for (const auto& s : samples) CHECK_FALSE(s.quotient.is_zero());
}

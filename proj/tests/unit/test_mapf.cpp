#include "cantor/mapf.hpp"

#include "../support.hpp"

#include <doctest.h>

#include <random>

using namespace cantor;

namespace {
const BaseSpec two_three{{}, {2, 3}, 3};
const BaseSpec pre_two{{2}, {3}, 3};

// f as a nega-q series over the same digits, summed naively to n levels.
mpq_class brute_f(const Representation& x, std::size_t n) {
    mpq_class sum = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        const mpq_class term = x.digit_at(k) * testing::pow_inv(x.spec.cap, static_cast<unsigned>(k));
        sum += k % 2 == 0 ? term : -term;
    }
    return sum;
}
}  // namespace

TEST_CASE("f matches the nega-q series of the same digits") {
    std::mt19937_64 rng(5);
    for (const BaseSpec& s : {two_three, pre_two})
        for (int i = 0; i < 100; ++i) {
            const Representation x = normalize(testing::random_periodic(s, Polarity::Alternating, rng));
            const Enclosure y = eval_f(x);
            REQUIRE(y.is_exact());
            CHECK(testing::close(brute_f(x, 150), y.lo.raw(), testing::pow_inv(3, 145)));
        }
    const Representation x = from_text(two_three, Polarity::Alternating, "|1,2");
    CHECK(eval_f(x).lo == Rational(-1, 8));
}

TEST_CASE("f is the identity for constant bases") {
    std::mt19937_64 rng(9);
    for (int q = 2; q <= 5; ++q)
        for (int i = 0; i < 50; ++i) {
            const Representation x = normalize(testing::random_periodic(BaseSpec::constant(q), Polarity::Alternating, rng));
            CHECK(eval_f(x).lo == decode_exact(x));
        }
}

TEST_CASE("f rejects the non-kept dual form") {
    const Representation r = from_text(two_three, Polarity::Alternating, "1,0|0,2");
    CHECK_THROWS_AS(eval_f(r), std::invalid_argument);
}

TEST_CASE("structural residuals vanish") {
    std::mt19937_64 rng(13);
    for (const BaseSpec& s : {two_three, pre_two})
        for (int i = 0; i < 40; ++i) {
            const Representation x = normalize(testing::random_periodic(s, Polarity::Alternating, rng));
            CHECK(symmetry_residual(x) == Enclosure::point(0));
            CHECK(functional_system_residual(x, 12) == Enclosure::point(0));
            for (std::size_t k = 1; k <= 6; ++k) {
                CHECK(commute_shift_residual(x, k) == Enclosure::point(0));
                CHECK(telescoped_reconstruction(x, k) == eval_f(x).lo);
            }
        }
}

TEST_CASE("jump at a nega-Q-rational point") {
    const Representation point = with_extremal_tail(two_three, Polarity::Alternating, {1}, ExtremalTail::Min);
    const JumpReport r = jump_at(point, 1);
    CHECK(r.jump == Rational(1, 24));
    CHECK(r.formula == Rational(1, 24));
    // Independent: f on the two forms of the point.
    const Representation other = *is_rational_point(point).other;
    CHECK(r.right - r.left == (eval_f(point).lo - f_digitwise(other)).abs());
    CHECK(jump_formula(BaseSpec::constant(3), 4) == 0);
    CHECK(jump_formula(pre_two, 1) == 0);
}

TEST_CASE("discontinuity classification") {
    CHECK(classify_discontinuities(BaseSpec::constant(3)) == DiscontinuityClass::Empty);
    CHECK(classify_discontinuities(two_three) == DiscontinuityClass::Infinite);
    CHECK(classify_discontinuities(pre_two) == DiscontinuityClass::Finite);
}

TEST_CASE("range membership") {
    const BaseSpec nega = BaseSpec::constant(3);
    CHECK(range_membership(from_text(nega, Polarity::NegaConstant, "|1,1"), two_three).verdict == RangeClass::InRange);
    const RangeReport c1 = range_membership(from_text(nega, Polarity::NegaConstant, "2|0"), two_three);
    CHECK(c1.verdict == RangeClass::ExcludedC1);
    CHECK(c1.level == 1);
}

TEST_CASE("f is strictly increasing on canonical pairs") {
    std::mt19937_64 rng(17);
    for (const BaseSpec& s : {two_three, pre_two})
        for (int i = 0; i < 300; ++i) {
            const Representation a = normalize(testing::random_periodic(s, Polarity::Alternating, rng));
            const Representation b = normalize(testing::random_periodic(s, Polarity::Alternating, rng));
            CHECK(monotone_witness(a, b).consistent);
        }
}

TEST_CASE("derivative ratio shrinks by the period contraction") {
    const Cylinder c2{two_three, {0, 0}, Polarity::Alternating};
    CHECK(derivative_ratio(c2) == Rational(5, 12));
    CHECK(derivative_ratio_measured(c2) == Rational(5, 12));
    CHECK(derivative_contraction(two_three) == Rational(2, 3));
    CHECK(derivative_ratio(Cylinder{BaseSpec::constant(3), {2, 1}, Polarity::Alternating}) == 1);
}

TEST_CASE("integral: series formula and Darboux sums") {
    CHECK(integral_closed_form(BaseSpec::constant(2)) == Rational(1, 2));
    CHECK(integral_closed_form(two_three) == Rational(5, 16));
    const RiemannResult r = integral_riemann(BaseSpec::constant(2), 10);
    // Analytic oracle: f(x) = x on [-2/3, 1/3], integral -1/6.
    CHECK(r.value.contains(Rational(-1, 6)));
    CHECK(r.value.width() <= Rational(1, 1024));
    CHECK_THROWS_AS(integral_riemann(two_three, 20, 1000), resource_error);
}

TEST_CASE("graph cells for the identity case") {
    const auto cells = f_graph_cells(BaseSpec::constant(3), 2);
    CHECK(cells.size() == 9);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        CHECK(cells[i].x == cells[i].y);
        if (i) CHECK(cells[i - 1].x.hi == cells[i].x.lo);
    }
}

#include "cantor/numerics.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdlib>

using namespace cantor;

TEST_CASE("rational parsing and formatting") {
    CHECK(Rational::parse("3/6") == Rational(1, 2));
    CHECK(Rational::parse("-7") == Rational(-7));
    CHECK(Rational::parse("0.125") == Rational(1, 8));
    CHECK(Rational::parse("1e-9") == Rational(1, 1000000000));
    CHECK(Rational::parse("2.5E2") == Rational(250));
    CHECK(Rational(4, 6).str() == "2/3");
    CHECK_THROWS_AS(Rational::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rational::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("rational floor, ceil and powers") {
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
    CHECK(ipow(Integer(3), 5) == 243);
}

TEST_CASE("enclosure arithmetic contains every pointwise result") {
    const Enclosure a{Rational(-1, 2), Rational(1, 3)};
    const Enclosure b{Rational(2), Rational(5, 2)};
    const Enclosure p = a * b;
    for (const Rational& x : {a.lo, a.hi, Rational(0)})
        for (const Rational& y : {b.lo, b.hi})
            CHECK(p.contains(x * y));
    CHECK((a + b).lo == Rational(3, 2));
    CHECK(a.abs() == Enclosure(Rational(0), Rational(1, 2)));
    CHECK(a.certain_sign() == 0);
    CHECK(b.certain_sign() == 1);
    CHECK_THROWS((Enclosure(1, 2) / a));
    CHECK_THROWS(Enclosure(Rational(2), Rational(1)));
}

TEST_CASE("bisection encloses sqrt 2 to tolerance") {
    const Rational tol(1, 1000000000);
    const Enclosure r = bisect_root([](const Rational& x) { return x * x - Rational(2); }, 1, 2, tol);
    CHECK(r.width() <= tol);
    CHECK(r.lo * r.lo <= Rational(2));
    CHECK(r.hi * r.hi >= Rational(2));
    CHECK_THROWS_AS(bisect_root([](const Rational& x) { return x * x + Rational(1); }, 0, 1, tol), bracket_error);
}

TEST_CASE("log_bracket against integer-power comparisons") {
    const Rational tol(1, 1000000);
    const Enclosure e = log_bracket(Integer(4), Rational(3), tol);
    CHECK(e.width() <= tol);
    CHECK(std::abs(e.midpoint().to_double() - std::log(3.0) / std::log(4.0)) < 1e-6);
    CHECK(log_bracket(Integer(4), Rational(8), tol) == Enclosure::point(Rational(3, 2)));
    CHECK(log_bracket(Integer(5), Rational(1), tol) == Enclosure::point(Rational(0)));
    CHECK_THROWS(log_bracket(Integer(5), Rational(1, 2), tol));
}

TEST_CASE("eventually periodic sum matches the geometric series") {
    // sum_{k>=1} (1/3)^k = 1/2
    const Rational s = eventually_periodic_sum(0, 1, [](std::size_t) { return SeriesTerm{Rational(1, 3), Rational(1, 3)}; });
    CHECK(s == Rational(1, 2));
    // 1 - 1/2 + 1/4 - ... starting with a preperiod term 5: 5 + (-1/2)(...)
    const Rational t = eventually_periodic_sum(1, 2, [](std::size_t k) {
        if (k == 1) return SeriesTerm{Rational(5), Rational(1)};
        return SeriesTerm{Rational(k % 2 == 0 ? 1 : -1), Rational(1, 2)};
    });
    // 5 + 1 - 1/2 + 1/4 - ... = 5 + 2/3
    CHECK(t == Rational(17, 3));
}

TEST_CASE("cell budget reads the environment") {
    ::setenv("CANTOR_ATLAS_MAX_CELLS", "42", 1);
    CHECK(cell_budget() == 42u);
    ::setenv("CANTOR_ATLAS_MAX_CELLS", "junk", 1);
    CHECK(cell_budget() == 10'000'000u);
    ::unsetenv("CANTOR_ATLAS_MAX_CELLS");
    CHECK(cell_budget() == 10'000'000u);
    CHECK_THROWS_AS(require_budget(Integer(43), 42, "test"), resource_error);
    CHECK_NOTHROW(require_budget(Integer(42), 42, "test"));
}

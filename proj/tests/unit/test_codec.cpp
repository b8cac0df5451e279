#include "cantor/codec.hpp"

#include "../support.hpp"

#include <doctest.h>

#include <random>

using namespace cantor;

namespace {
const BaseSpec two = BaseSpec::constant(2);
const BaseSpec two_three{{}, {2, 3}, 3};
const BaseSpec pre_two{{2}, {3}, 3};
}  // namespace

TEST_CASE("decode of periodic strings matches brute-force sums") {
    std::mt19937_64 rng(7);
    for (const BaseSpec& s : {two, two_three, pre_two})
        for (Polarity p : {Polarity::Positive, Polarity::Alternating})
            for (int i = 0; i < 50; ++i) {
                const Representation r = testing::random_periodic(s, p, rng);
                const Rational v = decode_exact(r);
                // Tail after 120 levels is at most 2^-120.
                CHECK(testing::close(testing::brute_sum(r, 120), v.raw(), testing::pow_inv(2, 118)));
            }
}

TEST_CASE("known values") {
    CHECK(decode_exact(from_text(two, Polarity::Alternating, "0,1|0,1")) == Rational(1, 3));
    CHECK(decode_exact(from_text(two_three, Polarity::Alternating, "|1,2")) == Rational(-1, 5));
    CHECK(decode_exact(from_text(two, Polarity::Positive, "|1")) == Rational(1));
    const Enclosure t = decode(from_text(two, Polarity::Positive, "1,0|..."));
    CHECK(t == Enclosure(Rational(1, 2), Rational(3, 4)));
}

TEST_CASE("encode then decode is exact on rationals") {
    std::mt19937_64 rng(11);
    for (const BaseSpec& s : {two, two_three, pre_two}) {
        const Rational hi = a0_exact(s);
        for (int i = 0; i < 200; ++i) {
            const Rational x = testing::random_rational(hi - Rational(1), hi, 997, rng);
            const Representation r = encode_alternating(x, s, 4000);
            REQUIRE(r.tail != TailKind::Truncated);
            CHECK(decode_exact(r) == x);
            CHECK(is_canonical(r));
        }
    }
}

TEST_CASE("encodings of specific points") {
    CHECK(format_digits(encode_positive(Rational(1, 7), two, 64)) == "|0,0,1");
    CHECK(format_digits(encode_alternating(Rational(2, 5), two_three, 64)) == "|0,2");
    CHECK(format_digits(encode_alternating(Rational(-3, 5), two_three, 64)) == "|1,0");
    CHECK_THROWS_AS(encode_alternating(Rational(1), two, 8), std::domain_error);
}

TEST_CASE("dual pairs") {
    const Representation kept = from_text(two_three, Polarity::Alternating, "1,1|1,0");
    const RationalPoint rp = is_rational_point(kept);
    REQUIRE(rp.dual);
    CHECK(rp.level == 2);
    CHECK(format_digits(*rp.other) == "1,0|0,2");
    CHECK(decode_exact(*rp.other) == decode_exact(kept));
    CHECK(decode_exact(kept) == Rational(-13, 30));
    CHECK(is_canonical(kept));
    CHECK_FALSE(is_canonical(*rp.other));
    CHECK(normalize(*rp.other) == kept);
    CHECK(normalize(kept) == kept);

    const Representation ones = from_text(two, Polarity::Positive, "0|1");
    CHECK_FALSE(is_canonical(ones));
    CHECK(format_digits(normalize(ones)) == "1");
    CHECK_FALSE(is_rational_point(from_text(two, Polarity::Positive, "|0,1")).dual);
}

TEST_CASE("cylinders have the stated length") {
    const Cylinder c{two_three, {1, 2}, Polarity::Alternating};
    const auto [inf, sup] = cylinder_interval(c);
    CHECK(sup.lo - inf.lo == Rational(1, 6));
}

TEST_CASE("shift identity x = partial sum + sign * sigma^n x / (q_1...q_n)") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const Representation r = testing::random_periodic(two_three, Polarity::Alternating, rng);
        for (std::size_t n = 0; n <= 5; ++n) {
            const Rational rest = decode_exact(shift(r, n));
            const Rational sign = n % 2 == 0 ? 1 : -1;
            CHECK(decode_exact(r) == partial_sum(r, n) + sign * rest / Rational(base_product(two_three, n)));
        }
    }
}

TEST_CASE("digit text parsing") {
    const DigitText t = parse_digit_text("1,2|0,1");
    CHECK(t.digits == std::vector<int>{1, 2});
    CHECK(t.tail == TailKind::Periodic);
    CHECK(t.tail_digits == std::vector<int>{0, 1});
    CHECK(parse_digit_text("3,4|...").tail == TailKind::Truncated);
    CHECK(parse_digit_text("").digits.empty());
    CHECK_THROWS_AS(parse_digit_text("1,,2"), std::invalid_argument);
    CHECK(parse_digit_text("1|").tail == TailKind::Zeros);
    CHECK_THROWS_AS(from_text(two, Polarity::Positive, "2"), std::invalid_argument);
    CHECK(format_digits(from_text(two_three, Polarity::Alternating, "1,2|0,1")) == "1,2|0,1");
}

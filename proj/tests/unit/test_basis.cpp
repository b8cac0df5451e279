#include "cantor/basis.hpp"

#include "../support.hpp"

#include <doctest.h>

using namespace cantor;

TEST_CASE("sequence lookup and validation") {
    const BaseSpec s{{5}, {2, 3}, 5};
    CHECK(s.q(1) == 5);
    CHECK(s.q(2) == 2);
    CHECK(s.q(3) == 3);
    CHECK(s.q(4) == 2);
    CHECK(validate(s).empty());
    CHECK_FALSE(validate(BaseSpec{{}, {1}, 2}).empty());
    CHECK_FALSE(validate(BaseSpec{{}, {}, 2}).empty());
    CHECK_FALSE(validate(BaseSpec{{}, {4}, 3}).empty());
    CHECK_THROWS_AS(require_valid(BaseSpec{{}, {4}, 3}), std::invalid_argument);
    CHECK(base_product(s, 3) == 30);
    CHECK(shifted(s, 1) == BaseSpec{{}, {2, 3}, 5});
}

TEST_CASE("a0 for constant bases is 1/(q+1)") {
    for (int q = 2; q <= 6; ++q) CHECK(a0_exact(BaseSpec::constant(q)) == Rational(1, q + 1));
}

TEST_CASE("a0 agrees with brute-force partial sums") {
    for (const BaseSpec& s : {BaseSpec{{}, {2, 3}, 3}, BaseSpec{{2}, {3}, 3}, BaseSpec{{4, 2}, {3, 5, 2}, 5}}) {
        mpq_class sum = 0, scale = 1;
        for (std::size_t k = 1; k <= 200; ++k) {
            scale /= s.q(k);
            if (k % 2 == 0) sum += (s.q(k) - 1) * scale;
        }
        CHECK(testing::close(sum, a0_exact(s).raw(), mpq_class(1, mpz_class("1000000000000000000000000000000"))));
        CHECK(a0(s).is_exact());
    }
    CHECK(a0_exact(BaseSpec{{}, {2, 3}, 3}) == Rational(2, 5));
}

TEST_CASE("spec JSON round trip") {
    const BaseSpec s{{4, 2}, {3, 5}, 5};
    CHECK(parse_base_spec_json(base_spec_to_json(s)) == s);
    CHECK(parse_base_spec_json(R"({"preperiod":[],"period":[2],"cap":2})") == BaseSpec::constant(2));
    CHECK_THROWS_AS(parse_base_spec_json("{"), std::invalid_argument);
    CHECK_THROWS_AS(parse_base_spec_json(R"({"period":[2,7],"cap":3})"), std::invalid_argument);
}

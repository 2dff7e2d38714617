#include <catch2/catch_amalgamated.hpp>

#include "perciso/rational.hpp"

using namespace perciso;

TEST_CASE("cross-multiplied comparisons") {
    CHECK(ExactRatio(1, 3) < ExactRatio(1, 2));
    CHECK(ExactRatio(2, 4) == ExactRatio(1, 2));
    CHECK(ExactRatio(7, 8) > ExactRatio(6, 7));
    CHECK(ExactRatio(0, 5) == ExactRatio(0, 9));
    CHECK_THROWS_AS(ExactRatio(1, 0), std::invalid_argument);
    CHECK_THROWS_AS(ExactRatio(1, -2), std::invalid_argument);
}

TEST_CASE("reduced form and exact subtraction") {
    const ExactRatio r = ExactRatio::reduced(12, 18);
    CHECK(r.num == 2);
    CHECK(r.den == 3);

    const ExactRatio d = ExactRatio(1, 1) - ExactRatio(7, 8);
    CHECK(d == ExactRatio(1, 8));
    CHECK((ExactRatio(7, 8) - ExactRatio(1, 1)).num == -1);
    CHECK((ExactRatio(3, 7) - ExactRatio(3, 7)) == ExactRatio(0, 1));
    CHECK((ExactRatio(5, 6) - ExactRatio(1, 4)) == ExactRatio(7, 12));
}

TEST_CASE("abs and to_double") {
    const ExactRatio neg = ExactRatio(1, 4) - ExactRatio(3, 4);
    CHECK(neg.abs() == ExactRatio(1, 2));
    CHECK(ExactRatio(1, 8).to_double() == 0.125);
}

TEST_CASE("decimal constants parse exactly") {
    const DecimalConstant c = DecimalConstant::parse("0.4");
    CHECK(c.num == 4);
    CHECK(c.den == 10);
    CHECK(c.value == 0.4);

    const DecimalConstant ten = DecimalConstant::parse("10");
    CHECK(ten.num == 10);
    CHECK(ten.den == 1);

    // 0.4 * 16 < 7 but not < 6
    CHECK(DecimalConstant::parse("0.4").less_than(7, 16));
    CHECK_FALSE(DecimalConstant::parse("0.4").less_than(6, 16));
    // boundary: 0.4 * 15 == 6 exactly, strict comparison fails both ways
    CHECK_FALSE(DecimalConstant::parse("0.4").less_than(6, 15));
    CHECK_FALSE(DecimalConstant::parse("0.4").greater_than(6, 15));

    CHECK_THROWS_AS(DecimalConstant::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(DecimalConstant::parse("1.2.3"), std::invalid_argument);
    CHECK_THROWS_AS(DecimalConstant::parse(""), std::invalid_argument);
}

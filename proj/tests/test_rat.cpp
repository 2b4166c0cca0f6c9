#include <doctest.h>

#include "zigzag/rat.hpp"

using namespace zigzag;

TEST_CASE("rat arithmetic is exact and reduced") {
    Rat a(1, 3), b(1, 6);
    CHECK(a + b == Rat(1, 2));
    CHECK(a - b == Rat(1, 6));
    CHECK(a * b == Rat(1, 18));
    CHECK(a / b == Rat(2));
    CHECK((a + b).den() == 2);
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(-2, -4) == Rat(1, 2));
    CHECK(Rat(2, -4) == Rat(-1, 2));
    CHECK(Rat(0, 7).str() == "0");
}

TEST_CASE("rat comparison") {
    CHECK(Rat(1, 3) < Rat(1, 2));
    CHECK(Rat(-1, 3) > Rat(-1, 2));
    CHECK(abs(Rat(-5, 7)) == Rat(5, 7));
    CHECK(min(Rat(1, 3), Rat(1, 4)) == Rat(1, 4));
    CHECK(midpoint(Rat(0), Rat(1, 3)) == Rat(1, 6));
}

TEST_CASE("rat parse and print round-trip") {
    CHECK(Rat::parse("3/4") == Rat(3, 4));
    CHECK(Rat::parse("-3/4") == Rat(-3, 4));
    CHECK(Rat::parse("7") == Rat(7));
    CHECK(Rat::parse("-6/8") == Rat(-3, 4));
    CHECK(Rat::parse(Rat(22, 7).str()) == Rat(22, 7));
    CHECK_THROWS_AS(Rat::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rat::parse(""), ParseError);
    CHECK_THROWS_AS(Rat::parse("abc"), ParseError);
    CHECK_THROWS_AS(Rat(1, 0), DomainError);
}

TEST_CASE("rat decimal rendering is deterministic truncation") {
    CHECK(Rat(1, 3).decimal(6) == "0.333333");
    CHECK(Rat(-1, 3).decimal(6) == "-0.333333");
    CHECK(Rat(1, 2).decimal(3) == "0.500");
    CHECK(Rat(0).decimal(2) == "0.00");
    CHECK(Rat(7).decimal(2) == "7.00");
}

TEST_CASE("rat survives large intermediate values") {
    // products of many map slopes overflow machine words quickly
    Rat x(1, 3);
    for (int i = 0; i < 40; ++i) x *= Rat(12289, 4096);
    Rat y = x;
    for (int i = 0; i < 40; ++i) y = y / Rat(12289, 4096);
    CHECK(y == Rat(1, 3));
}

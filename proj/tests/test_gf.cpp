#include <doctest.h>

#include "invforge/gf.hpp"

using namespace invforge;
using namespace invforge::gf;

namespace {

// Independent oracle for the F_4 modulus: enumerate monic quadratics over
// F_2 and keep the ones without roots and without factorization into two
// linear factors (equivalent for degree 2: no roots).
std::vector<std::vector<std::uint32_t>> irreducible_quadratics_f2() {
    std::vector<std::vector<std::uint32_t>> out;
    for (std::uint32_t c0 = 0; c0 < 2; ++c0)
        for (std::uint32_t c1 = 0; c1 < 2; ++c1) {
            auto eval = [&](std::uint32_t x) {
                return (c0 + c1 * x + x * x) % 2;
            };
            if (eval(0) != 0 && eval(1) != 0) out.push_back({c0, c1, 1});
        }
    return out;
}

} // namespace

TEST_CASE("make_field basic specs") {
    auto f2 = make_field(2, 1);
    CHECK(f2->p() == 2);
    CHECK(f2->q() == 2);
    auto f3 = make_field(3, 1);
    CHECK(f3->q() == 3);

    auto f4 = make_field(2, 2);
    auto irr = irreducible_quadratics_f2();
    REQUIRE(irr.size() == 1); // t^2+t+1 is the only one
    CHECK(f4->modulus() == irr[0]);

    // interning: same (p, e) yields the same spec object
    CHECK(make_field(2, 2).get() == f4.get());
}

TEST_CASE("make_field errors") {
    CHECK_THROWS_AS(make_field(4, 1), NotPrime);
    CHECK_THROWS_AS(make_field(1, 1), NotPrime);
    CHECK_THROWS_AS(make_field(2, 0), DegreeOutOfRange);
    CHECK_THROWS_AS(make_field(2, 17), CapExceeded);
    CHECK_THROWS_AS(make_field(2, 5, 16), CapExceeded);
}

TEST_CASE("arithmetic examples") {
    auto f3 = make_field(3, 1);
    auto two = element(*f3, 2);
    CHECK((two + two).value() == 1);

    auto f4 = make_field(2, 2);
    auto t = element(*f4, 2); // packed: a0=0, a1=1
    auto t_plus_1 = element(*f4, 3);
    CHECK(t * t == t_plus_1);
    CHECK(t * one(*f4) == t);

    auto f2 = make_field(2, 1);
    CHECK_THROWS_AS((void)(one(*f2) + one(*f4)), SpecMismatch);
}

TEST_CASE("invert examples") {
    auto f3 = make_field(3, 1);
    CHECK(invert(element(*f3, 2)).value() == 2);
    auto f4 = make_field(2, 2);
    CHECK(invert(element(*f4, 2)).value() == 3); // t -> t+1
    auto f2 = make_field(2, 1);
    CHECK(invert(one(*f2)) == one(*f2));
    CHECK_THROWS_AS(invert(zero(*f3)), DivisionByZero);
}

TEST_CASE("frobenius and conjugation") {
    auto f4 = make_field(2, 2);
    auto t = element(*f4, 2);
    CHECK(frobenius_power(t, 1, FrobBase::p).value() == 3); // t^2 = t+1
    for (auto a : enumerate_elements(*f4))
        CHECK(frobenius_power(a, 1, FrobBase::q) == a);

    auto f9 = make_field(3, 2);
    for (auto a : enumerate_elements(*f9)) {
        auto c = conjugate(a);
        CHECK(c == pow(a, 3));
        CHECK(conjugate(c) == a); // involution
    }
    auto f3 = make_field(3, 1);
    CHECK_THROWS_AS(conjugate(one(*f3)), DegreeOutOfRange);
}

TEST_CASE("enumerate_elements") {
    auto f2 = make_field(2, 1);
    auto e2 = enumerate_elements(*f2);
    REQUIRE(e2.size() == 2);
    CHECK(e2[0].is_zero());
    CHECK(e2[1].is_one());

    auto f3 = make_field(3, 1);
    auto e3 = enumerate_elements(*f3);
    REQUIRE(e3.size() == 3);
    for (std::uint32_t i = 0; i < 3; ++i) CHECK(e3[i].value() == i);

    auto f4 = make_field(2, 2);
    auto e4 = enumerate_elements(*f4);
    REQUIRE(e4.size() == 4);
    for (std::size_t i = 0; i < e4.size(); ++i)
        for (std::size_t j = i + 1; j < e4.size(); ++j)
            CHECK(e4[i] != e4[j]);
}

TEST_CASE("field axioms by enumeration (q <= 16)") {
    for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {3u, 2u},
                        {2u, 3u}, {13u, 1u}, {2u, 4u}}) {
        auto spec = make_field(p, e);
        auto elems = enumerate_elements(*spec);
        for (auto a : elems) {
            CHECK(a + zero(*spec) == a);
            CHECK(a * one(*spec) == a);
            CHECK(a - a == zero(*spec));
            if (!a.is_zero()) CHECK(invert(invert(a)) == a);
            CHECK(pow(a, spec->q()) == a); // a^q = a
            for (auto b : elems) {
                CHECK(a + b == b + a);
                CHECK(a * b == b * a);
                // Frobenius additivity
                CHECK(frobenius_power(a + b, 1, FrobBase::p) ==
                      frobenius_power(a, 1, FrobBase::p) +
                          frobenius_power(b, 1, FrobBase::p));
                for (auto c : elems) {
                    if (spec->q() > 4 && !(c.value() % 3 == 1))
                        continue; // thin out the cubic loop for larger q
                    CHECK((a + b) + c == a + (b + c));
                    CHECK((a * b) * c == a * (b * c));
                    CHECK(a * (b + c) == a * b + a * c);
                }
            }
        }
    }
}

TEST_CASE("element text round-trip") {
    auto f3 = make_field(3, 1);
    CHECK(to_string(element(*f3, 2)) == "2");
    CHECK(parse_element("2", *f3).value() == 2);

    auto f4 = make_field(2, 2);
    CHECK(to_string(element(*f4, 3)) == "1+t");
    CHECK(to_string(element(*f4, 2)) == "t");
    CHECK(to_string(zero(*f4)) == "0");

    auto f9 = make_field(3, 2);
    for (auto a : enumerate_elements(*f9))
        CHECK(parse_element(to_string(a), *f9) == a);
    auto f8 = make_field(2, 3);
    for (auto a : enumerate_elements(*f8))
        CHECK(parse_element(to_string(a), *f8) == a);
    CHECK_THROWS_AS(parse_element("x", *f9), ParseError);
    CHECK_THROWS_AS(parse_element("t^5", *f9), ParseError);
}

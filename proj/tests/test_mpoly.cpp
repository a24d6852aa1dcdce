#include <doctest.h>

#include "invforge/mpoly.hpp"
#include "invforge/rng.hpp"

using namespace invforge;
using namespace invforge::gf;
using namespace invforge::mpoly;

namespace {

Exponents exps(VarGrid g, std::initializer_list<std::pair<int, int>> ij,
               std::initializer_list<std::uint64_t> e) {
    Exponents out(g.var_count(), 0);
    auto it = e.begin();
    for (auto [i, j] : ij) out[g.var_index(i, j)] = *it++;
    return out;
}

// 2x2 determinant oracle, written out by hand.
SparsePoly det2_oracle(const SparsePoly& a, const SparsePoly& b,
                       const SparsePoly& c, const SparsePoly& d) {
    return a * d - b * c;
}

// 3x3 cofactor oracle along the first row.
SparsePoly det3_oracle(const PolyMatrix& m) {
    auto minor = [&](int r1, int r2, int c1, int c2) {
        return det2_oracle(m.at(r1, c1), m.at(r1, c2), m.at(r2, c1),
                           m.at(r2, c2));
    };
    return m.at(0, 0) * minor(1, 2, 1, 2) - m.at(0, 1) * minor(1, 2, 0, 2) +
           m.at(0, 2) * minor(1, 2, 0, 1);
}

SparsePoly random_poly(SplitMix64& rng, const FieldSpec& spec, VarGrid grid,
                       int max_terms = 4, std::uint64_t max_exp = 2) {
    std::vector<std::pair<FieldElement, Exponents>> terms;
    int nt = 1 + (int)rng.below(max_terms);
    for (int t = 0; t < nt; ++t) {
        Exponents e(grid.var_count());
        for (auto& x : e) x = rng.below(max_exp + 1);
        terms.emplace_back(element(spec, (std::uint32_t)rng.below(spec.q())),
                           e);
    }
    return SparsePoly::from_terms(spec, grid, terms);
}

} // namespace

TEST_CASE("poly_build examples") {
    auto f2 = make_field(2, 1);
    VarGrid g{1, 2};
    CHECK(SparsePoly::from_terms(*f2, g, {}).is_zero());

    // char-2 cancellation of duplicate terms
    auto x11 = exps(g, {{1, 1}}, {1});
    auto dup = SparsePoly::from_terms(*f2, g,
                                      {{one(*f2), x11}, {one(*f2), x11}});
    CHECK(dup.is_zero());

    auto f3 = make_field(3, 1);
    auto p = SparsePoly::from_terms(
        *f3, g,
        {{element(*f3, 2), exps(g, {{1, 1}}, {2})},
         {one(*f3), exps(g, {{1, 2}}, {1})}});
    CHECK(p.term_count() == 2);
    CHECK(p.total_degree() == 2);

    CHECK_THROWS_AS(SparsePoly::from_terms(*f3, g, {{one(*f3), {0}}}),
                    BadExponentArity);
    CHECK_THROWS_AS(SparsePoly::from_terms(*f3, g, {{one(*f2), x11}}),
                    SpecMismatch);
}

TEST_CASE("poly arithmetic examples") {
    auto f2 = make_field(2, 1);
    VarGrid g{1, 2};
    SplitMix64 rng(7);
    auto f = random_poly(rng, *f2, g);
    CHECK(f * SparsePoly::one(*f2, g) == f);

    // freshman's dream over F_2
    auto x = SparsePoly::variable(*f2, g, 1, 1);
    auto y = SparsePoly::variable(*f2, g, 1, 2);
    auto sq = (x + y) * (x + y);
    CHECK(sq == SparsePoly::variable(*f2, g, 1, 1, 2) +
                    SparsePoly::variable(*f2, g, 1, 2, 2));

    // cross term 3*x11*x21 vanishes over F_3
    auto f3 = make_field(3, 1);
    VarGrid g2{2, 1};
    auto a = SparsePoly::variable(*f3, g2, 1, 1);
    auto b = SparsePoly::variable(*f3, g2, 2, 1);
    auto prod = (a + b) * (a + b * element(*f3, 2));
    auto expect = SparsePoly::variable(*f3, g2, 1, 1, 2) +
                  SparsePoly::variable(*f3, g2, 2, 1, 2) * element(*f3, 2);
    CHECK(prod == expect);
}

TEST_CASE("ring axioms on random polynomials") {
    SplitMix64 rng(11);
    for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
        auto spec = make_field(p, e);
        VarGrid g{2, 2};
        for (int trial = 0; trial < 30; ++trial) {
            auto f = random_poly(rng, *spec, g);
            auto h = random_poly(rng, *spec, g);
            auto k = random_poly(rng, *spec, g);
            CHECK(f + h == h + f);
            CHECK(f * h == h * f);
            CHECK((f + h) + k == f + (h + k));
            CHECK((f * h) * k == f * (h * k));
            CHECK(f * (h + k) == f * h + f * k);
            CHECK((f - f).is_zero());
            if (!f.is_zero() && !h.is_zero())
                CHECK((f * h).total_degree() ==
                      f.total_degree() + h.total_degree());
        }
    }
}

TEST_CASE("frobenius_power examples and oracle") {
    auto f2 = make_field(2, 1);
    VarGrid g{1, 2};
    auto x = SparsePoly::variable(*f2, g, 1, 1);
    auto y = SparsePoly::variable(*f2, g, 1, 2);
    auto f = x + y;
    CHECK(frobenius_power(f, 0) == f);
    CHECK(frobenius_power(f, 1) == SparsePoly::variable(*f2, g, 1, 1, 2) +
                                       SparsePoly::variable(*f2, g, 1, 2, 2));

    // repeated-multiplication oracle over F_3
    auto f3 = make_field(3, 1);
    SplitMix64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        auto h = random_poly(rng, *f3, g);
        CHECK(frobenius_power(h, 1) == h * h * h);
    }
}

TEST_CASE("frobenius equals q-power substitution") {
    // the identity used silently when substituting x^q for x
    SplitMix64 rng(31);
    for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}}) {
        auto spec = make_field(p, e);
        VarGrid g{2, 2};
        std::vector<SparsePoly> qth;
        for (int v = 0; v < g.var_count(); ++v) {
            auto [i, j] = g.var_pair(v);
            qth.push_back(SparsePoly::variable(*spec, g, i, j, spec->q()));
        }
        for (int trial = 0; trial < 15; ++trial) {
            auto f = random_poly(rng, *spec, g);
            CHECK(frobenius_power(f, 1) == substitute(f, g, qth));
        }
    }
}

TEST_CASE("exact_div examples") {
    auto f2 = make_field(2, 1);
    VarGrid g{1, 2};
    auto x = SparsePoly::variable(*f2, g, 1, 1);
    auto y = SparsePoly::variable(*f2, g, 1, 2);
    auto f = x * x + x * y + y * y;
    CHECK(exact_div(f, f).is_one());
    CHECK_THROWS_AS(exact_div(x, y), NotDivisible);
    CHECK_THROWS_AS(exact_div(x, SparsePoly::zero(*f2, g)), DivisionByZero);

    // Dickson quotient d_{2,1}/d_{2,2} over F_2 via hand-built determinants:
    // d_{2,1} = det[[x, x^4], [y, y^4]], d_{2,2} = det[[x, x^2], [y, y^2]]
    auto x4 = SparsePoly::variable(*f2, g, 1, 1, 4);
    auto y4 = SparsePoly::variable(*f2, g, 1, 2, 4);
    auto x2 = SparsePoly::variable(*f2, g, 1, 1, 2);
    auto y2 = SparsePoly::variable(*f2, g, 1, 2, 2);
    auto d21 = det2_oracle(x, x4, y, y4);
    auto d22 = det2_oracle(x, x2, y, y2);
    CHECK(exact_div(d21, d22) == f); // x^2 + x*y + y^2
}

TEST_CASE("substitute examples") {
    auto f2 = make_field(2, 1);
    VarGrid g{1, 2};
    auto x = SparsePoly::variable(*f2, g, 1, 1);
    auto y = SparsePoly::variable(*f2, g, 1, 2);
    auto f = x * y + SparsePoly::one(*f2, g);

    std::vector<SparsePoly> id = {x, y};
    CHECK(substitute(f, g, id) == f);

    std::vector<FieldElement> pt = {one(*f2), one(*f2)};
    CHECK(evaluate(f, pt).is_zero());

    CHECK_THROWS_AS(substitute(f, g, {x}), MissingAssignment);
}

TEST_CASE("substitution of Frobenius columns matches oracle") {
    // grid m=3, n=3: substituting X_3 -> X_2^q into det(X_1,X_2,X_3)
    // gives det(X_1,X_2,X_2^q); both sides by cofactor oracle
    auto f2 = make_field(2, 1);
    VarGrid g{3, 3};
    auto var = [&](int i, int j, std::uint64_t e = 1) {
        return SparsePoly::variable(*f2, g, i, j, e);
    };
    std::vector<std::vector<SparsePoly>> cols(3);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) cols[i - 1].push_back(var(i, j));
    auto lhs_mat = PolyMatrix::from_columns(cols);
    auto lhs = det3_oracle(lhs_mat);

    std::vector<SparsePoly> assignment;
    for (int v = 0; v < g.var_count(); ++v) {
        auto [i, j] = g.var_pair(v);
        assignment.push_back(i == 3 ? var(2, j, 2) : var(i, j));
    }
    auto substituted = substitute(lhs, g, assignment);

    std::vector<std::vector<SparsePoly>> cols2 = {cols[0], cols[1], {}};
    for (int j = 1; j <= 3; ++j) cols2[2].push_back(var(2, j, 2));
    auto rhs = det3_oracle(PolyMatrix::from_columns(cols2));
    CHECK(substituted == rhs);
}

TEST_CASE("evaluate is a ring homomorphism (1000 trials)") {
    SplitMix64 rng(101);
    auto f3 = make_field(3, 1);
    VarGrid g{2, 2};
    for (int trial = 0; trial < 1000; ++trial) {
        auto f = random_poly(rng, *f3, g);
        auto h = random_poly(rng, *f3, g);
        std::vector<FieldElement> pt;
        for (int v = 0; v < g.var_count(); ++v)
            pt.push_back(element(*f3, (std::uint32_t)rng.below(3)));
        CHECK(evaluate(f + h, pt) == evaluate(f, pt) + evaluate(h, pt));
        CHECK(evaluate(f * h, pt) == evaluate(f, pt) * evaluate(h, pt));
    }
}

TEST_CASE("determinant examples") {
    auto f2 = make_field(2, 1);
    VarGrid g{1, 2};
    CHECK(determinant(PolyMatrix::identity(*f2, g, 3)).is_one());

    // D_{2,2} for q=2: columns (x^{q^0}, x^{q^1})
    auto x = SparsePoly::variable(*f2, g, 1, 1);
    auto y = SparsePoly::variable(*f2, g, 1, 2);
    auto x2 = SparsePoly::variable(*f2, g, 1, 1, 2);
    auto y2 = SparsePoly::variable(*f2, g, 1, 2, 2);
    PolyMatrix d22({{x, x2}, {y, y2}});
    CHECK(determinant(d22) == det2_oracle(x, x2, y, y2));
    CHECK(to_canonical_string(determinant(d22)) ==
          "x[1,1]^2*x[1,2] + x[1,1]*x[1,2]^2");

    PolyMatrix rep({{x, x}, {y, y}});
    CHECK(determinant(rep).is_zero());

    PolyMatrix rect(2, 3, SparsePoly::zero(*f2, g));
    CHECK_THROWS_AS(determinant(rect), NotSquare);
}

TEST_CASE("det multiplicativity and strategy agreement") {
    SplitMix64 rng(55);
    for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}}) {
        auto spec = make_field(p, e);
        VarGrid g{2, 2};
        for (int n : {2, 3}) {
            for (int trial = 0; trial < 8; ++trial) {
                auto fill = SparsePoly::zero(*spec, g);
                PolyMatrix a(n, n, fill), b(n, n, fill);
                for (int r = 0; r < n; ++r)
                    for (int c = 0; c < n; ++c) {
                        a.at(r, c) = random_poly(rng, *spec, g, 2, 1);
                        b.at(r, c) = random_poly(rng, *spec, g, 2, 1);
                    }
                CHECK(determinant(a * b) == determinant(a) * determinant(b));
                CHECK(determinant(a, DetStrategy::Cofactor) ==
                      determinant(a, DetStrategy::Bareiss));
            }
        }
        for (int trial = 0; trial < 4; ++trial) {
            PolyMatrix a(4, 4, SparsePoly::zero(*spec, g));
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    a.at(r, c) = random_poly(rng, *spec, g, 2, 1);
            CHECK(determinant(a, DetStrategy::Cofactor) ==
                  determinant(a, DetStrategy::Bareiss));
        }
    }
}

TEST_CASE("bareiss handles zero pivots by row swap") {
    auto f3 = make_field(3, 1);
    VarGrid g{1, 2};
    auto x = SparsePoly::variable(*f3, g, 1, 1);
    auto y = SparsePoly::variable(*f3, g, 1, 2);
    auto z = SparsePoly::zero(*f3, g);
    PolyMatrix m({{z, x}, {y, z}});
    CHECK(determinant(m, DetStrategy::Bareiss) == -(x * y));
    CHECK(determinant(m, DetStrategy::Cofactor) == -(x * y));

    PolyMatrix sing({{z, x}, {z, y}});
    CHECK(determinant(sing, DetStrategy::Bareiss).is_zero());

    // 5x5 goes through the Bareiss path of Auto
    PolyMatrix big(5, 5, z);
    for (int i = 0; i < 5; ++i) big.at(i, 4 - i) = x;
    CHECK(determinant(big) == pow(x, 5)); // even permutation (2 swaps)
}

TEST_CASE("canonical string and parse round-trip") {
    auto f2 = make_field(2, 1);
    VarGrid g{1, 2};
    CHECK(to_canonical_string(SparsePoly::zero(*f2, g)) == "0");
    CHECK(to_canonical_string(SparsePoly::one(*f2, g)) == "1");
    CHECK(parse_poly("0", *f2, g).is_zero());

    SplitMix64 rng(77);
    for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {3u, 2u}}) {
        auto spec = make_field(p, e);
        VarGrid gg{2, 2};
        for (int trial = 0; trial < 40; ++trial) {
            auto f = random_poly(rng, *spec, gg);
            CHECK(parse_poly(to_canonical_string(f), *spec, gg) == f);
        }
    }

    // extension-field coefficients parenthesize when they contain '+'
    auto f4 = make_field(2, 2);
    auto c = element(*f4, 3); // 1+t
    auto f = SparsePoly::variable(*f4, g, 1, 1) * c +
             SparsePoly::constant(*f4, g, c);
    auto s = to_canonical_string(f);
    CHECK(s == "(1+t)*x[1,1] + (1+t)");
    CHECK(parse_poly(s, *f4, g) == f);

    CHECK_THROWS_AS(parse_poly("x[9,9]", *f2, g), ParseError);
    CHECK_THROWS_AS(parse_poly("", *f2, g), ParseError);
}

TEST_CASE("derivative rule") {
    auto f3 = make_field(3, 1);
    VarGrid g{1, 2};
    auto x = SparsePoly::variable(*f3, g, 1, 1);
    // d/dx (x^2) = 2x; d/dx (x^3) = 0 in char 3
    CHECK(derivative(pow(x, 2), 1, 1) == x * element(*f3, 2));
    CHECK(derivative(pow(x, 3), 1, 1).is_zero());
    CHECK(derivative(pow(x, 4), 1, 1) == pow(x, 3));
    CHECK(derivative(SparsePoly::variable(*f3, g, 1, 2), 1, 1).is_zero());
}

TEST_CASE("pow via base-p decomposition") {
    SplitMix64 rng(91);
    auto f3 = make_field(3, 1);
    VarGrid g{1, 2};
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_poly(rng, *f3, g, 3, 1);
        auto naive = SparsePoly::one(*f3, g);
        for (int i = 0; i < 7; ++i) naive = naive * f;
        CHECK(pow(f, 7) == naive);
    }
    CHECK(pow(SparsePoly::zero(*f3, g), 5).is_zero());
    CHECK(pow(SparsePoly::zero(*f3, g), 0).is_one());
}

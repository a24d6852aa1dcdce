#include <doctest.h>

#include "invforge/verify.hpp"

using namespace invforge;
using namespace invforge::gf;
using namespace invforge::mpoly;
using namespace invforge::groups;
using namespace invforge::invariants;
using namespace invforge::verify;

TEST_CASE("invariance_report examples") {
    auto f2 = make_field(2, 1);
    VarGrid g{1, 2};
    auto c21 = dickson_c(2, 1, 1, g, *f2);
    auto gl = enumerate_group(GroupKind::GL, 2, *f2);
    std::vector<ratexpr::RatExpr> gens = {ratexpr::RatExpr::from_poly(c21)};
    auto rep = invariance_report(gens, gl, InvarianceMode::Invariant);
    CHECK(rep.passed());

    // ell_0 is det-invariant; restricted to SL that is plain invariance
    auto f3 = make_field(3, 1);
    auto fam = steinberg_build(2, 2, *f3);
    SplitMix64 rng(77);
    std::vector<GroupElement> sl;
    for (int i = 0; i < 20; ++i)
        sl.push_back(random_element(GroupKind::SL, 2, *f3, nullptr, rng));
    std::vector<ratexpr::RatExpr> ell0 = {
        ratexpr::RatExpr::from_poly(fam.ell0())};
    CHECK(invariance_report(ell0, sl, InvarianceMode::DetInvariant).passed());
    CHECK(invariance_report(ell0, sl, InvarianceMode::Invariant).passed());

    // corrupted generator fails with a witness
    auto bad = ratexpr::RatExpr::from_poly(
        c21 + SparsePoly::variable(*f2, g, 1, 1));
    auto rep2 =
        invariance_report({bad}, gl, InvarianceMode::Invariant);
    CHECK(rep2.failed());
    CHECK(rep2.witness.contains("matrix"));
}

TEST_CASE("jacobian independence basics") {
    auto f3 = make_field(3, 1);
    VarGrid g{1, 2};
    auto x = ratexpr::RatExpr::from_poly(SparsePoly::variable(*f3, g, 1, 1));
    auto y = ratexpr::RatExpr::from_poly(SparsePoly::variable(*f3, g, 1, 2));
    auto rep = jacobian_independence({x, y}, g, 5);
    CHECK(rep.passed());
    CHECK(rep.witness.at("rank") == 2);

    // dependent pair: rank never reaches 2, inconclusive by design
    auto x2 = ratexpr::RatExpr::from_poly(
        SparsePoly::variable(*f3, g, 1, 1, 2));
    auto rep2 = jacobian_independence({x, x2}, g, 5);
    CHECK(rep2.inconclusive());
    CHECK(rep2.extra.at("best_rank") == 1);

    CHECK_THROWS_AS(jacobian_independence({x, y, x2}, g, 1), SizeMismatch);
}

TEST_CASE("jacobian passes for the steinberg families") {
    struct Case {
        std::uint32_t p;
        int n, m;
    };
    for (auto [p, n, m] :
         {Case{2, 2, 2}, Case{2, 2, 3}, Case{3, 2, 2}, Case{2, 3, 2}}) {
        auto spec = make_field(p, 1);
        auto fam = steinberg_build(m, n, *spec);
        auto rep = jacobian_independence(fam.generators(), fam.grid(), 42);
        CAPTURE(p);
        CAPTURE(n);
        CAPTURE(m);
        CHECK(rep.passed());
        CHECK(rep.witness.at("rank") == m * n);
    }
}

TEST_CASE("jacobian passes for the bilinear families") {
    using classical::Kind;
    using classical::theorem41_generators;
    auto wrap = [](const classical::BilinearFamily& fam) {
        std::vector<ratexpr::RatExpr> out;
        for (const auto& g : fam.generators)
            out.push_back(ratexpr::RatExpr::from_poly(g.poly));
        return out;
    };

    auto f3 = make_field(3, 1);
    auto a = FormMatrix::standard(FormKind::Symmetric, 2, *f3);
    auto orth = theorem41_generators(Kind::Orthogonal, a, 2);
    auto rep = jacobian_independence(wrap(orth), orth.grid, 9);
    CHECK(rep.passed());
    CHECK(rep.witness.at("rank") == 4);

    auto f2 = make_field(2, 1);
    auto k = FormMatrix::standard(FormKind::Alternate, 2, *f2);
    auto sp = theorem41_generators(Kind::Symplectic, k, 2);
    auto rep2 = jacobian_independence(wrap(sp), sp.grid, 9);
    CHECK(rep2.passed());
    CHECK(rep2.witness.at("rank") == 4);

    auto f9 = make_field(3, 2);
    auto h = FormMatrix::standard(FormKind::Hermitian, 2, *f9);
    auto uni = theorem41_generators(Kind::Unitary, h, 1);
    auto rep3 = jacobian_independence(wrap(uni), uni.grid, 9);
    CHECK(rep3.passed());
    CHECK(rep3.witness.at("rank") == 2);
}

TEST_CASE("stabilizer enumeration at (2,2) and (3,2)") {
    auto f2 = make_field(2, 1);
    auto fam = steinberg_build(2, 2, *f2);
    auto rep = stabilizer_enumeration(fam);
    CHECK(rep.passed());
    CHECK(rep.extra.at("tuples") == 36);
    CHECK(rep.extra.at("fixing_count") == 6);

    auto f3 = make_field(3, 1);
    auto fam3 = steinberg_build(2, 2, *f3);
    auto rep3 = stabilizer_enumeration(fam3);
    CHECK(rep3.passed());
    CHECK(rep3.extra.at("tuples") == 2304);
    CHECK(rep3.extra.at("fixing_count") == 48);

    CHECK_THROWS_AS(stabilizer_enumeration(fam3, 100), CapExceeded);
    auto fam_rect = steinberg_build(3, 2, *f2);
    CHECK_THROWS_AS(stabilizer_enumeration(fam_rect), SizeMismatch);
}

TEST_CASE("eta membership checks") {
    auto f2 = make_field(2, 1);
    auto fam = steinberg_build(2, 2, *f2);
    auto rep = eta_membership_check(fam, 2);
    CHECK(rep.passed());
    CHECK(rep.extra.at("f_s_is_one") == true); // eta_2 = ell_0 at n = 2

    auto fam3 = steinberg_build(3, 3, *f2);
    CHECK(eta_membership_check(fam3, 2).passed());
    CHECK(eta_membership_check(fam3, 3).passed());

    auto f3 = make_field(3, 1);
    auto fam33 = steinberg_build(2, 2, *f3);
    CHECK(eta_membership_check(fam33, 2).passed());

    CHECK_THROWS_AS(eta_membership_check(fam, 3), IndexOutOfRange);
}

TEST_CASE("corrupted eta probe is detected by the action") {
    // swapping a sign in eta over F_3 breaks diagonal invariance
    auto f3 = make_field(3, 1);
    auto fam = steinberg_build(2, 2, *f3);
    VarGrid g = fam.grid();
    auto v = [&](int i, int j) { return SparsePoly::variable(*f3, g, i, j); };
    auto eta = v(1, 1) * v(2, 2) - v(2, 1) * v(1, 2);       // = ell_0
    auto corrupted = v(1, 1) * v(2, 2) + v(2, 1) * v(1, 2); // sign swapped
    auto eta_pow = pow(eta, 2), bad_pow = pow(corrupted, 2);
    bool good_fixed = true, bad_fixed = true;
    for (const auto& s : enumerate_group(GroupKind::GL, 2, *f3)) {
        if (act(s.matrix(), eta_pow) != eta_pow) good_fixed = false;
        if (act(s.matrix(), bad_pow) != bad_pow) bad_fixed = false;
    }
    CHECK(good_fixed);
    CHECK_FALSE(bad_fixed);
}

TEST_CASE("product element validation and action") {
    auto f2 = make_field(2, 1);
    auto fam = steinberg_build(2, 2, *f2);
    auto id = FqMatrix::identity(*f2, 2);
    ProductGroupElement diag({id, id});
    CHECK(diag.act(fam.ell0()) == fam.ell0());
    CHECK_THROWS_AS(ProductGroupElement({}), SizeMismatch);
    FqMatrix m3(*f2, 3, 3);
    CHECK_THROWS_AS(ProductGroupElement({id, m3}), SizeMismatch);
}

TEST_CASE("reports replay deterministically") {
    auto f2 = make_field(2, 1);
    auto fam = steinberg_build(2, 2, *f2);
    auto a = stabilizer_enumeration(fam).to_json(false);
    auto b = stabilizer_enumeration(fam).to_json(false);
    CHECK(a == b);

    auto gens = fam.generators();
    auto j1 = jacobian_independence(gens, fam.grid(), 1234).to_json(false);
    auto j2 = jacobian_independence(gens, fam.grid(), 1234).to_json(false);
    CHECK(j1 == j2);
}

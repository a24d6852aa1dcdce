#include <doctest.h>

#include "invforge/classical.hpp"

using namespace invforge;
using namespace invforge::gf;
using namespace invforge::mpoly;
using namespace invforge::groups;
using namespace invforge::classical;

TEST_CASE("bilinear invariant examples") {
    auto f3 = make_field(3, 1);
    auto a = FormMatrix::standard(FormKind::Symmetric, 2, *f3);
    VarGrid g{1, 2};
    auto p0 = bilinear_invariant(Kind::Orthogonal, a, 1, 1, 0, g);
    CHECK(to_canonical_string(p0) == "x[1,1]^2 + x[1,2]^2");
    auto p1 = bilinear_invariant(Kind::Orthogonal, a, 1, 1, 1, g);
    CHECK(to_canonical_string(p1) == "x[1,1]^4 + x[1,2]^4");

    auto f2 = make_field(2, 1);
    auto k = FormMatrix::standard(FormKind::Alternate, 2, *f2);
    VarGrid g2{1, 2};
    CHECK_THROWS_AS(bilinear_invariant(Kind::Symplectic, k, 1, 1, 0, g2),
                    KindParamMismatch);
    CHECK(alternation_value(k, 1, g2).is_zero());
    // alternation is identical zero at size 4 as well
    auto k4 = FormMatrix::standard(FormKind::Alternate, 4, *f2);
    CHECK(alternation_value(k4, 1, VarGrid{1, 4}).is_zero());
    auto k4f3 = FormMatrix::standard(FormKind::Alternate, 4, *f3);
    CHECK(alternation_value(k4f3, 2, VarGrid{2, 4}).is_zero());
}

TEST_CASE("theorem41 generator families") {
    auto f2 = make_field(2, 1);
    auto k = FormMatrix::standard(FormKind::Alternate, 2, *f2);
    auto sp = theorem41_generators(Kind::Symplectic, k, 1);
    CHECK(sp.generators.size() == 2); // k = 1, 2
    CHECK(sp.n == 1);

    auto f3 = make_field(3, 1);
    auto a = FormMatrix::standard(FormKind::Symmetric, 2, *f3);
    auto orth = theorem41_generators(Kind::Orthogonal, a, 2);
    CHECK(orth.generators.size() == 4); // m*n = 2*2

    auto f9 = make_field(3, 2);
    auto h = FormMatrix::standard(FormKind::Hermitian, 2, *f9);
    auto uni = theorem41_generators(Kind::Unitary, h, 1);
    CHECK(uni.generators.size() == 2); // k = 0, 1

    // counts equal m * dim(W) for every family
    CHECK(sp.generators.size() == 1u * 2);
    CHECK(orth.generators.size() == 2u * 2);
    CHECK(uni.generators.size() == 1u * 2);
}

TEST_CASE("orth_42 and orth_43 hold exactly at q=3, n=2") {
    auto f3 = make_field(3, 1);
    auto id = FormMatrix::standard(FormKind::Symmetric, 2, *f3);
    CHECK(check_orth_42(id, 2, 2).passed());
    CHECK(check_orth_43(id, 2, 2).passed());

    FqMatrix d(*f3, 2, 2);
    d.at(0, 0) = one(*f3);
    d.at(1, 1) = element(*f3, 2);
    FormMatrix diag12(FormKind::Symmetric, d);
    CHECK(check_orth_42(diag12, 2, 2).passed());
    CHECK(check_orth_43(diag12, 2, 2).passed());

    // a bigger case for coverage
    auto id3 = FormMatrix::standard(FormKind::Symmetric, 3, *f3);
    CHECK(check_orth_42(id3, 3, 3).passed());
    CHECK(check_orth_43(id3, 3, 2).passed());
}

TEST_CASE("unit_44 holds exactly over F_9, n=2") {
    auto f9 = make_field(3, 2);
    auto h = FormMatrix::standard(FormKind::Hermitian, 2, *f9);
    CHECK(check_unit_44(h, 2, 2).passed());
}

TEST_CASE("sp_row identity") {
    auto f2 = make_field(2, 1);
    auto k2 = FormMatrix::standard(FormKind::Alternate, 2, *f2);
    auto rep = check_sp_row(k2, 2, 1);
    CHECK(rep.passed());
    auto k4 = FormMatrix::standard(FormKind::Alternate, 4, *f2);
    CHECK(check_sp_row(k4, 4, 1).passed());

    // i >= 2: the identity still holds; Q^{(0)} fixedness is recorded only
    auto rep2 = check_sp_row(k2, 2, 2, 11);
    CHECK(rep2.passed());
    CHECK(rep2.extra.contains("q0_fixed_by_samples"));
}

TEST_CASE("transfer quotient identities") {
    auto f3 = make_field(3, 1);
    auto a = FormMatrix::standard(FormKind::Symmetric, 2, *f3);
    CHECK(transfer_quotient(Kind::Orthogonal, a, 2, 2, 1).passed());
    CHECK(transfer_quotient(Kind::Orthogonal, a, 3, 3, 2).passed());

    auto f2 = make_field(2, 1);
    auto k = FormMatrix::standard(FormKind::Alternate, 2, *f2);
    CHECK(transfer_quotient(Kind::Symplectic, k, 2, 2, 1).passed());

    auto f9 = make_field(3, 2);
    auto h = FormMatrix::standard(FormKind::Hermitian, 2, *f9);
    CHECK(transfer_quotient(Kind::Unitary, h, 2, 2, 1).passed());

    CHECK_THROWS_AS(transfer_quotient(Kind::Orthogonal, a, 1, 1, 1),
                    BranchUnsupported);
}

TEST_CASE("generators are fixed by their groups") {
    // Sp_2(F_2): all 6 elements
    auto f2 = make_field(2, 1);
    auto k = FormMatrix::standard(FormKind::Alternate, 2, *f2);
    auto sp = theorem41_generators(Kind::Symplectic, k, 2);
    for (const auto& s :
         enumerate_group(GroupKind::Sp, 2, *f2, &k)) {
        for (const auto& gen : sp.generators)
            CHECK(act(s.matrix(), gen.poly) == gen.poly);
    }

    // O_2(F_3, I): 8 elements by filter
    auto f3 = make_field(3, 1);
    auto a = FormMatrix::standard(FormKind::Symmetric, 2, *f3);
    auto orth = theorem41_generators(Kind::Orthogonal, a, 2);
    auto o2 = enumerate_group(GroupKind::O, 2, *f3, &a);
    CHECK(o2.size() == 8);
    for (const auto& s : o2)
        for (const auto& gen : orth.generators)
            CHECK(act(s.matrix(), gen.poly) == gen.poly);

    // sampled Sp_4(F_2) and U_2(F_9, I)
    SplitMix64 rng(31337);
    auto k4 = FormMatrix::standard(FormKind::Alternate, 4, *f2);
    auto sp4 = theorem41_generators(Kind::Symplectic, k4, 1);
    for (int t = 0; t < 10; ++t) {
        auto s = random_element(GroupKind::Sp, 4, *f2, &k4, rng);
        for (const auto& gen : sp4.generators)
            CHECK(act(s.matrix(), gen.poly) == gen.poly);
    }
    auto f9 = make_field(3, 2);
    auto h = FormMatrix::standard(FormKind::Hermitian, 2, *f9);
    auto uni = theorem41_generators(Kind::Unitary, h, 2);
    for (int t = 0; t < 10; ++t) {
        auto s = random_element(GroupKind::U, 2, *f9, &h, rng);
        for (const auto& gen : uni.generators)
            CHECK(act(s.matrix(), gen.poly) == gen.poly);
    }
}

TEST_CASE("chu converse by exhaustive enumeration") {
    auto f3 = make_field(3, 1);
    auto a = FormMatrix::standard(FormKind::Symmetric, 2, *f3);
    auto rep = check_chu_converse(Kind::Orthogonal, a);
    CHECK(rep.passed());
    CHECK(rep.extra.at("gl_order") == 48);
    CHECK(rep.extra.at("member_count") == 8);
    CHECK(rep.extra.at("fixing_count") == 8);

    auto f2 = make_field(2, 1);
    auto k = FormMatrix::standard(FormKind::Alternate, 2, *f2);
    auto rep2 = check_chu_converse(Kind::Symplectic, k);
    CHECK(rep2.passed());
    CHECK(rep2.extra.at("member_count") == 6); // Sp_2(F_2) = SL_2(F_2) = GL

    auto f9 = make_field(3, 2);
    auto h = FormMatrix::standard(FormKind::Hermitian, 1, *f9);
    auto rep3 = check_chu_converse(Kind::Unitary, h);
    CHECK(rep3.passed());
    CHECK(rep3.extra.at("member_count") == 4); // norm-one circle q+1
}

TEST_CASE("hermitian conjugate-swap symmetry at random points") {
    auto f9 = make_field(3, 2);
    auto h = FormMatrix::standard(FormKind::Hermitian, 2, *f9);
    VarGrid g{2, 2};
    auto h12 = bilinear_invariant(Kind::Unitary, h, 1, 2, 0, g);
    auto h21 = bilinear_invariant(Kind::Unitary, h, 2, 1, 0, g);
    SplitMix64 rng(8);
    for (int t = 0; t < 50; ++t) {
        std::vector<FieldElement> pt;
        for (int v = 0; v < g.var_count(); ++v)
            pt.push_back(element(*f9, (std::uint32_t)rng.below(9)));
        auto v1 = evaluate(h12, pt);
        auto v2 = evaluate(h21, pt);
        CHECK(conjugate(v1) == v2);
    }
}

TEST_CASE("odd characteristic is enforced") {
    auto f2 = make_field(2, 1);
    CHECK_THROWS_AS(FormMatrix::standard(FormKind::Symmetric, 2, *f2),
                    EvenCharForbidden);
    auto f4 = make_field(2, 2);
    CHECK_THROWS_AS(FormMatrix::standard(FormKind::Hermitian, 2, *f4),
                    EvenCharForbidden);
}

TEST_CASE("classical dispatcher") {
    auto f3 = make_field(3, 1);
    auto rep = identity_check_classical(*f3, "orth_42", {{"n", 2}, {"j", 2}});
    CHECK(rep.passed());
    auto rep2 = identity_check_classical(
        *f3, "orth_42", {{"n", 2}, {"j", 2}, {"form", "1,0;0,2"}});
    CHECK(rep2.passed());
    auto f2 = make_field(2, 1);
    auto rep3 =
        identity_check_classical(*f2, "sp_row", {{"size", 2}, {"i", 1}});
    CHECK(rep3.passed());
    auto rep4 = identity_check_classical(
        *f2, "transfer",
        {{"kind", "symplectic"}, {"size", 2}, {"m", 2}, {"i", 2}, {"j", 1}});
    CHECK(rep4.passed());
    CHECK_THROWS_AS(identity_check_classical(*f3, "nope", {}), ConfigInvalid);
}

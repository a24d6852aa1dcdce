#ifndef INVFORGE_RATEXPR_HPP
#define INVFORGE_RATEXPR_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "invforge/mpoly.hpp"

namespace invforge::ratexpr {

/// num/den over SparsePoly. Never GCD-reduced; equality is semantic
/// (cross-multiplication or randomized evaluation), not structural.
class RatExpr {
public:
    RatExpr(mpoly::SparsePoly num, mpoly::SparsePoly den);
    static RatExpr from_poly(mpoly::SparsePoly f);

    const mpoly::SparsePoly& num() const { return num_; }
    const mpoly::SparsePoly& den() const { return den_; }
    const gf::FieldSpec& spec() const { return num_.spec(); }
    const mpoly::VarGrid& grid() const { return num_.grid(); }
    bool is_zero() const { return num_.is_zero(); }

    friend RatExpr operator+(const RatExpr& a, const RatExpr& b);
    friend RatExpr operator-(const RatExpr& a, const RatExpr& b);
    friend RatExpr operator*(const RatExpr& a, const RatExpr& b);

private:
    mpoly::SparsePoly num_, den_;
};

RatExpr pow(const RatExpr& a, std::uint64_t k);
/// Both parts to the q^k; equals pow(a, q^k) semantically.
RatExpr frobenius_power(const RatExpr& a, std::uint32_t k);

/// a.num*b.den == b.num*a.den as exact polynomial equality.
bool equal_exact(const RatExpr& a, const RatExpr& b);

/// Maps F_{p^e} into F_{p^(e*s)} by sending t to the smallest root of the
/// source modulus in the target field. Deterministic.
class Embedding {
public:
    Embedding(gf::SpecPtr from, gf::SpecPtr to);
    const gf::FieldSpec& from() const { return *from_; }
    const gf::FieldSpec& to() const { return *to_; }
    gf::FieldElement map(gf::FieldElement a) const;

private:
    gf::SpecPtr from_, to_;
    std::vector<std::uint32_t> image_; // packed from-value -> packed to-value
};

/// Evaluate f (over Embedding::from) at a point of Embedding::to.
gf::FieldElement eval_in_extension(const mpoly::SparsePoly& f,
                                   const Embedding& emb,
                                   std::span<const gf::FieldElement> point);

/// Smallest extension F_{q^s} with q^s > 4*degree_bound, under the field
/// cap. Throws DegreeBoundOverflow when no such s exists.
gf::SpecPtr pick_sampling_field(const gf::FieldSpec& base,
                                std::uint64_t degree_bound);

struct ProbResult {
    bool equal;
    gf::SpecPtr sample_field;
    int trials_run;
    // witness point (in sample_field) when unequal
    std::optional<std::vector<gf::FieldElement>> witness;
};

/// Schwartz-Zippel equality test: per trial the failure bound is <= 1/4,
/// so `trials` independent agreeing trials bound error by 4^-trials.
/// Trial t draws from splitmix64 seeded with (seed XOR t); points where
/// either denominator vanishes are skipped.
ProbResult equal_probabilistic(const RatExpr& a, const RatExpr& b, int trials,
                               std::uint64_t seed);

struct EqOptions {
    std::uint64_t exact_term_limit = 1000000; // cross-multiplied estimate
    int trials = 20;
    std::uint64_t seed = 0;
};

struct EqOutcome {
    bool equal;
    std::string method; // "exact" | "probabilistic"
    int trials = 0;
    gf::SpecPtr sample_field; // probabilistic only
    std::optional<std::vector<gf::FieldElement>> witness;
};

/// Exact when the cross-multiplied term-count estimate stays under
/// exact_term_limit, probabilistic otherwise.
EqOutcome equal_semantic(const RatExpr& a, const RatExpr& b,
                         const EqOptions& opts = {});

} // namespace invforge::ratexpr

#endif

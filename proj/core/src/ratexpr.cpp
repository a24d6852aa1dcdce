#include "invforge/ratexpr.hpp"

#include "invforge/rng.hpp"

namespace invforge::ratexpr {

using gf::FieldElement;
using mpoly::SparsePoly;

RatExpr::RatExpr(SparsePoly num, SparsePoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw ZeroDenominator("rational with zero denominator");
    if (num_.spec_ptr() != den_.spec_ptr())
        throw SpecMismatch("num/den over different specs");
    if (!(num_.grid() == den_.grid()))
        throw GridMismatch("num/den on different grids");
}

RatExpr RatExpr::from_poly(SparsePoly f) {
    auto one = SparsePoly::one(f.spec(), f.grid());
    return RatExpr(std::move(f), std::move(one));
}

RatExpr operator+(const RatExpr& a, const RatExpr& b) {
    return RatExpr(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}
RatExpr operator-(const RatExpr& a, const RatExpr& b) {
    return RatExpr(a.num() * b.den() - b.num() * a.den(), a.den() * b.den());
}
RatExpr operator*(const RatExpr& a, const RatExpr& b) {
    return RatExpr(a.num() * b.num(), a.den() * b.den());
}

RatExpr pow(const RatExpr& a, std::uint64_t k) {
    return RatExpr(mpoly::pow(a.num(), k), mpoly::pow(a.den(), k));
}

RatExpr frobenius_power(const RatExpr& a, std::uint32_t k) {
    return RatExpr(mpoly::frobenius_power(a.num(), k),
                   mpoly::frobenius_power(a.den(), k));
}

bool equal_exact(const RatExpr& a, const RatExpr& b) {
    return a.num() * b.den() == b.num() * a.den();
}

Embedding::Embedding(gf::SpecPtr from, gf::SpecPtr to)
    : from_(std::move(from)), to_(std::move(to)) {
    if (from_->p() != to_->p())
        throw SpecMismatch("embedding across characteristics");
    if (to_->e() % from_->e() != 0)
        throw SpecMismatch("source degree does not divide target degree");
    // image of t: smallest root (by packed value) of the source modulus
    FieldElement root = gf::zero(*to_);
    if (from_->e() > 1) {
        bool found = false;
        const auto& mod = from_->modulus();
        for (std::uint32_t v = 0; v < to_->q(); ++v) {
            auto x = gf::element(*to_, v);
            auto acc = gf::zero(*to_);
            for (std::size_t i = mod.size(); i-- > 0;)
                acc = acc * x + gf::from_int(*to_, mod[i]);
            if (acc.is_zero()) {
                root = x;
                found = true;
                break;
            }
        }
        if (!found)
            throw SpecMismatch("modulus has no root in target field");
    }
    image_.resize(from_->q());
    for (std::uint32_t v = 0; v < from_->q(); ++v) {
        auto digits = gf::element(*from_, v).coeffs();
        auto acc = gf::zero(*to_);
        for (std::size_t i = digits.size(); i-- > 0;)
            acc = acc * root + gf::from_int(*to_, digits[i]);
        image_[v] = acc.value();
    }
}

FieldElement Embedding::map(FieldElement a) const {
    if (a.spec_ptr() != from_.get())
        throw SpecMismatch("embedding applied to foreign element");
    return gf::element(*to_, image_[a.value()]);
}

FieldElement eval_in_extension(const SparsePoly& f, const Embedding& emb,
                               std::span<const FieldElement> point) {
    if (f.spec_ptr() != &emb.from())
        throw SpecMismatch("polynomial spec does not match embedding");
    const int nv = f.grid().var_count();
    if (point.size() != (std::size_t)nv)
        throw MissingAssignment("evaluation point has wrong arity");
    auto acc = gf::zero(emb.to());
    for (const auto& [e, c] : f.terms()) {
        auto v = emb.map(c);
        for (int i = 0; i < nv; ++i)
            if (e[i] > 0) v = v * gf::pow(point[i], e[i]);
        acc = acc + v;
    }
    return acc;
}

gf::SpecPtr pick_sampling_field(const gf::FieldSpec& base,
                                std::uint64_t degree_bound) {
    const std::uint64_t need = 4 * degree_bound;
    std::uint64_t qs = 1;
    for (std::uint32_t s = 1;; ++s) {
        if (__builtin_mul_overflow(qs, (std::uint64_t)base.q(), &qs))
            throw DegreeBoundOverflow("degree bound too large for sampling");
        if (qs > gf::FieldSpec::kDefaultCap)
            throw DegreeBoundOverflow(
                "no sampling field under the cap exceeds 4*degree bound");
        if (qs > need) return gf::make_field(base.p(), base.e() * s);
    }
}

ProbResult equal_probabilistic(const RatExpr& a, const RatExpr& b, int trials,
                               std::uint64_t seed) {
    if (trials < 1) throw Error("BadArgument", "trials must be >= 1");
    if (a.spec().p() != b.spec().p() || a.num().spec_ptr() != b.num().spec_ptr())
        throw SpecMismatch("comparing expressions over different specs");
    if (!(a.grid() == b.grid()))
        throw GridMismatch("comparing expressions on different grids");

    const std::uint64_t bound =
        std::max(a.num().total_degree() + b.den().total_degree(),
                 b.num().total_degree() + a.den().total_degree());
    auto base = gf::make_field(a.spec().p(), a.spec().e());
    auto field = pick_sampling_field(*base, std::max<std::uint64_t>(bound, 1));
    Embedding emb(base, field);

    const int nv = a.grid().var_count();
    ProbResult res{true, field, 0, std::nullopt};
    for (int t = 0; t < trials; ++t) {
        SplitMix64 rng(seed ^ (std::uint64_t)t);
        std::vector<FieldElement> pt(nv, gf::zero(*field));
        bool ok = false;
        for (int attempt = 0; attempt < 10000 && !ok; ++attempt) {
            for (auto& x : pt)
                x = gf::element(*field,
                                (std::uint32_t)rng.below(field->q()));
            ok = !eval_in_extension(a.den(), emb, pt).is_zero() &&
                 !eval_in_extension(b.den(), emb, pt).is_zero();
        }
        if (!ok)
            throw DegreeBoundOverflow(
                "could not sample a point avoiding denominator zeros");
        res.trials_run = t + 1;
        auto lhs = eval_in_extension(a.num(), emb, pt) *
                   eval_in_extension(b.den(), emb, pt);
        auto rhs = eval_in_extension(b.num(), emb, pt) *
                   eval_in_extension(a.den(), emb, pt);
        if (lhs != rhs) {
            res.equal = false;
            res.witness = std::move(pt);
            return res;
        }
    }
    return res;
}

EqOutcome equal_semantic(const RatExpr& a, const RatExpr& b,
                         const EqOptions& opts) {
    const std::uint64_t estimate =
        (std::uint64_t)a.num().term_count() * b.den().term_count() +
        (std::uint64_t)b.num().term_count() * a.den().term_count();
    if (estimate <= opts.exact_term_limit) {
        return {equal_exact(a, b), "exact", 0, nullptr, std::nullopt};
    }
    auto pr = equal_probabilistic(a, b, opts.trials, opts.seed);
    return {pr.equal, "probabilistic", pr.trials_run, pr.sample_field,
            pr.witness};
}

} // namespace invforge::ratexpr

#ifndef INVFORGE_GF_HPP
#define INVFORGE_GF_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "invforge/errors.hpp"

namespace invforge::gf {

class FieldSpec;
using SpecPtr = std::shared_ptr<const FieldSpec>;

/// Description of F_{p^e} in a fixed polynomial-basis representation.
///
/// The modulus is the lexicographically smallest monic irreducible of
/// degree e over F_p (coefficients compared low-degree-first), so a given
/// (p, e) always denotes the same field representation. Specs are interned:
/// make_field returns the same object for the same (p, e), and elements
/// compare specs by pointer.
class FieldSpec {
public:
    static constexpr std::uint32_t kDefaultCap = 1u << 16;

    std::uint32_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    std::uint32_t q() const { return q_; }
    bool is_prime_field() const { return e_ == 1; }

    /// Monic modulus, length e+1, coefficient of t^i at index i.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }

    // Element values are coefficient vectors packed in base p
    // (a_0 + a_1*p + ... + a_{e-1}*p^{e-1}); always < q.
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t neg(std::uint32_t a) const;
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t inv(std::uint32_t a) const;
    std::uint32_t pow(std::uint32_t a, std::uint64_t k) const;

    /// a^(p^k); the Frobenius automorphism iterated k times.
    std::uint32_t frobenius(std::uint32_t a, std::uint64_t k) const;

private:
    friend SpecPtr make_field(std::uint32_t, std::uint32_t, std::uint32_t);
    FieldSpec(std::uint32_t p, std::uint32_t e,
              std::vector<std::uint32_t> modulus);

    std::uint32_t mul_nocache(std::uint32_t a, std::uint32_t b) const;

    std::uint32_t p_, e_, q_;
    std::vector<std::uint32_t> modulus_;
    // Dense tables for small fields; empty above kTableLimit elements.
    static constexpr std::uint32_t kTableLimit = 256;
    std::vector<std::uint16_t> mul_table_;
    std::vector<std::uint16_t> inv_table_;
};

/// Element of F_{p^e}; a packed coefficient vector plus its spec.
class FieldElement {
public:
    FieldElement() : spec_(nullptr), v_(0) {}
    FieldElement(const FieldSpec* spec, std::uint32_t v) : spec_(spec), v_(v) {}

    const FieldSpec& spec() const { return *spec_; }
    const FieldSpec* spec_ptr() const { return spec_; }
    std::uint32_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }

    /// Coefficients a_0..a_{e-1} of the polynomial-basis representation.
    std::vector<std::uint32_t> coeffs() const;

    friend FieldElement operator+(FieldElement a, FieldElement b);
    friend FieldElement operator-(FieldElement a, FieldElement b);
    friend FieldElement operator*(FieldElement a, FieldElement b);
    FieldElement operator-() const;
    bool operator==(const FieldElement& o) const {
        return spec_ == o.spec_ && v_ == o.v_;
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

private:
    const FieldSpec* spec_;
    std::uint32_t v_;
};

/// Deterministic spec for F_{p^e}. Throws NotPrime, DegreeOutOfRange,
/// CapExceeded. Returned specs are interned and live for the program.
SpecPtr make_field(std::uint32_t p, std::uint32_t e,
                   std::uint32_t cap = FieldSpec::kDefaultCap);

FieldElement zero(const FieldSpec& spec);
FieldElement one(const FieldSpec& spec);
/// Element from a packed value (< q); from_int reduces an integer mod p
/// into the prime subfield.
FieldElement element(const FieldSpec& spec, std::uint32_t packed);
FieldElement from_int(const FieldSpec& spec, std::int64_t n);

FieldElement invert(FieldElement a);                    // throws DivisionByZero
FieldElement pow(FieldElement a, std::uint64_t k);

enum class FrobBase { p, q };

/// a^{p^k} (base p) or a^{q^k} (base q, the identity on the element's own
/// field). The F_{q^2}/F_q involution is `conjugate` below.
FieldElement frobenius_power(FieldElement a, std::uint64_t k, FrobBase base);

/// For even extension degree: a ^ (p^(e/2)), the involution fixing the
/// index-2 subfield. Throws DegreeOutOfRange for odd e.
FieldElement conjugate(FieldElement a);

/// All q elements in packed-value order (coefficient-vector lexicographic
/// with a_{e-1} most significant).
std::vector<FieldElement> enumerate_elements(const FieldSpec& spec);

/// Text form: decimal for prime fields, "a0+a1*t+..." ascending degree with
/// zero terms omitted and unit coefficients on t-powers elided.
std::string to_string(FieldElement a);
FieldElement parse_element(const std::string& text, const FieldSpec& spec);

} // namespace invforge::gf

#endif

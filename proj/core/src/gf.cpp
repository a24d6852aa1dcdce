#include "invforge/gf.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <sstream>

namespace invforge::gf {

namespace {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

using Digits = std::vector<std::uint32_t>;

Digits unpack(std::uint32_t v, std::uint32_t p, std::uint32_t e) {
    Digits d(e, 0);
    for (std::uint32_t i = 0; i < e && v; ++i) {
        d[i] = v % p;
        v /= p;
    }
    return d;
}

std::uint32_t pack(const Digits& d, std::uint32_t p) {
    std::uint32_t v = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) v = v * p + *it;
    return v;
}

// Polynomial remainder of `a` (any degree) by the monic `mod` over F_p.
Digits poly_mod(Digits a, const Digits& mod, std::uint32_t p) {
    const std::size_t m = mod.size() - 1;
    while (a.size() > m) {
        std::uint32_t lead = a.back();
        std::size_t shift = a.size() - 1 - m;
        if (lead != 0) {
            for (std::size_t i = 0; i <= m; ++i) {
                std::uint64_t cur = a[shift + i];
                std::uint64_t s = (std::uint64_t)lead * mod[i] % p;
                a[shift + i] = (std::uint32_t)((cur + p - s) % p);
            }
        }
        a.pop_back();
    }
    return a;
}

Digits poly_mul_mod(const Digits& a, const Digits& b, const Digits& mod,
                    std::uint32_t p) {
    Digits prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] =
                (std::uint32_t)((prod[i + j] + (std::uint64_t)a[i] * b[j]) % p);
    }
    return poly_mod(std::move(prod), mod, p);
}

// True if `f` (monic, degree >= 1, coefficients over F_p) has no monic
// divisor of degree in [1, deg/2]. Trial division; fine for p^e <= 2^16.
bool is_irreducible(const Digits& f, std::uint32_t p) {
    std::uint32_t deg = (std::uint32_t)f.size() - 1;
    for (std::uint32_t d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t v = 0; v < count; ++v) {
            Digits g = unpack((std::uint32_t)v, p, d);
            g.push_back(1); // monic t^d + ...
            Digits r = poly_mod(f, g, p);
            if (std::all_of(r.begin(), r.end(),
                            [](std::uint32_t c) { return c == 0; }))
                return false;
        }
    }
    return true;
}

// Smallest monic irreducible of degree e, coefficients compared
// low-degree-first.
Digits smallest_irreducible(std::uint32_t p, std::uint32_t e) {
    if (e == 1) return {0, 1}; // t
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < e; ++i) count *= p;
    for (std::uint64_t key = 0; key < count; ++key) {
        // key digits give (c_0, ..., c_{e-1}) with c_0 most significant,
        // so increasing key enumerates low-degree-first lexicographic order.
        Digits c(e, 0);
        std::uint64_t k = key;
        for (std::uint32_t i = 0; i < e; ++i) {
            c[e - 1 - i] = (std::uint32_t)(k % p);
            k /= p;
        }
        Digits f = c;
        f.push_back(1);
        if (is_irreducible(f, p)) return f;
    }
    throw DegreeOutOfRange("no irreducible polynomial found"); // unreachable
}

} // namespace

FieldSpec::FieldSpec(std::uint32_t p, std::uint32_t e,
                     std::vector<std::uint32_t> modulus)
    : p_(p), e_(e), modulus_(std::move(modulus)) {
    q_ = 1;
    for (std::uint32_t i = 0; i < e_; ++i) q_ *= p_;
    if (q_ <= kTableLimit) {
        mul_table_.assign((std::size_t)q_ * q_, 0);
        for (std::uint32_t a = 0; a < q_; ++a)
            for (std::uint32_t b = a; b < q_; ++b) {
                std::uint16_t m = (std::uint16_t)mul_nocache(a, b);
                mul_table_[(std::size_t)a * q_ + b] = m;
                mul_table_[(std::size_t)b * q_ + a] = m;
            }
        inv_table_.assign(q_, 0);
        for (std::uint32_t a = 1; a < q_; ++a) {
            for (std::uint32_t b = 1; b < q_; ++b)
                if (mul_table_[(std::size_t)a * q_ + b] == 1) {
                    inv_table_[a] = (std::uint16_t)b;
                    break;
                }
        }
    }
}

std::uint32_t FieldSpec::add(std::uint32_t a, std::uint32_t b) const {
    if (e_ == 1) {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    if (p_ == 2) return a ^ b;
    std::uint32_t out = 0, mul = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        std::uint32_t s = a % p_ + b % p_;
        if (s >= p_) s -= p_;
        out += s * mul;
        mul *= p_;
        a /= p_;
        b /= p_;
    }
    return out;
}

std::uint32_t FieldSpec::neg(std::uint32_t a) const {
    if (e_ == 1) return a == 0 ? 0 : p_ - a;
    if (p_ == 2) return a;
    std::uint32_t out = 0, mul = 1;
    for (std::uint32_t i = 0; i < e_; ++i) {
        std::uint32_t d = a % p_;
        out += (d == 0 ? 0 : p_ - d) * mul;
        mul *= p_;
        a /= p_;
    }
    return out;
}

std::uint32_t FieldSpec::sub(std::uint32_t a, std::uint32_t b) const {
    return add(a, neg(b));
}

std::uint32_t FieldSpec::mul_nocache(std::uint32_t a, std::uint32_t b) const {
    if (e_ == 1) return (std::uint32_t)((std::uint64_t)a * b % p_);
    Digits da = unpack(a, p_, e_), db = unpack(b, p_, e_);
    return pack(poly_mul_mod(da, db, modulus_, p_), p_);
}

std::uint32_t FieldSpec::mul(std::uint32_t a, std::uint32_t b) const {
    if (!mul_table_.empty()) return mul_table_[(std::size_t)a * q_ + b];
    return mul_nocache(a, b);
}

std::uint32_t FieldSpec::pow(std::uint32_t a, std::uint64_t k) const {
    std::uint32_t result = 1, base = a;
    while (k) {
        if (k & 1) result = mul(result, base);
        base = mul(base, base);
        k >>= 1;
    }
    return result;
}

std::uint32_t FieldSpec::inv(std::uint32_t a) const {
    if (a == 0) throw DivisionByZero("inverse of zero");
    if (!inv_table_.empty()) return inv_table_[a];
    return pow(a, (std::uint64_t)q_ - 2);
}

std::uint32_t FieldSpec::frobenius(std::uint32_t a, std::uint64_t k) const {
    k %= e_;
    std::uint32_t out = a;
    for (std::uint64_t i = 0; i < k; ++i) out = pow(out, p_);
    return out;
}

namespace {
std::map<std::pair<std::uint32_t, std::uint32_t>, SpecPtr>& spec_registry() {
    static std::map<std::pair<std::uint32_t, std::uint32_t>, SpecPtr> reg;
    return reg;
}
std::mutex& registry_mutex() {
    static std::mutex m;
    return m;
}
} // namespace

SpecPtr make_field(std::uint32_t p, std::uint32_t e, std::uint32_t cap) {
    if (!is_prime_u32(p)) throw NotPrime("p = " + std::to_string(p));
    if (e < 1 || e > 32) throw DegreeOutOfRange("e = " + std::to_string(e));
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q > cap)
            throw CapExceeded("p^e exceeds cap " + std::to_string(cap));
    }
    std::lock_guard<std::mutex> lock(registry_mutex());
    auto& reg = spec_registry();
    auto it = reg.find({p, e});
    if (it != reg.end()) return it->second;
    SpecPtr spec(new FieldSpec(p, e, smallest_irreducible(p, e)));
    reg[{p, e}] = spec;
    return spec;
}

std::vector<std::uint32_t> FieldElement::coeffs() const {
    return unpack(v_, spec_->p(), spec_->e());
}

static void check_specs(const FieldElement& a, const FieldElement& b) {
    if (a.spec_ptr() != b.spec_ptr())
        throw SpecMismatch("field elements from different specs");
}

FieldElement operator+(FieldElement a, FieldElement b) {
    check_specs(a, b);
    return {a.spec_ptr(), a.spec().add(a.value(), b.value())};
}
FieldElement operator-(FieldElement a, FieldElement b) {
    check_specs(a, b);
    return {a.spec_ptr(), a.spec().sub(a.value(), b.value())};
}
FieldElement operator*(FieldElement a, FieldElement b) {
    check_specs(a, b);
    return {a.spec_ptr(), a.spec().mul(a.value(), b.value())};
}
FieldElement FieldElement::operator-() const {
    return {spec_, spec_->neg(v_)};
}

FieldElement zero(const FieldSpec& spec) { return {&spec, 0}; }
FieldElement one(const FieldSpec& spec) { return {&spec, 1}; }

FieldElement element(const FieldSpec& spec, std::uint32_t packed) {
    if (packed >= spec.q())
        throw DegreeOutOfRange("packed value out of range");
    return {&spec, packed};
}

FieldElement from_int(const FieldSpec& spec, std::int64_t n) {
    std::int64_t r = n % (std::int64_t)spec.p();
    if (r < 0) r += spec.p();
    return {&spec, (std::uint32_t)r};
}

FieldElement invert(FieldElement a) {
    return {a.spec_ptr(), a.spec().inv(a.value())};
}

FieldElement pow(FieldElement a, std::uint64_t k) {
    return {a.spec_ptr(), a.spec().pow(a.value(), k)};
}

FieldElement frobenius_power(FieldElement a, std::uint64_t k, FrobBase base) {
    if (base == FrobBase::p)
        return {a.spec_ptr(), a.spec().frobenius(a.value(), k)};
    // base q: a^(q^k) = frobenius^(e*k), the identity on the element's field
    return {a.spec_ptr(), a.spec().frobenius(a.value(), k * a.spec().e())};
}

FieldElement conjugate(FieldElement a) {
    if (a.spec().e() % 2 != 0)
        throw DegreeOutOfRange("conjugate needs even extension degree");
    return {a.spec_ptr(), a.spec().frobenius(a.value(), a.spec().e() / 2)};
}

std::vector<FieldElement> enumerate_elements(const FieldSpec& spec) {
    std::vector<FieldElement> out;
    out.reserve(spec.q());
    for (std::uint32_t v = 0; v < spec.q(); ++v) out.emplace_back(&spec, v);
    return out;
}

std::string to_string(FieldElement a) {
    const FieldSpec& spec = a.spec();
    if (spec.is_prime_field()) return std::to_string(a.value());
    if (a.is_zero()) return "0";
    auto c = a.coeffs();
    std::ostringstream os;
    bool first = true;
    for (std::uint32_t i = 0; i < spec.e(); ++i) {
        if (c[i] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << c[i];
        } else {
            if (c[i] != 1) os << c[i] << "*";
            os << "t";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

FieldElement parse_element(const std::string& text, const FieldSpec& spec) {
    // Grammar: sum of terms "c", "t", "t^k", "c*t", "c*t^k".
    std::uint32_t acc = 0;
    std::size_t pos = 0;
    auto fail = [&]() -> void {
        throw ParseError("bad field element: '" + text + "'");
    };
    if (text.empty()) fail();
    while (pos < text.size()) {
        std::uint64_t coeff = 1;
        bool saw_coeff = false;
        if (std::isdigit((unsigned char)text[pos])) {
            coeff = 0;
            while (pos < text.size() && std::isdigit((unsigned char)text[pos]))
                coeff = coeff * 10 + (text[pos++] - '0');
            saw_coeff = true;
            if (pos < text.size() && text[pos] == '*') ++pos;
        }
        std::uint32_t deg = 0;
        if (pos < text.size() && text[pos] == 't') {
            ++pos;
            deg = 1;
            if (pos < text.size() && text[pos] == '^') {
                ++pos;
                if (pos >= text.size() || !std::isdigit((unsigned char)text[pos]))
                    fail();
                deg = 0;
                while (pos < text.size() &&
                       std::isdigit((unsigned char)text[pos]))
                    deg = deg * 10 + (text[pos++] - '0');
            }
        } else if (!saw_coeff) {
            fail();
        }
        if (deg >= spec.e())
            throw ParseError("t-degree out of range in '" + text + "'");
        std::uint32_t mul = 1;
        for (std::uint32_t i = 0; i < deg; ++i) mul *= spec.p();
        std::uint32_t term =
            (std::uint32_t)(coeff % spec.p()) * mul; // packed monomial c*t^deg
        acc = spec.add(acc, term);
        if (pos < text.size()) {
            if (text[pos] != '+') fail();
            ++pos;
        }
    }
    if (acc >= spec.q()) fail();
    return {&spec, acc};
}

} // namespace invforge::gf

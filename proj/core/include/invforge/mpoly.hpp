#ifndef INVFORGE_MPOLY_HPP
#define INVFORGE_MPOLY_HPP

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "invforge/gf.hpp"

namespace invforge::mpoly {

/// Variable grid x_{i,j} for 1 <= i <= copies, 1 <= j <= coords.
/// `copies` is the number of copies of W, `coords` its dimension (2n for
/// symplectic grids). Flat variable order is (i, j) lexicographic.
struct VarGrid {
    int copies = 1;
    int coords = 1;

    int var_count() const { return copies * coords; }
    int var_index(int i, int j) const { return (i - 1) * coords + (j - 1); }
    std::pair<int, int> var_pair(int v) const {
        return {v / coords + 1, v % coords + 1};
    }
    bool operator==(const VarGrid&) const = default;
};

using Exponents = std::vector<std::uint64_t>;

/// Graded reverse-lexicographic, descending: the map's begin() is the
/// leading term.
struct GrevlexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

using TermMap = std::map<Exponents, gf::FieldElement, GrevlexGreater>;

/// Sparse multivariate polynomial over a FieldSpec on a VarGrid.
/// Immutable value semantics; no zero coefficients are ever stored.
class SparsePoly {
public:
    SparsePoly() = default;
    SparsePoly(const gf::FieldSpec& spec, VarGrid grid)
        : spec_(&spec), grid_(grid) {}

    static SparsePoly zero(const gf::FieldSpec& spec, VarGrid grid);
    static SparsePoly constant(const gf::FieldSpec& spec, VarGrid grid,
                               gf::FieldElement c);
    static SparsePoly one(const gf::FieldSpec& spec, VarGrid grid);
    /// x_{i,j}^e (1-based indices).
    static SparsePoly variable(const gf::FieldSpec& spec, VarGrid grid, int i,
                               int j, std::uint64_t e = 1);
    /// Merge duplicates, drop zeros. Throws BadExponentArity / SpecMismatch.
    static SparsePoly from_terms(
        const gf::FieldSpec& spec, VarGrid grid,
        const std::vector<std::pair<gf::FieldElement, Exponents>>& terms);

    const gf::FieldSpec& spec() const { return *spec_; }
    const gf::FieldSpec* spec_ptr() const { return spec_; }
    const VarGrid& grid() const { return grid_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    std::size_t term_count() const { return terms_.size(); }
    std::uint64_t total_degree() const; // 0 for the zero polynomial
    const TermMap& terms() const { return terms_; }
    gf::FieldElement constant_term() const;

    friend SparsePoly operator+(const SparsePoly& f, const SparsePoly& g);
    friend SparsePoly operator-(const SparsePoly& f, const SparsePoly& g);
    friend SparsePoly operator*(const SparsePoly& f, const SparsePoly& g);
    SparsePoly operator-() const;
    SparsePoly operator*(gf::FieldElement c) const;
    bool operator==(const SparsePoly& o) const;
    bool operator!=(const SparsePoly& o) const { return !(*this == o); }

private:
    void insert_term(const Exponents& e, gf::FieldElement c);
    friend SparsePoly pow(const SparsePoly&, std::uint64_t);
    friend SparsePoly frobenius_power(const SparsePoly&, std::uint32_t);
    friend SparsePoly exact_div(const SparsePoly&, const SparsePoly&);

    const gf::FieldSpec* spec_ = nullptr;
    VarGrid grid_;
    TermMap terms_;
};

/// f^e. Uses the base-p expansion of e: p^i-th powers are term-wise in
/// characteristic p, so huge q-power exponents stay cheap.
SparsePoly pow(const SparsePoly& f, std::uint64_t e);

/// f^{q^k}, term-wise (coefficients to the q^k, exponents scaled by q^k).
SparsePoly frobenius_power(const SparsePoly& f, std::uint32_t k);

/// Exact quotient f / g. Throws DivisionByZero for g = 0 and NotDivisible
/// when the single-divisor reduction leaves a remainder.
SparsePoly exact_div(const SparsePoly& f, const SparsePoly& g);

/// Ring homomorphism sending x_v to assignment[v] (polynomials on the
/// target grid, sharing f's spec). Throws MissingAssignment / SpecMismatch /
/// GridMismatch.
SparsePoly substitute(const SparsePoly& f, const VarGrid& target,
                      const std::vector<SparsePoly>& assignment);

/// Full-point evaluation over f's own spec.
gf::FieldElement evaluate(const SparsePoly& f,
                          std::span<const gf::FieldElement> point);

/// Formal partial derivative with respect to x_{i,j} (exponent-coefficient
/// rule; exponents divisible by p kill their terms).
SparsePoly derivative(const SparsePoly& f, int i, int j);

/// Rectangular matrix of polynomials sharing one spec and grid.
class PolyMatrix {
public:
    PolyMatrix(int rows, int cols, const SparsePoly& fill);
    explicit PolyMatrix(std::vector<std::vector<SparsePoly>> rows);
    static PolyMatrix identity(const gf::FieldSpec& spec, VarGrid grid, int n);
    /// Matrix with the given columns (each a vector of n polynomials).
    static PolyMatrix from_columns(const std::vector<std::vector<SparsePoly>>& cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const SparsePoly& at(int r, int c) const { return entries_[r * cols_ + c]; }
    SparsePoly& at(int r, int c) { return entries_[r * cols_ + c]; }
    const gf::FieldSpec& spec() const { return entries_.front().spec(); }
    const VarGrid& grid() const { return entries_.front().grid(); }

    PolyMatrix transpose() const;
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    bool operator==(const PolyMatrix& o) const;

private:
    int rows_, cols_;
    std::vector<SparsePoly> entries_;
};

enum class DetStrategy { Auto, Cofactor, Bareiss };

/// Exact determinant. Auto uses cofactor expansion for size <= 4 and
/// fraction-free Bareiss elimination above. Throws NotSquare.
SparsePoly determinant(const PolyMatrix& m, DetStrategy strategy = DetStrategy::Auto);

/// Deterministic canonical rendering; parse_poly inverts it exactly.
std::string to_canonical_string(const SparsePoly& f);
SparsePoly parse_poly(const std::string& text, const gf::FieldSpec& spec,
                      VarGrid grid);

} // namespace invforge::mpoly

#endif

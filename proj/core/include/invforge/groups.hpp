#ifndef INVFORGE_GROUPS_HPP
#define INVFORGE_GROUPS_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "invforge/mpoly.hpp"
#include "invforge/ratexpr.hpp"
#include "invforge/rng.hpp"

namespace invforge::groups {

/// Dense matrix over a finite field.
class FqMatrix {
public:
    FqMatrix(const gf::FieldSpec& spec, int rows, int cols);
    static FqMatrix identity(const gf::FieldSpec& spec, int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const gf::FieldSpec& spec() const { return *spec_; }
    const gf::FieldElement& at(int r, int c) const {
        return entries_[r * cols_ + c];
    }
    gf::FieldElement& at(int r, int c) { return entries_[r * cols_ + c]; }

    FqMatrix transpose() const;
    FqMatrix conjugate() const;           // entry-wise F_{q^2} conjugation
    FqMatrix conjugate_transpose() const;
    gf::FieldElement det() const;
    FqMatrix inverse() const; // throws DivisionByZero if singular
    friend FqMatrix operator*(const FqMatrix& a, const FqMatrix& b);
    bool operator==(const FqMatrix& o) const;
    bool operator!=(const FqMatrix& o) const { return !(*this == o); }

private:
    const gf::FieldSpec* spec_;
    int rows_, cols_;
    std::vector<gf::FieldElement> entries_;
};

/// "a,b;c,d" with field-element entry texts.
std::string to_matrix_text(const FqMatrix& m);
FqMatrix parse_matrix_text(const std::string& text, const gf::FieldSpec& spec);

enum class GroupKind { GL, SL, Sp, U, O };
enum class FormKind { Alternate, Hermitian, Symmetric };

std::string to_string(GroupKind k);
GroupKind parse_group_kind(const std::string& s);

/// Nonsingular form matrix validated against its kind:
/// alternate (k_ij = -k_ji, k_ii = 0), Hermitian (conj-transpose equal,
/// F_{q^2} with odd characteristic), symmetric (odd characteristic).
class FormMatrix {
public:
    FormMatrix(FormKind kind, FqMatrix entries);
    static FormMatrix standard(FormKind kind, int size,
                               const gf::FieldSpec& spec);

    FormKind kind() const { return kind_; }
    const FqMatrix& matrix() const { return mat_; }
    int size() const { return mat_.rows(); }

private:
    FormKind kind_;
    FqMatrix mat_;
};

FormKind form_kind_for(GroupKind g); // throws for GL/SL

/// Exact check of the defining relation: det != 0 / det = 1 /
/// T K tT = K / T H t(conj T) = H / T A tT = A.
bool is_member(const FqMatrix& t, GroupKind g,
               const FormMatrix* form = nullptr);

/// Invertible matrix tagged with its group (and form where applicable);
/// the defining relation is checked at construction.
class GroupElement {
public:
    GroupElement(FqMatrix mat, GroupKind g,
                 std::optional<FormMatrix> form = std::nullopt);
    const FqMatrix& matrix() const { return mat_; }
    GroupKind group() const { return kind_; }
    const std::optional<FormMatrix>& form() const { return form_; }

private:
    FqMatrix mat_;
    GroupKind kind_;
    std::optional<FormMatrix> form_;
};

std::uint64_t gl_order(int n, std::uint64_t q);
std::uint64_t sl_order(int n, std::uint64_t q);

/// Uniform for GL/SL. Sp/U/O use rejection from GL inside the sampling
/// budget, then generator-word sampling where a built-in generator set
/// exists (standard-form symplectic); no uniformity is claimed for words.
GroupElement random_element(GroupKind g, int size, const gf::FieldSpec& spec,
                            const FormMatrix* form, SplitMix64& rng);

/// Every element exactly once. GL/SL counts are checked against the
/// classical order formulas; Sp/U/O filter GL. Throws CapExceeded.
std::vector<GroupElement> enumerate_group(GroupKind g, int size,
                                          const gf::FieldSpec& spec,
                                          const FormMatrix* form = nullptr,
                                          std::uint64_t cap = 1000000);

/// Substitution action x_{i,j} -> sum_k sigma_{j,k} x_{i,k} on every copy i
/// (X_i -> sigma X_i). Composition contract: act(s, act(t, f)) = act(t*s, f).
mpoly::SparsePoly act(const FqMatrix& sigma, const mpoly::SparsePoly& f);
ratexpr::RatExpr act(const FqMatrix& sigma, const ratexpr::RatExpr& f);
mpoly::SparsePoly act(const GroupElement& sigma, const mpoly::SparsePoly& f);
ratexpr::RatExpr act(const GroupElement& sigma, const ratexpr::RatExpr& f);

/// Block-diagonal action: component i acts on copy i alone.
mpoly::SparsePoly act_product(std::span<const FqMatrix> components,
                              const mpoly::SparsePoly& f);

/// Built-in symplectic transvection generators for the standard form
/// (validated by is_member; closure is unit-tested at enumerable sizes).
std::vector<FqMatrix> symplectic_generators(int size,
                                            const gf::FieldSpec& spec);

} // namespace invforge::groups

#endif

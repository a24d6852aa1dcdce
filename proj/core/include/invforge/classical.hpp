#ifndef INVFORGE_CLASSICAL_HPP
#define INVFORGE_CLASSICAL_HPP

#include "invforge/groups.hpp"
#include "invforge/invariants.hpp"
#include "invforge/mpoly.hpp"
#include "invforge/report.hpp"

namespace invforge::classical {

enum class Kind { Symplectic, Unitary, Orthogonal };

std::string to_string(Kind k);
Kind kind_from_group(groups::GroupKind g);

/// The Frobenius unit for exponents: q for Sp/O over F_q, the subfield
/// order p^{e/2} for unitary families over F_{q^2}.
std::uint32_t frobenius_base(Kind kind, const gf::FieldSpec& spec);

/// tX_i . F . X_j^{q^k} as a polynomial on `grid`.
/// Symplectic requires k >= 1 (KindParamMismatch otherwise); the k = 0
/// alternation value is exposed separately. Unitary uses exponent q^{2k+1}
/// over F_{q^2} (WrongFieldForUnitary when the spec is not a square).
mpoly::SparsePoly bilinear_invariant(Kind kind, const groups::FormMatrix& form,
                                     int i, int j, int k, mpoly::VarGrid grid);

/// tX_i . K . X_i — identically zero for alternate K.
mpoly::SparsePoly alternation_value(const groups::FormMatrix& form, int i,
                                    mpoly::VarGrid grid);

/// Generator family of the invariant field: Q_{i1}^{(k)} for k in 1..2n,
/// H_{i1}^{(k)} / P_{i1}^{(k)} for k in 0..n-1, over i in 1..m.
struct BilinearFamily {
    Kind kind;
    groups::FormMatrix form;
    int m;
    int n; // half-size for symplectic, the dimension otherwise
    mpoly::VarGrid grid;
    struct Gen {
        int i;
        int k;
        mpoly::SparsePoly poly;
    };
    std::vector<Gen> generators;
};

BilinearFamily theorem41_generators(Kind kind, const groups::FormMatrix& form,
                                    int m);

// Identity suite for the transfer equations; all exact.
VerdictReport check_orth_42(const groups::FormMatrix& a, int n, int j);
VerdictReport check_orth_43(const groups::FormMatrix& a, int n, int j);
VerdictReport check_unit_44(const groups::FormMatrix& h, int n, int j);
/// Row identity tX_i^q.K.(X_1^q,...,X_1^{q^{2n}}); for i >= 2 it also
/// records (without asserting) whether Q_{i1}^{(0)} is fixed by sampled
/// symplectic elements.
VerdictReport check_sp_row(const groups::FormMatrix& k, int size, int i,
                           std::uint64_t seed = 0);
/// ell_ij/ell_0 equals the quotient of the form-transferred determinants;
/// m >= size branch only (BranchUnsupported otherwise).
VerdictReport transfer_quotient(Kind kind, const groups::FormMatrix& form,
                                int m, int i, int j);
/// Exhaustive Chu converse: an enumerated GL element fixes the diagonal
/// generator set iff it lies in the group of the form.
VerdictReport check_chu_converse(Kind kind, const groups::FormMatrix& form,
                                 std::uint64_t cap = 1000000);

VerdictReport identity_check_classical(const gf::FieldSpec& spec,
                                       const std::string& name,
                                       const nlohmann::json& params);

} // namespace invforge::classical

#endif

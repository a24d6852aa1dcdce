#ifndef INVFORGE_VERIFY_HPP
#define INVFORGE_VERIFY_HPP

#include "invforge/classical.hpp"
#include "invforge/groups.hpp"
#include "invforge/invariants.hpp"
#include "invforge/report.hpp"

namespace invforge::verify {

/// Element of GL(W)^n acting block-diagonally: component i on copy i.
struct ProductGroupElement {
    std::vector<groups::FqMatrix> components;

    explicit ProductGroupElement(std::vector<groups::FqMatrix> comps);
    mpoly::SparsePoly act(const mpoly::SparsePoly& f) const;
};

enum class InvarianceMode { Invariant, DetInvariant };

/// act(sigma, f) = f (Invariant) or act(sigma, f) = det(sigma) f
/// (DetInvariant) for every generator and every listed element.
VerdictReport invariance_report(
    const std::vector<ratexpr::RatExpr>& generators,
    const std::vector<groups::GroupElement>& elements, InvarianceMode mode,
    std::uint64_t seed = 0);

/// Jacobian criterion: full rank at one sampled extension-field point
/// proves algebraic independence; rank deficiency at all sampled points is
/// only evidence and yields "inconclusive".
VerdictReport jacobian_independence(
    const std::vector<ratexpr::RatExpr>& generators, mpoly::VarGrid grid,
    std::uint64_t seed, int retries = 8);

/// Enumerates GL_n(F_q)^n and tests which tuples fix every ell_ij/ell_0;
/// passes iff the fixing set is exactly the diagonal copy of GL_n(F_q).
VerdictReport stabilizer_enumeration(const invariants::SteinbergFamily& fam,
                                     std::uint64_t cap = 1000000);

/// eta_s = det(X_1, X_s, X_1^q, ..., X_1^{q^{n-2}}): checks invariance of
/// eta_s^{q-1} under diagonal elements and the factorization
/// eta_s = ell_0 * f_s with f_s rebuilt from the Cramer data.
VerdictReport eta_membership_check(const invariants::SteinbergFamily& fam,
                                   int s, std::uint64_t seed = 0);

} // namespace invforge::verify

#endif

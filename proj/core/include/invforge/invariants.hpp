#ifndef INVFORGE_INVARIANTS_HPP
#define INVFORGE_INVARIANTS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "invforge/groups.hpp"
#include "invforge/mpoly.hpp"
#include "invforge/ratexpr.hpp"
#include "invforge/report.hpp"

namespace invforge::invariants {

/// d_{n,i} = det of the n x n matrix whose columns are the q^0..q^n powers
/// of (x_{copy,1},...,x_{copy,n}) with the q^i column deleted; 0 <= i <= n.
mpoly::SparsePoly dickson_d(int n, int i, int copy, mpoly::VarGrid grid,
                            const gf::FieldSpec& spec);

/// c_{n,s} = d_{n,s} / d_{n,n}; always a polynomial (exact division is
/// guaranteed, failure is an internal error).
mpoly::SparsePoly dickson_c(int n, int s, int copy, mpoly::VarGrid grid,
                            const gf::FieldSpec& spec);

enum class Branch { m_ge_n, m_lt_n };

/// The determinant family ell_0, ell_{ij} and the generators ell_{ij}/ell_0
/// on the grid of m copies of an n-dimensional space.
class SteinbergFamily {
public:
    SteinbergFamily(int m, int n, const gf::FieldSpec& spec);

    int m() const { return m_; }
    int n() const { return n_; }
    Branch branch() const { return branch_; }
    const gf::FieldSpec& spec() const { return *spec_; }
    const mpoly::VarGrid& grid() const { return grid_; }
    const mpoly::PolyMatrix& L() const { return L_; }
    const mpoly::PolyMatrix& L0() const { return L0_; }
    const mpoly::SparsePoly& ell0() const { return ell0_; }

    /// Internal row range: m for m >= n, n for m < n.
    int internal_rows() const;
    /// ell_{ij} = ell_{ij}^{(1)}; 1 <= i <= internal_rows, 1 <= j <= n.
    const mpoly::SparsePoly& ell(int i, int j) const;
    /// Generator ell_{ij}/ell_0 for 1 <= i <= m (the exposed range).
    ratexpr::RatExpr generator(int i, int j) const;
    std::vector<ratexpr::RatExpr> generators() const; // all m*n, (i,j) order

    /// Whether ell_{ij}/ell_0 happens to be a polynomial (recorded as data;
    /// the construction makes no claim either way for m >= 2).
    bool generator_is_polynomial(int i, int j) const;

private:
    int m_, n_;
    Branch branch_;
    const gf::FieldSpec* spec_;
    mpoly::VarGrid grid_;
    mpoly::PolyMatrix L_, L0_;
    mpoly::SparsePoly ell0_;
    std::vector<mpoly::SparsePoly> ells_; // row-major internal_rows x n
};

SteinbergFamily steinberg_build(int m, int n, const gf::FieldSpec& spec);

/// ell_{ij}^{(k)}: the j-th column of L_0 replaced by the q^k-th power of
/// the relevant column (X_i^{q^k} for i <= n, X_i unchanged for i > n in
/// the m >= n branch; the q^k-th power of L_0's i-th column for m < n).
mpoly::SparsePoly steinberg_lijk(const SteinbergFamily& fam, int i, int j,
                                 int k);

/// Reduced generating-set data plus the localization element.
struct AuxSets {
    std::vector<std::tuple<int, int, mpoly::SparsePoly>> B; // ell_0^{q-2} ell_ij
    std::vector<std::tuple<int, int, mpoly::SparsePoly>> D; // ell_ij
    std::pair<int, int> removed;
    int r; // minimal positive r with r(q-1) >= n
    std::optional<mpoly::SparsePoly> ell_localizer; // only for m = n
};

AuxSets aux_sets(const SteinbergFamily& fam,
                 std::pair<int, int> removed = {1, 1});

/// Specialization from n copies down to m < n: fixes X_1..X_{m-1}, sends
/// X_m to X_m^{q^{n-m}} and X_{m+k} to X_m^{q^{k-1}}.
mpoly::SparsePoly pi_specialize(const mpoly::SparsePoly& f, int m, int n);

enum class CheckMethod { Exact, Probabilistic };

struct CheckOptions {
    CheckMethod method = CheckMethod::Exact;
    int trials = 20;
    std::uint64_t seed = 0;
};

// Identity suite. Each check returns a replayable VerdictReport.
VerdictReport check_cramer_21(const gf::FieldSpec& spec, int n, int m, int k,
                              const CheckOptions& opts = {});
VerdictReport check_chain_24(const gf::FieldSpec& spec, int n, int m, int k,
                             const CheckOptions& opts = {});
VerdictReport check_lemma_27(const gf::FieldSpec& spec, int n, int m);
VerdictReport check_prop32_membership(const gf::FieldSpec& spec, int n);
VerdictReport check_cor25_n1(const gf::FieldSpec& spec, int m);
/// Laplace-rearrangement solvability of the removed generator:
/// reports ZeroCofactor instead of passing when the cofactor vanishes.
VerdictReport check_removed_rearrangement(const gf::FieldSpec& spec, int n,
                                          std::pair<int, int> removed = {1, 1});
/// Nonvanishing of pi(ell_0) and pi(ell), and the match between the
/// specialized n-copy ell_0 and the m < n construction's ell_0.
VerdictReport check_pi_specialization(const gf::FieldSpec& spec, int m, int n);

/// Dispatch by claim name with JSON parameters (n, m, k, trials, seed,
/// method, removed). Throws ConfigInvalid for unknown names/params.
VerdictReport identity_check(const gf::FieldSpec& spec,
                             const std::string& name,
                             const nlohmann::json& params);

} // namespace invforge::invariants

#endif

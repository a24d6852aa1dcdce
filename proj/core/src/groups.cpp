#include "invforge/groups.hpp"

#include <algorithm>
#include <sstream>

namespace invforge::groups {

using gf::FieldElement;
using gf::FieldSpec;
using mpoly::SparsePoly;
using mpoly::VarGrid;

FqMatrix::FqMatrix(const FieldSpec& spec, int rows, int cols)
    : spec_(&spec), rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw SizeMismatch("empty matrix");
    entries_.assign((std::size_t)rows * cols, gf::zero(spec));
}

FqMatrix FqMatrix::identity(const FieldSpec& spec, int n) {
    FqMatrix m(spec, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = gf::one(spec);
    return m;
}

FqMatrix FqMatrix::transpose() const {
    FqMatrix out(*spec_, cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
    return out;
}

FqMatrix FqMatrix::conjugate() const {
    FqMatrix out(*spec_, rows_, cols_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out.at(r, c) = gf::conjugate(at(r, c));
    return out;
}

FqMatrix FqMatrix::conjugate_transpose() const {
    return conjugate().transpose();
}

FieldElement FqMatrix::det() const {
    if (rows_ != cols_) throw NotSquare("determinant of non-square");
    FqMatrix w = *this;
    auto result = gf::one(*spec_);
    for (int k = 0; k < rows_; ++k) {
        int pivot = -1;
        for (int r = k; r < rows_; ++r)
            if (!w.at(r, k).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) return gf::zero(*spec_);
        if (pivot != k) {
            for (int c = 0; c < cols_; ++c)
                std::swap(w.at(k, c), w.at(pivot, c));
            result = -result;
        }
        result = result * w.at(k, k);
        auto inv = gf::invert(w.at(k, k));
        for (int r = k + 1; r < rows_; ++r) {
            auto factor = w.at(r, k) * inv;
            if (factor.is_zero()) continue;
            for (int c = k; c < cols_; ++c)
                w.at(r, c) = w.at(r, c) - factor * w.at(k, c);
        }
    }
    return result;
}

FqMatrix FqMatrix::inverse() const {
    if (rows_ != cols_) throw NotSquare("inverse of non-square");
    FqMatrix w = *this;
    FqMatrix inv = identity(*spec_, rows_);
    for (int k = 0; k < rows_; ++k) {
        int pivot = -1;
        for (int r = k; r < rows_; ++r)
            if (!w.at(r, k).is_zero()) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw DivisionByZero("singular matrix");
        if (pivot != k)
            for (int c = 0; c < cols_; ++c) {
                std::swap(w.at(k, c), w.at(pivot, c));
                std::swap(inv.at(k, c), inv.at(pivot, c));
            }
        auto scale = gf::invert(w.at(k, k));
        for (int c = 0; c < cols_; ++c) {
            w.at(k, c) = w.at(k, c) * scale;
            inv.at(k, c) = inv.at(k, c) * scale;
        }
        for (int r = 0; r < rows_; ++r) {
            if (r == k || w.at(r, k).is_zero()) continue;
            auto factor = w.at(r, k);
            for (int c = 0; c < cols_; ++c) {
                w.at(r, c) = w.at(r, c) - factor * w.at(k, c);
                inv.at(r, c) = inv.at(r, c) - factor * inv.at(k, c);
            }
        }
    }
    return inv;
}

FqMatrix operator*(const FqMatrix& a, const FqMatrix& b) {
    if (a.cols() != b.rows()) throw SizeMismatch("matrix product shapes");
    if (&a.spec() != &b.spec()) throw SpecMismatch("matrix specs differ");
    FqMatrix out(a.spec(), a.rows(), b.cols());
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c) {
            auto acc = gf::zero(a.spec());
            for (int k = 0; k < a.cols(); ++k)
                acc = acc + a.at(r, k) * b.at(k, c);
            out.at(r, c) = acc;
        }
    return out;
}

bool FqMatrix::operator==(const FqMatrix& o) const {
    return spec_ == o.spec_ && rows_ == o.rows_ && cols_ == o.cols_ &&
           entries_ == o.entries_;
}

std::string to_matrix_text(const FqMatrix& m) {
    std::ostringstream os;
    for (int r = 0; r < m.rows(); ++r) {
        if (r) os << ";";
        for (int c = 0; c < m.cols(); ++c) {
            if (c) os << ",";
            os << gf::to_string(m.at(r, c));
        }
    }
    return os.str();
}

FqMatrix parse_matrix_text(const std::string& text, const FieldSpec& spec) {
    std::vector<std::vector<FieldElement>> rows;
    std::istringstream is(text);
    std::string row;
    while (std::getline(is, row, ';')) {
        std::vector<FieldElement> entries;
        std::istringstream rs(row);
        std::string cell;
        while (std::getline(rs, cell, ','))
            entries.push_back(gf::parse_element(cell, spec));
        rows.push_back(std::move(entries));
    }
    if (rows.empty() || rows.front().empty())
        throw ParseError("empty matrix text");
    FqMatrix m(spec, (int)rows.size(), (int)rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.front().size())
            throw ParseError("ragged matrix text");
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            m.at((int)r, (int)c) = rows[r][c];
    }
    return m;
}

std::string to_string(GroupKind k) {
    switch (k) {
    case GroupKind::GL: return "GL";
    case GroupKind::SL: return "SL";
    case GroupKind::Sp: return "Sp";
    case GroupKind::U: return "U";
    case GroupKind::O: return "O";
    }
    return "?";
}

GroupKind parse_group_kind(const std::string& s) {
    if (s == "GL") return GroupKind::GL;
    if (s == "SL") return GroupKind::SL;
    if (s == "Sp") return GroupKind::Sp;
    if (s == "U") return GroupKind::U;
    if (s == "O") return GroupKind::O;
    throw ConfigInvalid("unknown group kind '" + s + "'");
}

FormKind form_kind_for(GroupKind g) {
    switch (g) {
    case GroupKind::Sp: return FormKind::Alternate;
    case GroupKind::U: return FormKind::Hermitian;
    case GroupKind::O: return FormKind::Symmetric;
    default: throw BadForm("group " + to_string(g) + " carries no form");
    }
}

FormMatrix::FormMatrix(FormKind kind, FqMatrix entries)
    : kind_(kind), mat_(std::move(entries)) {
    const auto& spec = mat_.spec();
    if (mat_.rows() != mat_.cols()) throw BadForm("form matrix not square");
    if (mat_.det().is_zero()) throw BadForm("form matrix singular");
    switch (kind_) {
    case FormKind::Alternate:
        for (int i = 0; i < mat_.rows(); ++i) {
            if (!mat_.at(i, i).is_zero())
                throw BadForm("alternate form with nonzero diagonal");
            for (int j = 0; j < i; ++j)
                if (mat_.at(i, j) != -mat_.at(j, i))
                    throw BadForm("alternate form not antisymmetric");
        }
        break;
    case FormKind::Hermitian:
        if (spec.p() == 2)
            throw EvenCharForbidden("hermitian form in characteristic 2");
        if (spec.e() % 2 != 0)
            throw WrongFieldForUnitary("hermitian form needs F_{q^2}");
        if (mat_.conjugate_transpose() != mat_)
            throw BadForm("matrix is not Hermitian");
        break;
    case FormKind::Symmetric:
        if (spec.p() == 2)
            throw EvenCharForbidden("symmetric form in characteristic 2");
        if (mat_.transpose() != mat_) throw BadForm("matrix is not symmetric");
        break;
    }
}

FormMatrix FormMatrix::standard(FormKind kind, int size,
                                const FieldSpec& spec) {
    if (kind == FormKind::Alternate) {
        if (size % 2 != 0)
            throw OddSizeAlternate("alternate form needs even size");
        FqMatrix m(spec, size, size);
        int n = size / 2;
        for (int i = 0; i < n; ++i) {
            m.at(i, n + i) = gf::one(spec);
            m.at(n + i, i) = -gf::one(spec);
        }
        return FormMatrix(kind, std::move(m));
    }
    return FormMatrix(kind, FqMatrix::identity(spec, size));
}

bool is_member(const FqMatrix& t, GroupKind g, const FormMatrix* form) {
    if (t.rows() != t.cols()) throw SizeMismatch("group element not square");
    switch (g) {
    case GroupKind::GL: return !t.det().is_zero();
    case GroupKind::SL: return t.det().is_one();
    default: break;
    }
    if (!form) throw BadForm("form required for " + to_string(g));
    if (form->kind() != form_kind_for(g))
        throw BadForm("form kind does not match group " + to_string(g));
    if (form->size() != t.rows())
        throw SizeMismatch("form size does not match element");
    if (t.det().is_zero()) return false;
    const FqMatrix& f = form->matrix();
    if (g == GroupKind::U) return t * f * t.conjugate_transpose() == f;
    return t * f * t.transpose() == f;
}

GroupElement::GroupElement(FqMatrix mat, GroupKind g,
                           std::optional<FormMatrix> form)
    : mat_(std::move(mat)), kind_(g), form_(std::move(form)) {
    if (!is_member(mat_, kind_, form_ ? &*form_ : nullptr))
        throw NotInGroup("matrix fails the defining relation of " +
                         to_string(kind_));
}

std::uint64_t gl_order(int n, std::uint64_t q) {
    // prod_{i=0}^{n-1} (q^n - q^i); saturates instead of overflowing
    long double approx = 1.0L;
    std::uint64_t qn = 1;
    for (int i = 0; i < n; ++i) qn *= q;
    std::uint64_t result = 1;
    std::uint64_t qi = 1;
    for (int i = 0; i < n; ++i) {
        approx *= (long double)(qn - qi);
        if (approx > 1e18L) return UINT64_MAX;
        result *= (qn - qi);
        qi *= q;
    }
    return result;
}

std::uint64_t sl_order(int n, std::uint64_t q) {
    auto g = gl_order(n, q);
    return g == UINT64_MAX ? g : g / (q - 1);
}

namespace {

FqMatrix random_matrix(const FieldSpec& spec, int n, SplitMix64& rng) {
    FqMatrix m(spec, n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            m.at(r, c) = gf::element(spec, (std::uint32_t)rng.below(spec.q()));
    return m;
}

constexpr std::uint64_t kRejectionBudget = 10000000; // |GL| limit
constexpr int kMaxSampleAttempts = 1000000;
constexpr int kWordLength = 32;

} // namespace

std::vector<FqMatrix> symplectic_generators(int size, const FieldSpec& spec) {
    if (size % 2 != 0) throw OddSizeAlternate("symplectic size must be even");
    auto form = FormMatrix::standard(FormKind::Alternate, size, spec);
    const FqMatrix& k = form.matrix();
    // transvection T_{v,lambda} = I + lambda * v * tv * tK
    auto transvection = [&](const std::vector<FieldElement>& v,
                            FieldElement lambda) {
        FqMatrix m = FqMatrix::identity(spec, size);
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c) {
                auto ktv_c = gf::zero(spec); // (tv * tK)_c = sum_s v_s K_{c,s}
                for (int s = 0; s < size; ++s)
                    ktv_c = ktv_c + v[s] * k.at(c, s);
                m.at(r, c) = m.at(r, c) + lambda * v[r] * ktv_c;
            }
        return m;
    };
    std::vector<std::vector<FieldElement>> dirs;
    auto unit = [&](int i) {
        std::vector<FieldElement> v(size, gf::zero(spec));
        v[i] = gf::one(spec);
        return v;
    };
    for (int i = 0; i < size; ++i) dirs.push_back(unit(i));
    for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j) {
            auto v = unit(i);
            v[j] = gf::one(spec);
            dirs.push_back(v);
        }
    std::vector<FqMatrix> gens;
    for (const auto& v : dirs)
        for (std::uint32_t d = 0; d < spec.e(); ++d) {
            std::uint32_t packed = 1;
            for (std::uint32_t i = 0; i < d; ++i) packed *= spec.p();
            auto g = transvection(v, gf::element(spec, packed));
            if (!is_member(g, GroupKind::Sp, &form))
                throw std::logic_error("symplectic transvection invalid");
            gens.push_back(std::move(g));
        }
    return gens;
}

GroupElement random_element(GroupKind g, int size, const FieldSpec& spec,
                            const FormMatrix* form, SplitMix64& rng) {
    if (g == GroupKind::GL || g == GroupKind::SL) {
        for (int attempt = 0; attempt < kMaxSampleAttempts; ++attempt) {
            auto m = random_matrix(spec, size, rng);
            auto d = m.det();
            if (d.is_zero()) continue;
            if (g == GroupKind::SL) {
                auto fix = gf::invert(d);
                for (int c = 0; c < size; ++c)
                    m.at(0, c) = m.at(0, c) * fix;
            }
            return GroupElement(std::move(m), g);
        }
        throw BudgetExceeded("no invertible sample found");
    }
    if (!form) throw BadForm("form required for " + to_string(g));
    std::optional<FormMatrix> owned(*form);
    if (gl_order(size, spec.q()) <= kRejectionBudget) {
        for (int attempt = 0; attempt < kMaxSampleAttempts; ++attempt) {
            auto m = random_matrix(spec, size, rng);
            if (is_member(m, g, form))
                return GroupElement(std::move(m), g, owned);
        }
        throw BudgetExceeded("rejection sampling found no element");
    }
    if (g == GroupKind::Sp) {
        auto standard = FormMatrix::standard(FormKind::Alternate, size, spec);
        if (form->matrix() == standard.matrix()) {
            auto gens = symplectic_generators(size, spec);
            auto m = FqMatrix::identity(spec, size);
            for (int i = 0; i < kWordLength; ++i)
                m = m * gens[rng.below(gens.size())];
            return GroupElement(std::move(m), g, owned);
        }
    }
    throw BudgetExceeded("group too large and no generator set available");
}

std::vector<GroupElement> enumerate_group(GroupKind g, int size,
                                          const FieldSpec& spec,
                                          const FormMatrix* form,
                                          std::uint64_t cap) {
    std::uint64_t estimate = g == GroupKind::SL ? sl_order(size, spec.q())
                                                : gl_order(size, spec.q());
    if (estimate > cap)
        throw CapExceeded("estimated order " + std::to_string(estimate) +
                          " exceeds cap " + std::to_string(cap));
    std::uint64_t total = 1;
    for (int i = 0; i < size * size; ++i) {
        if (__builtin_mul_overflow(total, (std::uint64_t)spec.q(), &total) ||
            total > 100000000ULL)
            throw CapExceeded("matrix space too large to scan");
    }
    std::optional<FormMatrix> owned;
    if (form) owned.emplace(*form);
    std::vector<GroupElement> out;
    FqMatrix m(spec, size, size);
    for (std::uint64_t v = 0; v < total; ++v) {
        std::uint64_t rest = v;
        for (int r = 0; r < size; ++r)
            for (int c = 0; c < size; ++c) {
                m.at(r, c) = gf::element(spec, (std::uint32_t)(rest % spec.q()));
                rest /= spec.q();
            }
        if (!is_member(m, g, form)) continue;
        out.emplace_back(m, g, owned);
    }
    if (g == GroupKind::GL || g == GroupKind::SL) {
        if (out.size() != estimate)
            throw std::logic_error("enumerated order disagrees with formula");
    }
    return out;
}

SparsePoly act(const FqMatrix& sigma, const SparsePoly& f) {
    const VarGrid& grid = f.grid();
    if (sigma.rows() != sigma.cols() || sigma.rows() != grid.coords)
        throw SizeMismatch("matrix size does not match grid coords");
    if (&sigma.spec() != f.spec_ptr())
        throw SpecMismatch("matrix and polynomial specs differ");
    std::vector<SparsePoly> assignment;
    assignment.reserve(grid.var_count());
    for (int v = 0; v < grid.var_count(); ++v) {
        auto [i, j] = grid.var_pair(v);
        auto target = SparsePoly::zero(f.spec(), grid);
        for (int k = 1; k <= grid.coords; ++k) {
            auto c = sigma.at(j - 1, k - 1);
            if (c.is_zero()) continue;
            target = target + SparsePoly::variable(f.spec(), grid, i, k) * c;
        }
        assignment.push_back(std::move(target));
    }
    return substitute(f, grid, assignment);
}

ratexpr::RatExpr act(const FqMatrix& sigma, const ratexpr::RatExpr& f) {
    return ratexpr::RatExpr(act(sigma, f.num()), act(sigma, f.den()));
}

SparsePoly act(const GroupElement& sigma, const SparsePoly& f) {
    return act(sigma.matrix(), f);
}
ratexpr::RatExpr act(const GroupElement& sigma, const ratexpr::RatExpr& f) {
    return act(sigma.matrix(), f);
}

SparsePoly act_product(std::span<const FqMatrix> components,
                       const SparsePoly& f) {
    const VarGrid& grid = f.grid();
    if (components.size() != (std::size_t)grid.copies)
        throw SizeMismatch("one component per copy required");
    std::vector<SparsePoly> assignment;
    assignment.reserve(grid.var_count());
    for (int v = 0; v < grid.var_count(); ++v) {
        auto [i, j] = grid.var_pair(v);
        const FqMatrix& sigma = components[i - 1];
        if (sigma.rows() != grid.coords || sigma.cols() != grid.coords)
            throw SizeMismatch("component size does not match grid coords");
        auto target = SparsePoly::zero(f.spec(), grid);
        for (int k = 1; k <= grid.coords; ++k) {
            auto c = sigma.at(j - 1, k - 1);
            if (c.is_zero()) continue;
            target = target + SparsePoly::variable(f.spec(), grid, i, k) * c;
        }
        assignment.push_back(std::move(target));
    }
    return substitute(f, grid, assignment);
}

} // namespace invforge::groups

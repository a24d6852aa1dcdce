#include "invforge/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace invforge::mpoly {

bool GrevlexGreater::operator()(const Exponents& a, const Exponents& b) const {
    std::uint64_t da = std::accumulate(a.begin(), a.end(), std::uint64_t{0});
    std::uint64_t db = std::accumulate(b.begin(), b.end(), std::uint64_t{0});
    if (da != db) return da > db;
    for (std::size_t i = a.size(); i-- > 0;)
        if (a[i] != b[i]) return a[i] < b[i];
    return false;
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw DegreeOutOfRange("exponent overflow");
    return r;
}

void check_same_ring(const SparsePoly& f, const SparsePoly& g) {
    if (f.spec_ptr() != g.spec_ptr())
        throw SpecMismatch("polynomials over different specs");
    if (!(f.grid() == g.grid()))
        throw GridMismatch("polynomials on different grids");
}

} // namespace

SparsePoly SparsePoly::zero(const gf::FieldSpec& spec, VarGrid grid) {
    return SparsePoly(spec, grid);
}

SparsePoly SparsePoly::constant(const gf::FieldSpec& spec, VarGrid grid,
                                gf::FieldElement c) {
    SparsePoly f(spec, grid);
    if (!c.is_zero()) {
        if (c.spec_ptr() != &spec)
            throw SpecMismatch("constant from a different spec");
        f.terms_.emplace(Exponents(grid.var_count(), 0), c);
    }
    return f;
}

SparsePoly SparsePoly::one(const gf::FieldSpec& spec, VarGrid grid) {
    return constant(spec, grid, gf::one(spec));
}

SparsePoly SparsePoly::variable(const gf::FieldSpec& spec, VarGrid grid, int i,
                                int j, std::uint64_t e) {
    if (i < 1 || i > grid.copies || j < 1 || j > grid.coords)
        throw IndexOutOfRange("variable x[" + std::to_string(i) + "," +
                              std::to_string(j) + "] outside grid");
    SparsePoly f(spec, grid);
    if (e == 0) return one(spec, grid);
    Exponents exp(grid.var_count(), 0);
    exp[grid.var_index(i, j)] = e;
    f.terms_.emplace(std::move(exp), gf::one(spec));
    return f;
}

SparsePoly SparsePoly::from_terms(
    const gf::FieldSpec& spec, VarGrid grid,
    const std::vector<std::pair<gf::FieldElement, Exponents>>& terms) {
    SparsePoly f(spec, grid);
    for (const auto& [c, e] : terms) {
        if (e.size() != (std::size_t)grid.var_count())
            throw BadExponentArity("exponent vector arity " +
                                   std::to_string(e.size()) + " != " +
                                   std::to_string(grid.var_count()));
        if (c.spec_ptr() != &spec)
            throw SpecMismatch("coefficient from a different spec");
        f.insert_term(e, c);
    }
    return f;
}

void SparsePoly::insert_term(const Exponents& e, gf::FieldElement c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        auto s = it->second + c;
        if (s.is_zero())
            terms_.erase(it);
        else
            it->second = s;
    }
}

bool SparsePoly::is_one() const {
    if (terms_.size() != 1) return false;
    const auto& [e, c] = *terms_.begin();
    return c.is_one() &&
           std::all_of(e.begin(), e.end(), [](auto x) { return x == 0; });
}

std::uint64_t SparsePoly::total_degree() const {
    if (terms_.empty()) return 0;
    // grevlex leading term has maximal total degree
    const auto& e = terms_.begin()->first;
    return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

gf::FieldElement SparsePoly::constant_term() const {
    Exponents z(grid_.var_count(), 0);
    auto it = terms_.find(z);
    return it == terms_.end() ? gf::zero(*spec_) : it->second;
}

SparsePoly operator+(const SparsePoly& f, const SparsePoly& g) {
    check_same_ring(f, g);
    SparsePoly out = f;
    for (const auto& [e, c] : g.terms()) out.insert_term(e, c);
    return out;
}

SparsePoly operator-(const SparsePoly& f, const SparsePoly& g) {
    check_same_ring(f, g);
    SparsePoly out = f;
    for (const auto& [e, c] : g.terms()) out.insert_term(e, -c);
    return out;
}

SparsePoly SparsePoly::operator-() const {
    SparsePoly out(*spec_, grid_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

SparsePoly SparsePoly::operator*(gf::FieldElement c) const {
    SparsePoly out(*spec_, grid_);
    if (c.is_zero()) return out;
    for (const auto& [e, v] : terms_) out.terms_.emplace(e, v * c);
    return out;
}

SparsePoly operator*(const SparsePoly& f, const SparsePoly& g) {
    check_same_ring(f, g);
    SparsePoly out(f.spec(), f.grid());
    const int nv = f.grid().var_count();
    Exponents e(nv);
    for (const auto& [ef, cf] : f.terms())
        for (const auto& [eg, cg] : g.terms()) {
            for (int v = 0; v < nv; ++v) e[v] = ef[v] + eg[v];
            out.insert_term(e, cf * cg);
        }
    return out;
}

bool SparsePoly::operator==(const SparsePoly& o) const {
    return spec_ == o.spec_ && grid_ == o.grid_ && terms_ == o.terms_;
}

namespace {
// Term-wise p-th power: valid in characteristic p.
SparsePoly char_p_power(const SparsePoly& f) {
    const auto& spec = f.spec();
    std::vector<std::pair<gf::FieldElement, Exponents>> terms;
    terms.reserve(f.term_count());
    for (const auto& [e, c] : f.terms()) {
        Exponents pe(e.size());
        for (std::size_t v = 0; v < e.size(); ++v)
            pe[v] = checked_mul(e[v], spec.p());
        terms.emplace_back(gf::pow(c, spec.p()), std::move(pe));
    }
    return SparsePoly::from_terms(spec, f.grid(), terms);
}
} // namespace

SparsePoly pow(const SparsePoly& f, std::uint64_t e) {
    if (e == 0) return SparsePoly::one(f.spec(), f.grid());
    if (f.is_zero()) return f;
    const std::uint64_t p = f.spec().p();
    SparsePoly result = SparsePoly::one(f.spec(), f.grid());
    SparsePoly base = f; // f^(p^i)
    while (e > 0) {
        std::uint64_t d = e % p;
        e /= p;
        for (std::uint64_t r = 0; r < d; ++r) result = result * base;
        if (e > 0) base = char_p_power(base);
    }
    return result;
}

SparsePoly frobenius_power(const SparsePoly& f, std::uint32_t k) {
    const auto& spec = f.spec();
    std::uint64_t qk = 1;
    for (std::uint32_t i = 0; i < k; ++i) qk = checked_mul(qk, spec.q());
    std::vector<std::pair<gf::FieldElement, Exponents>> terms;
    terms.reserve(f.term_count());
    for (const auto& [e, c] : f.terms()) {
        Exponents qe(e.size());
        for (std::size_t v = 0; v < e.size(); ++v)
            qe[v] = checked_mul(e[v], qk);
        // c^(q^k) = c for c in F_q; spelled out anyway
        terms.emplace_back(
            gf::frobenius_power(c, k, gf::FrobBase::q), std::move(qe));
    }
    return SparsePoly::from_terms(spec, f.grid(), terms);
}

SparsePoly exact_div(const SparsePoly& f, const SparsePoly& g) {
    if (g.is_zero()) throw DivisionByZero("division by zero polynomial");
    check_same_ring(f, g);
    SparsePoly quotient(f.spec(), f.grid());
    SparsePoly r = f;
    const auto& [lge, lgc] = *g.terms().begin();
    const auto lgc_inv = gf::invert(lgc);
    const int nv = f.grid().var_count();
    while (!r.is_zero()) {
        const auto& [lre, lrc] = *r.terms().begin();
        Exponents diff(nv);
        for (int v = 0; v < nv; ++v) {
            if (lre[v] < lge[v])
                throw NotDivisible("leading term not divisible");
            diff[v] = lre[v] - lge[v];
        }
        gf::FieldElement qc = lrc * lgc_inv;
        quotient.insert_term(diff, qc);
        // r -= qc * x^diff * g
        Exponents e(nv);
        for (const auto& [eg, cg] : g.terms()) {
            for (int v = 0; v < nv; ++v) e[v] = eg[v] + diff[v];
            r.insert_term(e, -(qc * cg));
        }
    }
    return quotient;
}

SparsePoly substitute(const SparsePoly& f, const VarGrid& target,
                      const std::vector<SparsePoly>& assignment) {
    const int nv = f.grid().var_count();
    if (assignment.size() != (std::size_t)nv)
        throw MissingAssignment("assignment covers " +
                                std::to_string(assignment.size()) + " of " +
                                std::to_string(nv) + " variables");
    for (const auto& a : assignment) {
        if (a.spec_ptr() != f.spec_ptr())
            throw SpecMismatch("assignment target over a different spec");
        if (!(a.grid() == target))
            throw GridMismatch("assignment target on a different grid");
    }
    SparsePoly out = SparsePoly::zero(f.spec(), target);
    std::map<std::pair<int, std::uint64_t>, SparsePoly> power_cache;
    auto power_of = [&](int v, std::uint64_t e) -> const SparsePoly& {
        auto key = std::make_pair(v, e);
        auto it = power_cache.find(key);
        if (it == power_cache.end())
            it = power_cache.emplace(key, pow(assignment[v], e)).first;
        return it->second;
    };
    for (const auto& [e, c] : f.terms()) {
        SparsePoly term = SparsePoly::constant(f.spec(), target, c);
        for (int v = 0; v < nv; ++v)
            if (e[v] > 0) term = term * power_of(v, e[v]);
        out = out + term;
    }
    return out;
}

gf::FieldElement evaluate(const SparsePoly& f,
                          std::span<const gf::FieldElement> point) {
    const int nv = f.grid().var_count();
    if (point.size() != (std::size_t)nv)
        throw MissingAssignment("evaluation point has wrong arity");
    for (const auto& x : point)
        if (x.spec_ptr() != f.spec_ptr())
            throw SpecMismatch("evaluation point over a different spec");
    auto acc = gf::zero(f.spec());
    for (const auto& [e, c] : f.terms()) {
        auto v = c;
        for (int i = 0; i < nv; ++i)
            if (e[i] > 0) v = v * gf::pow(point[i], e[i]);
        acc = acc + v;
    }
    return acc;
}

SparsePoly derivative(const SparsePoly& f, int i, int j) {
    const int v = f.grid().var_index(i, j);
    std::vector<std::pair<gf::FieldElement, Exponents>> terms;
    for (const auto& [e, c] : f.terms()) {
        if (e[v] == 0) continue;
        auto m = gf::from_int(f.spec(), (std::int64_t)(e[v] % f.spec().p()));
        if (m.is_zero()) continue;
        Exponents de = e;
        de[v] -= 1;
        terms.emplace_back(c * m, std::move(de));
    }
    return SparsePoly::from_terms(f.spec(), f.grid(), terms);
}

PolyMatrix::PolyMatrix(int rows, int cols, const SparsePoly& fill)
    : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw SizeMismatch("empty matrix");
    entries_.assign((std::size_t)rows * cols, fill);
}

PolyMatrix::PolyMatrix(std::vector<std::vector<SparsePoly>> rows) {
    if (rows.empty() || rows.front().empty())
        throw SizeMismatch("empty matrix");
    rows_ = (int)rows.size();
    cols_ = (int)rows.front().size();
    for (auto& r : rows) {
        if ((int)r.size() != cols_) throw SizeMismatch("ragged matrix rows");
        for (auto& p : r) {
            if (!entries_.empty()) check_same_ring(entries_.front(), p);
            entries_.push_back(std::move(p));
        }
    }
}

PolyMatrix PolyMatrix::identity(const gf::FieldSpec& spec, VarGrid grid,
                                int n) {
    PolyMatrix m(n, n, SparsePoly::zero(spec, grid));
    for (int i = 0; i < n; ++i) m.at(i, i) = SparsePoly::one(spec, grid);
    return m;
}

PolyMatrix PolyMatrix::from_columns(
    const std::vector<std::vector<SparsePoly>>& cols) {
    if (cols.empty() || cols.front().empty())
        throw SizeMismatch("empty matrix");
    int rows = (int)cols.front().size();
    std::vector<std::vector<SparsePoly>> rowdata;
    for (int r = 0; r < rows; ++r) {
        std::vector<SparsePoly> row;
        for (const auto& c : cols) {
            if ((int)c.size() != rows) throw SizeMismatch("ragged columns");
            row.push_back(c[r]);
        }
        rowdata.push_back(std::move(row));
    }
    return PolyMatrix(std::move(rowdata));
}

PolyMatrix PolyMatrix::transpose() const {
    PolyMatrix out(cols_, rows_, SparsePoly::zero(spec(), grid()));
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
    return out;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols() != b.rows()) throw SizeMismatch("matrix product shapes");
    PolyMatrix out(a.rows(), b.cols(),
                   SparsePoly::zero(a.spec(), a.grid()));
    for (int r = 0; r < a.rows(); ++r)
        for (int c = 0; c < b.cols(); ++c) {
            SparsePoly acc = SparsePoly::zero(a.spec(), a.grid());
            for (int k = 0; k < a.cols(); ++k)
                acc = acc + a.at(r, k) * b.at(k, c);
            out.at(r, c) = acc;
        }
    return out;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
}

namespace {

SparsePoly det_cofactor(const PolyMatrix& m, std::vector<int>& rows,
                        std::vector<int>& cols) {
    const std::size_t n = rows.size();
    if (n == 1) return m.at(rows[0], cols[0]);
    SparsePoly acc = SparsePoly::zero(m.spec(), m.grid());
    std::vector<int> subrows(rows.begin() + 1, rows.end());
    for (std::size_t c = 0; c < n; ++c) {
        const SparsePoly& piv = m.at(rows[0], cols[c]);
        if (piv.is_zero()) continue;
        std::vector<int> subcols;
        subcols.reserve(n - 1);
        for (std::size_t cc = 0; cc < n; ++cc)
            if (cc != c) subcols.push_back(cols[cc]);
        auto minor = det_cofactor(m, subrows, subcols);
        auto term = piv * minor;
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

SparsePoly det_bareiss(const PolyMatrix& m) {
    const int n = m.rows();
    std::vector<SparsePoly> w;
    w.reserve((std::size_t)n * n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) w.push_back(m.at(r, c));
    auto at = [&](int r, int c) -> SparsePoly& { return w[r * n + c]; };
    bool negate = false;
    SparsePoly prev = SparsePoly::one(m.spec(), m.grid());
    for (int k = 0; k < n - 1; ++k) {
        if (at(k, k).is_zero()) {
            int r = k + 1;
            while (r < n && at(r, k).is_zero()) ++r;
            if (r == n) return SparsePoly::zero(m.spec(), m.grid());
            for (int c = 0; c < n; ++c) std::swap(at(k, c), at(r, c));
            negate = !negate;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                auto num = at(k, k) * at(i, j) - at(i, k) * at(k, j);
                try {
                    at(i, j) = prev.is_one() ? num : exact_div(num, prev);
                } catch (const NotDivisible&) {
                    // guaranteed exact by theory; reaching here is a bug
                    throw std::logic_error(
                        "bareiss: exact division failed internally");
                }
            }
            at(i, k) = SparsePoly::zero(m.spec(), m.grid());
        }
        prev = at(k, k);
    }
    auto det = at(n - 1, n - 1);
    return negate ? -det : det;
}

} // namespace

SparsePoly determinant(const PolyMatrix& m, DetStrategy strategy) {
    if (m.rows() != m.cols()) throw NotSquare("determinant of non-square");
    if (strategy == DetStrategy::Auto)
        strategy = m.rows() <= 4 ? DetStrategy::Cofactor : DetStrategy::Bareiss;
    if (strategy == DetStrategy::Cofactor) {
        std::vector<int> rows(m.rows()), cols(m.cols());
        std::iota(rows.begin(), rows.end(), 0);
        std::iota(cols.begin(), cols.end(), 0);
        return det_cofactor(m, rows, cols);
    }
    return det_bareiss(m);
}

std::string to_canonical_string(const SparsePoly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first_term = true;
    for (const auto& [e, c] : f.terms()) {
        if (!first_term) os << " + ";
        first_term = false;
        std::string ct = gf::to_string(c);
        bool paren = ct.find('+') != std::string::npos;
        std::vector<std::string> factors;
        for (std::size_t v = 0; v < e.size(); ++v) {
            if (e[v] == 0) continue;
            auto [i, j] = f.grid().var_pair((int)v);
            std::string fac =
                "x[" + std::to_string(i) + "," + std::to_string(j) + "]";
            if (e[v] != 1) fac += "^" + std::to_string(e[v]);
            factors.push_back(std::move(fac));
        }
        if (factors.empty()) {
            os << (paren ? "(" + ct + ")" : ct);
            continue;
        }
        if (!c.is_one()) os << (paren ? "(" + ct + ")" : ct) << "*";
        for (std::size_t k = 0; k < factors.size(); ++k) {
            if (k) os << "*";
            os << factors[k];
        }
    }
    return os.str();
}

namespace {

std::vector<std::string> split_top_level(const std::string& s, char sep) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char ch : s) {
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        if (ch == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    return parts;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

} // namespace

SparsePoly parse_poly(const std::string& text, const gf::FieldSpec& spec,
                      VarGrid grid) {
    std::string body = trim(text);
    if (body.empty()) throw ParseError("empty polynomial text");
    if (body == "0") return SparsePoly::zero(spec, grid);
    std::vector<std::pair<gf::FieldElement, Exponents>> terms;
    for (const auto& raw_term : split_top_level(body, '+')) {
        std::string term = trim(raw_term);
        if (term.empty()) throw ParseError("empty term in '" + text + "'");
        auto coeff = gf::one(spec);
        Exponents exps(grid.var_count(), 0);
        for (const auto& raw_fac : split_top_level(term, '*')) {
            std::string fac = trim(raw_fac);
            if (fac.empty()) throw ParseError("empty factor in '" + term + "'");
            if (fac.front() == '(') {
                if (fac.back() != ')')
                    throw ParseError("unbalanced parens in '" + fac + "'");
                coeff = coeff *
                        gf::parse_element(fac.substr(1, fac.size() - 2), spec);
            } else if (fac.front() == 'x') {
                std::uint64_t i = 0, j = 0, e = 1;
                std::size_t pos = 1;
                auto expect = [&](char c) {
                    if (pos >= fac.size() || fac[pos] != c)
                        throw ParseError("bad variable '" + fac + "'");
                    ++pos;
                };
                auto number = [&]() {
                    if (pos >= fac.size() ||
                        !std::isdigit((unsigned char)fac[pos]))
                        throw ParseError("bad variable '" + fac + "'");
                    std::uint64_t n = 0;
                    while (pos < fac.size() &&
                           std::isdigit((unsigned char)fac[pos]))
                        n = n * 10 + (fac[pos++] - '0');
                    return n;
                };
                expect('[');
                i = number();
                expect(',');
                j = number();
                expect(']');
                if (pos < fac.size()) {
                    expect('^');
                    e = number();
                }
                if (pos != fac.size())
                    throw ParseError("trailing junk in '" + fac + "'");
                if (i < 1 || (int)i > grid.copies || j < 1 ||
                    (int)j > grid.coords)
                    throw ParseError("variable outside grid: '" + fac + "'");
                exps[grid.var_index((int)i, (int)j)] += e;
            } else {
                coeff = coeff * gf::parse_element(fac, spec);
            }
        }
        terms.emplace_back(coeff, std::move(exps));
    }
    return SparsePoly::from_terms(spec, grid, terms);
}

} // namespace invforge::mpoly

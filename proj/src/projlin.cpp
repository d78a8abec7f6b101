#include "cubics/projlin.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cubics {

namespace {

std::array<Fq, 3> normalize3(std::array<Fq, 3> v) {
    int first = -1;
    for (int i = 0; i < 3; ++i)
        if (!v[i].is_zero()) {
            first = i;
            break;
        }
    if (first < 0) throw ArithmeticError("projective triple: all coordinates zero");
    Fq inv = v[first].inv();
    for (auto& c : v) c = c * inv;
    return v;
}

bool lex_less3(const std::array<Fq, 3>& a, const std::array<Fq, 3>& b) {
    for (int i = 0; i < 3; ++i) {
        if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
}

}  // namespace

ProjPoint::ProjPoint(const Fq& a, const Fq& b, const Fq& c) : v_(normalize3({a, b, c})) {}

bool ProjPoint::operator<(const ProjPoint& o) const { return lex_less3(v_, o.v_); }

std::string ProjPoint::str() const {
    std::ostringstream os;
    os << "[" << v_[0].str() << ":" << v_[1].str() << ":" << v_[2].str() << "]";
    return os.str();
}

ProjLine::ProjLine(const Fq& a, const Fq& b, const Fq& c) : v_(normalize3({a, b, c})) {}

bool ProjLine::contains(const ProjPoint& p) const {
    return (v_[0] * p[0] + v_[1] * p[1] + v_[2] * p[2]).is_zero();
}

bool ProjLine::operator<(const ProjLine& o) const { return lex_less3(v_, o.v_); }

ProjLine line_through(const ProjPoint& p, const ProjPoint& q) {
    // cross product
    Fq a = p[1] * q[2] - p[2] * q[1];
    Fq b = p[2] * q[0] - p[0] * q[2];
    Fq c = p[0] * q[1] - p[1] * q[0];
    return ProjLine(a, b, c);
}

ProjPoint meet(const ProjLine& l, const ProjLine& m) {
    Fq a = l[1] * m[2] - l[2] * m[1];
    Fq b = l[2] * m[0] - l[0] * m[2];
    Fq c = l[0] * m[1] - l[1] * m[0];
    return ProjPoint(a, b, c);
}

ProjPoint embed_point(const ProjPoint& p, const Spec& target) {
    return ProjPoint(embed(p[0], target), embed(p[1], target), embed(p[2], target));
}

ProjLine embed_line(const ProjLine& l, const Spec& target) {
    return ProjLine(embed(l[0], target), embed(l[1], target), embed(l[2], target));
}

// ---------------------------------------------------------------- Mat3

Mat3 Mat3::identity(const Spec& s) {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m.e_[i] = Fq::zero(s);
    for (int i = 0; i < 3; ++i) m.e_[4 * i] = Fq::one(s);
    return m;
}

Mat3 Mat3::scalar(const Fq& c) {
    Mat3 m = identity(c.spec());
    for (int i = 0; i < 3; ++i) m.e_[4 * i] = c;
    return m;
}

Mat3 Mat3::from_ints(const Spec& s, const std::array<i64, 9>& e) {
    Mat3 m;
    for (int i = 0; i < 9; ++i) m.e_[i] = Fq::from_int(s, e[i]);
    return m;
}

Mat3 Mat3::operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Fq acc = Fq::zero(spec());
            for (int k = 0; k < 3; ++k) acc = acc + at(i, k) * o.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

Mat3 Mat3::operator*(const Fq& c) const {
    Mat3 r = *this;
    for (auto& v : r.e_) v = v * c;
    return r;
}

Mat3 Mat3::operator+(const Mat3& o) const {
    Mat3 r = *this;
    for (int i = 0; i < 9; ++i) r.e_[i] = r.e_[i] + o.e_[i];
    return r;
}

Mat3 Mat3::operator-(const Mat3& o) const {
    Mat3 r = *this;
    for (int i = 0; i < 9; ++i) r.e_[i] = r.e_[i] - o.e_[i];
    return r;
}

Fq Mat3::det() const {
    return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
           at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
           at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
}

Mat3 Mat3::inverse() const {
    Fq d = det();
    if (d.is_zero()) throw ArithmeticError("Mat3: singular");
    Fq di = d.inv();
    Mat3 r;
    auto cof = [&](int i, int j) {
        int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
        return at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
    };
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.at(j, i) = cof(i, j) * di;
    return r;
}

Mat3 Mat3::transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.at(i, j) = at(j, i);
    return r;
}

Mat3 Mat3::pow(int k) const {
    Mat3 acc = identity(spec());
    Mat3 b = *this;
    while (k > 0) {
        if (k & 1) acc = acc * b;
        b = b * b;
        k >>= 1;
    }
    return acc;
}

bool Mat3::is_scalar() const { return scalar_value().has_value(); }

std::optional<Fq> Mat3::scalar_value() const {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && !at(i, j).is_zero()) return std::nullopt;
    if (at(0, 0) != at(1, 1) || at(1, 1) != at(2, 2)) return std::nullopt;
    return at(0, 0);
}

std::array<Fq, 3> Mat3::apply(const std::array<Fq, 3>& v) const {
    std::array<Fq, 3> r;
    for (int i = 0; i < 3; ++i) r[i] = at(i, 0) * v[0] + at(i, 1) * v[1] + at(i, 2) * v[2];
    return r;
}

UniPoly Mat3::char_poly() const {
    const Spec& s = spec();
    // det(xI - M) expanded: x^3 - tr x^2 + c2 x - det
    Fq tr = at(0, 0) + at(1, 1) + at(2, 2);
    Fq c2 = at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0) + at(0, 0) * at(2, 2) -
            at(0, 2) * at(2, 0) + at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1);
    return UniPoly(s, {-det(), c2, -tr, Fq::one(s)});
}

std::string Mat3::str() const {
    std::ostringstream os;
    for (int i = 0; i < 3; ++i) {
        os << (i ? "; " : "[");
        for (int j = 0; j < 3; ++j) os << (j ? "," : "") << at(i, j).str();
    }
    os << "]";
    return os.str();
}

Mat3 embed_mat(const Mat3& m, const Spec& target) {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.at(i, j) = embed(m.at(i, j), target);
    return r;
}

// ---------------------------------------------------------------- ProjMat

ProjMat::ProjMat(const Mat3& m) {
    if (m.det().is_zero()) throw ArithmeticError("ProjMat: singular matrix");
    Fq lead;
    for (int i = 0; i < 9; ++i) {
        const Fq& v = m.at(i / 3, i % 3);
        if (!v.is_zero()) {
            lead = v;
            break;
        }
    }
    m_ = m * lead.inv();
}

ProjMat ProjMat::pow(int k) const {
    if (k < 0) return inverse().pow(-k);
    return ProjMat(m_.pow(k));
}

bool ProjMat::operator<(const ProjMat& o) const {
    for (int i = 0; i < 9; ++i) {
        const Fq& a = m_.at(i / 3, i % 3);
        const Fq& b = o.m_.at(i / 3, i % 3);
        if (a != b) return a < b;
    }
    return false;
}

ProjPoint act_point(const ProjMat& m, const ProjPoint& p) {
    auto v = m.rep().apply({p[0], p[1], p[2]});
    return ProjPoint(v[0], v[1], v[2]);
}

ProjLine act_line(const ProjMat& m, const ProjLine& l) {
    Mat3 it = m.rep().inverse().transpose();
    auto v = it.apply({l[0], l[1], l[2]});
    return ProjLine(v[0], v[1], v[2]);
}

// ---------------------------------------------------------------- eigen planes

std::vector<ProjLine> eigen_planes(const Mat3& m) {
    const Spec& s = m.spec();
    if (m.is_scalar()) throw ArithmeticError("eigen_planes: scalar matrix");
    if (!m.pow(3).is_scalar()) throw ArithmeticError("eigen_planes: cube is not scalar");

    UniPoly cp = m.char_poly();
    auto fac = factor_unipoly(cp);
    int lcm = 1;
    for (auto& [irr, mult] : fac) {
        (void)mult;
        lcm = std::lcm(lcm, irr.degree());
    }
    Spec big = FieldSpec::make(s->p, s->n * lcm);
    Mat3 mb = embed_mat(m, big);
    std::vector<Fq> eigs = poly_roots(embed_poly(cp, big));
    // distinct eigenvalues only
    std::sort(eigs.begin(), eigs.end());
    eigs.erase(std::unique(eigs.begin(), eigs.end()), eigs.end());
    if (eigs.size() != 3)
        throw ArithmeticError("eigen_planes: eigenvalues not distinct");

    // Each invariant plane is the kernel of a left eigenvector (eigenvector
    // of the transpose), i.e. a line fixed by the matrix.
    std::vector<ProjLine> out;
    Mat3 mt = mb.transpose();
    for (auto& lam : eigs) {
        Mat3 a = mt - Mat3::scalar(lam);
        // null space of a (3x3, rank 2 expected): Gaussian elimination
        std::array<std::array<Fq, 4>, 3> rows;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) rows[i][j] = a.at(i, j);
        // reduce
        int rank = 0;
        std::array<int, 3> piv = {-1, -1, -1};
        for (int col = 0; col < 3 && rank < 3; ++col) {
            int pr = -1;
            for (int r = rank; r < 3; ++r)
                if (!rows[r][col].is_zero()) {
                    pr = r;
                    break;
                }
            if (pr < 0) continue;
            std::swap(rows[rank], rows[pr]);
            Fq inv = rows[rank][col].inv();
            for (int j = 0; j < 3; ++j) rows[rank][j] = rows[rank][j] * inv;
            for (int r = 0; r < 3; ++r) {
                if (r == rank || rows[r][col].is_zero()) continue;
                Fq f = rows[r][col];
                for (int j = 0; j < 3; ++j) rows[r][j] = rows[r][j] - f * rows[rank][j];
            }
            piv[rank] = col;
            ++rank;
        }
        if (rank != 2) throw ArithmeticError("eigen_planes: unexpected eigenspace dimension");
        // free column
        int freec = 3;
        for (int c = 0; c < 3; ++c)
            if (c != piv[0] && c != piv[1]) freec = c;
        std::array<Fq, 3> w = {Fq::zero(big), Fq::zero(big), Fq::zero(big)};
        w[freec] = Fq::one(big);
        for (int r = 0; r < 2; ++r) w[piv[r]] = -rows[r][freec];
        out.push_back(ProjLine(w[0], w[1], w[2]));
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- TriPoly

TriPoly TriPoly::monomial(const Fq& c, int i, int j, int k) {
    TriPoly f(c.spec());
    f.add_term({i, j, k}, c);
    return f;
}

Fq TriPoly::coeff(int i, int j, int k) const {
    auto it = terms_.find({i, j, k});
    if (it == terms_.end()) return Fq::zero(spec_);
    return it->second;
}

void TriPoly::add_term(const std::array<int, 3>& e, const Fq& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_[e] = c;
    } else {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

int TriPoly::total_degree() const {
    int d = -1;
    for (auto& [e, c] : terms_) {
        (void)c;
        d = std::max(d, e[0] + e[1] + e[2]);
    }
    return d;
}

TriPoly TriPoly::operator+(const TriPoly& o) const {
    TriPoly r = *this;
    for (auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

TriPoly TriPoly::operator-(const TriPoly& o) const {
    TriPoly r = *this;
    for (auto& [e, c] : o.terms_) r.add_term(e, -c);
    return r;
}

TriPoly TriPoly::operator*(const TriPoly& o) const {
    TriPoly r(spec_);
    for (auto& [e1, c1] : terms_)
        for (auto& [e2, c2] : o.terms_)
            r.add_term({e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]}, c1 * c2);
    return r;
}

TriPoly TriPoly::operator*(const Fq& c) const {
    TriPoly r(spec_);
    for (auto& [e, v] : terms_) r.add_term(e, v * c);
    return r;
}

Fq TriPoly::eval(const ProjPoint& p) const { return eval(p[0], p[1], p[2]); }

Fq TriPoly::eval(const Fq& x, const Fq& y, const Fq& z) const {
    Fq acc = Fq::zero(spec_);
    for (auto& [e, c] : terms_)
        acc = acc + c * x.pow(e[0]) * y.pow(e[1]) * z.pow(e[2]);
    return acc;
}

TriPoly TriPoly::partial(int var) const {
    TriPoly r(spec_);
    for (auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        std::array<int, 3> e2 = e;
        e2[var] -= 1;
        r.add_term(e2, c * Fq::from_int(spec_, e[var]));
    }
    return r;
}

TriPoly TriPoly::substitute_linear(const Mat3& m) const {
    // variable i  ->  sum_j m(i,j) * var_j
    std::array<TriPoly, 3> forms = {TriPoly(spec_), TriPoly(spec_), TriPoly(spec_)};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            std::array<int, 3> e = {0, 0, 0};
            e[j] = 1;
            forms[i].add_term(e, m.at(i, j));
        }
    TriPoly r(spec_);
    for (auto& [e, c] : terms_) {
        TriPoly t = TriPoly::monomial(c, 0, 0, 0);
        for (int v = 0; v < 3; ++v)
            for (int k = 0; k < e[v]; ++k) t = t * forms[v];
        r = r + t;
    }
    return r;
}

std::vector<UniPoly> TriPoly::as_poly_in(int var, int other) const {
    int third = 3 - var - other;
    int dmax = 0;
    for (auto& [e, c] : terms_) {
        (void)c;
        dmax = std::max(dmax, e[var]);
    }
    std::vector<std::vector<Fq>> coeffs(dmax + 1);
    for (auto& [e, c] : terms_) {
        (void)third;
        auto& vec = coeffs[e[var]];
        if (static_cast<int>(vec.size()) <= e[other]) vec.resize(e[other] + 1, Fq::zero(spec_));
        vec[e[other]] = vec[e[other]] + c;
    }
    std::vector<UniPoly> out;
    for (auto& vec : coeffs) out.push_back(UniPoly(spec_, vec));
    return out;
}

std::string TriPoly::str() const {
    std::ostringstream os;
    for (auto& [e, c] : terms_)
        os << c.str() << "*x^" << e[0] << "y^" << e[1] << "z^" << e[2] << " ";
    return os.str();
}

TriPoly embed_tripoly(const TriPoly& f, const Spec& target) {
    TriPoly r(target);
    for (auto& [e, c] : f.terms()) r.add_term(e, embed(c, target));
    return r;
}

// ---------------------------------------------------------------- resultant

namespace {

// Determinant of a square matrix of UniPolys by fraction-free-ish Laplace
// expansion over column subsets (sizes here are at most 6x6).
UniPoly poly_det(const std::vector<std::vector<UniPoly>>& m, const Spec& s) {
    size_t n = m.size();
    // dp over subsets of columns, expanding row by row
    std::map<std::uint32_t, UniPoly> dp;
    dp[0] = UniPoly::constant(Fq::one(s));
    for (size_t r = 0; r < n; ++r) {
        std::map<std::uint32_t, UniPoly> next;
        for (auto& [mask, val] : dp) {
            if (val.is_zero()) continue;
            int used = __builtin_popcount(mask);
            int below = 0;
            for (size_t c = 0; c < n; ++c) {
                if (mask & (1u << c)) {
                    ++below;
                    continue;
                }
                if (m[r][c].is_zero()) continue;
                UniPoly term = val * m[r][c];
                // new inversions: used columns above c
                if ((used - below) % 2 == 1) term = term * (-Fq::one(s));
                std::uint32_t nm = mask | (1u << c);
                auto it = next.find(nm);
                if (it == next.end())
                    next[nm] = term;
                else
                    it->second = it->second + term;
            }
        }
        dp = std::move(next);
    }
    std::uint32_t full = (1u << n) - 1;
    auto it = dp.find(full);
    if (it == dp.end()) return UniPoly(s);
    return it->second;
}

}  // namespace

UniPoly resultant(const std::vector<UniPoly>& f, const std::vector<UniPoly>& g, const Spec& s) {
    int df = static_cast<int>(f.size()) - 1;
    int dg = static_cast<int>(g.size()) - 1;
    if (df < 0 || dg < 0) return UniPoly(s);
    if (df == 0 && dg == 0) return UniPoly::constant(Fq::one(s));
    int n = df + dg;
    std::vector<std::vector<UniPoly>> m(n, std::vector<UniPoly>(n, UniPoly(s)));
    for (int r = 0; r < dg; ++r)
        for (int i = 0; i <= df; ++i) m[r][r + i] = f[df - i];
    for (int r = 0; r < df; ++r)
        for (int i = 0; i <= dg; ++i) m[dg + r][r + i] = g[dg - i];
    return poly_det(m, s);
}

std::vector<std::vector<Fq>> kernel_basis(std::vector<std::vector<Fq>> rows, int ncols,
                                          const Spec& s) {
    Fq zero = Fq::zero(s);
    for (auto& r : rows)
        if (static_cast<int>(r.size()) != ncols) throw std::invalid_argument("ragged matrix");
    // reduced row echelon form
    std::vector<int> pivot_col;
    size_t rank = 0;
    for (int c = 0; c < ncols && rank < rows.size(); ++c) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][c].is_zero()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        Fq inv = rows[rank][c].inv();
        for (auto& v : rows[rank]) v = v * inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][c].is_zero()) continue;
            Fq factor = rows[r][c];
            for (int k = 0; k < ncols; ++k) rows[r][k] = rows[r][k] - factor * rows[rank][k];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<bool> is_pivot(ncols, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Fq>> out;
    for (int free = 0; free < ncols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Fq> v(ncols, zero);
        v[free] = Fq::one(s);
        for (size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -rows[r][free];
        out.push_back(std::move(v));
    }
    return out;
}

std::array<Fq, 10> veronese3(const ProjPoint& p) {
    std::array<Fq, 10> out;
    for (size_t i = 0; i < 10; ++i) {
        auto& e = kMonomial10[i];
        out[i] = p[0].pow(e[0]) * p[1].pow(e[1]) * p[2].pow(e[2]);
    }
    // normalize first nonzero to 1
    for (auto& v : out)
        if (!v.is_zero()) {
            Fq inv = v.inv();
            for (auto& w : out) w = w * inv;
            break;
        }
    return out;
}

}  // namespace cubics

#ifndef CUBICS_PROJLIN_HPP
#define CUBICS_PROJLIN_HPP

#include <array>
#include <map>
#include <optional>

#include "cubics/field.hpp"

namespace cubics {

// Fixed degree-3 monomial order; part of the wire format.
// x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3
inline constexpr std::array<std::array<int, 3>, 10> kMonomial10 = {{
    {3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1},
    {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3},
}};

/// Point of P^2 with the first nonzero coordinate scaled to 1.
class ProjPoint {
public:
    ProjPoint() = default;
    ProjPoint(const Fq& a, const Fq& b, const Fq& c);

    const Fq& operator[](int i) const { return v_[i]; }
    const Spec& spec() const { return v_[0].spec(); }

    bool operator==(const ProjPoint& o) const { return v_ == o.v_; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }
    bool operator<(const ProjPoint& o) const;

    std::string str() const;

private:
    std::array<Fq, 3> v_;
};

/// Line of P^2 in dual coordinates, same normalization.
class ProjLine {
public:
    ProjLine() = default;
    ProjLine(const Fq& a, const Fq& b, const Fq& c);

    const Fq& operator[](int i) const { return v_[i]; }
    bool contains(const ProjPoint& p) const;

    bool operator==(const ProjLine& o) const { return v_ == o.v_; }
    bool operator<(const ProjLine& o) const;

private:
    std::array<Fq, 3> v_;
};

// Line through two distinct points; point of intersection of two lines.
ProjLine line_through(const ProjPoint& p, const ProjPoint& q);
ProjPoint meet(const ProjLine& l, const ProjLine& m);

ProjPoint embed_point(const ProjPoint& p, const Spec& target);
ProjLine embed_line(const ProjLine& l, const Spec& target);

/// 3x3 matrix over a field; row-major.
class Mat3 {
public:
    Mat3() = default;
    explicit Mat3(std::array<Fq, 9> e) : e_(std::move(e)) {}
    static Mat3 identity(const Spec& s);
    static Mat3 scalar(const Fq& c);
    static Mat3 from_ints(const Spec& s, const std::array<i64, 9>& e);

    const Fq& at(int r, int c) const { return e_[3 * r + c]; }
    Fq& at(int r, int c) { return e_[3 * r + c]; }
    const Spec& spec() const { return e_[0].spec(); }

    Mat3 operator*(const Mat3& o) const;
    Mat3 operator*(const Fq& c) const;
    Mat3 operator+(const Mat3& o) const;
    Mat3 operator-(const Mat3& o) const;
    Fq det() const;
    Mat3 inverse() const;
    Mat3 transpose() const;
    Mat3 pow(int k) const;  // k >= 0

    bool is_scalar() const;
    // If this matrix is scalar, return the scalar.
    std::optional<Fq> scalar_value() const;

    std::array<Fq, 3> apply(const std::array<Fq, 3>& v) const;

    bool operator==(const Mat3& o) const { return e_ == o.e_; }

    UniPoly char_poly() const;  // monic cubic

    std::string str() const;

private:
    std::array<Fq, 9> e_;
};

Mat3 embed_mat(const Mat3& m, const Spec& target);

/// Element of PGL_3: an invertible Mat3 scaled so the first nonzero entry
/// (row-major) is 1.
class ProjMat {
public:
    ProjMat() = default;
    explicit ProjMat(const Mat3& m);  // rejects singular

    const Mat3& rep() const { return m_; }
    ProjMat operator*(const ProjMat& o) const { return ProjMat(m_ * o.m_); }
    ProjMat inverse() const { return ProjMat(m_.inverse()); }
    ProjMat pow(int k) const;  // any integer k

    bool operator==(const ProjMat& o) const { return m_ == o.m_; }
    bool operator!=(const ProjMat& o) const { return !(*this == o); }
    bool operator<(const ProjMat& o) const;

    std::string str() const { return m_.str(); }

private:
    Mat3 m_;
};

ProjPoint act_point(const ProjMat& m, const ProjPoint& p);
// Lines transform by the inverse transpose, so incidence is preserved.
ProjLine act_line(const ProjMat& m, const ProjLine& l);

// Invariant 2-dimensional subspaces of a projective-order-3 matrix with
// three distinct eigenvalues, as lines over the smallest extension
// containing the eigenvalues; deterministic order.
std::vector<ProjLine> eigen_planes(const Mat3& m);

/// Sparse polynomial in three variables.
class TriPoly {
public:
    explicit TriPoly(const Spec& s) : spec_(s) {}

    static TriPoly monomial(const Fq& c, int i, int j, int k);

    const Spec& spec() const { return spec_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::array<int, 3>, Fq>& terms() const { return terms_; }
    Fq coeff(int i, int j, int k) const;
    void add_term(const std::array<int, 3>& e, const Fq& c);
    int total_degree() const;

    TriPoly operator+(const TriPoly& o) const;
    TriPoly operator-(const TriPoly& o) const;
    TriPoly operator*(const TriPoly& o) const;
    TriPoly operator*(const Fq& c) const;

    Fq eval(const ProjPoint& p) const;
    Fq eval(const Fq& x, const Fq& y, const Fq& z) const;
    TriPoly partial(int var) const;

    // Substitute each variable by a linear form: rows of m give the forms.
    TriPoly substitute_linear(const Mat3& m) const;

    // View as a polynomial in variable `var` with UniPoly coefficients in
    // `other` after setting the third variable to 1.
    std::vector<UniPoly> as_poly_in(int var, int other) const;

    bool operator==(const TriPoly& o) const { return terms_ == o.terms_; }

    std::string str() const;

private:
    Spec spec_;
    std::map<std::array<int, 3>, Fq> terms_;
};

TriPoly embed_tripoly(const TriPoly& f, const Spec& target);

// Resultant with respect to the outer variable of two polynomials given as
// coefficient vectors of UniPolys (formal degrees taken from vector size).
UniPoly resultant(const std::vector<UniPoly>& f, const std::vector<UniPoly>& g, const Spec& s);

// The 3-uple Veronese embedding P^2 -> P^9 using kMonomial10.
std::array<Fq, 10> veronese3(const ProjPoint& p);

// Row-reduced basis of the right kernel of the given matrix (rows of length
// ncols); deterministic.
std::vector<std::vector<Fq>> kernel_basis(std::vector<std::vector<Fq>> rows, int ncols,
                                          const Spec& s);

}  // namespace cubics

#endif

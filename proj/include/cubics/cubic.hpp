#ifndef CUBICS_CUBIC_HPP
#define CUBICS_CUBIC_HPP

#include "cubics/hesse.hpp"
#include "cubics/projlin.hpp"

namespace cubics {

struct SingularCurve : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ReducibleDegenerate : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Ternary cubic form; 10 coefficients in kMonomial10 order, scaled so the
/// first nonzero one is 1.
class CubicForm {
public:
    CubicForm(const Spec& s, std::array<Fq, 10> c);
    static CubicForm from_ints(const Spec& s, const std::array<i64, 10>& c);
    static CubicForm from_tripoly(const TriPoly& f);

    const Spec& spec() const { return spec_; }
    const std::array<Fq, 10>& coeffs() const { return c_; }
    const Fq& operator[](int i) const { return c_[i]; }

    TriPoly tripoly() const;
    Fq eval(const ProjPoint& p) const;
    Fq eval(const Fq& x, const Fq& y, const Fq& z) const;
    std::array<Fq, 3> gradient(const ProjPoint& p) const;

    bool operator==(const CubicForm& o) const { return c_ == o.c_; }
    bool operator!=(const CubicForm& o) const { return !(*this == o); }
    bool operator<(const CubicForm& o) const;

    std::string str() const;

private:
    Spec spec_;
    std::array<Fq, 10> c_;
};

CubicForm embed_cubic(const CubicForm& f, const Spec& target);

// The form vanishing on act_point(m, P) whenever f vanishes on P,
// i.e. f composed with m^{-1}.
CubicForm substitute_cubic(const ProjMat& m, const CubicForm& f);

CubicForm hessian(const CubicForm& f);
bool is_smooth(const CubicForm& f);

/// A point marked as lying on a given cubic; checked at construction.
struct CurvePoint {
    CurvePoint(const CubicForm& form, const ProjPoint& point);
    CubicForm form;
    ProjPoint pt;
};

// All common projective zeros of f and g (finite in number), over the
// smallest single extension of their field containing every one of them.
std::vector<ProjPoint> common_zeros(const CubicForm& f, const CubicForm& g);

// The nine inflection points of a smooth cubic, with their collinear triples.
InflectionConfig inflection_points(const CubicForm& f);

// Residual intersection of the line through p and q (tangent when p = q).
ProjPoint third_intersection(const CubicForm& f, const ProjPoint& p, const ProjPoint& q);

bool is_flex(const CubicForm& f, const ProjPoint& p);

// Chord-tangent group law with a flex o as identity.
ProjPoint chord_add(const CubicForm& f, const ProjPoint& o, const ProjPoint& p,
                    const ProjPoint& q);
ProjPoint chord_neg(const CubicForm& f, const ProjPoint& o, const ProjPoint& p);

struct WeierstrassCurve {
    WeierstrassCurve(const Fq& a1, const Fq& a2, const Fq& a3, const Fq& a4, const Fq& a6);

    const Spec& spec() const { return a1.spec(); }
    Fq a1, a2, a3, a4, a6;

    Fq b2() const;
    Fq b4() const;
    Fq b6() const;
    Fq b8() const;
    Fq c4() const;
    Fq c6() const;
    Fq discriminant() const;
    Fq j() const;

    // y^2 z + a1 xyz + a3 yz^2 - x^3 - a2 x^2 z - a4 x z^2 - a6 z^3
    CubicForm form() const;
    ProjPoint origin() const;  // [0:1:0]
};

WeierstrassCurve embed_weierstrass(const WeierstrassCurve& w, const Spec& target);

// Coordinate change moving the flex o to [0:1:0] with tangent z = 0 and
// scaling into Weierstrass shape; the returned matrix maps points of f to
// points of the returned curve's form().
std::pair<WeierstrassCurve, ProjMat> flex_to_weierstrass(const CubicForm& f,
                                                         const ProjPoint& o);

// j of the Jacobian, computed at the canonically least flex; lies in the
// base field of f even when the flexes do not.
Fq j_invariant(const CubicForm& f);

long long count_points(const CubicForm& f);
long long count_points(const WeierstrassCurve& w);

// The full 3-torsion E[3] of w (9 points incl. [0:1:0]) over the smallest
// extension where it is rational; sorted.
std::vector<ProjPoint> three_torsion(const WeierstrassCurve& w);

// Weil pairing e_3 on 3-torsion points of w (given over w's own field),
// via Miller-style line-function evaluation.
Fq weil3(const WeierstrassCurve& w, const ProjPoint& p, const ProjPoint& q);

// The 3-torsion point s(P) - P + O of (f, o) attached to a translation s of
// the configuration; independent of the base point P (P = o by default, so
// the value is just s(o)). Throws NotContained if the configuration does not
// lie on f, std::invalid_argument if s is not a translation.
ProjPoint phi_C(const EIGroup& ei, const CubicForm& f, const ProjPoint& o, const AffMap& s,
                int base_index = -1);

}  // namespace cubics

#endif

#include "cubics/cubic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cubics {

namespace {

long long lcm_ll(long long a, long long b) { return a / std::gcd(a, b) * b; }

Fq element_by_index(const Spec& s, long long v) {
    std::vector<i64> c(s->n);
    for (int i = 0; i < s->n; ++i) {
        c[i] = v % s->p;
        v /= s->p;
    }
    return Fq::make(s, c);
}

// Specialize a vector of UniPoly-in-x coefficients at x = x0 (which may live
// in an extension of their field), giving a univariate in the outer variable.
UniPoly eval_coeffs(const std::vector<UniPoly>& c, const Fq& x0) {
    const Spec& t = x0.spec();
    std::vector<Fq> out;
    for (auto& ci : c) out.push_back(embed_poly(ci, t).eval(x0));
    return UniPoly(t, out);
}

// Restriction of a ternary form to the line z = 0 with x = 1, as a
// univariate in y.
UniPoly restrict_z0(const TriPoly& f) {
    const Spec& s = f.spec();
    std::vector<Fq> c;
    for (auto& [e, v] : f.terms()) {
        if (e[2] != 0) continue;
        if (static_cast<int>(c.size()) <= e[1]) c.resize(e[1] + 1, Fq::zero(s));
        c[e[1]] = c[e[1]] + v;
    }
    return UniPoly(s, c);
}

}  // namespace

// ---------------------------------------------------------------- CubicForm

CubicForm::CubicForm(const Spec& s, std::array<Fq, 10> c) : spec_(s), c_(std::move(c)) {
    int first = -1;
    for (int i = 0; i < 10; ++i)
        if (!c_[i].is_zero()) {
            first = i;
            break;
        }
    if (first < 0) throw std::invalid_argument("zero cubic form");
    Fq inv = c_[first].inv();
    for (auto& v : c_) v = v * inv;
}

CubicForm CubicForm::from_ints(const Spec& s, const std::array<i64, 10>& c) {
    std::array<Fq, 10> out{};
    for (int i = 0; i < 10; ++i) out[i] = Fq::from_int(s, c[i]);
    return CubicForm(s, out);
}

CubicForm CubicForm::from_tripoly(const TriPoly& f) {
    const Spec& s = f.spec();
    std::array<Fq, 10> c{};
    c.fill(Fq::zero(s));
    for (auto& [e, v] : f.terms()) {
        int idx = -1;
        for (int i = 0; i < 10; ++i)
            if (kMonomial10[i] == e) idx = i;
        if (idx < 0) throw std::invalid_argument("not a homogeneous cubic");
        c[idx] = v;
    }
    return CubicForm(s, c);
}

TriPoly CubicForm::tripoly() const {
    TriPoly f(spec_);
    for (int i = 0; i < 10; ++i) f.add_term(kMonomial10[i], c_[i]);
    return f;
}

Fq CubicForm::eval(const Fq& x, const Fq& y, const Fq& z) const {
    Fq acc = Fq::zero(spec_);
    for (int i = 0; i < 10; ++i) {
        if (c_[i].is_zero()) continue;
        auto& e = kMonomial10[i];
        Fq t = c_[i];
        for (int k = 0; k < e[0]; ++k) t = t * x;
        for (int k = 0; k < e[1]; ++k) t = t * y;
        for (int k = 0; k < e[2]; ++k) t = t * z;
        acc = acc + t;
    }
    return acc;
}

Fq CubicForm::eval(const ProjPoint& p) const { return eval(p[0], p[1], p[2]); }

std::array<Fq, 3> CubicForm::gradient(const ProjPoint& p) const {
    TriPoly f = tripoly();
    return {f.partial(0).eval(p), f.partial(1).eval(p), f.partial(2).eval(p)};
}

bool CubicForm::operator<(const CubicForm& o) const {
    for (int i = 0; i < 10; ++i) {
        if (c_[i] < o.c_[i]) return true;
        if (o.c_[i] < c_[i]) return false;
    }
    return false;
}

std::string CubicForm::str() const {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < 10; ++i) os << (i ? " " : "") << c_[i].str();
    os << ")";
    return os.str();
}

CubicForm embed_cubic(const CubicForm& f, const Spec& target) {
    std::array<Fq, 10> c{};
    for (int i = 0; i < 10; ++i) c[i] = embed(f[i], target);
    return CubicForm(target, c);
}

CubicForm substitute_cubic(const ProjMat& m, const CubicForm& f) {
    return CubicForm::from_tripoly(f.tripoly().substitute_linear(m.rep().inverse()));
}

CubicForm hessian(const CubicForm& f) {
    TriPoly g = f.tripoly();
    std::vector<std::vector<TriPoly>> h;
    for (int i = 0; i < 3; ++i) {
        h.emplace_back();
        for (int j = 0; j < 3; ++j) h[i].push_back(g.partial(i).partial(j));
    }
    TriPoly det = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
                  h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
                  h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
    return CubicForm::from_tripoly(det);
}

// ---------------------------------------------------------------- smoothness

bool is_smooth(const CubicForm& f) {
    const Spec& s = f.spec();
    TriPoly g = f.tripoly();
    std::array<TriPoly, 3> part = {g.partial(0), g.partial(1), g.partial(2)};
    for (auto& p : part)
        if (p.is_zero()) return false;  // cone over a binary cubic

    // affine patch z = 1, partials as polynomials in y over F[x]
    std::array<std::vector<UniPoly>, 3> py;
    for (int i = 0; i < 3; ++i) py[i] = part[i].as_poly_in(1, 0);
    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return py[a].size() > py[b].size(); });
    int a = order[0], b = order[1], c = order[2];
    UniPoly cand(s);
    if (py[a].size() == 1) {
        // all three independent of y on this patch
        cand = gcd(gcd(py[0][0], py[1][0]), py[2][0]);
        if (cand.degree() >= 1) return false;
    } else {
        UniPoly r1 = resultant(py[a], py[b], s);
        UniPoly r2 = resultant(py[a], py[c], s);
        if (r1.is_zero() || r2.is_zero()) return false;  // shared component
        cand = gcd(r1, r2);
        if (cand.degree() >= 1) {
            for (auto& [irr, mult] : factor_unipoly(cand)) {
                (void)mult;
                auto sk = FieldSpec::make(s->p, s->n * irr.degree());
                Fq x0 = poly_roots(embed_poly(irr, sk)).at(0);
                UniPoly h(sk);
                bool any = false, started = false;
                for (int i = 0; i < 3; ++i) {
                    UniPoly hi = eval_coeffs(py[i], x0);
                    if (hi.is_zero()) continue;
                    any = true;
                    h = started ? gcd(h, hi) : hi;
                    started = true;
                }
                if (!any) return false;  // partials vanish on a whole line
                if (h.degree() >= 1) return false;
            }
        }
    }

    // line z = 0 with x != 0
    {
        UniPoly h(s);
        bool any = false, started = false;
        for (int i = 0; i < 3; ++i) {
            UniPoly hi = restrict_z0(part[i]);
            if (hi.is_zero()) continue;
            any = true;
            h = started ? gcd(h, hi) : hi;
            started = true;
        }
        if (!any) return false;
        if (h.degree() >= 1) return false;
    }

    // the remaining point [0:1:0]
    ProjPoint e2(Fq::zero(s), Fq::one(s), Fq::zero(s));
    bool all0 = true;
    for (auto& p : part)
        if (!p.eval(e2).is_zero()) all0 = false;
    if (all0) return false;

    return true;
}

// ------------------------------------------------------------- common zeros

std::vector<ProjPoint> common_zeros(const CubicForm& f, const CubicForm& g) {
    const Spec& s = f.spec();

    // Phase 1: discover the minimal extension degree L containing every
    // common zero; phase 2: collect the points over it.
    long long L = 1;
    {
        TriPoly F = f.tripoly(), G = g.tripoly();
        auto fy = F.as_poly_in(1, 0), gy = G.as_poly_in(1, 0);
        UniPoly r = resultant(fy, gy, s);
        if (r.is_zero()) throw std::runtime_error("curves share a component");
        for (auto& [irr, mult] : factor_unipoly(r)) {
            (void)mult;
            long long k = irr.degree();
            auto sk = FieldSpec::make(s->p, static_cast<int>(s->n * k));
            Fq x0 = poly_roots(embed_poly(irr, sk)).at(0);
            UniPoly f0 = eval_coeffs(fy, x0), g0 = eval_coeffs(gy, x0);
            if (f0.is_zero() && g0.is_zero())
                throw std::runtime_error("curves share a component");
            UniPoly h = f0.is_zero() ? g0 : (g0.is_zero() ? f0 : gcd(f0, g0));
            if (h.degree() >= 1)
                for (auto& [hirr, hm] : factor_unipoly(h)) {
                    (void)hm;
                    L = lcm_ll(L, k * hirr.degree());
                }
        }
        UniPoly f0 = restrict_z0(F), g0 = restrict_z0(G);
        if (f0.is_zero() && g0.is_zero()) throw std::runtime_error("curves share a component");
        UniPoly h = f0.is_zero() ? g0 : (g0.is_zero() ? f0 : gcd(f0, g0));
        if (h.degree() >= 1)
            for (auto& [hirr, hm] : factor_unipoly(h)) {
                (void)hm;
                L = lcm_ll(L, hirr.degree());
            }
    }

    auto sL = FieldSpec::make(s->p, static_cast<int>(s->n * L));
    TriPoly F = embed_tripoly(f.tripoly(), sL), G = embed_tripoly(g.tripoly(), sL);
    std::vector<ProjPoint> out;
    Fq one = Fq::one(sL), zero = Fq::zero(sL);

    auto fy = F.as_poly_in(1, 0), gy = G.as_poly_in(1, 0);
    UniPoly r = resultant(fy, gy, sL);
    for (auto& x0 : poly_roots(r)) {
        UniPoly f0 = eval_coeffs(fy, x0), g0 = eval_coeffs(gy, x0);
        UniPoly h = f0.is_zero() ? g0 : (g0.is_zero() ? f0 : gcd(f0, g0));
        for (auto& y0 : poly_roots(h)) out.push_back(ProjPoint(x0, y0, one));
    }
    {
        UniPoly f0 = restrict_z0(F), g0 = restrict_z0(G);
        UniPoly h = f0.is_zero() ? g0 : (g0.is_zero() ? f0 : gcd(f0, g0));
        for (auto& y0 : poly_roots(h)) out.push_back(ProjPoint(one, y0, zero));
    }
    ProjPoint e2(zero, one, zero);
    if (F.eval(e2).is_zero() && G.eval(e2).is_zero()) out.push_back(e2);

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

InflectionConfig inflection_points(const CubicForm& f) {
    if (!is_smooth(f)) throw SingularCurve("inflection_points: singular curve");
    auto pts = common_zeros(f, hessian(f));
    if (pts.size() != 9)
        throw std::runtime_error("expected 9 inflection points, got " +
                                 std::to_string(pts.size()));
    return InflectionConfig(pts);
}

// ----------------------------------------------------------- chord geometry

CurvePoint::CurvePoint(const CubicForm& form_, const ProjPoint& point) : form(form_), pt(point) {
    if (!form.eval(pt).is_zero()) throw std::invalid_argument("point not on cubic");
}

namespace {

// Raw (unnormalized) evaluation of f at t*p + u*q; projective normalization
// would rescale each sample differently and break interpolation.
Fq eval_on_line(const CubicForm& f, const Fq& t, const ProjPoint& p, const Fq& u,
                const ProjPoint& q) {
    return f.eval(t * p[0] + u * q[0], t * p[1] + u * q[1], t * p[2] + u * q[2]);
}

}  // namespace

ProjPoint third_intersection(const CubicForm& f, const ProjPoint& p, const ProjPoint& q) {
    const Spec& s = f.spec();
    if (!f.eval(p).is_zero() || !f.eval(q).is_zero())
        throw std::invalid_argument("third_intersection: point not on curve");
    Fq half = Fq::from_int(s, 2).inv();
    if (p != q) {
        // f(tP + uQ) = tu (c1 t + c2 u)
        Fq a = eval_on_line(f, Fq::one(s), p, Fq::one(s), q);
        Fq b = eval_on_line(f, Fq::one(s), p, -Fq::one(s), q);
        Fq c1 = (a - b) * half, c2 = (a + b) * half;
        if (c1.is_zero() && c2.is_zero())
            throw ReducibleDegenerate("line lies on the cubic");
        // consistency: check the model at (t,u) = (1,2)
        Fq two = Fq::from_int(s, 2);
        Fq lhs = eval_on_line(f, Fq::one(s), p, two, q);
        if (lhs != two * (c1 + two * c2)) throw std::logic_error("chord expansion mismatch");
        return ProjPoint(-c2 * p[0] + c1 * q[0], -c2 * p[1] + c1 * q[1],
                         -c2 * p[2] + c1 * q[2]);
    }
    // tangent case
    auto gr = f.gradient(p);
    if (gr[0].is_zero() && gr[1].is_zero() && gr[2].is_zero())
        throw SingularCurve("tangent at a singular point");
    ProjLine l(gr[0], gr[1], gr[2]);
    // second point on the tangent line
    int nz = 0;
    while (l[nz].is_zero()) ++nz;
    std::array<Fq, 3> v1{Fq::zero(s), Fq::zero(s), Fq::zero(s)};
    std::array<Fq, 3> v2 = v1;
    int o1 = (nz + 1) % 3, o2 = (nz + 2) % 3;
    v1[nz] = -l[o1], v1[o1] = l[nz];
    v2[nz] = -l[o2], v2[o2] = l[nz];
    ProjPoint q2 = (ProjPoint(v1[0], v1[1], v1[2]) != p) ? ProjPoint(v1[0], v1[1], v1[2])
                                                         : ProjPoint(v2[0], v2[1], v2[2]);
    // f(tP + uQ2) = u^2 (c2 t + c3 u)
    Fq a = eval_on_line(f, Fq::one(s), p, Fq::one(s), q2);
    Fq b = eval_on_line(f, Fq::one(s), p, -Fq::one(s), q2);
    Fq c2 = (a + b) * half, c3 = (a - b) * half;
    if (c2.is_zero() && c3.is_zero()) throw ReducibleDegenerate("tangent lies on the cubic");
    Fq two = Fq::from_int(s, 2);
    Fq lhs = eval_on_line(f, Fq::one(s), p, two, q2);
    if (lhs != two * two * (c2 + two * c3)) throw std::logic_error("tangent expansion mismatch");
    return ProjPoint(-c3 * p[0] + c2 * q2[0], -c3 * p[1] + c2 * q2[1],
                     -c3 * p[2] + c2 * q2[2]);
}

bool is_flex(const CubicForm& f, const ProjPoint& p) {
    if (!f.eval(p).is_zero()) return false;
    auto gr = f.gradient(p);
    if (gr[0].is_zero() && gr[1].is_zero() && gr[2].is_zero()) return false;
    return third_intersection(f, p, p) == p;
}

ProjPoint chord_add(const CubicForm& f, const ProjPoint& o, const ProjPoint& p,
                    const ProjPoint& q) {
    return third_intersection(f, third_intersection(f, p, q), o);
}

ProjPoint chord_neg(const CubicForm& f, const ProjPoint& o, const ProjPoint& p) {
    return third_intersection(f, p, o);
}

// ------------------------------------------------------------- Weierstrass

WeierstrassCurve::WeierstrassCurve(const Fq& a1_, const Fq& a2_, const Fq& a3_, const Fq& a4_,
                                   const Fq& a6_)
    : a1(a1_), a2(a2_), a3(a3_), a4(a4_), a6(a6_) {
    if (discriminant().is_zero()) throw SingularCurve("singular Weierstrass model");
}

Fq WeierstrassCurve::b2() const { return a1 * a1 + Fq::from_int(spec(), 4) * a2; }
Fq WeierstrassCurve::b4() const { return Fq::from_int(spec(), 2) * a4 + a1 * a3; }
Fq WeierstrassCurve::b6() const { return a3 * a3 + Fq::from_int(spec(), 4) * a6; }
Fq WeierstrassCurve::b8() const {
    return a1 * a1 * a6 + Fq::from_int(spec(), 4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 -
           a4 * a4;
}
Fq WeierstrassCurve::c4() const { return b2() * b2() - Fq::from_int(spec(), 24) * b4(); }
Fq WeierstrassCurve::c6() const {
    return -(b2() * b2() * b2()) + Fq::from_int(spec(), 36) * b2() * b4() -
           Fq::from_int(spec(), 216) * b6();
}
Fq WeierstrassCurve::discriminant() const {
    Fq B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -(B2 * B2 * B8) - Fq::from_int(spec(), 8) * B4 * B4 * B4 -
           Fq::from_int(spec(), 27) * B6 * B6 + Fq::from_int(spec(), 9) * B2 * B4 * B6;
}
Fq WeierstrassCurve::j() const { return c4() * c4() * c4() * discriminant().inv(); }

CubicForm WeierstrassCurve::form() const {
    const Spec& s = spec();
    std::array<Fq, 10> c{};
    c.fill(Fq::zero(s));
    c[0] = -Fq::one(s);  // x^3
    c[2] = -a2;          // x^2 z
    c[4] = a1;           // xyz
    c[5] = -a4;          // x z^2
    c[7] = Fq::one(s);   // y^2 z
    c[8] = a3;           // y z^2
    c[9] = -a6;          // z^3
    return CubicForm(s, c);
}

ProjPoint WeierstrassCurve::origin() const {
    const Spec& s = spec();
    return ProjPoint(Fq::zero(s), Fq::one(s), Fq::zero(s));
}

WeierstrassCurve embed_weierstrass(const WeierstrassCurve& w, const Spec& target) {
    return WeierstrassCurve(embed(w.a1, target), embed(w.a2, target), embed(w.a3, target),
                            embed(w.a4, target), embed(w.a6, target));
}

std::pair<WeierstrassCurve, ProjMat> flex_to_weierstrass(const CubicForm& f,
                                                         const ProjPoint& o) {
    const Spec& s = f.spec();
    if (!is_flex(f, o)) throw std::invalid_argument("base point is not a flex");
    auto gr = f.gradient(o);
    ProjLine l(gr[0], gr[1], gr[2]);
    // second point on the tangent line
    int nz = 0;
    while (l[nz].is_zero()) ++nz;
    int o1 = (nz + 1) % 3, o2 = (nz + 2) % 3;
    std::array<Fq, 3> v1{Fq::zero(s), Fq::zero(s), Fq::zero(s)}, v2 = v1;
    v1[nz] = -l[o1], v1[o1] = l[nz];
    v2[nz] = -l[o2], v2[o2] = l[nz];
    ProjPoint a = (ProjPoint(v1[0], v1[1], v1[2]) != o) ? ProjPoint(v1[0], v1[1], v1[2])
                                                        : ProjPoint(v2[0], v2[1], v2[2]);
    // any point off the tangent line
    std::array<Fq, 3> bv{Fq::zero(s), Fq::zero(s), Fq::zero(s)};
    bv[nz] = Fq::one(s);
    ProjPoint bpt(bv[0], bv[1], bv[2]);

    Mat3 t = Mat3::identity(s);
    for (int r = 0; r < 3; ++r) {
        t.at(r, 0) = a[r];
        t.at(r, 1) = o[r];
        t.at(r, 2) = bpt[r];
    }
    ProjMat n = ProjMat(t).inverse();
    TriPoly g = f.tripoly().substitute_linear(t);  // f after the frame change

    Fq c1 = g.coeff(0, 2, 1), c4 = g.coeff(3, 0, 0);
    if (!g.coeff(0, 3, 0).is_zero() || !g.coeff(2, 1, 0).is_zero() ||
        !g.coeff(1, 2, 0).is_zero())
        throw std::logic_error("flex frame: unexpected coefficients");
    if (c1.is_zero() || c4.is_zero()) throw SingularCurve("degenerate flex frame");

    Fq lam = -c4 * c1.inv();
    Mat3 d = Mat3::identity(s);
    d.at(0, 0) = lam;
    d.at(1, 1) = lam * lam;
    TriPoly g2 = g.substitute_linear(d);
    Fq kappa = g2.coeff(0, 2, 1).inv();
    if (kappa * g2.coeff(3, 0, 0) != -Fq::one(s))
        throw std::logic_error("flex scaling: x^3 coefficient");

    Fq a1 = kappa * g2.coeff(1, 1, 1);
    Fq a3 = kappa * g2.coeff(0, 1, 2);
    Fq a2 = -(kappa * g2.coeff(2, 0, 1));
    Fq a4 = -(kappa * g2.coeff(1, 0, 2));
    Fq a6 = -(kappa * g2.coeff(0, 0, 3));
    WeierstrassCurve w(a1, a2, a3, a4, a6);

    ProjMat m = ProjMat(d).inverse() * n;
    if (substitute_cubic(m, f) != w.form())
        throw std::logic_error("flex reduction does not reproduce the model");
    return {w, m};
}

Fq j_invariant(const CubicForm& f) {
    if (!is_smooth(f)) throw SingularCurve("j_invariant: singular curve");
    InflectionConfig cfg = inflection_points(f);
    const Spec& big = cfg.spec();
    CubicForm fb = embed_cubic(f, big);
    auto [w, m] = flex_to_weierstrass(fb, cfg.points()[0]);
    (void)m;
    return compress(w.j(), f.spec());
}

// ----------------------------------------------------------- point counting

long long count_points(const CubicForm& f) {
    const Spec& s = f.spec();
    long long q = static_cast<long long>(s->q());
    Fq one = Fq::one(s), zero = Fq::zero(s);
    long long cnt = 0;
    for (long long i = 0; i < q; ++i) {
        Fq a = element_by_index(s, i);
        for (long long j = 0; j < q; ++j) {
            Fq b = element_by_index(s, j);
            if (f.eval(one, a, b).is_zero()) ++cnt;
        }
        if (f.eval(zero, one, a).is_zero()) ++cnt;
    }
    if (f.eval(zero, zero, one).is_zero()) ++cnt;
    return cnt;
}

long long count_points(const WeierstrassCurve& w) { return count_points(w.form()); }

// -------------------------------------------------------------- 3-torsion

namespace {

UniPoly division3(const WeierstrassCurve& w) {
    const Spec& s = w.spec();
    Fq three = Fq::from_int(s, 3);
    return UniPoly(s, {w.b8(), three * w.b6(), three * w.b4(), w.b2(), three});
}

UniPoly fiber_quadratic(const WeierstrassCurve& w, const Fq& x0) {
    // y^2 + (a1 x0 + a3) y - (x0^3 + a2 x0^2 + a4 x0 + a6)
    const Spec& s = x0.spec();
    Fq a1 = embed(w.a1, s), a2 = embed(w.a2, s), a3 = embed(w.a3, s), a4 = embed(w.a4, s),
       a6 = embed(w.a6, s);
    Fq lin = a1 * x0 + a3;
    Fq c0 = -(x0 * x0 * x0 + a2 * x0 * x0 + a4 * x0 + a6);
    return UniPoly(s, {c0, lin, Fq::one(s)});
}

}  // namespace

std::vector<ProjPoint> three_torsion(const WeierstrassCurve& w) {
    const Spec& s = w.spec();
    UniPoly psi = division3(w);
    long long L = 1;
    for (auto& [irr, mult] : factor_unipoly(psi)) {
        (void)mult;
        long long k = irr.degree();
        auto sk = FieldSpec::make(s->p, static_cast<int>(s->n * k));
        Fq x0 = poly_roots(embed_poly(irr, sk)).at(0);
        for (auto& [qirr, qm] : factor_unipoly(fiber_quadratic(w, x0))) {
            (void)qm;
            L = lcm_ll(L, k * qirr.degree());
        }
    }
    auto sL = FieldSpec::make(s->p, static_cast<int>(s->n * L));
    WeierstrassCurve wL = embed_weierstrass(w, sL);
    std::vector<ProjPoint> out = {wL.origin()};
    Fq one = Fq::one(sL);
    auto xs = poly_roots(embed_poly(psi, sL));
    for (auto& x0 : xs)
        for (auto& y0 : poly_roots(fiber_quadratic(w, x0))) out.push_back(ProjPoint(x0, y0, one));
    if (out.size() != 9) throw std::logic_error("three_torsion: expected 9 points");
    std::sort(out.begin(), out.end());
    return out;
}

// ------------------------------------------------------------ Weil pairing

namespace {

Fq line_val(const ProjLine& l, const ProjPoint& a) {
    return l[0] * a[0] + l[1] * a[1] + l[2] * a[2];
}

// Value at x of the function with divisor 3(P+S) - 3(S): the tangent line at
// the 3-torsion point P (a flex) corrected by chord/vertical lines moving the
// divisor from 3(P) - 3(O) to the translated representative.
struct TorsionFn {
    TorsionFn(const CubicForm& f, const ProjPoint& o, const ProjPoint& p, const ProjPoint& s) {
        auto gr = f.gradient(p);
        tp_ = ProjLine(gr[0], gr[1], gr[2]);
        ProjPoint u = chord_add(f, o, p, s);
        vu_ = line_through(u, o);
        if (p == s) {
            auto gs = f.gradient(p);
            lps_ = ProjLine(gs[0], gs[1], gs[2]);
        } else {
            lps_ = line_through(p, s);
        }
    }

    Fq operator()(const ProjPoint& x) const {
        Fq num = line_val(tp_, x), v = line_val(vu_, x), den = line_val(lps_, x);
        return num * v * v * v * (den * den * den * x[2]).inv();
    }

private:
    ProjLine tp_, vu_, lps_;
};

}  // namespace

Fq weil3(const WeierstrassCurve& w, const ProjPoint& p, const ProjPoint& q) {
    const Spec& s = w.spec();
    CubicForm f = w.form();
    ProjPoint o = w.origin();
    for (auto* t : {&p, &q}) {
        if (*t == o) continue;
        ProjPoint t3 = chord_add(f, o, *t, chord_add(f, o, *t, *t));
        if (t3 != o) throw std::invalid_argument("weil3: not a 3-torsion point");
    }
    if (p == o || q == o) return Fq::one(s);

    for (int e = 1; e <= 3; ++e) {
        auto se = FieldSpec::make(s->p, s->n * e);
        WeierstrassCurve we = embed_weierstrass(w, se);
        CubicForm fe = we.form();
        ProjPoint oe = we.origin(), pe = embed_point(p, se), qe = embed_point(q, se);
        ProjPoint mp = chord_neg(fe, oe, pe), mq = chord_neg(fe, oe, qe);

        // sample affine curve points
        std::vector<ProjPoint> pts;
        long long qsz = static_cast<long long>(se->q());
        Fq onee = Fq::one(se);
        for (long long i = 0; i < qsz && pts.size() < 80; ++i) {
            Fq x0 = element_by_index(se, i);
            for (auto& y0 : poly_roots(fiber_quadratic(we, x0)))
                pts.push_back(ProjPoint(x0, y0, onee));
        }

        auto forbidden = [](const ProjPoint& x, std::initializer_list<ProjPoint> bad) {
            for (auto& b : bad)
                if (x == b) return true;
            return false;
        };

        for (auto& r : pts) {
            if (forbidden(r, {oe, qe, mq})) continue;
            ProjPoint qr = chord_add(fe, oe, qe, r);
            ProjPoint mqr = chord_neg(fe, oe, qr);
            if (forbidden(qr, {oe, pe}) || forbidden(r, {pe})) continue;
            for (auto& t : pts) {
                if (forbidden(t, {oe, pe, mp, r})) continue;
                ProjPoint pt2 = chord_add(fe, oe, pe, t);
                ProjPoint mpt = chord_neg(fe, oe, pt2);
                if (forbidden(pt2, {oe, qe, qr, mqr, r})) continue;
                if (forbidden(t, {qe, qr, mqr})) continue;
                if (forbidden(qr, {pt2, mpt, t}) || forbidden(r, {pt2, mpt, t})) continue;
                // all clear: evaluate
                TorsionFn fa(fe, oe, pe, t);   // divisor 3(P+S) - 3(S), S = t
                TorsionFn fb(fe, oe, qe, r);   // divisor 3(Q+R) - 3(R)
                Fq val = fa(r) * fb(pt2) * (fa(qr) * fb(t)).inv();
                if (!(val * val * val).is_one()) throw std::logic_error("weil3: not a cube root");
                return compress(val, s);
            }
        }
    }
    throw std::runtime_error("weil3: no valid auxiliary points found");
}

ProjPoint phi_C(const EIGroup& ei, const CubicForm& f, const ProjPoint& o, const AffMap& s,
                int base_index) {
    const InflectionConfig& cfg = ei.config();
    for (auto& p : cfg.points())
        if (!f.eval(p).is_zero()) throw NotContained("configuration not on the cubic");
    psi(ei, s);  // validates that s is a translation
    int oi = cfg.index_of(o);
    if (oi < 0) throw std::invalid_argument("phi_C: base flex not a configuration point");
    int pi = base_index < 0 ? oi : base_index;
    const ProjPoint& sp = cfg.points()[s(pi)];
    const ProjPoint& pp = cfg.points()[pi];
    return chord_add(f, o, sp, chord_neg(f, o, pp));
}

}  // namespace cubics

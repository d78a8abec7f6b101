#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cubics/projlin.hpp"

using namespace cubics;

namespace {

Mat3 random_invertible(const Spec& s, std::mt19937& rng) {
    for (;;) {
        std::array<i64, 9> e;
        for (auto& v : e) v = rng() % s->p;
        Mat3 m = Mat3::from_ints(s, e);
        if (!m.det().is_zero()) return m;
    }
}

std::vector<ProjPoint> all_points(const Spec& s) {
    long long q = static_cast<long long>(s->q());
    std::vector<Fq> elems;
    for (long long v = 0; v < q; ++v) {
        std::vector<i64> c(s->n);
        long long t = v;
        for (int i = 0; i < s->n; ++i) {
            c[i] = t % s->p;
            t /= s->p;
        }
        elems.push_back(Fq::make(s, c));
    }
    std::vector<ProjPoint> pts;
    Fq one = Fq::one(s), zero = Fq::zero(s);
    for (auto& a : elems)
        for (auto& b : elems) pts.push_back(ProjPoint(one, a, b));
    for (auto& a : elems) pts.push_back(ProjPoint(zero, one, a));
    pts.push_back(ProjPoint(zero, zero, one));
    return pts;
}

}  // namespace

TEST_CASE("act_point basics") {
    auto f7 = FieldSpec::make(7, 1);
    ProjPoint p(Fq::one(f7), Fq::from_int(f7, 3), Fq::zero(f7));
    ProjMat id(Mat3::identity(f7));
    CHECK(act_point(id, p) == p);

    // diag(1, rho, rho^2), rho = 2 over F_7
    ProjMat d(Mat3::from_ints(f7, {1, 0, 0, 0, 2, 0, 0, 0, 4}));
    ProjPoint expect(Fq::one(f7), Fq::from_int(f7, 6), Fq::zero(f7));
    CHECK(act_point(d, p) == expect);

    // cyclic shift e1->e2->e3
    ProjMat c(Mat3::from_ints(f7, {0, 0, 1, 1, 0, 0, 0, 1, 0}));
    ProjPoint e1(Fq::one(f7), Fq::zero(f7), Fq::zero(f7));
    ProjPoint e2(Fq::zero(f7), Fq::one(f7), Fq::zero(f7));
    CHECK(act_point(c, e1) == e2);

    // group action composition law
    std::mt19937 rng(5);
    for (int i = 0; i < 20; ++i) {
        ProjMat m1(random_invertible(f7, rng)), m2(random_invertible(f7, rng));
        CHECK(act_point(m1 * m2, p) == act_point(m1, act_point(m2, p)));
    }
    CHECK_THROWS(ProjMat(Mat3::from_ints(f7, {1, 1, 1, 1, 1, 1, 0, 0, 0})));
}

TEST_CASE("line incidence is equivariant") {
    auto f7 = FieldSpec::make(7, 1);
    std::mt19937 rng(17);
    auto pts = all_points(f7);
    for (int i = 0; i < 30; ++i) {
        ProjPoint p = pts[rng() % pts.size()];
        ProjPoint q = pts[rng() % pts.size()];
        if (p == q) continue;
        ProjLine l = line_through(p, q);
        CHECK(l.contains(p));
        CHECK(l.contains(q));
        ProjMat m(random_invertible(f7, rng));
        ProjLine lm = act_line(m, l);
        CHECK(lm.contains(act_point(m, p)));
        CHECK(lm.contains(act_point(m, q)));
    }
}

TEST_CASE("eigen_planes of diagonal and shift") {
    auto f7 = FieldSpec::make(7, 1);
    Mat3 d = Mat3::from_ints(f7, {1, 0, 0, 0, 2, 0, 0, 0, 4});
    auto planes = eigen_planes(d);
    REQUIRE(planes.size() == 3);
    // coordinate planes x=0, y=0, z=0
    std::vector<ProjLine> expect = {
        ProjLine(Fq::one(f7), Fq::zero(f7), Fq::zero(f7)),
        ProjLine(Fq::zero(f7), Fq::one(f7), Fq::zero(f7)),
        ProjLine(Fq::zero(f7), Fq::zero(f7), Fq::one(f7))};
    std::sort(expect.begin(), expect.end());
    CHECK(planes == expect);

    // cyclic shift: eigenvectors w_j = (1, rho^j, rho^2j); planes spanned by pairs
    Mat3 c = Mat3::from_ints(f7, {0, 0, 1, 1, 0, 0, 0, 1, 0});
    auto cp = eigen_planes(c);
    REQUIRE(cp.size() == 3);
    for (auto& pl : cp) {
        int count = 0;
        for (i64 j = 0; j < 3; ++j) {
            i64 rj = 1;
            for (int k = 0; k < j; ++k) rj = rj * 2 % 7;
            ProjPoint w(Fq::one(f7), Fq::from_int(f7, rj), Fq::from_int(f7, rj * rj % 7));
            if (pl.contains(w)) ++count;
        }
        CHECK(count == 2);
    }

    // equivariance under conjugation
    std::mt19937 rng(23);
    Mat3 g = random_invertible(f7, rng);
    Mat3 conj = g * d * g.inverse();
    auto planes2 = eigen_planes(conj);
    ProjMat gm(g);
    std::vector<ProjLine> mapped;
    for (auto& pl : planes) mapped.push_back(act_line(gm, pl));
    std::sort(mapped.begin(), mapped.end());
    CHECK(planes2 == mapped);

    CHECK_THROWS(eigen_planes(Mat3::identity(f7)));
    CHECK_THROWS(eigen_planes(random_invertible(f7, rng) + Mat3::identity(f7)));
}

TEST_CASE("eigen_planes exhaustively fixed lines for q=7") {
    auto f7 = FieldSpec::make(7, 1);
    Mat3 c = Mat3::from_ints(f7, {0, 0, 1, 1, 0, 0, 0, 1, 0});
    auto planes = eigen_planes(c);
    ProjMat cm(c);
    // over F_7 all three planes happen to be rational; compare against a
    // brute-force scan of all q^2+q+1 lines
    std::vector<ProjLine> fixed;
    auto f7pts = all_points(f7);
    for (auto& p : f7pts) {
        ProjLine l(p[0], p[1], p[2]);
        if (act_line(cm, l) == l) fixed.push_back(l);
    }
    std::sort(fixed.begin(), fixed.end());
    CHECK(fixed == planes);
}

TEST_CASE("veronese3") {
    auto f7 = FieldSpec::make(7, 1);
    ProjPoint e1(Fq::one(f7), Fq::zero(f7), Fq::zero(f7));
    auto v = veronese3(e1);
    CHECK(v[0].is_one());
    for (int i = 1; i < 10; ++i) CHECK(v[i].is_zero());

    ProjPoint ones(Fq::one(f7), Fq::one(f7), Fq::one(f7));
    for (auto& c : veronese3(ones)) CHECK(c.is_one());

    ProjPoint p(Fq::one(f7), Fq::from_int(f7, 2), Fq::zero(f7));
    auto vp = veronese3(p);
    std::vector<i64> expect = {1, 2, 0, 4, 0, 0, 1, 0, 0, 0};
    for (int i = 0; i < 10; ++i) CHECK(vp[i].coeffs()[0] == expect[i]);
}

TEST_CASE("TriPoly substitute and resultant") {
    auto f7 = FieldSpec::make(7, 1);
    // f = x^3 + y^3 + z^3
    TriPoly f(f7);
    f.add_term({3, 0, 0}, Fq::one(f7));
    f.add_term({0, 3, 0}, Fq::one(f7));
    f.add_term({0, 0, 3}, Fq::one(f7));
    Mat3 d = Mat3::from_ints(f7, {1, 0, 0, 0, 2, 0, 0, 0, 4});
    CHECK(f.substitute_linear(d) == f);  // cubes of cube roots of unity

    // substitution is compatible with evaluation
    std::mt19937 rng(9);
    for (int i = 0; i < 10; ++i) {
        Mat3 m = random_invertible(f7, rng);
        TriPoly g = f.substitute_linear(m);
        Fq x = Fq::from_int(f7, rng() % 7), y = Fq::from_int(f7, rng() % 7),
           z = Fq::from_int(f7, rng() % 7);
        auto mv = m.apply({x, y, z});
        CHECK(g.eval(x, y, z) == f.eval(mv[0], mv[1], mv[2]));
    }

    // resultant of univariate images: Res_y(y^2 - x, y - x) = x^2 - x
    // f1 = y^2 - x, f2 = y - x as polys in y with UniPoly-in-x coefficients
    std::vector<UniPoly> f1 = {UniPoly::from_ints(f7, {0, -1}), UniPoly(f7),
                               UniPoly::from_ints(f7, {1})};
    std::vector<UniPoly> f2 = {UniPoly::from_ints(f7, {0, -1}), UniPoly::from_ints(f7, {1})};
    UniPoly r = resultant(f1, f2, f7);
    CHECK(r == UniPoly::from_ints(f7, {0, -1, 1}));
}

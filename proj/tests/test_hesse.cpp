#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "cubics/cubic.hpp"

using namespace cubics;

namespace {

CubicForm fermat(const Spec& s) {
    return CubicForm::from_ints(s, {1, 0, 0, 0, 0, 0, 1, 0, 0, 1});
}

struct Fixture {
    Spec f7 = FieldSpec::make(7, 1);
    CubicForm f = fermat(f7);
    InflectionConfig cfg = inflection_points(f);
    EIGroup ei{cfg};
    AffGroup aff{cfg, ei};
};

Fixture& fx() {
    static Fixture s;
    return s;
}

// AffMap induced by a matrix that permutes the configuration points
AffMap matrix_map(const InflectionConfig& cfg, const ProjMat& m) {
    AffMap g;
    for (int i = 0; i < 9; ++i) {
        int j = cfg.index_of(act_point(m, cfg.points()[i]));
        REQUIRE(j >= 0);
        g.perm[i] = j;
    }
    return g;
}

}  // namespace

TEST_CASE("collinear_third") {
    auto& F = fx();
    ProjPoint p(Fq::one(F.f7), Fq::from_int(F.f7, 3), Fq::zero(F.f7));
    ProjPoint q(Fq::one(F.f7), Fq::from_int(F.f7, 5), Fq::zero(F.f7));
    ProjPoint o(Fq::one(F.f7), Fq::from_int(F.f7, 6), Fq::zero(F.f7));
    int i = F.cfg.index_of(p), j = F.cfg.index_of(q), k = F.cfg.index_of(o);
    REQUIRE(i >= 0);
    CHECK(F.cfg.collinear_third(i, j) == k);
    CHECK(F.cfg.collinear_third(j, i) == k);

    // all 36 pairs covered exactly once by the 12 triples
    int covered = 0;
    for (int a = 0; a < 9; ++a)
        for (int b = a + 1; b < 9; ++b) {
            int c = F.cfg.collinear_third(a, b);
            CHECK(c != a);
            CHECK(c != b);
            CHECK(F.cfg.collinear_third(a, c) == b);
            CHECK(F.cfg.collinear_third(b, c) == a);
            ++covered;
        }
    CHECK(covered == 36);
    CHECK_THROWS(F.cfg.collinear_third(2, 2));
}

TEST_CASE("EI classes: Lemma 3 behavior") {
    auto& F = fx();
    auto& ei = F.ei;
    // 9 classes, diagonal is the identity class
    for (int p = 0; p < 9; ++p) CHECK(ei.class_of(p, p) == ei.identity());
    // class sizes are 9
    std::array<int, 9> size{};
    for (int p = 0; p < 9; ++p)
        for (int q = 0; q < 9; ++q) ++size[ei.class_of(p, q)];
    for (int c = 0; c < 9; ++c) CHECK(size[c] == 9);

    // (a): (P,Q) ~ (R,S) implies (P,R) ~ (Q,S)
    for (int p = 0; p < 9; ++p)
        for (int q = 0; q < 9; ++q)
            for (int r = 0; r < 9; ++r)
                for (int s = 0; s < 9; ++s)
                    if (ei.class_of(p, q) == ei.class_of(r, s))
                        CHECK(ei.class_of(p, r) == ei.class_of(q, s));
    // (c): for fixed (P,Q,R) unique S with (P,Q) ~ (R,S), unique S' with
    // (P,Q) ~ (S',R)
    for (int p = 0; p < 9; ++p)
        for (int q = 0; q < 9; ++q)
            for (int r = 0; r < 9; ++r) {
                int cnt1 = 0, cnt2 = 0;
                for (int s = 0; s < 9; ++s) {
                    if (ei.class_of(p, q) == ei.class_of(r, s)) ++cnt1;
                    if (ei.class_of(p, q) == ei.class_of(s, r)) ++cnt2;
                }
                CHECK(cnt1 == 1);
                CHECK(cnt2 == 1);
            }
    // (d): (P,Q) ~ (Q,P) only when P = Q
    for (int p = 0; p < 9; ++p)
        for (int q = 0; q < 9; ++q)
            if (ei.class_of(p, q) == ei.class_of(q, p)) CHECK(p == q);
}

TEST_CASE("EI group law") {
    auto& F = fx();
    auto& ei = F.ei;
    int id = ei.identity();
    for (int a = 0; a < 9; ++a) {
        CHECK(ei.add(a, id) == a);
        CHECK(ei.add(id, a) == a);
        CHECK(ei.add(a, ei.neg(a)) == id);
        CHECK(ei.add(a, ei.add(a, a)) == id);  // 3*alpha = 0
        for (int b = 0; b < 9; ++b) {
            CHECK(ei.add(a, b) == ei.add(b, a));
            for (int c = 0; c < 9; ++c)
                CHECK(ei.add(ei.add(a, b), c) == ei.add(a, ei.add(b, c)));
        }
    }
    // {(P,Q)} + {(Q,P)} = identity
    for (int p = 0; p < 9; ++p)
        for (int q = 0; q < 9; ++q)
            CHECK(ei.add(ei.class_of(p, q), ei.class_of(q, p)) == id);
    // basis and coordinates
    auto [alpha, beta] = ei.basis();
    CHECK(alpha != id);
    CHECK(beta != id);
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
            int v = ei.from_coords(x, y);
            CHECK(ei.coords(v) == std::array<int, 2>{x, y});
        }
}

TEST_CASE("EI action on points") {
    auto& F = fx();
    auto& ei = F.ei;
    for (int i = 0; i < 9; ++i) CHECK(ei.act(ei.identity(), i) == i);
    // {(Q,P)} sends P to Q
    for (int p = 0; p < 9; ++p)
        for (int q = 0; q < 9; ++q) CHECK(ei.act(ei.class_of(q, p), p) == q);
    // simply transitive, compatible with addition
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b)
            for (int i = 0; i < 9; ++i)
                CHECK(ei.act(ei.add(a, b), i) == ei.act(a, ei.act(b, i)));
    // Lemma 4(e): P, alpha+P, 2alpha+P are colinear
    for (int a = 0; a < 9; ++a)
        for (int i = 0; i < 9; ++i)
            CHECK(F.cfg.colinear(i, ei.act(a, i), ei.act(ei.add(a, a), i)));
}

TEST_CASE("Lemma 4 translation invariance and triple criterion") {
    auto& F = fx();
    auto& ei = F.ei;
    // translations leave pair classes and triples invariant
    for (auto& t : F.aff.translations()) {
        for (int p = 0; p < 9; ++p)
            for (int q = 0; q < 9; ++q) CHECK(ei.class_of(t(p), t(q)) == ei.class_of(p, q));
        for (auto& tr : F.cfg.triples()) CHECK(F.cfg.colinear(t(tr[0]), t(tr[1]), t(tr[2])));
    }
    // (c): {P,Q,R} triple iff the three classes against any S sum to zero
    for (int p = 0; p < 9; ++p)
        for (int q = p + 1; q < 9; ++q)
            for (int r = q + 1; r < 9; ++r) {
                bool triple = F.cfg.colinear(p, q, r);
                for (int s = 0; s < 9; ++s) {
                    int sum = ei.add(ei.add(ei.class_of(p, s), ei.class_of(q, s)),
                                     ei.class_of(r, s));
                    CHECK((sum == ei.identity()) == triple);
                }
            }
}

TEST_CASE("Aff(I) and the exact sequence") {
    auto& F = fx();
    auto& aff = F.aff;
    CHECK(aff.all().size() == 432);
    CHECK(aff.saff().size() == 216);
    CHECK(aff.translations().size() == 9);
    CHECK(aff.point_stabilizer().size() == 48);

    // group closure and inverses
    std::mt19937 rng(5);
    for (int i = 0; i < 40; ++i) {
        auto& g = aff.all()[rng() % 432];
        auto& h = aff.all()[rng() % 432];
        CHECK(std::binary_search(aff.all().begin(), aff.all().end(), g.compose(h)));
        CHECK(std::binary_search(aff.all().begin(), aff.all().end(), g.inverse()));
    }

    // translations form a normal subgroup acting trivially on E(I)
    for (auto& t : aff.translations()) {
        CHECK(aff.is_translation(t));
        for (int c = 0; c < 9; ++c) CHECK(F.ei.push(t, c) == c);
    }
    for (auto& g : aff.all())
        for (auto& t : aff.translations()) {
            AffMap conj = g.compose(t).compose(g.inverse());
            CHECK(aff.is_translation(conj));
        }

    // linear part: homomorphism onto GL_2(F_3) with the translations as kernel
    std::set<std::array<int, 4>> images;
    for (auto& g : aff.all()) {
        auto lg = aff.linear_part(g);
        images.insert(lg);
        CHECK((aff.det2(lg) != 0));
        CHECK(aff.is_translation(g) == (lg == std::array<int, 4>{1, 0, 0, 1}));
    }
    CHECK(images.size() == 48);
    for (int i = 0; i < 60; ++i) {
        auto& g = aff.all()[rng() % 432];
        auto& h = aff.all()[rng() % 432];
        auto lg = aff.linear_part(g), lh = aff.linear_part(h);
        auto lgh = aff.linear_part(g.compose(h));
        std::array<int, 4> prod = {(lg[0] * lh[0] + lg[2] * lh[1]) % 3,
                                   (lg[1] * lh[0] + lg[3] * lh[1]) % 3,
                                   (lg[0] * lh[2] + lg[2] * lh[3]) % 3,
                                   (lg[1] * lh[2] + lg[3] * lh[3]) % 3};
        CHECK(lgh == prod);
    }

    // the stabilizer of point 0 splits the sequence
    std::set<std::array<int, 4>> stab_images;
    for (auto& g : aff.point_stabilizer()) stab_images.insert(aff.linear_part(g));
    CHECK(stab_images.size() == 48);

    // SAff = preimage of SL_2(F_3)
    for (auto& g : aff.saff()) CHECK(aff.det2(aff.linear_part(g)) == 1);

    // brute force: every triple-preserving permutation of S_9 is in the list
    std::array<int, 9> perm;
    std::iota(perm.begin(), perm.end(), 0);
    long long found = 0;
    do {
        bool ok = true;
        for (auto& t : F.cfg.triples()) {
            if (!F.cfg.colinear(perm[t[0]], perm[t[1]], perm[t[2]])) {
                ok = false;
                break;
            }
        }
        if (ok) {
            CHECK(std::binary_search(aff.all().begin(), aff.all().end(), AffMap{perm}));
            ++found;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    CHECK(found == 432);
}

TEST_CASE("psi") {
    auto& F = fx();
    CHECK(psi(F.ei, AffMap::identity()) == F.ei.identity());
    // isomorphism from the translation subgroup to E(I)
    std::set<int> vals;
    for (auto& s : F.aff.translations()) {
        int v = psi(F.ei, s);
        vals.insert(v);
        for (auto& t : F.aff.translations())
            CHECK(psi(F.ei, s.compose(t)) == F.ei.add(psi(F.ei, s), psi(F.ei, t)));
        // base point independence, by definition at each base
        for (int i = 0; i < 9; ++i) CHECK(F.ei.class_of(s(i), i) == v);
    }
    CHECK(vals.size() == 9);
    // non-translations rejected
    bool tested = false;
    for (auto& g : F.aff.all())
        if (!F.aff.is_translation(g)) {
            CHECK_THROWS_AS(psi(F.ei, g), std::invalid_argument);
            tested = true;
            break;
        }
    CHECK(tested);
}

TEST_CASE("canonical cocycle") {
    auto& F = fx();
    auto& ei = F.ei;
    Cocycle d = canonical_cocycle(ei, F.aff.all(), 0);
    auto value_of = [&](const AffMap& g) {
        auto it = std::lower_bound(d.elems.begin(), d.elems.end(), g);
        REQUIRE(*it == g);
        return d.values[it - d.elems.begin()];
    };
    CHECK(value_of(AffMap::identity()) == ei.identity());
    // restricted to translations, d = psi = the identity map on E(I)
    for (auto& t : F.aff.translations()) CHECK(value_of(t) == psi(ei, t));

    // cocycle identity d(gh) = g.d(h) + d(g) for all pairs
    for (auto& g : d.elems)
        for (auto& h : d.elems)
            CHECK(value_of(g.compose(h)) == ei.add(ei.push(g, value_of(h)), value_of(g)));

    // different base points give cohomologous cocycles:
    // d'(g) - d(g) = g.c - c with c = {(P', P)}
    for (int base2 = 1; base2 < 9; ++base2) {
        Cocycle d2 = canonical_cocycle(ei, F.aff.all(), base2);
        int c = ei.class_of(base2, 0);
        for (size_t i = 0; i < d.elems.size(); ++i) {
            auto& g = d.elems[i];
            int diff = ei.add(d2.values[i], ei.neg(d.values[i]));
            CHECK(diff == ei.add(ei.push(g, c), ei.neg(c)));
        }
    }
}

TEST_CASE("phi_C") {
    auto& F = fx();
    ProjPoint o(Fq::one(F.f7), Fq::from_int(F.f7, 6), Fq::zero(F.f7));
    CHECK(phi_C(F.ei, F.f, o, AffMap::identity()) == o);

    // the diag(1,2,4) translation sends [1:6:0] to [1:5:0]
    ProjMat d(Mat3::from_ints(F.f7, {1, 0, 0, 0, 2, 0, 0, 0, 4}));
    AffMap s = matrix_map(F.cfg, d);
    REQUIRE(F.aff.is_translation(s));
    ProjPoint expect(Fq::one(F.f7), Fq::from_int(F.f7, 5), Fq::zero(F.f7));
    CHECK(phi_C(F.ei, F.f, o, s) == expect);

    // base point independence and homomorphism property
    for (auto& t : F.aff.translations()) {
        ProjPoint v = phi_C(F.ei, F.f, o, t);
        for (int i = 0; i < 9; ++i) CHECK(phi_C(F.ei, F.f, o, t, i) == v);
        for (auto& u : F.aff.translations())
            CHECK(phi_C(F.ei, F.f, o, t.compose(u)) ==
                  chord_add(F.f, o, phi_C(F.ei, F.f, o, t), phi_C(F.ei, F.f, o, u)));
    }

    // injective into the 3-torsion
    std::set<std::string> seen;
    for (auto& t : F.aff.translations()) {
        ProjPoint v = phi_C(F.ei, F.f, o, t);
        CHECK(chord_add(F.f, o, v, chord_add(F.f, o, v, v)) == o);
        seen.insert(v.str());
    }
    CHECK(seen.size() == 9);

    // config not on the curve
    CubicForm other = CubicForm::from_ints(F.f7, {-1, 0, 0, 0, 0, 0, 0, 1, 0, -1});
    CHECK_THROWS_AS(phi_C(F.ei, other, o, s), NotContained);
    // non-translations rejected
    for (auto& g : F.aff.all())
        if (!F.aff.is_translation(g)) {
            CHECK_THROWS_AS(phi_C(F.ei, F.f, o, g), std::invalid_argument);
            break;
        }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "cubics/localarith.hpp"

using namespace cubics;

namespace {

Laurent mono(const Spec& s, i64 c, int e) {
    return Laurent::from_terms(s, {{e, Fq::from_int(s, c)}});
}

}  // namespace

TEST_CASE("cube classes over F7((t))") {
    Spec sp = FieldSpec::make(7, 1);
    LocalField f{sp, 1};

    CHECK(noncube_unit(sp) == Fq::from_int(sp, 3));
    CHECK(chi_exponent(Fq::from_int(sp, 1)) == 0);
    CHECK(chi_exponent(Fq::from_int(sp, 3)) == 1);

    CHECK(cube_class(f, mono(sp, 1, 2)) == std::vector<int>{0, 2});
    CHECK(cube_class(f, mono(sp, 3, 0)) == std::vector<int>{1, 0});
    // 6 = 3^3 in F7, so 6 t^3 is a cube
    CHECK(cube_class(f, mono(sp, 6, 3)) == std::vector<int>{0, 0});
    CHECK_THROWS_AS(cube_class(f, Laurent(sp)), ArithmeticError);

    // classes multiply: class(ab) = class(a) + class(b)
    for (const auto& ca : all_classes(f))
        for (const auto& cb : all_classes(f)) {
            Laurent prod = class_rep(f, ca) * class_rep(f, cb);
            auto cp = cube_class(f, prod);
            CHECK(cp[0] == (ca[0] + cb[0]) % 3);
            CHECK(cp[1] == (ca[1] + cb[1]) % 3);
        }

    // cubes really land in the trivial class
    Laurent mixed = mono(sp, 5, -1) + mono(sp, 2, 0) + mono(sp, 1, 4);
    CHECK(cube_class(f, mixed.pow(3)) == std::vector<int>{0, 0});

    // q = 2 mod 3 is rejected
    LocalField bad{FieldSpec::make(5, 1), 1};
    CHECK_THROWS_AS(cube_class(bad, mono(FieldSpec::make(5, 1), 1, 0)), ArithmeticError);
}

TEST_CASE("tame symbol examples and invariants") {
    Spec sp = FieldSpec::make(7, 1);
    LocalField f{sp, 1};
    Laurent t = Laurent::uniformizer(sp);

    CHECK(tame_symbol3(f, t, t) == 0);  // residue -1 is a cube
    CHECK(tame_symbol3(f, mono(sp, 3, 0), t) == 1);
    CHECK(tame_symbol3(f, t, mono(sp, 3, 0)) == 2);

    for (i64 p : {7, 13}) {
        Spec s = FieldSpec::make(p, 1);
        LocalField fp{s, 1};
        for (const auto& ca : all_classes(fp))
            for (const auto& cb : all_classes(fp)) {
                Laurent a = class_rep(fp, ca), b = class_rep(fp, cb);
                int ab = tame_symbol3(fp, a, b);
                // antisymmetry
                CHECK((ab + tame_symbol3(fp, b, a)) % 3 == 0);
                // bilinearity against every third class
                for (const auto& cc : all_classes(fp)) {
                    Laurent c = class_rep(fp, cc);
                    CHECK(tame_symbol3(fp, a * c, b) ==
                          (ab + tame_symbol3(fp, c, b)) % 3);
                    CHECK(tame_symbol3(fp, a, b * c) ==
                          (ab + tame_symbol3(fp, a, c)) % 3);
                }
                // the symbol only depends on the class
                Laurent ua = a * (mono(s, 1, 0) + mono(s, 2, 1) + mono(s, 1, 2));
                CHECK(tame_symbol3(fp, ua, b) == ab);
            }
    }
}

TEST_CASE("splitting of (3, t) over F7((t))") {
    Spec sp = FieldSpec::make(7, 1);
    LocalField f{sp, 1};
    SymbolAlgebra1 a{mono(sp, 3, 0), Laurent::uniformizer(sp)};

    CHECK_FALSE(is_split(f, a, {0, 0}));    // division over the base
    CHECK(is_split(f, a, {0, 1}));          // F(t^{1/3})
    CHECK(is_split(f, a, {1, 0}));          // unramified cubic, residue F_343
    CHECK(is_split(f, a, {1, 2}));

    // a split algebra stays split everywhere
    SymbolAlgebra1 sq{mono(sp, 2, 0), Laurent::uniformizer(sp)};  // 2 = 4^3... chi(2) = 2
    CHECK(chi_exponent(Fq::from_int(sp, 2)) == 2);
    SymbolAlgebra1 spl{mono(sp, 6, 0), Laurent::uniformizer(sp)};  // 6 is a cube
    for (const auto& cls : all_classes(f)) CHECK(is_split(f, spl, cls));
    CHECK_FALSE(is_split(f, sq, {0, 0}));
}

TEST_CASE("norm classes") {
    Spec sp = FieldSpec::make(7, 1);
    LocalField f{sp, 1};

    // F(t^{1/3}): norms are the classes of 1, t, t^2
    auto nt = norm_classes(f, {0, 1});
    REQUIRE(nt.size() == 3);
    CHECK(std::find(nt.begin(), nt.end(), std::vector<int>{0, 0}) != nt.end());
    CHECK(std::find(nt.begin(), nt.end(), std::vector<int>{0, 1}) != nt.end());
    CHECK(std::find(nt.begin(), nt.end(), std::vector<int>{0, 2}) != nt.end());

    // unramified cubic: norms are the classes with valuation 0 mod 3
    auto ng = norm_classes(f, {1, 0});
    REQUIRE(ng.size() == 3);
    for (const auto& cls : ng) CHECK(cls[1] == 0);

    // index 3 for every nontrivial extension; everything is a norm from F
    for (const auto& k : all_classes(f)) {
        auto n = norm_classes(f, k);
        if (std::all_of(k.begin(), k.end(), [](int e) { return e == 0; }))
            CHECK(n.size() == 9);
        else
            CHECK(n.size() == 3);
    }

    // (a, b) splits iff b is a norm from F(a^{1/3})
    for (i64 p : {7, 13}) {
        Spec s = FieldSpec::make(p, 1);
        LocalField fp{s, 1};
        for (const auto& ca : all_classes(fp))
            for (const auto& cb : all_classes(fp)) {
                SymbolAlgebra1 alg{class_rep(fp, ca), class_rep(fp, cb)};
                bool split = is_split(fp, alg, {0, 0});
                auto norms = norm_classes(fp, ca);
                bool isnorm = std::find(norms.begin(), norms.end(), cb) != norms.end();
                CHECK(split == isnorm);
            }
    }
}

TEST_CASE("two-level Brauer invariants") {
    Spec sp = FieldSpec::make(7, 1);
    LocalField f2{sp, 2};
    Laurent s = Laurent::uniformizer(sp);
    Laurent2 sl = Laurent2::lift(s);
    Laurent2 t = Laurent2::uniformizer_t(sp);
    Laurent2 three = Laurent2::lift(mono(sp, 3, 0));

    CHECK(cube_class(f2, three * sl * t.pow(2)) == std::vector<int>{1, 1, 2});
    CHECK(cube_class(f2, (three * sl * t).pow(3)) == std::vector<int>{0, 0, 0});

    // (3, s): nontrivial residue algebra over F7((s)), no t-ramification
    auto c3s = brauer_class2(f2, three, sl);
    CHECK(c3s.residue_symbol == 1);
    CHECK(c3s.ramification == std::array<int, 2>{0, 0});
    CHECK_FALSE(c3s.is_zero());

    // (s, t): split residue algebra, ramification class s
    auto cst = brauer_class2(f2, sl, t);
    CHECK(cst.residue_symbol == 0);
    CHECK(cst.ramification == std::array<int, 2>{0, 1});

    // (t, t) = (-1, t) is split since -1 is a cube
    CHECK(brauer_class2(f2, t, t).is_zero());

    // additivity in the first slot on monomial representatives
    for (const auto& ca : all_classes(f2))
        for (const auto& cb : all_classes(f2)) {
            Laurent2 b = class_rep2(f2, cb);
            auto c1 = brauer_class2(f2, class_rep2(f2, ca), b);
            for (const auto& cc : all_classes(f2)) {
                auto c2 = brauer_class2(f2, class_rep2(f2, cc), b);
                auto c12 = brauer_class2(f2, class_rep2(f2, ca) * class_rep2(f2, cc), b);
                CHECK(c12.residue_symbol == (c1.residue_symbol + c2.residue_symbol) % 3);
                CHECK(c12.ramification[0] == (c1.ramification[0] + c2.ramification[0]) % 3);
                CHECK(c12.ramification[1] == (c1.ramification[1] + c2.ramification[1]) % 3);
            }
        }
}

TEST_CASE("level-2 splitting: (3, s) survives t-ramified extensions") {
    Spec sp = FieldSpec::make(7, 1);
    LocalField f2{sp, 2};
    SymbolAlgebra2 alg{Laurent2::lift(mono(sp, 3, 0)), Laurent2::lift(Laurent::uniformizer(sp))};

    CHECK_FALSE(is_split(f2, alg, {0, 0, 0}));
    // F(t^{1/3}) leaves the residue algebra (3, s) over F7((s)) intact
    CHECK_FALSE(is_split(f2, alg, {0, 0, 1}));
    CHECK_FALSE(is_split(f2, alg, {0, 0, 2}));
    // extensions of the coefficient field do split it
    CHECK(is_split(f2, alg, {0, 1, 0}));
    CHECK(is_split(f2, alg, {1, 0, 0}));

    // (s, t) is killed by F(s^{1/3}) but not by the unramified cubic
    SymbolAlgebra2 st{Laurent2::lift(Laurent::uniformizer(sp)), Laurent2::uniformizer_t(sp)};
    CHECK(is_split(f2, st, {0, 1, 0}));
    CHECK_FALSE(is_split(f2, st, {1, 0, 0}));
    CHECK(is_split(f2, st, {0, 0, 1}));
}

TEST_CASE("norm-class splitting decision at level 1 is always positive") {
    for (i64 p : {7, 13}) {
        Spec sp = FieldSpec::make(p, 1);
        LocalField f{sp, 1};
        for (const auto& ca : all_classes(f))
            for (const auto& cb : all_classes(f)) {
                SymbolAlgebra1 alg{class_rep(f, ca), class_rep(f, cb)};
                for (const auto& k : all_classes(f)) {
                    auto rep = prop17_decide(f, alg, k);
                    CHECK(rep.verdict);
                    CHECK(rep.table.size() == 9);
                    if (!rep.split_input) {
                        CHECK(!rep.witness.empty());
                        CHECK(is_split(f, alg, rep.witness));
                    }
                }
            }
    }
}

TEST_CASE("norm-class splitting decision fails at level 2") {
    Spec sp = FieldSpec::make(7, 1);
    LocalField f2{sp, 2};
    SymbolAlgebra2 alg{Laurent2::lift(mono(sp, 3, 0)), Laurent2::lift(Laurent::uniformizer(sp))};

    auto rep = prop17_decide(f2, alg, {0, 0, 1});
    CHECK_FALSE(rep.verdict);
    CHECK_FALSE(rep.split_input);
    CHECK(rep.witness.empty());
    CHECK(rep.table.size() == 27);
    // the norm classes of F(t^{1/3}) are exactly the powers of t, and none
    // of them touches the residue algebra
    int admissible = 0;
    for (const auto& row : rep.table) {
        if (row.admissible) {
            ++admissible;
            CHECK(row.cls[0] == 0);
            CHECK(row.cls[1] == 0);
            CHECK_FALSE(row.splits);
        }
    }
    CHECK(admissible == 3);

    // a split input stays positive
    SymbolAlgebra2 spl{Laurent2::lift(mono(sp, 6, 0)), Laurent2::lift(Laurent::uniformizer(sp))};
    auto rep2 = prop17_decide(f2, spl, {0, 0, 1});
    CHECK(rep2.verdict);
    CHECK(rep2.split_input);
}

TEST_CASE("anti-invariant splitting search over quadratic extensions") {
    Spec sp = FieldSpec::make(7, 1);
    LocalField f{sp, 1};
    SymbolAlgebra1 d{mono(sp, 3, 0), Laurent::uniformizer(sp)};

    for (QuadraticKind kind : {QuadraticKind::unramified, QuadraticKind::ramified}) {
        auto rep = cor19_decide(f, d, kind);
        CHECK_FALSE(rep.verdict);
        CHECK_FALSE(rep.split_input);  // quadratic base change keeps D division
        // sigma acts trivially on cube classes, so only the trivial class is
        // anti-invariant
        for (const auto& row : rep.table) {
            bool trivial = row.cls == std::vector<int>{0, 0};
            CHECK(row.admissible == trivial);
        }
    }

    // every division algebra over F7((t)) fails for both quadratic shapes
    for (const auto& ca : all_classes(f))
        for (const auto& cb : all_classes(f)) {
            SymbolAlgebra1 alg{class_rep(f, ca), class_rep(f, cb)};
            if (is_split(f, alg, {0, 0})) continue;
            CHECK_FALSE(cor19_decide(f, alg, QuadraticKind::unramified).verdict);
            CHECK_FALSE(cor19_decide(f, alg, QuadraticKind::ramified).verdict);
        }

    // a split algebra is reported split over K as well
    SymbolAlgebra1 spl{mono(sp, 6, 0), Laurent::uniformizer(sp)};
    auto rep = cor19_decide(f, spl, QuadraticKind::unramified);
    CHECK(rep.verdict);
    CHECK(rep.split_input);
}

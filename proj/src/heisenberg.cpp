#include "cubics/heisenberg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace cubics {

int commutator_exponent(const Mat3& x, const Mat3& y) {
    Mat3 c = x * y * (y * x).inverse();
    auto v = c.scalar_value();
    if (!v) throw NotSkewPair("commutator is not scalar");
    Fq rho = canonical_rho(x.spec());
    Fq acc = Fq::one(x.spec());
    for (int i = 0; i < 3; ++i) {
        if (*v == acc) return i;
        acc = acc * rho;
    }
    throw NotSkewPair("commutator is not a cube root of unity");
}

HeisenbergPair::HeisenbergPair(const Mat3& x_, const Mat3& y_)
    : x(x_), y(y_), rho(canonical_rho(x_.spec())) {
    if (x.is_scalar() || y.is_scalar()) throw NotSkewPair("generator is scalar");
    if (!x.pow(3).is_scalar() || !y.pow(3).is_scalar())
        throw NotSkewPair("generator not of projective order 3");
    if (commutator_exponent(x, y) != 1) throw NotSkewPair("commutator is not rho");
}

HeisenbergPair HeisenbergPair::standard(const Spec& s) {
    Fq rho = canonical_rho(s);
    Mat3 x = Mat3::identity(s);
    x.at(1, 1) = rho;
    x.at(2, 2) = rho * rho;
    Mat3 y = Mat3::from_ints(s, {0, 0, 1, 1, 0, 0, 0, 1, 0});
    return HeisenbergPair(x, y);
}

SGroup::SGroup(const Mat3& x, const Mat3& y) : gx_(ProjMat(x)), gy_(ProjMat(y)) {
    HeisenbergPair check(x, y);  // validates the pair
    (void)check;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            word_[i][j] = gx_.pow(i) * gy_.pow(j);
            elems_.push_back(word_[i][j]);
        }
    std::sort(elems_.begin(), elems_.end());
    for (int i = 0; i < 8; ++i)
        if (elems_[i] == elems_[i + 1]) throw NotSkewPair("S has fewer than 9 elements");
}

int SGroup::pairing(const ProjMat& a, const ProjMat& b) const {
    return commutator_exponent(a.rep(), b.rep());
}

// --------------------------------------------------------- S <-> inflections

InflectionConfig s_to_inflections(const HeisenbergPair& pair) {
    auto vx = eigen_planes(pair.x);
    auto wy = eigen_planes(pair.y);
    const Spec& sx = vx[0][0].spec();
    const Spec& sy = wy[0][0].spec();
    int n = std::lcm(sx->n, sy->n);
    auto s = FieldSpec::make(sx->p, n);
    std::vector<ProjPoint> pts;
    for (auto& v : vx)
        for (auto& w : wy) pts.push_back(meet(embed_line(v, s), embed_line(w, s)));
    return InflectionConfig(pts);
}

namespace {

// Matrix sending e1, e2, e3, (1,1,1) to the four given points (which must be
// in general position).
Mat3 frame_matrix(const std::array<ProjPoint, 4>& p) {
    const Spec& s = p[0].spec();
    Mat3 m = Mat3::identity(s);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m.at(r, c) = p[c][r];
    // solve m * coef = p[3]
    Mat3 inv = m.inverse();
    auto coef = inv.apply({p[3][0], p[3][1], p[3][2]});
    for (int c = 0; c < 3; ++c) {
        if (coef[c].is_zero()) throw std::invalid_argument("frame points not in general position");
        for (int r = 0; r < 3; ++r) m.at(r, c) = m.at(r, c) * coef[c];
    }
    return m;
}

std::array<int, 4> general_position_quad(const InflectionConfig& cfg) {
    auto indep = [&](int i, int j, int k) {
        Mat3 m = Mat3::identity(cfg.spec());
        const ProjPoint* ps[3] = {&cfg.points()[i], &cfg.points()[j], &cfg.points()[k]};
        for (int c = 0; c < 3; ++c)
            for (int r = 0; r < 3; ++r) m.at(r, c) = (*ps[c])[r];
        return !m.det().is_zero();
    };
    for (int i = 0; i < 9; ++i)
        for (int j = i + 1; j < 9; ++j)
            for (int k = j + 1; k < 9; ++k)
                for (int l = k + 1; l < 9; ++l)
                    if (indep(i, j, k) && indep(i, j, l) && indep(i, k, l) && indep(j, k, l))
                        return {i, j, k, l};
    throw InvalidConfig("no projective frame among the configuration points");
}

// The projective map realizing a point permutation of cfg, via a frame.
ProjMat realize_map(const InflectionConfig& cfg, const AffMap& t) {
    auto quad = general_position_quad(cfg);
    std::array<ProjPoint, 4> src, dst;
    for (int i = 0; i < 4; ++i) {
        src[i] = cfg.points()[quad[i]];
        dst[i] = cfg.points()[t(quad[i])];
    }
    ProjMat g = ProjMat(frame_matrix(dst)) * ProjMat(frame_matrix(src)).inverse();
    for (int i = 0; i < 9; ++i)
        if (act_point(g, cfg.points()[i]) != cfg.points()[t(i)])
            throw std::logic_error("permutation is not projective");
    return g;
}

}  // namespace

SGroup inflections_to_S(const InflectionConfig& cfg) {
    EIGroup ei(cfg);
    std::vector<ProjMat> mats;
    for (int a = 0; a < 9; ++a) {
        AffMap t;
        for (int i = 0; i < 9; ++i) t.perm[i] = ei.act(a, i);
        mats.push_back(realize_map(cfg, t));
    }
    // pick a basis with commutator exactly rho
    for (auto& mx : mats) {
        if (mx.rep().is_scalar()) continue;
        for (auto& my : mats) {
            if (my.rep().is_scalar()) continue;
            try {
                if (commutator_exponent(mx.rep(), my.rep()) == 1) return SGroup(mx.rep(), my.rep());
            } catch (const NotSkewPair&) {
            }
        }
    }
    throw InvalidConfig("translations do not form a Heisenberg group");
}

// ----------------------------------------------------------- normalizer

namespace {

// Valid scalars c with (g A g^-1)^3 = c^3 B^3 for lifts A, B of projectively
// conjugate order-3 elements: the cube roots of scalar(A^3)/scalar(B^3).
std::vector<Fq> twist_scalars(const Mat3& a, const Mat3& b) {
    const Spec& sp = a.spec();
    Fq ratio = *a.pow(3).scalar_value() * b.pow(3).scalar_value()->inv();
    UniPoly cube = UniPoly(sp, {-ratio, Fq::zero(sp), Fq::zero(sp), Fq::one(sp)});
    return poly_roots(cube);
}

}  // namespace

std::vector<NormalizerGen> normalizer_generators(const SGroup& s) {
    const Spec& sp = s.spec();
    auto idx = [](int r, int c) { return 3 * r + c; };
    std::vector<NormalizerGen> out;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d) {
                    if (((a * d - b * c) % 3 + 3) % 3 != 1) continue;
                    Mat3 X = s.gen_x().rep(), Y = s.gen_y().rep();
                    Mat3 X1 = s.word(a, b).rep(), Y1 = s.word(c, d).rep();
                    bool found = false;
                    for (auto& mu : twist_scalars(X, X1)) {
                        for (auto& nu : twist_scalars(Y, Y1)) {
                            // rows of the intertwining system g X = mu X1 g,
                            // g Y = nu Y1 g
                            std::vector<std::vector<Fq>> rows;
                            auto add_eqs = [&](const Mat3& A, const Mat3& B, const Fq& sc) {
                                for (int r = 0; r < 3; ++r)
                                    for (int cc = 0; cc < 3; ++cc) {
                                        std::vector<Fq> row(9, Fq::zero(sp));
                                        for (int k = 0; k < 3; ++k) {
                                            row[idx(r, k)] = row[idx(r, k)] + A.at(k, cc);
                                            row[idx(k, cc)] = row[idx(k, cc)] - sc * B.at(r, k);
                                        }
                                        rows.push_back(std::move(row));
                                    }
                            };
                            add_eqs(X, X1, mu);
                            add_eqs(Y, Y1, nu);
                            auto ker = kernel_basis(rows, 9, sp);
                            for (auto& v : ker) {
                                Mat3 g(std::array<Fq, 9>{v[0], v[1], v[2], v[3], v[4], v[5],
                                                         v[6], v[7], v[8]});
                                if (g.det().is_zero()) continue;
                                ProjMat pg(g);
                                if (pg * s.gen_x() * pg.inverse() == s.word(a, b) &&
                                    pg * s.gen_y() * pg.inverse() == s.word(c, d)) {
                                    out.push_back(NormalizerGen{{a, b, c, d}, pg});
                                    found = true;
                                    break;
                                }
                            }
                            if (found) break;
                        }
                        if (found) break;
                    }
                    if (!found) throw std::logic_error("no intertwiner for an SL_2 label");
                }
    return out;
}

// ----------------------------------------------------------- Hesse pencil

CubicForm HessePencil::member(const Fq& lam, const Fq& mu) const {
    const Spec& s = b0.spec();
    std::array<Fq, 10> c{};
    for (int i = 0; i < 10; ++i) c[i] = lam * b0[i] + mu * b1[i];
    return CubicForm(s, c);
}

HessePencil fixed_pencil(const SGroup& s) {
    const Spec& sp = s.spec();
    Fq rho = canonical_rho(sp);
    // Substitution by a lift x with x^3 = c I multiplies a cubic eigenform by
    // a cube root of c^3, i.e. by c times a cube root of unity.
    Fq sx = *s.gen_x().rep().pow(3).scalar_value();
    Fq sy = *s.gen_y().rep().pow(3).scalar_value();
    std::array<Fq, 3> roots_x = {sx, sx * rho, sx * rho * rho};
    std::array<Fq, 3> roots_y = {sy, sy * rho, sy * rho * rho};

    // matrices of f -> f o x and f -> f o y on the 10-dim section space
    auto action = [&](const Mat3& m) {
        std::vector<std::vector<Fq>> cols;
        for (int j = 0; j < 10; ++j) {
            TriPoly mono = TriPoly::monomial(Fq::one(sp), kMonomial10[j][0], kMonomial10[j][1],
                                             kMonomial10[j][2]);
            TriPoly img = mono.substitute_linear(m);
            std::vector<Fq> col(10, Fq::zero(sp));
            for (int i = 0; i < 10; ++i)
                col[i] = img.coeff(kMonomial10[i][0], kMonomial10[i][1], kMonomial10[i][2]);
            cols.push_back(std::move(col));
        }
        return cols;
    };
    auto tx = action(s.gen_x().rep()), ty = action(s.gen_y().rep());

    std::vector<std::vector<Fq>> best;
    int found = 0;
    for (auto& mu : roots_x)
        for (auto& nu : roots_y) {
            std::vector<std::vector<Fq>> rows;
            for (auto* t : {&tx, &ty}) {
                auto& sc = (t == &tx) ? mu : nu;
                for (int i = 0; i < 10; ++i) {
                    std::vector<Fq> row(10, Fq::zero(sp));
                    for (int j = 0; j < 10; ++j) row[j] = (*t)[j][i];
                    row[i] = row[i] - sc;
                    rows.push_back(std::move(row));
                }
            }
            auto ker = kernel_basis(rows, 10, sp);
            if (ker.size() == 2) {
                best = ker;
                ++found;
            }
        }
    if (found != 1 || best.size() != 2)
        throw std::logic_error("fixed section space is not 2-dimensional");
    // row-reduce so the basis is canonical: leading monomials in order
    auto lead = [](const std::vector<Fq>& v) {
        int j = 0;
        while (v[j].is_zero()) ++j;
        return j;
    };
    if (lead(best[1]) < lead(best[0])) std::swap(best[0], best[1]);
    int l0 = lead(best[0]);
    if (!best[1][l0].is_zero()) {
        Fq factor = best[1][l0] * best[0][l0].inv();
        for (int j = 0; j < 10; ++j) best[1][j] = best[1][j] - factor * best[0][j];
    }
    auto to_form = [&](const std::vector<Fq>& v) {
        std::array<Fq, 10> c{};
        for (int i = 0; i < 10; ++i) c[i] = v[i];
        return CubicForm(sp, c);
    };
    return HessePencil{to_form(best[0]), to_form(best[1])};
}

// ------------------------------------------------------ brute-force scan

std::vector<ProjMat> stabilizer_bruteforce(const InflectionConfig& cfg) {
    const Spec& s = cfg.spec();
    if (s->n != 1) throw std::invalid_argument("stabilizer_bruteforce needs a prime field");
    int p = static_cast<int>(s->p);

    int pts[9][3];
    for (int i = 0; i < 9; ++i)
        for (int k = 0; k < 3; ++k) pts[i][k] = static_cast<int>(cfg.points()[i][k].coeffs()[0]);
    // normalized point keys
    std::vector<int> inv(p);
    for (int a = 1; a < p; ++a)
        for (int b = 1; b < p; ++b)
            if (a * b % p == 1) inv[a] = b;
    auto key_of = [&](int x, int y, int z) {
        int f = x ? x : (y ? y : z);
        int fi = inv[f];
        return ((x * fi % p) * p + y * fi % p) * p + z * fi % p;
    };
    std::vector<int> keys;
    for (auto& pt : pts) keys.push_back(key_of(pt[0], pt[1], pt[2]));
    std::sort(keys.begin(), keys.end());

    std::vector<ProjMat> out;
    int m[9];
    // canonical representatives: entries before the first nonzero are 0, the
    // first nonzero entry is 1
    for (int lead = 0; lead < 9; ++lead) {
        for (int i = 0; i < lead; ++i) m[i] = 0;
        m[lead] = 1;
        int freecnt = 8 - lead;
        long long total = 1;
        for (int i = 0; i < freecnt; ++i) total *= p;
        for (long long v = 0; v < total; ++v) {
            long long t = v;
            for (int i = lead + 1; i < 9; ++i) {
                m[i] = static_cast<int>(t % p);
                t /= p;
            }
            int det = m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
                      m[2] * (m[3] * m[7] - m[4] * m[6]);
            if (det % p == 0) continue;
            bool ok = true;
            for (int i = 0; i < 9 && ok; ++i) {
                int x = (m[0] * pts[i][0] + m[1] * pts[i][1] + m[2] * pts[i][2]) % p;
                int y = (m[3] * pts[i][0] + m[4] * pts[i][1] + m[5] * pts[i][2]) % p;
                int z = (m[6] * pts[i][0] + m[7] * pts[i][1] + m[8] * pts[i][2]) % p;
                if (!std::binary_search(keys.begin(), keys.end(), key_of(x, y, z))) ok = false;
            }
            if (!ok) continue;
            std::array<i64, 9> e;
            for (int i = 0; i < 9; ++i) e[i] = m[i];
            out.push_back(ProjMat(Mat3::from_ints(s, e)));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ----------------------------------------------------------- pencil orbits

namespace {

// Coordinates of form f in the pencil basis; throws if f is outside.
std::pair<Fq, Fq> in_basis(const HessePencil& pencil, const CubicForm& f) {
    for (int i = 0; i < 10; ++i)
        for (int j = i + 1; j < 10; ++j) {
            Fq det = pencil.b0[i] * pencil.b1[j] - pencil.b0[j] * pencil.b1[i];
            if (det.is_zero()) continue;
            Fq lam = (f[i] * pencil.b1[j] - f[j] * pencil.b1[i]) * det.inv();
            Fq mu = (pencil.b0[i] * f[j] - pencil.b0[j] * f[i]) * det.inv();
            if (pencil.member(lam, mu) == f) return {lam, mu};
            throw std::logic_error("form not in the pencil");
        }
    throw std::logic_error("degenerate pencil basis");
}

}  // namespace

std::vector<std::vector<std::pair<Fq, Fq>>> pencil_orbits(const SGroup& s,
                                                          const HessePencil& pencil) {
    const Spec& sp = s.spec();
    long long q = static_cast<long long>(sp->q());
    std::vector<std::pair<Fq, Fq>> params;
    for (long long v = 0; v < q; ++v) {
        std::vector<i64> c(sp->n);
        long long t = v;
        for (int i = 0; i < sp->n; ++i) {
            c[i] = t % sp->p;
            t /= sp->p;
        }
        params.push_back({Fq::one(sp), Fq::make(sp, c)});
    }
    params.push_back({Fq::zero(sp), Fq::one(sp)});
    auto param_index = [&](const Fq& lam, const Fq& mu) {
        Fq l = lam, m = mu;
        if (!l.is_zero()) {
            Fq inv = l.inv();
            l = Fq::one(sp);
            m = m * inv;
        } else {
            m = Fq::one(sp);
        }
        for (size_t i = 0; i < params.size(); ++i)
            if (params[i].first == l && params[i].second == m) return i;
        throw std::logic_error("parameter not found");
    };

    auto gens = normalizer_generators(s);
    std::vector<size_t> parent(params.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<size_t(size_t)> find = [&](size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (size_t i = 0; i < params.size(); ++i) {
        CubicForm f = pencil.member(params[i].first, params[i].second);
        for (auto& g : gens) {
            auto [lam, mu] = in_basis(pencil, substitute_cubic(g.g, f));
            size_t j = param_index(lam, mu);
            parent[find(i)] = find(j);
        }
    }
    std::map<size_t, std::vector<std::pair<Fq, Fq>>> orbits;
    for (size_t i = 0; i < params.size(); ++i) orbits[find(i)].push_back(params[i]);
    std::vector<std::vector<std::pair<Fq, Fq>>> out;
    for (auto& [root, members] : orbits) out.push_back(members);
    return out;
}

}  // namespace cubics

#include "cubics/cohomology.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace cubics {

namespace {

int norm3(int v) { return ((v % 3) + 3) % 3; }

// In-place row reduction mod 3; returns the rank.
int rref3(std::vector<std::vector<int>>& rows) {
    if (rows.empty()) return 0;
    int ncols = static_cast<int>(rows[0].size());
    int rank = 0;
    for (int c = 0; c < ncols && rank < static_cast<int>(rows.size()); ++c) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(rows.size()); ++r)
            if (norm3(rows[r][c]) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(rows[rank], rows[piv]);
        int inv = norm3(rows[rank][c]) == 1 ? 1 : 2;
        for (auto& v : rows[rank]) v = norm3(v * inv);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            if (r == rank) continue;
            int f = norm3(rows[r][c]);
            if (f == 0) continue;
            for (int j = 0; j < ncols; ++j) rows[r][j] = norm3(rows[r][j] - f * rows[rank][j]);
        }
        ++rank;
    }
    return rank;
}

std::vector<std::vector<int>> kernel3(std::vector<std::vector<int>> rows, int ncols) {
    int rank = rref3(rows);
    rows.resize(rank);
    std::vector<int> pivot_col(rank, -1), is_pivot(ncols, 0);
    for (int r = 0; r < rank; ++r) {
        int c = 0;
        while (norm3(rows[r][c]) == 0) ++c;
        pivot_col[r] = c;
        is_pivot[c] = 1;
    }
    std::vector<std::vector<int>> out;
    for (int c = 0; c < ncols; ++c) {
        if (is_pivot[c]) continue;
        std::vector<int> v(ncols, 0);
        v[c] = 1;
        for (int r = 0; r < rank; ++r) v[pivot_col[r]] = norm3(-rows[r][c]);
        out.push_back(std::move(v));
    }
    return out;
}

std::array<int, 4> mul2(const std::array<int, 4>& a, const std::array<int, 4>& b) {
    return {norm3(a[0] * b[0] + a[1] * b[2]), norm3(a[0] * b[1] + a[1] * b[3]),
            norm3(a[2] * b[0] + a[3] * b[2]), norm3(a[2] * b[1] + a[3] * b[3])};
}

int det2i(const std::array<int, 4>& m) { return norm3(m[0] * m[3] - m[1] * m[2]); }

std::array<int, 4> inv2(const std::array<int, 4>& m) {
    int d = det2i(m);
    if (d == 0) throw std::invalid_argument("singular 2x2 matrix mod 3");
    int di = d == 1 ? 1 : 2;
    return {norm3(di * m[3]), norm3(-di * m[1]), norm3(-di * m[2]), norm3(di * m[0])};
}

std::vector<std::array<int, 4>> sl2_f3() {
    std::vector<std::array<int, 4>> out;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d)
                    if (norm3(a * d - b * c) == 1) out.push_back({a, b, c, d});
    return out;
}

}  // namespace

int GroupTable::inverse(int g) const {
    for (int h = 0; h < order(); ++h)
        if (mul[g][h] == identity) return h;
    throw std::logic_error("group table has no inverse");
}

int GroupTable::element_order(int g) const {
    int cur = g, n = 1;
    while (cur != identity) {
        cur = mul[cur][g];
        ++n;
    }
    return n;
}

GroupTable GroupTable::from_affmaps(const std::vector<AffMap>& elems) {
    auto index = [&](const AffMap& m) {
        auto it = std::lower_bound(elems.begin(), elems.end(), m);
        if (it == elems.end() || !(*it == m))
            throw std::invalid_argument("product leaves the element list");
        return static_cast<int>(it - elems.begin());
    };
    GroupTable t;
    int n = static_cast<int>(elems.size());
    t.mul.assign(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t.mul[i][j] = index(elems[i].compose(elems[j]));
    t.identity = index(AffMap::identity());
    return t;
}

std::vector<int> FiniteModule::apply(int g, const std::vector<int>& v) const {
    std::vector<int> out(dim, 0);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) out[r] = norm3(out[r] + mats[g][dim * r + c] * v[c]);
    return out;
}

FiniteModule ei_module(const EIGroup& ei, const std::vector<AffMap>& elems) {
    FiniteModule m;
    m.dim = 2;
    auto [alpha, beta] = ei.basis();
    for (auto& g : elems) {
        auto ca = ei.coords(ei.push(g, alpha));
        auto cb = ei.coords(ei.push(g, beta));
        m.mats.push_back({ca[0], cb[0], ca[1], cb[1]});
    }
    return m;
}

H1Result h1(const GroupTable& g, const FiniteModule& m) {
    int n = g.order(), d = m.dim;
    if (static_cast<int>(m.mats.size()) != n) throw InvalidModule("one matrix per element required");
    for (int e = 0; e < n; ++e)
        if (static_cast<int>(m.mats[e].size()) != d * d) throw InvalidModule("bad matrix size");
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c)
            if (norm3(m.mats[g.identity][d * r + c]) != (r == c))
                throw InvalidModule("identity must act trivially");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c) {
                    int lhs = m.mats[g.mul[a][b]][d * r + c], rhs = 0;
                    for (int k = 0; k < d; ++k) rhs += m.mats[a][d * r + k] * m.mats[b][d * k + c];
                    if (norm3(lhs - rhs) != 0) throw InvalidModule("action is not a homomorphism");
                }

    // greedy generating set
    std::vector<int> gens;
    std::vector<char> closed(n, 0);
    closed[g.identity] = 1;
    for (;;) {
        int next = -1;
        for (int e = 0; e < n; ++e)
            if (!closed[e]) {
                next = e;
                break;
            }
        if (next < 0) break;
        gens.push_back(next);
        // re-close
        std::fill(closed.begin(), closed.end(), 0);
        closed[g.identity] = 1;
        std::vector<int> frontier = {g.identity};
        while (!frontier.empty()) {
            int e = frontier.back();
            frontier.pop_back();
            for (int s : gens) {
                int t = g.mul[e][s];
                if (!closed[t]) {
                    closed[t] = 1;
                    frontier.push_back(t);
                }
            }
        }
    }
    int k = static_cast<int>(gens.size()), nu = d * k;

    // affine representation L[e]: c(e) = L[e] * u where u stacks c(gens)
    std::vector<std::vector<int>> L(n);
    std::vector<char> known(n, 0);
    L[g.identity].assign(d * nu, 0);
    known[g.identity] = 1;
    std::vector<std::vector<int>> constraints;
    std::vector<int> frontier = {g.identity};
    while (!frontier.empty()) {
        int e = frontier.back();
        frontier.pop_back();
        for (int i = 0; i < k; ++i) {
            int t = g.mul[e][gens[i]];
            // candidate = L[e] + rho_e * E_i
            std::vector<int> cand = L[e];
            for (int r = 0; r < d; ++r)
                for (int c = 0; c < d; ++c)
                    cand[r * nu + (i * d + c)] =
                        norm3(cand[r * nu + (i * d + c)] + m.mats[e][d * r + c]);
            if (!known[t]) {
                L[t] = std::move(cand);
                known[t] = 1;
                frontier.push_back(t);
            } else {
                for (int r = 0; r < d; ++r) {
                    std::vector<int> row(nu);
                    for (int j = 0; j < nu; ++j) row[j] = norm3(cand[r * nu + j] - L[t][r * nu + j]);
                    if (std::any_of(row.begin(), row.end(), [](int v) { return v != 0; }))
                        constraints.push_back(std::move(row));
                }
            }
        }
    }

    auto z_basis_u = constraints.empty() ? kernel3({std::vector<int>(nu, 0)}, nu)
                                         : kernel3(constraints, nu);
    auto table_of = [&](const std::vector<int>& u) {
        std::vector<std::vector<int>> table(n, std::vector<int>(d, 0));
        for (int e = 0; e < n; ++e)
            for (int r = 0; r < d; ++r) {
                int acc = 0;
                for (int j = 0; j < nu; ++j) acc += L[e][r * nu + j] * u[j];
                table[e][r] = norm3(acc);
            }
        return table;
    };

    // coboundaries in u-coordinates: c_m(s) = s*m - m
    std::vector<std::vector<int>> b_rows;
    for (int j = 0; j < d; ++j) {
        std::vector<int> u(nu);
        for (int i = 0; i < k; ++i)
            for (int r = 0; r < d; ++r)
                u[i * d + r] = norm3(m.mats[gens[i]][d * r + j] - (r == j));
        b_rows.push_back(std::move(u));
    }
    std::vector<std::vector<int>> span = b_rows;
    int b_rank = rref3(span);
    span.resize(b_rank);

    H1Result out;
    out.cocycle_dimension = static_cast<int>(z_basis_u.size());
    out.coboundary_dimension = b_rank;
    out.dimension = out.cocycle_dimension - b_rank;
    for (auto& u : z_basis_u) out.cocycle_basis.push_back(table_of(u));
    for (auto& u : z_basis_u) {
        auto trial = span;
        trial.push_back(u);
        int r = rref3(trial);
        if (r > static_cast<int>(span.size())) {
            trial.resize(r);
            span = std::move(trial);
            out.h1_basis.push_back(table_of(u));
        }
    }
    return out;
}

int h1_bruteforce(const GroupTable& g, const FiniteModule& m, const std::vector<int>& generators) {
    int n = g.order(), d = m.dim, k = static_cast<int>(generators.size());
    long long total = 1;
    for (int i = 0; i < d * k; ++i) total *= 3;
    std::set<std::vector<std::vector<int>>> cocycles;
    for (long long v = 0; v < total; ++v) {
        std::vector<std::vector<int>> c(n);
        std::vector<char> known(n, 0);
        c[g.identity].assign(d, 0);
        known[g.identity] = 1;
        std::vector<std::vector<int>> genval(k, std::vector<int>(d));
        long long t = v;
        for (int i = 0; i < k; ++i)
            for (int r = 0; r < d; ++r) {
                genval[i][r] = t % 3;
                t /= 3;
            }
        bool ok = true;
        // propagate until stable, checking consistency on every edge
        for (int pass = 0; pass < n && ok; ++pass) {
            bool changed = false;
            for (int e = 0; e < n && ok; ++e) {
                if (!known[e]) continue;
                for (int i = 0; i < k && ok; ++i) {
                    int to = g.mul[e][generators[i]];
                    auto val = m.apply(e, genval[i]);
                    for (int r = 0; r < d; ++r) val[r] = norm3(val[r] + c[e][r]);
                    if (!known[to]) {
                        c[to] = val;
                        known[to] = 1;
                        changed = true;
                    } else if (c[to] != val) {
                        ok = false;
                    }
                }
            }
            if (!changed) break;
        }
        if (ok && std::all_of(known.begin(), known.end(), [](char b) { return b; }))
            cocycles.insert(c);
    }
    std::set<std::vector<std::vector<int>>> cobs;
    long long mods = 1;
    for (int i = 0; i < d; ++i) mods *= 3;
    for (long long v = 0; v < mods; ++v) {
        std::vector<int> mm(d);
        long long t = v;
        for (int r = 0; r < d; ++r) {
            mm[r] = t % 3;
            t /= 3;
        }
        std::vector<std::vector<int>> c(n);
        for (int e = 0; e < n; ++e) {
            auto val = m.apply(e, mm);
            for (int r = 0; r < d; ++r) val[r] = norm3(val[r] - mm[r]);
            c[e] = val;
        }
        cobs.insert(c);
    }
    long long classes = static_cast<long long>(cocycles.size()) / cobs.size();
    int dim = 0;
    while (classes > 1) {
        classes /= 3;
        ++dim;
    }
    return dim;
}

GammaReport unique_gamma_check(const InflectionConfig& cfg, bool saff_only) {
    EIGroup ei(cfg);
    AffGroup aff(cfg, ei);
    const std::vector<AffMap>& elems = saff_only ? aff.saff() : aff.all();
    GroupTable table = GroupTable::from_affmaps(elems);
    FiniteModule mod = ei_module(ei, elems);
    H1Result res = h1(table, mod);
    if (res.cocycle_dimension > 10) throw std::logic_error("cocycle space too large to enumerate");

    int n = table.order();
    // target restriction: on translations the cocycle equals psi
    std::vector<std::pair<int, std::array<int, 2>>> target;
    for (auto& t : aff.translations()) {
        auto it = std::lower_bound(elems.begin(), elems.end(), t);
        target.push_back({static_cast<int>(it - elems.begin()), ei.coords(psi(ei, t))});
    }

    // all coboundary tables
    std::vector<std::vector<std::vector<int>>> cobs;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            std::vector<int> mm = {a, b};
            std::vector<std::vector<int>> c(n);
            for (int e = 0; e < n; ++e) {
                auto val = mod.apply(e, mm);
                val[0] = norm3(val[0] - a);
                val[1] = norm3(val[1] - b);
                c[e] = val;
            }
            cobs.push_back(std::move(c));
        }
    auto reduce = [&](const std::vector<std::vector<int>>& c) {
        std::vector<std::vector<int>> best;
        for (auto& cb : cobs) {
            std::vector<std::vector<int>> trial(n);
            for (int e = 0; e < n; ++e) {
                trial[e] = {norm3(c[e][0] - cb[e][0]), norm3(c[e][1] - cb[e][1])};
            }
            if (best.empty() || trial < best) best = std::move(trial);
        }
        return best;
    };

    long long combos = 1;
    for (int i = 0; i < res.cocycle_dimension; ++i) combos *= 3;
    std::set<std::vector<std::vector<int>>> matching_reduced;
    std::vector<std::vector<std::vector<int>>> matching;
    for (long long v = 0; v < combos; ++v) {
        std::vector<std::vector<int>> c(n, std::vector<int>(2, 0));
        long long t = v;
        for (auto& basis : res.cocycle_basis) {
            int w = t % 3;
            t /= 3;
            if (!w) continue;
            for (int e = 0; e < n; ++e)
                for (int r = 0; r < 2; ++r) c[e][r] = norm3(c[e][r] + w * basis[e][r]);
        }
        bool hit = true;
        for (auto& [idx, want] : target)
            if (c[idx][0] != want[0] || c[idx][1] != want[1]) {
                hit = false;
                break;
            }
        if (hit) {
            matching.push_back(c);
            matching_reduced.insert(reduce(c));
        }
    }

    GammaReport rep;
    rep.h1_dimension = res.dimension;
    rep.matching_classes = static_cast<int>(matching_reduced.size());
    Cocycle canon = canonical_cocycle(ei, elems, 0);
    rep.gamma = canon.values;
    std::vector<std::vector<int>> canon_table(n);
    for (int e = 0; e < n; ++e) {
        auto co = ei.coords(canon.values[e]);
        canon_table[e] = {co[0], co[1]};
    }
    rep.gamma_matches =
        matching_reduced.size() == 1 && reduce(canon_table) == *matching_reduced.begin();
    return rep;
}

// ----------------------------------------------------------- Galois side

Mat3 frobenius_mat(const Mat3& m, int k) {
    Mat3 out = m;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) out.at(r, c) = m.at(r, c).frobenius(k);
    return out;
}

ProjPoint frobenius_point(const ProjPoint& p, int k) {
    return ProjPoint(p[0].frobenius(k), p[1].frobenius(k), p[2].frobenius(k));
}

CubicForm frobenius_cubic(const CubicForm& f, int k) {
    std::array<Fq, 10> c;
    for (int i = 0; i < 10; ++i) c[i] = f[i].frobenius(k);
    return CubicForm(f.spec(), c);
}

FrobeniusAction frobenius_module(const GaloisSetup& setup, const SGroup& s) {
    if (!s.spec()->same(*setup.ext)) throw std::invalid_argument("S not over the extension field");
    int k = setup.base->n;

    auto word_of = [&](const Mat3& m) -> std::pair<int, int> {
        ProjMat pm(m);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                if (s.word(i, j) == pm) return {i, j};
        throw NotStable("Frobenius moves a generator out of S");
    };
    auto [a, b] = word_of(frobenius_mat(s.gen_x().rep(), k));
    auto [c, d] = word_of(frobenius_mat(s.gen_y().rep(), k));

    HeisenbergPair pair(s.gen_x().rep(), s.gen_y().rep());
    InflectionConfig cfg = s_to_inflections(pair);
    AffMap fr;
    for (int i = 0; i < 9; ++i) {
        int j = cfg.index_of(frobenius_point(cfg.points()[i], k));
        if (j < 0) throw NotStable("Frobenius moves the configuration");
        fr.perm[i] = j;
    }
    EIGroup ei(cfg);
    auto [alpha, beta] = ei.basis();
    auto ca = ei.coords(ei.push(fr, alpha));
    auto cb = ei.coords(ei.push(fr, beta));

    FrobeniusAction out;
    out.on_s = {a, c, b, d};
    out.on_ei = {ca[0], cb[0], ca[1], cb[1]};
    out.det = det2i(out.on_s);
    out.rho_rational = static_cast<long long>(setup.base->q() % 3) == 1;
    return out;
}

GaloisCocycle curve_cocycle(const GaloisSetup& setup, const EIGroup& ei, const CubicForm& f,
                            int flex_index) {
    int k = setup.base->n;
    if (frobenius_cubic(f, k) != f)
        throw std::invalid_argument("cubic is not fixed by the base Frobenius");
    const InflectionConfig& cfg = ei.config();
    for (auto& p : cfg.points())
        if (!f.eval(p).is_zero()) throw NotContained("configuration not on the cubic");
    if (flex_index < 0 || flex_index >= 9) throw std::invalid_argument("bad flex index");

    AffMap fr;
    for (int i = 0; i < 9; ++i) {
        int j = cfg.index_of(frobenius_point(cfg.points()[i], k));
        if (j < 0) throw NotStable("Frobenius moves the configuration");
        fr.perm[i] = j;
    }
    GaloisCocycle out;
    out.base_index = flex_index;
    int cur = flex_index;
    for (int i = 0; i < setup.degree(); ++i) {
        out.values.push_back(ei.class_of(cur, flex_index));
        cur = fr(cur);
    }
    return out;
}

bool cohomologous(const GaloisSetup& setup, const EIGroup& ei, const GaloisCocycle& a,
                  const GaloisCocycle& b) {
    int k = setup.base->n;
    const InflectionConfig& cfg = ei.config();
    AffMap fr;
    for (int i = 0; i < 9; ++i) fr.perm[i] = cfg.index_of(frobenius_point(cfg.points()[i], k));
    int n = static_cast<int>(a.values.size());
    if (static_cast<int>(b.values.size()) != n) return false;
    for (int m = 0; m < 9; ++m) {
        bool ok = true;
        AffMap power = AffMap::identity();
        for (int i = 0; i < n && ok; ++i) {
            int diff = ei.add(a.values[i], ei.neg(b.values[i]));
            int want = ei.add(ei.push(power, m), ei.neg(m));
            if (diff != want) ok = false;
            power = fr.compose(power);
        }
        if (ok) return true;
    }
    return false;
}

std::pair<ProjPoint, ProjPoint> torsion_basis(const WeierstrassCurve& w) {
    auto tor = three_torsion(w);
    const Spec& st = tor[0].spec();
    WeierstrassCurve we = embed_weierstrass(w, st);
    ProjPoint o = we.origin();
    Fq rho = canonical_rho(st);
    for (auto& p : tor) {
        if (p == o) continue;
        for (auto& q : tor) {
            if (q == o || q == p) continue;
            if (weil3(we, p, q) == rho) return {p, q};
        }
    }
    throw std::logic_error("no pairing basis on the 3-torsion");
}

namespace {

// discrete log of a point in the 9-element span of (p, q)
std::array<int, 2> torsion_dlog(const CubicForm& f, const ProjPoint& o, const ProjPoint& p,
                                const ProjPoint& q, const ProjPoint& target) {
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            ProjPoint cur = o;
            for (int i = 0; i < a; ++i) cur = chord_add(f, o, cur, p);
            for (int i = 0; i < b; ++i) cur = chord_add(f, o, cur, q);
            if (cur == target) return {a, b};
        }
    throw std::logic_error("point outside the 3-torsion span");
}

}  // namespace

std::array<int, 4> torsion_frobenius(const WeierstrassCurve& w, int k) {
    auto [p, q] = torsion_basis(w);
    const Spec& st = p.spec();
    WeierstrassCurve we = embed_weierstrass(w, st);
    CubicForm f = we.form();
    ProjPoint o = we.origin();
    auto cp = torsion_dlog(f, o, p, q, frobenius_point(p, k));
    auto cq = torsion_dlog(f, o, p, q, frobenius_point(q, k));
    return {cp[0], cq[0], cp[1], cq[1]};
}

DescentReport descent_construct(const GaloisSetup& setup, const SGroup& s,
                                const WeierstrassCurve& target,
                                const std::array<int, 4>* phi_target) {
    if (!target.spec()->same(*setup.base))
        throw std::invalid_argument("target curve must be over the base field");
    int k = setup.base->n;

    std::array<int, 4> frob_s = frobenius_module(setup, s).on_s;
    std::array<int, 4> frob_e = torsion_frobenius(target, k);

    std::vector<std::array<int, 4>> admissible;
    for (auto& phi : sl2_f3())
        if (mul2(phi, frob_s) == mul2(frob_e, phi)) admissible.push_back(phi);
    if (admissible.empty()) throw NoEquivariantIso("no pairing-preserving equivariant isomorphism");
    std::array<int, 4> chosen_phi;
    if (phi_target) {
        if (std::find(admissible.begin(), admissible.end(), *phi_target) == admissible.end())
            throw NoEquivariantIso("requested isomorphism is not equivariant");
        chosen_phi = *phi_target;
    } else {
        chosen_phi = admissible.front();
    }

    // Frobenius-fixed smooth pencil members whose Jacobian matches the target
    HessePencil pencil = fixed_pencil(s);
    const Spec& ext = s.spec();
    Spec quad = FieldSpec::make(setup.base->p, 2 * setup.base->n);
    long long jac_count = count_points(target);
    long long jac_count2 = count_points(embed_weierstrass(target, quad));
    Fq jac_j = target.j();

    std::vector<CubicForm> matches;
    std::vector<std::pair<Fq, Fq>> params;
    long long qe = static_cast<long long>(ext->q());
    for (long long v = 0; v < qe; ++v) {
        std::vector<i64> c(ext->n);
        long long t = v;
        for (int i = 0; i < ext->n; ++i) {
            c[i] = t % ext->p;
            t /= ext->p;
        }
        params.push_back({Fq::one(ext), Fq::make(ext, c)});
    }
    params.push_back({Fq::zero(ext), Fq::one(ext)});

    for (auto& [lam, mu] : params) {
        CubicForm member = pencil.member(lam, mu);
        if (frobenius_cubic(member, k) != member) continue;
        std::array<Fq, 10> down;
        for (int i = 0; i < 10; ++i) down[i] = compress(member[i], setup.base);
        CubicForm f(setup.base, down);
        if (!is_smooth(f)) continue;
        if (j_invariant(f) != jac_j) continue;
        if (count_points(f) != jac_count) continue;
        if (count_points(embed_cubic(f, quad)) != jac_count2) continue;
        matches.push_back(f);
    }
    if (matches.empty())
        throw ConstructionFailed("no fixed pencil member matches the target Jacobian");
    std::sort(matches.begin(), matches.end());
    CubicForm curve = matches.front();

    // matrix of phi_C for the chosen curve, in its own torsion basis
    HeisenbergPair pair(s.gen_x().rep(), s.gen_y().rep());
    InflectionConfig cfg = s_to_inflections(pair);
    EIGroup ei(cfg);
    CubicForm fe = embed_cubic(curve, ext);
    ProjPoint o = cfg.points()[0];
    auto [w, m] = flex_to_weierstrass(fe, o);
    auto [tp, tq] = torsion_basis(w);
    const Spec& st = tp.spec();
    WeierstrassCurve wt = embed_weierstrass(w, st);
    CubicForm wf = wt.form();
    ProjPoint wo = wt.origin();

    auto image_of = [&](const ProjMat& gen) {
        AffMap g;
        for (int i = 0; i < 9; ++i) g.perm[i] = cfg.index_of(act_point(gen, cfg.points()[i]));
        ProjPoint val = act_point(m, phi_C(ei, fe, o, g));
        return torsion_dlog(wf, wo, tp, tq, embed_point(val, st));
    };
    auto cx = image_of(s.gen_x());
    auto cy = image_of(s.gen_y());
    std::array<int, 4> phi_curve = {cx[0], cy[0], cx[1], cy[1]};
    if (det2i(phi_curve) != 1) throw std::logic_error("phi_C does not preserve the pairing");
    return DescentReport{curve,  std::move(matches), frob_s,
                         frob_e, chosen_phi,         mul2(inv2(phi_curve), chosen_phi)};
}

}  // namespace cubics

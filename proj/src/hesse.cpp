#include "cubics/hesse.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cubics {

InflectionConfig::InflectionConfig(std::vector<ProjPoint> points) : pts_(std::move(points)) {
    if (pts_.size() != 9) throw InvalidConfig("expected 9 points");
    std::sort(pts_.begin(), pts_.end());
    for (int i = 0; i < 8; ++i)
        if (pts_[i] == pts_[i + 1]) throw InvalidConfig("points not distinct");

    std::set<std::array<int, 3>> tset;
    for (int i = 0; i < 9; ++i)
        for (int j = i + 1; j < 9; ++j) {
            ProjLine l = line_through(pts_[i], pts_[j]);
            std::array<int, 3> t;
            int cnt = 0;
            for (int k = 0; k < 9; ++k)
                if (l.contains(pts_[k])) {
                    if (cnt == 3) throw InvalidConfig("four config points on a line");
                    t[cnt++] = k;
                }
            if (cnt != 3) throw InvalidConfig("pair not completed to a triple");
            tset.insert(t);
        }
    if (tset.size() != 12) throw InvalidConfig("expected 12 collinear triples");
    triples_.assign(tset.begin(), tset.end());

    for (auto& r : third_)
        for (auto& v : r) v = -1;
    for (auto& t : triples_) {
        third_[t[0]][t[1]] = third_[t[1]][t[0]] = t[2];
        third_[t[0]][t[2]] = third_[t[2]][t[0]] = t[1];
        third_[t[1]][t[2]] = third_[t[2]][t[1]] = t[0];
    }
    for (int i = 0; i < 9; ++i) {
        int deg = 0;
        for (auto& t : triples_)
            if (t[0] == i || t[1] == i || t[2] == i) ++deg;
        if (deg != 4) throw InvalidConfig("point not on exactly 4 triples");
    }
}

int InflectionConfig::index_of(const ProjPoint& p) const {
    for (int i = 0; i < 9; ++i)
        if (pts_[i] == p) return i;
    return -1;
}

int InflectionConfig::collinear_third(int i, int j) const {
    if (i == j) throw std::invalid_argument("collinear_third needs distinct indices");
    return third_[i][j];
}

bool InflectionConfig::colinear(int i, int j, int k) const {
    if (i == j && j == k) return true;
    if (i == j || j == k || i == k) return false;
    return third_[i][j] == k;
}

// ------------------------------------------------------------------ AffMap

AffMap AffMap::identity() {
    AffMap g;
    std::iota(g.perm.begin(), g.perm.end(), 0);
    return g;
}

AffMap AffMap::compose(const AffMap& o) const {
    AffMap g;
    for (int i = 0; i < 9; ++i) g.perm[i] = perm[o.perm[i]];
    return g;
}

AffMap AffMap::inverse() const {
    AffMap g;
    for (int i = 0; i < 9; ++i) g.perm[perm[i]] = i;
    return g;
}

// ------------------------------------------------------------------ EIGroup

namespace {

struct UnionFind {
    std::array<int, 81> parent;
    UnionFind() { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

EIGroup::EIGroup(const InflectionConfig& cfg) : cfg_(cfg) {
    // classes by closure over the defining relation
    UnionFind uf;
    for (int p = 0; p < 9; ++p)
        for (int q = 0; q < 9; ++q)
            for (int r = 0; r < 9; ++r)
                for (int s = 0; s < 9; ++s) {
                    bool rel = false;
                    for (int t = 0; t < 9 && !rel; ++t)
                        if (cfg_.colinear(p, s, t) && cfg_.colinear(r, q, t)) rel = true;
                    if (rel) uf.unite(9 * p + q, 9 * r + s);
                }

    // deterministic class ids by least member pair
    std::vector<int> roots;
    for (int x = 0; x < 81; ++x)
        if (uf.find(x) == x) roots.push_back(x);
    std::vector<int> leasts;
    for (int r : roots) {
        int least = 81;
        for (int x = 0; x < 81; ++x)
            if (uf.find(x) == r) least = std::min(least, x);
        leasts.push_back(least);
    }
    std::vector<std::pair<int, int>> order;  // (least member, root)
    for (size_t i = 0; i < roots.size(); ++i) order.push_back({leasts[i], roots[i]});
    std::sort(order.begin(), order.end());
    if (order.size() != 9) throw InvalidConfig("pair classes do not number 9");

    for (int p = 0; p < 9; ++p)
        for (int q = 0; q < 9; ++q) {
            int r = uf.find(9 * p + q);
            int id = -1;
            for (int c = 0; c < 9; ++c)
                if (order[c].second == r) id = c;
            cls_[p][q] = id;
        }
    for (int c = 0; c < 9; ++c) rep_[c] = {order[c].first / 9, order[c].first % 9};

    // identity: the diagonal must be one class
    id_ = cls_[0][0];
    for (int p = 0; p < 9; ++p)
        if (cls_[p][p] != id_) throw InvalidConfig("diagonal pairs not equivalent");

    // group law {(P,Q)} + {(R,S)} = {(P,U)} with (R,S) ~ (Q,U); check
    // independence of representatives
    for (int a = 0; a < 9; ++a)
        for (int b = 0; b < 9; ++b) table_[a][b] = -1;
    for (int p = 0; p < 9; ++p)
        for (int q = 0; q < 9; ++q)
            for (int r = 0; r < 9; ++r)
                for (int s = 0; s < 9; ++s) {
                    int u = -1;
                    for (int cand = 0; cand < 9; ++cand)
                        if (cls_[q][cand] == cls_[r][s]) {
                            if (u >= 0) throw InvalidConfig("sum representative not unique");
                            u = cand;
                        }
                    if (u < 0) throw InvalidConfig("sum representative missing");
                    int val = cls_[p][u];
                    int& slot = table_[cls_[p][q]][cls_[r][s]];
                    if (slot >= 0 && slot != val) throw InvalidConfig("group law ill-defined");
                    slot = val;
                }

    for (int a = 0; a < 9; ++a) {
        neg_[a] = -1;
        for (int b = 0; b < 9; ++b)
            if (table_[a][b] == id_) neg_[a] = b;
        if (neg_[a] < 0) throw InvalidConfig("missing inverse");
    }

    // action P + {(Q,P)} = Q
    for (int a = 0; a < 9; ++a)
        for (int i = 0; i < 9; ++i) {
            int j = -1;
            for (int cand = 0; cand < 9; ++cand)
                if (cls_[cand][i] == a) {
                    if (j >= 0) throw InvalidConfig("action not simply transitive");
                    j = cand;
                }
            if (j < 0) throw InvalidConfig("action undefined");
            act_[a][i] = j;
        }

    // basis of the elementary abelian group of order 9
    alpha_ = -1;
    for (int a = 0; a < 9 && alpha_ < 0; ++a)
        if (a != id_) alpha_ = a;
    std::array<int, 3> line = {id_, alpha_, table_[alpha_][alpha_]};
    beta_ = -1;
    for (int a = 0; a < 9 && beta_ < 0; ++a)
        if (a != line[0] && a != line[1] && a != line[2]) beta_ = a;
    for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y) {
            int v = id_;
            for (int k = 0; k < x; ++k) v = table_[v][alpha_];
            for (int k = 0; k < y; ++k) v = table_[v][beta_];
            span_[x][y] = v;
            coords_[v] = {x, y};
        }
}

int EIGroup::push(const AffMap& g, int c) const {
    auto [q, p] = rep_[c];
    return cls_[g(q)][g(p)];
}

// ----------------------------------------------------------------- AffGroup

namespace {

void search_aff(const InflectionConfig& cfg, std::array<int, 9>& perm, std::array<bool, 9>& used,
                int pos, std::vector<AffMap>& out) {
    if (pos == 9) {
        for (auto& t : cfg.triples())
            if (!cfg.colinear(perm[t[0]], perm[t[1]], perm[t[2]])) return;
        out.push_back(AffMap{perm});
        return;
    }
    for (int v = 0; v < 9; ++v) {
        if (used[v]) continue;
        bool ok = true;
        for (int i = 0; i < pos && ok; ++i) {
            int t = cfg.collinear_third(i, pos);
            if (t < pos && cfg.collinear_third(perm[i], v) != perm[t]) ok = false;
        }
        if (!ok) continue;
        perm[pos] = v;
        used[v] = true;
        search_aff(cfg, perm, used, pos + 1, out);
        used[v] = false;
    }
}

}  // namespace

AffGroup::AffGroup(const InflectionConfig& cfg, const EIGroup& ei) : ei_(ei) {
    std::array<int, 9> perm{};
    std::array<bool, 9> used{};
    search_aff(cfg, perm, used, 0, all_);
    std::sort(all_.begin(), all_.end());
    for (auto& g : all_) {
        if (is_translation(g)) trans_.push_back(g);
        if (det2(linear_part(g)) == 1) saff_.push_back(g);
        if (g(0) == 0) stab_.push_back(g);
    }
}

bool AffGroup::is_translation(const AffMap& g) const {
    int c0 = ei_.class_of(g(0), 0);
    for (int i = 1; i < 9; ++i)
        if (ei_.class_of(g(i), i) != c0) return false;
    return true;
}

int AffGroup::translation_class(const AffMap& g) const { return ei_.class_of(g(0), 0); }

std::array<int, 4> AffGroup::linear_part(const AffMap& g) const {
    auto [alpha, beta] = ei_.basis();
    auto ca = ei_.coords(ei_.push(g, alpha));
    auto cb = ei_.coords(ei_.push(g, beta));
    return {ca[0], ca[1], cb[0], cb[1]};
}

// --------------------------------------------------------------------- psi

int psi(const EIGroup& ei, const AffMap& s) {
    int c0 = ei.class_of(s(0), 0);
    for (int i = 1; i < 9; ++i)
        if (ei.class_of(s(i), i) != c0)
            throw std::invalid_argument("psi: not a translation of the configuration");
    return c0;
}

Cocycle canonical_cocycle(const EIGroup& ei, const std::vector<AffMap>& subgroup,
                          int base_point) {
    Cocycle c;
    c.elems = subgroup;
    std::sort(c.elems.begin(), c.elems.end());
    c.base_point = base_point;
    for (auto& g : c.elems) c.values.push_back(ei.class_of(g(base_point), base_point));
    return c;
}

}  // namespace cubics

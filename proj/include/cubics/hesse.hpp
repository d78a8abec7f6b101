#ifndef CUBICS_HESSE_HPP
#define CUBICS_HESSE_HPP

#include <stdexcept>

#include "cubics/projlin.hpp"

namespace cubics {

struct InvalidConfig : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotContained : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Nine points of P^2 together with their 12 collinear triples: the
/// (9_4, 12_3) configuration cut out by a smooth cubic and its Hessian.
class InflectionConfig {
public:
    InflectionConfig(std::vector<ProjPoint> points);

    const std::vector<ProjPoint>& points() const { return pts_; }
    const std::vector<std::array<int, 3>>& triples() const { return triples_; }
    const Spec& spec() const { return pts_[0].spec(); }

    int index_of(const ProjPoint& p) const;  // -1 if absent

    // The unique k such that {i,j,k} is a triple (i != j).
    int collinear_third(int i, int j) const;

    // Collinear in the inclusive sense: a genuine triple, or i = j = k.
    bool colinear(int i, int j, int k) const;

    bool operator==(const InflectionConfig& o) const {
        return pts_ == o.pts_ && triples_ == o.triples_;
    }

private:
    std::vector<ProjPoint> pts_;               // sorted, 9 of them
    std::vector<std::array<int, 3>> triples_;  // sorted index triples
    int third_[9][9];
};

/// Permutation of the 9 configuration points preserving the triples.
struct AffMap {
    std::array<int, 9> perm;

    int operator()(int i) const { return perm[i]; }
    static AffMap identity();
    AffMap compose(const AffMap& o) const;  // this after o
    AffMap inverse() const;

    bool operator==(const AffMap& o) const { return perm == o.perm; }
    bool operator!=(const AffMap& o) const { return !(*this == o); }
    bool operator<(const AffMap& o) const { return perm < o.perm; }
};

/// The group E(I) of pair-equivalence classes: classes of ordered point
/// pairs under (P,Q) ~ (R,S) iff some T has P,S,T and R,Q,T collinear,
/// built by closure; class ids 0..8.
class EIGroup {
public:
    explicit EIGroup(const InflectionConfig& cfg);

    const InflectionConfig& config() const { return cfg_; }
    int class_of(int i, int j) const { return cls_[i][j]; }
    std::pair<int, int> representative(int c) const { return rep_[c]; }
    int identity() const { return id_; }
    int add(int a, int b) const { return table_[a][b]; }
    int neg(int a) const { return neg_[a]; }

    // P + {(Q,P)} = Q, on point indices; simply transitive.
    int act(int a, int i) const { return act_[a][i]; }

    // Image of a class under a triple-preserving permutation,
    // {(Q,P)} -> {(g(Q), g(P))}.
    int push(const AffMap& g, int c) const;

    // Distinguished basis (alpha, beta) of E(I) = F_3^2 and coordinates.
    std::pair<int, int> basis() const { return {alpha_, beta_}; }
    std::array<int, 2> coords(int c) const { return coords_[c]; }
    int from_coords(int x, int y) const { return span_[((x % 3) + 3) % 3][((y % 3) + 3) % 3]; }

private:
    InflectionConfig cfg_;
    int cls_[9][9];
    std::pair<int, int> rep_[9];
    int table_[9][9];
    int neg_[9];
    int act_[9][9];
    int id_;
    int alpha_, beta_;
    std::array<int, 2> coords_[9];
    int span_[3][3];
};

/// Aff(I): all triple-preserving permutations, with the exact-sequence data
/// 0 -> E(I) -> Aff(I) -> GL_2(F_3) -> 0 relative to base point 0.
class AffGroup {
public:
    AffGroup(const InflectionConfig& cfg, const EIGroup& ei);

    const std::vector<AffMap>& all() const { return all_; }    // 432, sorted
    const std::vector<AffMap>& saff() const { return saff_; }  // 216
    const std::vector<AffMap>& translations() const { return trans_; }  // 9
    const std::vector<AffMap>& point_stabilizer() const { return stab_; }  // 48, fixes point 0

    bool is_translation(const AffMap& g) const;
    // Translation part: class {(g(P0), P0)} with P0 = point 0.
    int translation_class(const AffMap& g) const;
    // Linear part on E(I)-coordinates: 2x2 matrix over F_3, column-major
    // [a c; b d] as {a,b,c,d}.
    std::array<int, 4> linear_part(const AffMap& g) const;
    static int det2(const std::array<int, 4>& m) { return ((m[0] * m[3] - m[1] * m[2]) % 3 + 3) % 3; }

private:
    const EIGroup& ei_;
    std::vector<AffMap> all_, saff_, trans_, stab_;
};

// psi: translation -> its E(I) class {(s(P), P)}; checked well-defined over
// every base point; rejects non-translations.
int psi(const EIGroup& ei, const AffMap& s);

struct Cocycle {
    std::vector<AffMap> elems;       // the subgroup H, sorted
    std::vector<int> values;         // d(g) as EI class ids, aligned with elems
    int base_point;
};

Cocycle canonical_cocycle(const EIGroup& ei, const std::vector<AffMap>& subgroup,
                          int base_point);

}  // namespace cubics

#endif

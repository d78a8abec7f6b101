#ifndef CUBICS_HEISENBERG_HPP
#define CUBICS_HEISENBERG_HPP

#include "cubics/cubic.hpp"

namespace cubics {

struct NotSkewPair : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exponent i with x y = rho^i y x (rho the canonical cube root of unity of
// the matrices' field); throws NotSkewPair if the commutator is not such a
// scalar.
int commutator_exponent(const Mat3& x, const Mat3& y);

/// A skew-commuting pair of projective-order-3 matrices with commutator
/// exactly the canonical rho.
struct HeisenbergPair {
    HeisenbergPair(const Mat3& x_, const Mat3& y_);  // validates
    static HeisenbergPair standard(const Spec& s);   // diag(1,rho,rho^2), cyclic shift

    Mat3 x, y;
    Fq rho;
};

/// The image S of a Heisenberg pair in PGL_3: elementary abelian of order 9
/// with an alternating commutator pairing into mu_3.
class SGroup {
public:
    SGroup(const Mat3& x, const Mat3& y);

    const Spec& spec() const { return gx_.rep().spec(); }
    const std::vector<ProjMat>& elements() const { return elems_; }  // 9, sorted
    const ProjMat& gen_x() const { return gx_; }
    const ProjMat& gen_y() const { return gy_; }
    // x^i y^j as a canonical ProjMat
    const ProjMat& word(int i, int j) const { return word_[((i % 3) + 3) % 3][((j % 3) + 3) % 3]; }
    // pairing exponent of two elements of S
    int pairing(const ProjMat& a, const ProjMat& b) const;

    bool same_set(const SGroup& o) const { return elems_ == o.elems_; }

private:
    ProjMat gx_, gy_;
    ProjMat word_[3][3];
    std::vector<ProjMat> elems_;
};

// Lemma-7 configuration: intersections of the x-invariant planes with the
// y-invariant planes, over the smallest field containing all of them.
InflectionConfig s_to_inflections(const HeisenbergPair& pair);

// The translations of cfg realized inside PGL_3 (Theorem 9 inverse).
SGroup inflections_to_S(const InflectionConfig& cfg);

// For each (a,b,c,d) in SL_2(F_3), a matrix g with g x g^-1 = x^a y^b and
// g y g^-1 = x^c y^d projectively; returned with its SL_2 label.
struct NormalizerGen {
    std::array<int, 4> sl2;  // a,b,c,d with ad-bc = 1 (mod 3)
    ProjMat g;
};
std::vector<NormalizerGen> normalizer_generators(const SGroup& s);

/// The 2-dimensional space of S-fixed cubic forms.
struct HessePencil {
    CubicForm b0, b1;  // row-reduced basis of the fixed section space
    CubicForm member(const Fq& lam, const Fq& mu) const;
};

HessePencil fixed_pencil(const SGroup& s);

// All elements of PGL_3(F_p) (prime field, exhaustive scan) preserving the
// 9-point set of cfg.
std::vector<ProjMat> stabilizer_bruteforce(const InflectionConfig& cfg);

// Orbit partition of the pencil parameter line P^1(F) under the maps induced
// by the normalizer generators; parameters normalized (first nonzero = 1).
std::vector<std::vector<std::pair<Fq, Fq>>> pencil_orbits(const SGroup& s,
                                                          const HessePencil& pencil);

}  // namespace cubics

#endif

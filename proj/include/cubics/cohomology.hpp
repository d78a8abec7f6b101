#ifndef CUBICS_COHOMOLOGY_HPP
#define CUBICS_COHOMOLOGY_HPP

#include "cubics/heisenberg.hpp"

namespace cubics {

struct InvalidModule : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotStable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoEquivariantIso : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConstructionFailed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Finite group given by its full multiplication table.
struct GroupTable {
    std::vector<std::vector<int>> mul;
    int identity = 0;

    int order() const { return static_cast<int>(mul.size()); }
    int inverse(int g) const;
    int element_order(int g) const;

    static GroupTable from_affmaps(const std::vector<AffMap>& elems);  // sorted elems
};

/// F_3^dim with a linear action of every group element (row-major matrices,
/// entries mod 3, one per element in table order).
struct FiniteModule {
    int dim;
    std::vector<std::vector<int>> mats;

    std::vector<int> apply(int g, const std::vector<int>& v) const;
};

// E(I)-coordinates as a module over triple-preserving permutations (acting
// through their linear parts).
FiniteModule ei_module(const EIGroup& ei, const std::vector<AffMap>& elems);

struct H1Result {
    int dimension;            // of H^1
    int cocycle_dimension;    // of Z^1
    int coboundary_dimension; // of B^1
    // cocycles as full tables: value vector per group element
    std::vector<std::vector<std::vector<int>>> h1_basis;
    std::vector<std::vector<std::vector<int>>> cocycle_basis;
};

// Cocycles modulo coboundaries, solved on a greedy generating set with
// Cayley-graph consistency constraints.
H1Result h1(const GroupTable& g, const FiniteModule& m);

// Independent oracle: enumerate all generator assignments and extend each
// through the Cayley graph; feasible for small groups only.
int h1_bruteforce(const GroupTable& g, const FiniteModule& m,
                  const std::vector<int>& generators);

struct GammaReport {
    int h1_dimension;
    int matching_classes;     // classes restricting to the identity on E(I)
    std::vector<int> gamma;   // canonical cocycle values (EI classes), group order
    bool gamma_matches;       // the canonical cocycle lies in the unique class
};

// Prop. on the distinguished class: the canonical cocycle of saff (or all of
// the triple-preserving group) restricts to the identity of Hom(E(I), E(I)),
// and is the only class doing so.
GammaReport unique_gamma_check(const InflectionConfig& cfg, bool saff_only);

/// Cyclic Galois setup: objects live over ext, Frobenius is the q-power map
/// of the base field.
struct GaloisSetup {
    Spec base, ext;
    int degree() const { return ext->n / base->n; }
};

Mat3 frobenius_mat(const Mat3& m, int k);
ProjPoint frobenius_point(const ProjPoint& p, int k);
CubicForm frobenius_cubic(const CubicForm& f, int k);

struct FrobeniusAction {
    std::array<int, 4> on_s;   // matrix on the (x, y) basis of S; columns = images
    std::array<int, 4> on_ei;  // matrix on the (alpha, beta) basis of E(I)
    int det;                   // common determinant mod 3
    bool rho_rational;         // true iff det == 1 iff q = 1 mod 3
};

FrobeniusAction frobenius_module(const GaloisSetup& setup, const SGroup& s);

/// One-cocycle of <Frobenius> with values in E(I): values[i] is the class of
/// (sigma^i P, P) for the chosen flex P.
struct GaloisCocycle {
    std::vector<int> values;
    int base_index;
};

GaloisCocycle curve_cocycle(const GaloisSetup& setup, const EIGroup& ei, const CubicForm& f,
                            int flex_index);

// Whether a - b is a coboundary sigma(m) - m for some m in E(I).
bool cohomologous(const GaloisSetup& setup, const EIGroup& ei, const GaloisCocycle& a,
                  const GaloisCocycle& b);

// Basis (P, Q) of the full 3-torsion with pairing exactly rho, over the
// torsion field; deterministic.
std::pair<ProjPoint, ProjPoint> torsion_basis(const WeierstrassCurve& w);

// Matrix of the q^k-power Frobenius on the 3-torsion of w in the
// torsion_basis coordinates.
std::array<int, 4> torsion_frobenius(const WeierstrassCurve& w, int k);

struct DescentReport {
    CubicForm curve;                 // least qualifying member, over the base field
    std::vector<CubicForm> all;      // every qualifying member
    std::array<int, 4> frob_s;       // Frobenius on S
    std::array<int, 4> frob_e;       // Frobenius on the target 3-torsion
    std::array<int, 4> phi;          // chosen equivariant pairing-preserving iso
    std::array<int, 4> gbar;         // SL_2 adjustment: phi_curve composed with gbar = phi
};

// Galois descent: pick the Frobenius-fixed smooth pencil members whose
// Jacobian matches the target curve, verify the equivariant isomorphism of
// 3-torsion modules, and return base-field forms.
DescentReport descent_construct(const GaloisSetup& setup, const SGroup& s,
                                const WeierstrassCurve& target,
                                const std::array<int, 4>* phi_target = nullptr);

}  // namespace cubics

#endif

#ifndef CUBICS_LOCALARITH_HPP
#define CUBICS_LOCALARITH_HPP

#include <map>

#include "cubics/field.hpp"

namespace cubics {

/// Finite Laurent polynomial over F_q in one uniformizer; exact model of the
/// local field elements actually needed (valuations and leading residues).
class Laurent {
public:
    explicit Laurent(const Spec& s) : spec_(s) {}
    static Laurent from_terms(const Spec& s, const std::vector<std::pair<int, Fq>>& terms);
    static Laurent uniformizer(const Spec& s, int exp = 1);
    static Laurent constant(const Fq& c);

    const Spec& spec() const { return spec_; }
    bool is_zero() const { return terms_.empty(); }
    int valuation() const;  // throws on zero
    Fq lead() const;
    const std::map<int, Fq>& terms() const { return terms_; }

    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator*(const Laurent& o) const;
    Laurent pow(int k) const;  // k >= 0

    bool operator==(const Laurent& o) const { return terms_ == o.terms_; }
    std::string str() const;

private:
    Spec spec_;
    std::map<int, Fq> terms_;  // exponent -> nonzero coefficient
};

/// Two-level element: Laurent polynomial in t whose coefficients are level-1
/// Laurent polynomials in s.
class Laurent2 {
public:
    explicit Laurent2(const Spec& s) : spec_(s) {}
    static Laurent2 from_terms(const Spec& s, const std::vector<std::pair<int, Laurent>>& terms);
    static Laurent2 uniformizer_t(const Spec& s, int exp = 1);
    static Laurent2 lift(const Laurent& c);  // level-1 element viewed at level 2

    const Spec& spec() const { return spec_; }
    bool is_zero() const { return terms_.empty(); }
    int valuation() const;  // in t
    const Laurent& lead() const;
    const std::map<int, Laurent>& terms() const { return terms_; }

    Laurent2 operator*(const Laurent2& o) const;
    Laurent2 pow(int k) const;

    std::string str() const;

private:
    Spec spec_;
    std::map<int, Laurent> terms_;
};

/// F_q((t)) (level 1) or F_q((s))((t)) (level 2); q = 1 mod 3 so that rho is
/// a residue unit and Kummer theory applies.
struct LocalField {
    Spec residue;
    int level;  // 1 or 2
};

// chi(u) = u^((q-1)/3) as an exponent of the canonical rho; requires
// q = 1 mod 3.
int chi_exponent(const Fq& u);

// Canonical non-cube unit g with chi(g) = rho.
Fq noncube_unit(const Spec& s);

// Class in F*/(F*)^3 over the basis {g, t} (level 1: two exponents) or
// {g, s, t} (level 2: three exponents), entries mod 3.
std::vector<int> cube_class(const LocalField& f, const Laurent& a);
std::vector<int> cube_class(const LocalField& f, const Laurent2& a);

// Monomial representative of a class.
Laurent class_rep(const LocalField& f, const std::vector<int>& cls);
Laurent2 class_rep2(const LocalField& f, const std::vector<int>& cls);

// All 9 (level 1) or 27 (level 2) classes in a fixed order, trivial first.
std::vector<std::vector<int>> all_classes(const LocalField& f);

// Cubic tame symbol of the degree-3 symbol algebra (a, b) over a level-1
// field, as an exponent of rho; zero iff the algebra splits.
int tame_symbol3(const LocalField& f, const Laurent& a, const Laurent& b);

struct SymbolAlgebra1 {
    Laurent a, b;
};
struct SymbolAlgebra2 {
    Laurent2 a, b;
};

/// Brauer invariants of a symbol algebra over a two-level field: the class
/// of the t-residue algebra over F_q((s)) plus the cube class of the
/// t-ramification residue. The algebra splits iff both vanish.
struct Level2Class {
    int residue_symbol;               // symbol of the residue algebra over F_q((s))
    std::array<int, 2> ramification;  // cube class (g, s) of the ramification residue
    bool is_zero() const { return residue_symbol == 0 && ramification == std::array<int, 2>{0, 0}; }
};

Level2Class brauer_class2(const LocalField& f, const Laurent2& a, const Laurent2& b);

// Whether the algebra splits over F(c^{1/3}), c given as a cube class
// (trivial c = the identity extension).
bool is_split(const LocalField& f, const SymbolAlgebra1& alg, const std::vector<int>& ext_class);
bool is_split(const LocalField& f, const SymbolAlgebra2& alg, const std::vector<int>& ext_class);

// Classes of norms from F(k^{1/3}); index 3 at level 1.
std::vector<std::vector<int>> norm_classes(const LocalField& f, const std::vector<int>& k_class);

struct ScanRow {
    std::vector<int> cls;
    bool admissible;  // in the norm group / anti-invariant under sigma
    bool splits;
};

struct DecisionReport {
    bool verdict;
    bool split_input;          // the input algebra was already split
    std::vector<int> witness;  // chosen class (empty when verdict is false)
    std::vector<ScanRow> table;
};

// Is the algebra split by some F(a^{1/3}) with a a norm from F(k^{1/3})?
DecisionReport prop17_decide(const LocalField& f, const SymbolAlgebra1& alg,
                             const std::vector<int>& k_class);
DecisionReport prop17_decide(const LocalField& f, const SymbolAlgebra2& alg,
                             const std::vector<int>& k_class);

enum class QuadraticKind { unramified, ramified };

// Is there L = K(b^{1/3}) with sigma(b) = b^{-1} mod cubes splitting D x K,
// i.e. an S_3-Galois splitting field of D over the level-1 field?
DecisionReport cor19_decide(const LocalField& f, const SymbolAlgebra1& d, QuadraticKind kind);

}  // namespace cubics

#endif

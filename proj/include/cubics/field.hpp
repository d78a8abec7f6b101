#ifndef CUBICS_FIELD_HPP
#define CUBICS_FIELD_HPP

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubics {

using i64 = long long;
using u128 = unsigned __int128;

struct ArithmeticError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class FieldSpec;
using Spec = std::shared_ptr<const FieldSpec>;

/// F_{p^n} as F_p[x]/(modulus), p >= 5.  The modulus is the canonical
/// (lexicographically least, low-to-high coefficients) monic irreducible,
/// so a spec is determined by (p, n) alone.
class FieldSpec {
public:
    i64 p;
    int n;
    std::vector<i64> modulus;  // monic, length n+1, low-to-high

    u128 q() const;  // p^n

    // Canonical spec for (p, n); cached, deterministic across runs.
    static Spec make(i64 p, int n);

    bool same(const FieldSpec& o) const { return p == o.p && n == o.n; }
};

/// Element of F_{p^n} in the polynomial basis (length-n coefficient vector,
/// low degree first).  Immutable value type.
class Fq {
public:
    Fq() = default;  // null element; only valid as a placeholder

    static Fq zero(const Spec& s);
    static Fq one(const Spec& s);
    static Fq from_int(const Spec& s, i64 v);
    static Fq make(const Spec& s, std::vector<i64> coeffs);  // reduced mod p

    const Spec& spec() const { return spec_; }
    const std::vector<i64>& coeffs() const { return c_; }
    bool valid() const { return spec_ != nullptr; }

    bool is_zero() const;
    bool is_one() const;

    Fq operator+(const Fq& o) const;
    Fq operator-(const Fq& o) const;
    Fq operator-() const;
    Fq operator*(const Fq& o) const;
    Fq operator/(const Fq& o) const;
    Fq inv() const;
    Fq pow(u128 e) const;
    Fq frobenius(int k = 1) const;  // a^(p^k)

    bool operator==(const Fq& o) const;
    bool operator!=(const Fq& o) const { return !(*this == o); }
    // Deterministic element ordering: lexicographic on the coefficient
    // vector, constant term first.
    bool operator<(const Fq& o) const;

    std::string str() const;

private:
    Fq(Spec s, std::vector<i64> c) : spec_(std::move(s)), c_(std::move(c)) {}
    Spec spec_;
    std::vector<i64> c_;
};

// Field homomorphism F_{p^m} -> F_{p^n} for m | n, sending the generator to
// the canonical least root of the small modulus in the big field.  Cached,
// so repeated embeddings are consistent.
Fq embed(const Fq& a, const Spec& target);

// Inverse of embed on the subfield image: express a (which must be fixed by
// Frobenius^m) in the canonical F_{p^m}.
Fq compress(const Fq& a, const Spec& target);

// Least m | n such that a is fixed by Frobenius^m, i.e. a in F_{p^m}.
int subfield_degree(const Fq& a);

// {1} if 3 does not divide q-1, else {1, rho, rho^2} sorted canonically.
std::vector<Fq> cube_roots_of_unity(const Spec& s);

// The canonical primitive cube root of unity (least of the two); throws if
// 3 does not divide q-1.
Fq canonical_rho(const Spec& s);

/// Univariate polynomial over a single Fq field.  Normalized: no trailing
/// zero coefficients; the zero polynomial has an empty coefficient vector.
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(const Spec& s) : spec_(s) {}
    UniPoly(const Spec& s, std::vector<Fq> coeffs);

    static UniPoly from_ints(const Spec& s, const std::vector<i64>& coeffs);
    static UniPoly x(const Spec& s);
    static UniPoly constant(const Fq& c);

    const Spec& spec() const { return spec_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Fq coeff(int i) const;
    const std::vector<Fq>& coeffs() const { return c_; }
    Fq lead() const;

    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator*(const Fq& c) const;
    UniPoly monic() const;
    std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const;
    UniPoly mod(const UniPoly& d) const { return divmod(d).second; }

    Fq eval(const Fq& x) const;
    UniPoly derivative() const;

    bool operator==(const UniPoly& o) const;
    bool operator!=(const UniPoly& o) const { return !(*this == o); }
    bool operator<(const UniPoly& o) const;  // degree, then lex on coeffs

    std::string str() const;

private:
    Spec spec_;
    std::vector<Fq> c_;
    void trim();
};

UniPoly gcd(const UniPoly& a, const UniPoly& b);  // monic
UniPoly pow_mod(const UniPoly& base, u128 e, const UniPoly& mod);

// Seed for the equal-degree splitting in factor_unipoly; fixed default so
// runs are reproducible.
void set_factor_seed(std::uint64_t seed);

// Complete factorization into monic irreducibles with multiplicities,
// sorted canonically.  The leading unit is factors' product divided into f.
std::vector<std::pair<UniPoly, int>> factor_unipoly(const UniPoly& f);

// Roots of f in its own coefficient field.
std::vector<Fq> poly_roots(const UniPoly& f);

// Map a polynomial coefficient-wise into an extension field.
UniPoly embed_poly(const UniPoly& f, const Spec& target);

bool is_prime(i64 p);

}  // namespace cubics

#endif

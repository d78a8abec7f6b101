#include "cubics/field.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <random>
#include <sstream>

namespace cubics {

namespace {

i64 mod_pos(i64 a, i64 p) {
    a %= p;
    return a < 0 ? a + p : a;
}

i64 mod_inv(i64 a, i64 p) {
    i64 t = 0, newt = 1, r = p, newr = mod_pos(a, p);
    while (newr != 0) {
        i64 q = r / newr;
        std::swap(t, newt);
        newt -= q * t;
        std::swap(r, newr);
        newr -= q * r;
    }
    if (r != 1) throw ArithmeticError("mod_inv: not invertible");
    return mod_pos(t, p);
}

// Raw mod-p polynomial helpers (low-to-high coefficient vectors).
std::vector<i64> raw_mul(const std::vector<i64>& a, const std::vector<i64>& b, i64 p) {
    if (a.empty() || b.empty()) return {};
    std::vector<i64> r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    return r;
}

// Reduce in place modulo a monic modulus.
void raw_reduce(std::vector<i64>& a, const std::vector<i64>& m, i64 p) {
    int n = static_cast<int>(m.size()) - 1;
    for (int i = static_cast<int>(a.size()) - 1; i >= n; --i) {
        i64 c = a[i];
        if (c == 0) continue;
        a[i] = 0;
        for (int j = 0; j < n; ++j)
            a[i - n + j] = mod_pos(a[i - n + j] - c * m[j], p);
    }
    a.resize(n);
}

std::mutex g_cache_mtx;

}  // namespace

bool is_prime(i64 p) {
    if (p < 2) return false;
    for (i64 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

u128 FieldSpec::q() const {
    u128 r = 1;
    for (int i = 0; i < n; ++i) r *= static_cast<u128>(p);
    return r;
}

namespace {

// Irreducibility over F_p via x^(p^d) == x and the prime-index subfield test.
bool raw_irreducible(const std::vector<i64>& f, i64 p) {
    int n = static_cast<int>(f.size()) - 1;
    if (n < 1) return false;
    if (f[0] == 0) return n == 1;  // x itself is the only irreducible with root 0
    auto powx = [&](u128 e) {
        // x^e mod f
        std::vector<i64> base = {0, 1}, acc = {1};
        raw_reduce(base, f, p);
        while (e > 0) {
            if (e & 1) {
                acc = raw_mul(acc, base, p);
                raw_reduce(acc, f, p);
            }
            base = raw_mul(base, base, p);
            raw_reduce(base, f, p);
            e >>= 1;
        }
        acc.resize(n, 0);
        return acc;
    };
    auto is_x = [&](std::vector<i64> v) {
        for (int i = 0; i < n; ++i)
            if (v[i] != (i == 1 ? 1 : 0)) return false;
        return true;
    };
    u128 pn = 1;
    for (int i = 0; i < n; ++i) pn *= static_cast<u128>(p);
    if (!is_x(powx(pn))) return false;
    // for each prime l | n, gcd(x^(p^(n/l)) - x, f) must be 1
    int m = n;
    for (int l = 2; l <= m; ++l) {
        if (m % l != 0) continue;
        while (m % l == 0) m /= l;
        u128 pk = 1;
        for (int i = 0; i < n / l; ++i) pk *= static_cast<u128>(p);
        std::vector<i64> g = powx(pk);
        if (g.size() > 1) g[1] = mod_pos(g[1] - 1, p);
        else {
            g.resize(2, 0);
            g[1] = p - 1;
        }
        // gcd(g, f) over F_p
        std::vector<i64> a = f, b = g;
        auto deg = [](const std::vector<i64>& v) {
            for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i)
                if (v[i] != 0) return i;
            return -1;
        };
        while (deg(b) >= 0) {
            int da = deg(a), db = deg(b);
            if (da < db) {
                std::swap(a, b);
                continue;
            }
            i64 c = mod_pos(a[da] * mod_inv(b[db], p), p);
            for (int i = 0; i <= db; ++i)
                a[da - db + i] = mod_pos(a[da - db + i] - c * b[i], p);
        }
        if (deg(a) != 0) return false;
    }
    return true;
}

}  // namespace

Spec FieldSpec::make(i64 p, int n) {
    if (!is_prime(p)) throw ArithmeticError("make_field: p must be prime");
    if (p == 2 || p == 3) throw ArithmeticError("make_field: characteristic 2 and 3 excluded");
    if (n < 1) throw ArithmeticError("make_field: degree must be >= 1");

    static std::map<std::pair<i64, int>, Spec> cache;
    std::lock_guard<std::mutex> lk(g_cache_mtx);
    auto it = cache.find({p, n});
    if (it != cache.end()) return it->second;

    auto spec = std::make_shared<FieldSpec>();
    spec->p = p;
    spec->n = n;
    if (n == 1) {
        spec->modulus = {0, 1};  // x
    } else {
        // Least (c0, c1, ..., c_{n-1}) in lex order with x^n + sum c_i x^i
        // irreducible.  c0 = 0 is always reducible, so start at c0 = 1.
        std::vector<i64> c(n, 0);
        c[0] = 1;
        for (;;) {
            std::vector<i64> f = c;
            f.push_back(1);
            if (raw_irreducible(f, p)) {
                spec->modulus = f;
                break;
            }
            // odometer increment, last coordinate fastest
            int i = n - 1;
            while (i >= 0 && c[i] == p - 1) c[i--] = 0;
            if (i < 0) throw ArithmeticError("make_field: no irreducible found");
            ++c[i];
        }
    }
    cache[{p, n}] = spec;
    return spec;
}

// ---------------------------------------------------------------- Fq

Fq Fq::zero(const Spec& s) { return Fq(s, std::vector<i64>(s->n, 0)); }

Fq Fq::one(const Spec& s) {
    std::vector<i64> c(s->n, 0);
    c[0] = 1;
    return Fq(s, std::move(c));
}

Fq Fq::from_int(const Spec& s, i64 v) {
    std::vector<i64> c(s->n, 0);
    c[0] = mod_pos(v, s->p);
    return Fq(s, std::move(c));
}

Fq Fq::make(const Spec& s, std::vector<i64> coeffs) {
    for (auto& v : coeffs) v = mod_pos(v, s->p);
    raw_reduce(coeffs, s->modulus, s->p);
    coeffs.resize(s->n, 0);
    return Fq(s, std::move(coeffs));
}

bool Fq::is_zero() const {
    for (i64 v : c_)
        if (v != 0) return false;
    return true;
}

bool Fq::is_one() const {
    if (c_.empty() || c_[0] != 1) return false;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

static void check_same(const Fq& a, const Fq& b) {
    if (!a.valid() || !b.valid() || !a.spec()->same(*b.spec()))
        throw ArithmeticError("Fq: mixed or null field specs");
}

Fq Fq::operator+(const Fq& o) const {
    check_same(*this, o);
    std::vector<i64> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = mod_pos(c_[i] + o.c_[i], spec_->p);
    return Fq(spec_, std::move(r));
}

Fq Fq::operator-(const Fq& o) const {
    check_same(*this, o);
    std::vector<i64> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = mod_pos(c_[i] - o.c_[i], spec_->p);
    return Fq(spec_, std::move(r));
}

Fq Fq::operator-() const {
    std::vector<i64> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = mod_pos(-c_[i], spec_->p);
    return Fq(spec_, std::move(r));
}

Fq Fq::operator*(const Fq& o) const {
    check_same(*this, o);
    std::vector<i64> r = raw_mul(c_, o.c_, spec_->p);
    raw_reduce(r, spec_->modulus, spec_->p);
    r.resize(spec_->n, 0);
    return Fq(spec_, std::move(r));
}

Fq Fq::pow(u128 e) const {
    Fq acc = Fq::one(spec_);
    Fq base = *this;
    while (e > 0) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Fq Fq::inv() const {
    if (is_zero()) throw ArithmeticError("Fq: division by zero");
    return pow(spec_->q() - 2);
}

Fq Fq::operator/(const Fq& o) const { return *this * o.inv(); }

Fq Fq::frobenius(int k) const {
    Fq r = *this;
    k %= spec_->n;
    if (k < 0) k += spec_->n;
    for (int i = 0; i < k; ++i) r = r.pow(static_cast<u128>(spec_->p));
    return r;
}

bool Fq::operator==(const Fq& o) const {
    check_same(*this, o);
    return c_ == o.c_;
}

bool Fq::operator<(const Fq& o) const {
    check_same(*this, o);
    return c_ < o.c_;
}

std::string Fq::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
    os << "]";
    return os.str();
}

// ------------------------------------------------------- embeddings

namespace {

// Cache of the canonical embedding root of F_{p^m}'s modulus in F_{p^n}.
std::map<std::tuple<i64, int, int>, Fq>& embed_cache() {
    static std::map<std::tuple<i64, int, int>, Fq> c;
    return c;
}

}  // namespace

Fq embed(const Fq& a, const Spec& target) {
    const Spec& src = a.spec();
    if (src->same(*target)) return a;
    if (src->p != target->p || target->n % src->n != 0)
        throw ArithmeticError("embed: not a subfield");
    if (src->n == 1) {
        return Fq::from_int(target, a.coeffs()[0]);
    }
    Fq root;
    {
        std::lock_guard<std::mutex> lk(g_cache_mtx);
        auto key = std::make_tuple(src->p, src->n, target->n);
        auto it = embed_cache().find(key);
        if (it != embed_cache().end()) root = it->second;
    }
    if (!root.valid()) {
        std::vector<i64> m = src->modulus;
        UniPoly f = UniPoly::from_ints(target, m);
        std::vector<Fq> rs = poly_roots(f);
        if (rs.empty()) throw ArithmeticError("embed: modulus has no root in target");
        std::sort(rs.begin(), rs.end());
        root = rs.front();
        std::lock_guard<std::mutex> lk(g_cache_mtx);
        embed_cache().insert({std::make_tuple(src->p, src->n, target->n), root});
    }
    Fq acc = Fq::zero(target);
    Fq pw = Fq::one(target);
    for (int i = 0; i < src->n; ++i) {
        acc = acc + pw * Fq::from_int(target, a.coeffs()[i]);
        pw = pw * root;
    }
    return acc;
}

Fq compress(const Fq& a, const Spec& target) {
    const Spec& src = a.spec();
    if (src->same(*target)) return a;
    if (src->p != target->p || src->n % target->n != 0)
        throw ArithmeticError("compress: target is not a subfield");
    if (target->n == 1) {
        for (size_t i = 1; i < a.coeffs().size(); ++i)
            if (a.coeffs()[i] != 0) throw ArithmeticError("compress: element not in subfield");
        return Fq::from_int(target, a.coeffs()[0]);
    }
    // Solve sum c_i beta^i = a over F_p, beta the canonical embedding root.
    Fq beta = embed(Fq::make(target, std::vector<i64>{0, 1}), src);
    int N = src->n, m = target->n;
    i64 p = src->p;
    // columns: beta^i as length-N vectors; augmented with a
    std::vector<std::vector<i64>> cols(m);
    Fq pw = Fq::one(src);
    for (int i = 0; i < m; ++i) {
        cols[i] = pw.coeffs();
        pw = pw * beta;
    }
    std::vector<std::vector<i64>> M(N, std::vector<i64>(m + 1, 0));
    for (int r = 0; r < N; ++r) {
        for (int i = 0; i < m; ++i) M[r][i] = cols[i][r];
        M[r][m] = a.coeffs()[r];
    }
    // Gaussian elimination over F_p
    std::vector<int> pivot_col(N, -1);
    int row = 0;
    for (int col = 0; col < m && row < N; ++col) {
        int pr = -1;
        for (int r = row; r < N; ++r)
            if (M[r][col] != 0) {
                pr = r;
                break;
            }
        if (pr < 0) continue;
        std::swap(M[row], M[pr]);
        i64 ivv = mod_inv(M[row][col], p);
        for (int j = col; j <= m; ++j) M[row][j] = mod_pos(M[row][j] * ivv, p);
        for (int r = 0; r < N; ++r) {
            if (r == row || M[r][col] == 0) continue;
            i64 f = M[r][col];
            for (int j = col; j <= m; ++j) M[r][j] = mod_pos(M[r][j] - f * M[row][j], p);
        }
        pivot_col[row] = col;
        ++row;
    }
    std::vector<i64> sol(m, 0);
    for (int r = 0; r < N; ++r)
        if (pivot_col[r] >= 0) sol[pivot_col[r]] = M[r][m];
    Fq res = Fq::make(target, sol);
    if (embed(res, src) != a) throw ArithmeticError("compress: element not in subfield");
    return res;
}

int subfield_degree(const Fq& a) {
    int n = a.spec()->n;
    for (int m = 1; m <= n; ++m) {
        if (n % m != 0) continue;
        if (a.frobenius(m) == a) return m;
    }
    return n;
}

std::vector<Fq> cube_roots_of_unity(const Spec& s) {
    std::vector<Fq> out = {Fq::one(s)};
    if ((s->q() - 1) % 3 != 0) return out;
    // roots of x^2 + x + 1
    UniPoly f = UniPoly::from_ints(s, {1, 1, 1});
    std::vector<Fq> rs = poly_roots(f);
    for (auto& r : rs) out.push_back(r);
    std::sort(out.begin(), out.end());
    return out;
}

Fq canonical_rho(const Spec& s) {
    auto roots = cube_roots_of_unity(s);
    if (roots.size() != 3) throw ArithmeticError("canonical_rho: field has no primitive cube root of unity");
    for (auto& r : roots)
        if (!r.is_one()) return r;
    throw ArithmeticError("canonical_rho: unreachable");
}

// ---------------------------------------------------------------- UniPoly

UniPoly::UniPoly(const Spec& s, std::vector<Fq> coeffs) : spec_(s), c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

UniPoly UniPoly::from_ints(const Spec& s, const std::vector<i64>& coeffs) {
    std::vector<Fq> c;
    c.reserve(coeffs.size());
    for (i64 v : coeffs) c.push_back(Fq::from_int(s, v));
    return UniPoly(s, std::move(c));
}

UniPoly UniPoly::x(const Spec& s) { return from_ints(s, {0, 1}); }

UniPoly UniPoly::constant(const Fq& c) { return UniPoly(c.spec(), {c}); }

Fq UniPoly::coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Fq::zero(spec_);
    return c_[i];
}

Fq UniPoly::lead() const {
    if (c_.empty()) return Fq::zero(spec_);
    return c_.back();
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    std::vector<Fq> r(std::max(c_.size(), o.c_.size()), Fq::zero(spec_));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] + o.c_[i];
    return UniPoly(spec_, std::move(r));
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
    std::vector<Fq> r(std::max(c_.size(), o.c_.size()), Fq::zero(spec_));
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] = r[i] - o.c_[i];
    return UniPoly(spec_, std::move(r));
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly(spec_);
    std::vector<Fq> r(c_.size() + o.c_.size() - 1, Fq::zero(spec_));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return UniPoly(spec_, std::move(r));
}

UniPoly UniPoly::operator*(const Fq& k) const {
    std::vector<Fq> r = c_;
    for (auto& v : r) v = v * k;
    return UniPoly(spec_, std::move(r));
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    return *this * lead().inv();
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& d) const {
    if (d.is_zero()) throw ArithmeticError("UniPoly: division by zero polynomial");
    UniPoly r = *this;
    std::vector<Fq> q(std::max<int>(0, degree() - d.degree() + 1), Fq::zero(spec_));
    Fq dinv = d.lead().inv();
    while (!r.is_zero() && r.degree() >= d.degree()) {
        int k = r.degree() - d.degree();
        Fq c = r.lead() * dinv;
        q[k] = c;
        std::vector<Fq> sub(k + d.c_.size(), Fq::zero(spec_));
        for (size_t i = 0; i < d.c_.size(); ++i) sub[k + i] = d.c_[i] * c;
        r = r - UniPoly(spec_, std::move(sub));
    }
    return {UniPoly(spec_, std::move(q)), r};
}

Fq UniPoly::eval(const Fq& x) const {
    Fq acc = Fq::zero(spec_);
    for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return UniPoly(spec_);
    std::vector<Fq> r(c_.size() - 1, Fq::zero(spec_));
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Fq::from_int(spec_, static_cast<i64>(i));
    return UniPoly(spec_, std::move(r));
}

bool UniPoly::operator==(const UniPoly& o) const { return c_ == o.c_; }

bool UniPoly::operator<(const UniPoly& o) const {
    if (degree() != o.degree()) return degree() < o.degree();
    for (int i = 0; i <= degree(); ++i) {
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    }
    return false;
}

std::string UniPoly::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < c_.size(); ++i) os << (i ? " " : "") << c_[i].str();
    os << ")";
    return os.str();
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b;
    while (!y.is_zero()) {
        UniPoly r = x.mod(y);
        x = y;
        y = r;
    }
    return x.monic();
}

UniPoly pow_mod(const UniPoly& base, u128 e, const UniPoly& m) {
    UniPoly acc = UniPoly::constant(Fq::one(base.spec()));
    UniPoly b = base.mod(m);
    while (e > 0) {
        if (e & 1) acc = (acc * b).mod(m);
        b = (b * b).mod(m);
        e >>= 1;
    }
    return acc;
}

// ------------------------------------------------------- factorization

namespace {

std::uint64_t g_factor_seed = 0xC0FFEE123456789ULL;

// p-th root of a coefficient: c^(p^(n-1))
Fq pth_root(const Fq& c) { return c.frobenius(c.spec()->n - 1); }

// f squarefree; split into products of irreducibles of equal degree d.
void equal_degree_split(const UniPoly& f, int d, std::mt19937_64& rng, std::vector<UniPoly>& out) {
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    const Spec& s = f.spec();
    u128 q = s->q();
    // exponent (q^d - 1)/2 = (q-1)/2 * (1 + q + ... + q^(d-1)); apply the
    // second factor by iterated q-th powers to stay within 128 bits.
    for (;;) {
        std::vector<Fq> rc(f.degree(), Fq::zero(s));
        for (auto& v : rc) {
            std::vector<i64> cs(s->n);
            for (auto& x : cs) x = static_cast<i64>(rng() % static_cast<std::uint64_t>(s->p));
            v = Fq::make(s, cs);
        }
        UniPoly h(s, std::move(rc));
        if (h.degree() < 1) continue;
        UniPoly g0 = pow_mod(h, (q - 1) / 2, f);
        UniPoly acc = g0;
        UniPoly cur = g0;
        for (int i = 1; i < d; ++i) {
            cur = pow_mod(cur, q, f);
            acc = (acc * cur).mod(f);
        }
        UniPoly w = acc - UniPoly::constant(Fq::one(s));
        UniPoly g = gcd(w, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            equal_degree_split(g, d, rng, out);
            equal_degree_split(f.divmod(g).first, d, rng, out);
            return;
        }
    }
}

// Distinct irreducible factors of a squarefree monic polynomial.
std::vector<UniPoly> factor_squarefree(const UniPoly& f, std::mt19937_64& rng) {
    const Spec& s = f.spec();
    u128 q = s->q();
    std::vector<UniPoly> out;
    UniPoly rem = f.monic();
    UniPoly h = UniPoly::x(s);
    for (int d = 1; rem.degree() > 0; ++d) {
        if (2 * d > rem.degree()) {
            out.push_back(rem.monic());
            break;
        }
        h = pow_mod(h, q, rem);
        UniPoly g = gcd(h - UniPoly::x(s), rem);
        if (g.degree() > 0) {
            equal_degree_split(g, d, rng, out);
            rem = rem.divmod(g).first;
            h = h.mod(rem.degree() > 0 ? rem : f);
        }
    }
    return out;
}

}  // namespace

void set_factor_seed(std::uint64_t seed) { g_factor_seed = seed; }

std::vector<std::pair<UniPoly, int>> factor_unipoly(const UniPoly& f) {
    if (f.is_zero()) throw ArithmeticError("factor_unipoly: zero polynomial");
    std::mt19937_64 rng(g_factor_seed);
    const Spec& s = f.spec();
    std::vector<std::pair<UniPoly, int>> out;
    if (f.degree() == 0) return out;

    struct Item {
        UniPoly poly;
        int mult;
    };
    std::vector<Item> stack = {{f.monic(), 1}};
    while (!stack.empty()) {
        Item it = stack.back();
        stack.pop_back();
        UniPoly g = it.poly;
        if (g.degree() == 0) continue;
        UniPoly d = g.derivative();
        if (d.is_zero()) {
            // g = u(x)^p with u obtained by p-th roots of the x^(ip) coefficients
            std::vector<Fq> hc;
            for (int i = 0; i <= g.degree(); i += static_cast<int>(s->p))
                hc.push_back(pth_root(g.coeff(i)));
            stack.push_back({UniPoly(s, std::move(hc)), it.mult * static_cast<int>(s->p)});
            continue;
        }
        // squarefree part carries every irreducible whose multiplicity in g
        // is prime to p; the leftover after full trial division has zero
        // derivative and reenters through the branch above.
        UniPoly sf = g.divmod(gcd(g, d)).first;
        for (auto& irr : factor_squarefree(sf, rng)) {
            int cnt = 0;
            for (;;) {
                auto [qt, rm] = g.divmod(irr);
                if (!rm.is_zero()) break;
                g = qt;
                ++cnt;
            }
            out.push_back({irr, cnt * it.mult});
        }
        if (g.degree() > 0) stack.push_back({g, it.mult});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::pair<UniPoly, int>> merged;
    for (auto& pr : out) {
        if (!merged.empty() && merged.back().first == pr.first)
            merged.back().second += pr.second;
        else
            merged.push_back(pr);
    }
    return merged;
}

std::vector<Fq> poly_roots(const UniPoly& f) {
    if (f.is_zero()) throw ArithmeticError("poly_roots: zero polynomial");
    const Spec& s = f.spec();
    std::vector<Fq> out;
    if (f.degree() < 1) return out;
    // isolate the product of distinct linear factors: gcd(x^q - x, f)
    UniPoly xq = pow_mod(UniPoly::x(s), s->q(), f);
    UniPoly lin = gcd(xq - UniPoly::x(s), f);
    if (lin.degree() < 1) return out;
    std::mt19937_64 rng(g_factor_seed ^ 0x9E3779B97F4A7C15ULL);
    std::vector<UniPoly> parts;
    equal_degree_split(lin, 1, rng, parts);
    for (auto& l : parts) out.push_back(-(l.coeff(0)));
    std::sort(out.begin(), out.end());
    return out;
}

UniPoly embed_poly(const UniPoly& f, const Spec& target) {
    std::vector<Fq> c;
    c.reserve(f.coeffs().size());
    for (auto& v : f.coeffs()) c.push_back(embed(v, target));
    return UniPoly(target, std::move(c));
}

}  // namespace cubics

#include "cubics/localarith.hpp"

#include <algorithm>

namespace cubics {
namespace {

int mod3(long long x) { return static_cast<int>(((x % 3) + 3) % 3); }

// a^e for possibly negative e
Fq powz(const Fq& a, long long e) {
    if (e >= 0) return a.pow(static_cast<u128>(e));
    return a.inv().pow(static_cast<u128>(-e));
}

void check_residue(const Spec& s) {
    u128 q = s->q();
    if ((q - 1) % 3 != 0) throw ArithmeticError("residue field has no cube roots of unity");
}

void check_field(const LocalField& f, int level) {
    if (f.level != level) throw ArithmeticError("wrong local field level");
    check_residue(f.residue);
}

void check_class(const std::vector<int>& cls, int level) {
    if (static_cast<int>(cls.size()) != level + 1)
        throw ArithmeticError("cube class has wrong length");
    for (int e : cls)
        if (e < 0 || e > 2) throw ArithmeticError("cube class entry out of range");
}

bool trivial_class(const std::vector<int>& cls) {
    return std::all_of(cls.begin(), cls.end(), [](int e) { return e == 0; });
}

// chi of (-1)^(va vb) * la^vb / lb^va, the residue of the tame quotient,
// from valuation/lead data alone.
int symbol_from_data(long long va, const Fq& la, long long vb, const Fq& lb) {
    Fq u = powz(la, vb) * powz(lb, -va);
    if ((va * vb) % 2 != 0) u = -u;
    return chi_exponent(u);
}

}  // namespace

Laurent Laurent::from_terms(const Spec& s, const std::vector<std::pair<int, Fq>>& terms) {
    Laurent r(s);
    for (const auto& [e, c] : terms) {
        if (!c.valid() || !c.spec()->same(*s)) throw ArithmeticError("coefficient field mismatch");
        if (c.is_zero()) continue;
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) {
            r.terms_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) r.terms_.erase(it);
        }
    }
    return r;
}

Laurent Laurent::uniformizer(const Spec& s, int exp) {
    return from_terms(s, {{exp, Fq::one(s)}});
}

Laurent Laurent::constant(const Fq& c) {
    return from_terms(c.spec(), {{0, c}});
}

int Laurent::valuation() const {
    if (terms_.empty()) throw ArithmeticError("valuation of zero");
    return terms_.begin()->first;
}

Fq Laurent::lead() const {
    if (terms_.empty()) throw ArithmeticError("lead of zero");
    return terms_.begin()->second;
}

Laurent Laurent::operator+(const Laurent& o) const {
    Laurent r = *this;
    for (const auto& [e, c] : o.terms_) {
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) {
            r.terms_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) r.terms_.erase(it);
        }
    }
    return r;
}

Laurent Laurent::operator-(const Laurent& o) const {
    Laurent neg(o.spec_);
    for (const auto& [e, c] : o.terms_) neg.terms_.emplace(e, -c);
    return *this + neg;
}

Laurent Laurent::operator*(const Laurent& o) const {
    Laurent r(spec_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Fq prod = c1 * c2;
            auto it = r.terms_.find(e1 + e2);
            if (it == r.terms_.end()) {
                if (!prod.is_zero()) r.terms_.emplace(e1 + e2, prod);
            } else {
                it->second = it->second + prod;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    return r;
}

Laurent Laurent::pow(int k) const {
    if (k < 0) throw ArithmeticError("negative Laurent power");
    Laurent r = constant(Fq::one(spec_));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

std::string Laurent::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += c.str();
        if (e != 0) out += "*t^" + std::to_string(e);
    }
    return out;
}

Laurent2 Laurent2::from_terms(const Spec& s, const std::vector<std::pair<int, Laurent>>& terms) {
    Laurent2 r(s);
    for (const auto& [e, c] : terms) {
        if (!c.spec()->same(*s)) throw ArithmeticError("coefficient field mismatch");
        if (c.is_zero()) continue;
        auto it = r.terms_.find(e);
        if (it == r.terms_.end()) {
            r.terms_.emplace(e, c);
        } else {
            it->second = it->second + c;
            if (it->second.is_zero()) r.terms_.erase(it);
        }
    }
    return r;
}

Laurent2 Laurent2::uniformizer_t(const Spec& s, int exp) {
    return from_terms(s, {{exp, Laurent::constant(Fq::one(s))}});
}

Laurent2 Laurent2::lift(const Laurent& c) {
    return from_terms(c.spec(), {{0, c}});
}

int Laurent2::valuation() const {
    if (terms_.empty()) throw ArithmeticError("valuation of zero");
    return terms_.begin()->first;
}

const Laurent& Laurent2::lead() const {
    if (terms_.empty()) throw ArithmeticError("lead of zero");
    return terms_.begin()->second;
}

Laurent2 Laurent2::operator*(const Laurent2& o) const {
    Laurent2 r(spec_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Laurent prod = c1 * c2;
            auto it = r.terms_.find(e1 + e2);
            if (it == r.terms_.end()) {
                if (!prod.is_zero()) r.terms_.emplace(e1 + e2, prod);
            } else {
                it->second = it->second + prod;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    return r;
}

Laurent2 Laurent2::pow(int k) const {
    if (k < 0) throw ArithmeticError("negative Laurent power");
    Laurent2 r = lift(Laurent::constant(Fq::one(spec_)));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

std::string Laurent2::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [e, c] : terms_) {
        if (!out.empty()) out += " + ";
        std::string inner = c.str();
        std::replace(inner.begin(), inner.end(), 't', 's');
        out += "(" + inner + ")";
        if (e != 0) out += "*t^" + std::to_string(e);
    }
    return out;
}

int chi_exponent(const Fq& u) {
    check_residue(u.spec());
    if (u.is_zero()) throw ArithmeticError("chi of zero");
    Fq v = u.pow((u.spec()->q() - 1) / 3);
    if (v.is_one()) return 0;
    Fq rho = canonical_rho(u.spec());
    if (v == rho) return 1;
    if (v == rho * rho) return 2;
    throw ArithmeticError("chi value is not a cube root of unity");
}

Fq noncube_unit(const Spec& s) {
    check_residue(s);
    // least element in the canonical order with chi = rho
    int n = s->n;
    std::vector<i64> c(n, 0);
    while (true) {
        int i = n - 1;
        while (i >= 0 && c[i] == s->p - 1) c[i--] = 0;
        if (i < 0) break;
        ++c[i];
        Fq u = Fq::make(s, c);
        if (!u.is_zero() && chi_exponent(u) == 1) return u;
    }
    throw ArithmeticError("no non-cube unit found");
}

std::vector<int> cube_class(const LocalField& f, const Laurent& a) {
    check_field(f, 1);
    if (a.is_zero()) throw ArithmeticError("cube class of zero");
    return {chi_exponent(a.lead()), mod3(a.valuation())};
}

std::vector<int> cube_class(const LocalField& f, const Laurent2& a) {
    check_field(f, 2);
    if (a.is_zero()) throw ArithmeticError("cube class of zero");
    const Laurent& a0 = a.lead();
    return {chi_exponent(a0.lead()), mod3(a0.valuation()), mod3(a.valuation())};
}

Laurent class_rep(const LocalField& f, const std::vector<int>& cls) {
    check_field(f, 1);
    check_class(cls, 1);
    Fq g = noncube_unit(f.residue);
    return Laurent::from_terms(f.residue, {{cls[1], g.pow(cls[0])}});
}

Laurent2 class_rep2(const LocalField& f, const std::vector<int>& cls) {
    check_field(f, 2);
    check_class(cls, 2);
    Fq g = noncube_unit(f.residue);
    Laurent coeff = Laurent::from_terms(f.residue, {{cls[1], g.pow(cls[0])}});
    return Laurent2::from_terms(f.residue, {{cls[2], coeff}});
}

std::vector<std::vector<int>> all_classes(const LocalField& f) {
    int k = f.level + 1;
    std::vector<std::vector<int>> out;
    std::vector<int> cls(k, 0);
    while (true) {
        out.push_back(cls);
        int i = k - 1;
        while (i >= 0 && cls[i] == 2) cls[i--] = 0;
        if (i < 0) break;
        ++cls[i];
    }
    return out;
}

int tame_symbol3(const LocalField& f, const Laurent& a, const Laurent& b) {
    check_field(f, 1);
    if (a.is_zero() || b.is_zero()) throw ArithmeticError("tame symbol of zero");
    return symbol_from_data(a.valuation(), a.lead(), b.valuation(), b.lead());
}

Level2Class brauer_class2(const LocalField& f, const Laurent2& a, const Laurent2& b) {
    check_field(f, 2);
    if (a.is_zero() || b.is_zero()) throw ArithmeticError("Brauer class of zero");
    // modulo cubes a = a0 t^at and b = b0 t^bt, so the class decomposes as
    // the inflation of (a0, b0) from F_q((s)) plus (r, t) with
    // r = (-1)^(at bt) a0^bt b0^(-at)
    LocalField f1{f.residue, 1};
    int at = a.valuation(), bt = b.valuation();
    const Laurent& a0 = a.lead();
    const Laurent& b0 = b.lead();
    int residue_symbol = tame_symbol3(f1, a0, b0);
    long long vr = static_cast<long long>(bt) * a0.valuation() -
                   static_cast<long long>(at) * b0.valuation();
    Fq lr = powz(a0.lead(), bt) * powz(b0.lead(), -at);
    if ((static_cast<long long>(at) * bt) % 2 != 0) lr = -lr;
    return Level2Class{residue_symbol, {chi_exponent(lr), mod3(vr)}};
}

bool is_split(const LocalField& f, const SymbolAlgebra1& alg, const std::vector<int>& ext_class) {
    check_field(f, 1);
    check_class(ext_class, 1);
    if (alg.a.is_zero() || alg.b.is_zero()) throw ArithmeticError("symbol algebra with zero slot");
    if (trivial_class(ext_class)) return tame_symbol3(f, alg.a, alg.b) == 0;
    long long va = alg.a.valuation(), vb = alg.b.valuation();
    Fq la = alg.a.lead(), lb = alg.b.lead();
    if (ext_class[1] != 0) {
        // ramified cubic: F(c^{1/3}) = F(m^{1/3}) for the monomial m = g^eg t
        // (squaring the class if needed), so w^3 = g^eg t is a uniformizer.
        // Valuations triple and t-leads pick up g^(-eg v).
        int eg = ext_class[0], et = ext_class[1];
        if (et == 2) eg = mod3(2 * eg);
        Fq g = noncube_unit(f.residue);
        return symbol_from_data(3 * va, la * powz(g, -eg * va), 3 * vb, lb * powz(g, -eg * vb)) == 0;
    }
    // unramified cubic: same valuations, residue field grows to F_{q^3}
    Spec ext = FieldSpec::make(f.residue->p, 3 * f.residue->n);
    return symbol_from_data(va, embed(la, ext), vb, embed(lb, ext)) == 0;
}

bool is_split(const LocalField& f, const SymbolAlgebra2& alg, const std::vector<int>& ext_class) {
    check_field(f, 2);
    check_class(ext_class, 2);
    if (alg.a.is_zero() || alg.b.is_zero()) throw ArithmeticError("symbol algebra with zero slot");
    if (trivial_class(ext_class)) return brauer_class2(f, alg.a, alg.b).is_zero();
    LocalField f1{f.residue, 1};
    int at = alg.a.valuation(), bt = alg.b.valuation();
    const Laurent& a0 = alg.a.lead();
    const Laurent& b0 = alg.b.lead();
    Fq g = noncube_unit(f.residue);
    if (ext_class[2] != 0) {
        // t-ramified: w^3 = g^cg s^cs t (after squaring if needed).  Every
        // element becomes t-unramified modulo cubes, with its residue twisted
        // by (g^cg s^cs)^(-v_t); only the residue symbol over F_q((s)) is left.
        int cg = ext_class[0], cs = ext_class[1], ct = ext_class[2];
        if (ct == 2) {
            cg = mod3(2 * cg);
            cs = mod3(2 * cs);
        }
        long long va = a0.valuation() - static_cast<long long>(cs) * at;
        long long vb = b0.valuation() - static_cast<long long>(cs) * bt;
        Fq la = a0.lead() * powz(g, -static_cast<long long>(cg) * at);
        Fq lb = b0.lead() * powz(g, -static_cast<long long>(cg) * bt);
        return symbol_from_data(va, la, vb, lb) == 0;
    }
    // extension of the coefficient field F_q((s)): split iff the residue
    // algebra (a0, b0) splits over it and the ramification residue r becomes
    // a cube there
    int cg = ext_class[0], cs = ext_class[1];
    bool residue_split = is_split(f1, SymbolAlgebra1{a0, b0}, {cg, cs});
    long long vr = static_cast<long long>(bt) * a0.valuation() -
                   static_cast<long long>(at) * b0.valuation();
    Fq lr = powz(a0.lead(), bt) * powz(b0.lead(), -at);
    if ((static_cast<long long>(at) * bt) % 2 != 0) lr = -lr;
    bool ram_trivial;
    if (cs != 0) {
        int eg = cs == 2 ? mod3(2 * cg) : cg;
        ram_trivial = chi_exponent(lr * powz(g, -static_cast<long long>(eg) * vr)) == 0;
    } else {
        // unramified in s: residue units all become cubes, s-valuation survives
        ram_trivial = mod3(vr) == 0;
    }
    return residue_split && ram_trivial;
}

std::vector<std::vector<int>> norm_classes(const LocalField& f, const std::vector<int>& k_class) {
    check_class(k_class, f.level);
    std::vector<std::vector<int>> out;
    if (f.level == 1) {
        check_field(f, 1);
        Laurent k = class_rep(f, k_class);
        for (const auto& cls : all_classes(f))
            if (trivial_class(k_class) || tame_symbol3(f, class_rep(f, cls), k) == 0)
                out.push_back(cls);
    } else {
        check_field(f, 2);
        Laurent2 k = class_rep2(f, k_class);
        for (const auto& cls : all_classes(f))
            if (trivial_class(k_class) || brauer_class2(f, class_rep2(f, cls), k).is_zero())
                out.push_back(cls);
    }
    return out;
}

namespace {

template <typename Alg>
DecisionReport decide17(const LocalField& f, const Alg& alg, const std::vector<int>& k_class) {
    check_class(k_class, f.level);
    std::vector<int> trivial(f.level + 1, 0);
    DecisionReport rep{false, false, {}, {}};
    rep.split_input = is_split(f, alg, trivial);
    auto norms = norm_classes(f, k_class);
    auto in_norms = [&](const std::vector<int>& cls) {
        return std::find(norms.begin(), norms.end(), cls) != norms.end();
    };
    for (const auto& cls : all_classes(f)) {
        ScanRow row{cls, in_norms(cls), is_split(f, alg, cls)};
        if (!rep.verdict && row.admissible && row.splits && (rep.split_input || !trivial_class(cls))) {
            rep.verdict = true;
            rep.witness = cls;
        }
        rep.table.push_back(std::move(row));
    }
    return rep;
}

}  // namespace

DecisionReport prop17_decide(const LocalField& f, const SymbolAlgebra1& alg,
                             const std::vector<int>& k_class) {
    check_field(f, 1);
    return decide17(f, alg, k_class);
}

DecisionReport prop17_decide(const LocalField& f, const SymbolAlgebra2& alg,
                             const std::vector<int>& k_class) {
    check_field(f, 2);
    return decide17(f, alg, k_class);
}

DecisionReport cor19_decide(const LocalField& f, const SymbolAlgebra1& d, QuadraticKind kind) {
    check_field(f, 1);
    if (d.a.is_zero() || d.b.is_zero()) throw ArithmeticError("symbol algebra with zero slot");
    // Base-change D to the quadratic field K, presented again as a level-1
    // field: unramified K has residue F_{q^2}; ramified K = F(u), u^2 = t,
    // doubles every valuation.
    Spec sp = f.residue;
    Spec kspec = kind == QuadraticKind::unramified ? FieldSpec::make(sp->p, 2 * sp->n) : sp;
    LocalField kfield{kspec, 1};
    auto to_k = [&](const Laurent& x) {
        std::vector<std::pair<int, Fq>> terms;
        for (const auto& [e, c] : x.terms()) {
            if (kind == QuadraticKind::unramified)
                terms.emplace_back(e, embed(c, kspec));
            else
                terms.emplace_back(2 * e, c);
        }
        return Laurent::from_terms(kspec, terms);
    };
    SymbolAlgebra1 dk{to_k(d.a), to_k(d.b)};

    DecisionReport rep{false, false, {}, {}};
    rep.split_input = tame_symbol3(kfield, dk.a, dk.b) == 0;
    Fq gk = noncube_unit(kspec);
    // class of sigma(g^eg pi^epi) in K*/(K*)^3: sigma is the q-power map on
    // residues (unramified) or u -> -u (ramified); either way it is computed
    // on the monomial representative
    auto sigma_class = [&](const std::vector<int>& cls) -> std::vector<int> {
        if (kind == QuadraticKind::unramified) {
            Fq sg = gk.frobenius(sp->n);  // q-power Frobenius of K/F
            return {mod3(static_cast<long long>(chi_exponent(sg)) * cls[0]), cls[1]};
        }
        Fq lead = gk.pow(cls[0]);
        if (cls[1] % 2 != 0) lead = -lead;
        return {chi_exponent(lead), cls[1]};
    };
    for (const auto& cls : all_classes(kfield)) {
        auto sc = sigma_class(cls);
        bool anti = mod3(sc[0] + cls[0]) == 0 && mod3(sc[1] + cls[1]) == 0;
        ScanRow row{cls, anti, is_split(kfield, dk, cls)};
        if (!rep.verdict && row.admissible && row.splits && (rep.split_input || !trivial_class(cls))) {
            rep.verdict = true;
            rep.witness = cls;
        }
        rep.table.push_back(std::move(row));
    }
    return rep;
}

}  // namespace cubics

// Batch front end: one JSON command per stdin line, one JSON report per
// stdout line.  Exit codes: 0 ok, 2 invalid input, 3 verification failure,
// 4 arithmetic failure.
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubics/cohomology.hpp"
#include "cubics/localarith.hpp"
#include "cubics/selftest.hpp"

using json = nlohmann::json;
using namespace cubics;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Spec parse_field(const json& j, const char* key = "field") {
    if (!j.contains(key)) throw InputError(std::string("missing ") + key);
    const json& f = j.at(key);
    if (!f.contains("p") || !f.contains("n")) throw InputError("field needs p and n");
    return FieldSpec::make(f.at("p").get<i64>(), f.at("n").get<int>());
}

Fq parse_fq(const Spec& s, const json& j) {
    if (j.is_number_integer()) return Fq::from_int(s, j.get<i64>());
    if (j.is_array()) return Fq::make(s, j.get<std::vector<i64>>());
    throw InputError("scalar must be an integer or a coefficient array");
}

json dump_fq(const Fq& a) { return json(a.coeffs()); }

CubicForm parse_cubic(const Spec& s, const json& j, const char* key = "cubic") {
    if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 10)
        throw InputError(std::string(key) + " must be an array of 10 coefficients");
    std::array<Fq, 10> c;
    for (int i = 0; i < 10; ++i) c[i] = parse_fq(s, j.at(key)[i]);
    return CubicForm(s, c);
}

json dump_cubic(const CubicForm& f) {
    json out = json::array();
    for (int i = 0; i < 10; ++i) out.push_back(dump_fq(f[i]));
    return out;
}

Mat3 parse_mat(const Spec& s, const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 9)
        throw InputError(std::string(key) + " must be an array of 9 entries (row-major)");
    std::array<Fq, 9> e;
    for (int i = 0; i < 9; ++i) e[i] = parse_fq(s, j.at(key)[i]);
    return Mat3(e);
}

json dump_point(const ProjPoint& p) { return json{dump_fq(p[0]), dump_fq(p[1]), dump_fq(p[2])}; }

json dump_field(const Spec& s) { return json{{"p", s->p}, {"n", s->n}}; }

Laurent parse_laurent(const Spec& s, const json& j) {
    if (!j.is_array()) throw InputError("local element must be [[exponent, coeff], ...]");
    std::vector<std::pair<int, Fq>> terms;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2) throw InputError("bad local element term");
        terms.emplace_back(t[0].get<int>(), parse_fq(s, t[1]));
    }
    return Laurent::from_terms(s, terms);
}

Laurent2 parse_laurent2(const Spec& s, const json& j) {
    if (!j.is_array()) throw InputError("local element must be [[exponent, coeffs], ...]");
    std::vector<std::pair<int, Laurent>> terms;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2) throw InputError("bad local element term");
        terms.emplace_back(t[0].get<int>(), parse_laurent(s, t[1]));
    }
    return Laurent2::from_terms(s, terms);
}

std::vector<int> parse_class(const json& j, const char* key, int len) {
    if (!j.contains(key) || !j.at(key).is_array() || static_cast<int>(j.at(key).size()) != len)
        throw InputError(std::string(key) + " must be a class vector of length " +
                         std::to_string(len));
    return j.at(key).get<std::vector<int>>();
}

json dump_decision(const DecisionReport& rep) {
    json table = json::array();
    for (const auto& row : rep.table)
        table.push_back(
            {{"class", row.cls}, {"admissible", row.admissible}, {"splits", row.splits}});
    return json{{"exists", rep.verdict},
                {"split_input", rep.split_input},
                {"witness", rep.witness},
                {"table", table}};
}

SGroup parse_sgroup(const json& in) {
    Spec s = parse_field(in);
    if (in.contains("x") || in.contains("y")) {
        HeisenbergPair pair(parse_mat(s, in, "x"), parse_mat(s, in, "y"));
        return SGroup(pair.x, pair.y);
    }
    auto pair = HeisenbergPair::standard(s);
    return SGroup(pair.x, pair.y);
}

json cmd_inflections(const json& in) {
    Spec s = parse_field(in);
    InflectionConfig cfg = inflection_points(parse_cubic(s, in));
    json pts = json::array();
    for (const auto& p : cfg.points()) pts.push_back(dump_point(p));
    return json{{"field", dump_field(cfg.spec())}, {"points", pts}, {"triples", cfg.triples()}};
}

json cmd_ei_table(const json& in) {
    Spec s = parse_field(in);
    InflectionConfig cfg = inflection_points(parse_cubic(s, in));
    EIGroup ei(cfg);
    json add = json::array(), act = json::array(), neg = json::array(), coords = json::array();
    for (int a = 0; a < 9; ++a) {
        json ra = json::array(), rc = json::array();
        for (int b = 0; b < 9; ++b) {
            ra.push_back(ei.add(a, b));
            rc.push_back(ei.act(a, b));
        }
        add.push_back(ra);
        act.push_back(rc);
        neg.push_back(ei.neg(a));
        coords.push_back(ei.coords(a));
    }
    auto [alpha, beta] = ei.basis();
    return json{{"identity", ei.identity()}, {"add", add},   {"neg", neg},
                {"act", act},                {"basis", json{alpha, beta}}, {"coords", coords}};
}

json cmd_roundtrip(const json& in) {
    SGroup sg = parse_sgroup(in);
    InflectionConfig cfg = s_to_inflections(HeisenbergPair(sg.gen_x().rep(), sg.gen_y().rep()));
    SGroup back = inflections_to_S(cfg);
    if (!back.same_set(sg)) throw VerifyError("round trip did not return the same subgroup");
    json pts = json::array();
    for (const auto& p : cfg.points()) pts.push_back(dump_point(p));
    return json{{"field", dump_field(cfg.spec())}, {"points", pts}, {"same", true}};
}

json cmd_pencil(const json& in) {
    SGroup sg = parse_sgroup(in);
    HessePencil pencil = fixed_pencil(sg);
    return json{{"b0", dump_cubic(pencil.b0)}, {"b1", dump_cubic(pencil.b1)}};
}

json cmd_j(const json& in) {
    Spec s = parse_field(in);
    return json{{"j", dump_fq(j_invariant(parse_cubic(s, in)))}};
}

json cmd_stabilizer_scan(const json& in, bool allow_long) {
    if (!allow_long)
        throw InputError("stabilizer-scan is gated behind --allow-long-scans");
    Spec s = parse_field(in);
    SGroup sg = parse_sgroup(in);
    InflectionConfig cfg = s_to_inflections(HeisenbergPair(sg.gen_x().rep(), sg.gen_y().rep()));
    auto stab = stabilizer_bruteforce(cfg);
    int in_s = 0;
    for (const auto& m : stab)
        for (const auto& e : sg.elements())
            if (m == e) ++in_s;
    if (stab.size() != 216 || in_s != 9)
        throw VerifyError("stabilizer scan did not match the expected 216/9 structure");
    return json{{"order", stab.size()}, {"translations", in_s}, {"scanned_group", "PGL3(F" + std::to_string(s->p) + ")"}};
}

json cmd_cohomology(const json& in) {
    Spec s = parse_field(in);
    InflectionConfig cfg = inflection_points(parse_cubic(s, in));
    EIGroup ei(cfg);
    AffGroup aff(cfg, ei);
    std::string which = in.value("subgroup", "aff");
    const std::vector<AffMap>* elems;
    if (which == "aff")
        elems = &aff.all();
    else if (which == "saff")
        elems = &aff.saff();
    else if (which == "translations")
        elems = &aff.translations();
    else
        throw InputError("subgroup must be aff, saff, or translations");
    GroupTable t = GroupTable::from_affmaps(*elems);
    H1Result h = h1(t, ei_module(ei, *elems));
    return json{{"subgroup", which},
                {"order", t.order()},
                {"dimension", h.dimension},
                {"cocycle_dimension", h.cocycle_dimension},
                {"coboundary_dimension", h.coboundary_dimension}};
}

json cmd_gamma_check(const json& in) {
    Spec s = parse_field(in);
    InflectionConfig cfg = inflection_points(parse_cubic(s, in));
    GammaReport rep = unique_gamma_check(cfg, in.value("saff_only", true));
    if (rep.matching_classes != 1 || !rep.gamma_matches)
        throw VerifyError("distinguished class is missing or not unique");
    return json{{"h1_dimension", rep.h1_dimension},
                {"matching_classes", rep.matching_classes},
                {"gamma", rep.gamma},
                {"gamma_matches", rep.gamma_matches}};
}

json cmd_descent(const json& in) {
    Spec base = parse_field(in, "base");
    Spec ext = parse_field(in, "ext");
    if (ext->p != base->p || ext->n % base->n != 0)
        throw InputError("ext must be an extension of base");
    GaloisSetup setup{base, ext};
    auto pair = HeisenbergPair::standard(ext);
    SGroup sg(pair.x, pair.y);
    if (!in.contains("target") || !in.at("target").is_array() || in.at("target").size() != 5)
        throw InputError("target must be [a1, a2, a3, a4, a6]");
    std::array<Fq, 5> a;
    for (int i = 0; i < 5; ++i) a[i] = parse_fq(base, in.at("target")[i]);
    WeierstrassCurve target(a[0], a[1], a[2], a[3], a[4]);
    std::array<int, 4> phi;
    const std::array<int, 4>* phi_ptr = nullptr;
    if (in.contains("phi")) {
        auto v = parse_class(in, "phi", 4);
        std::copy(v.begin(), v.end(), phi.begin());
        phi_ptr = &phi;
    }
    DescentReport rep = descent_construct(setup, sg, target, phi_ptr);
    json all = json::array();
    for (const auto& f : rep.all) all.push_back(dump_cubic(f));
    return json{{"curve", dump_cubic(rep.curve)}, {"all", all},   {"frob_s", rep.frob_s},
                {"frob_e", rep.frob_e},           {"phi", rep.phi}, {"gbar", rep.gbar}};
}

json cmd_curve_cocycle(const json& in) {
    Spec base = parse_field(in, "base");
    Spec ext = parse_field(in, "ext");
    GaloisSetup setup{base, ext};
    CubicForm f = parse_cubic(ext, in);
    InflectionConfig cfg = inflection_points(f);
    EIGroup ei(cfg);
    GaloisCocycle c = curve_cocycle(setup, ei, f, in.value("flex_index", 0));
    return json{{"values", c.values}, {"base_index", c.base_index}};
}

json cmd_prop17(const json& in) {
    Spec s = parse_field(in);
    int level = in.value("level", 1);
    LocalField f{s, level};
    DecisionReport rep = [&] {
        if (level == 1)
            return prop17_decide(f, SymbolAlgebra1{parse_laurent(s, in.at("a")),
                                                   parse_laurent(s, in.at("b"))},
                                 parse_class(in, "k", 2));
        if (level == 2)
            return prop17_decide(f, SymbolAlgebra2{parse_laurent2(s, in.at("a")),
                                                   parse_laurent2(s, in.at("b"))},
                                 parse_class(in, "k", 3));
        throw InputError("level must be 1 or 2");
    }();
    return dump_decision(rep);
}

json cmd_cor19(const json& in) {
    Spec s = parse_field(in);
    LocalField f{s, 1};
    std::string kind = in.value("kind", "unramified");
    if (kind != "unramified" && kind != "ramified")
        throw InputError("kind must be unramified or ramified");
    DecisionReport rep = cor19_decide(
        f, SymbolAlgebra1{parse_laurent(s, in.at("a")), parse_laurent(s, in.at("b"))},
        kind == "unramified" ? QuadraticKind::unramified : QuadraticKind::ramified);
    return dump_decision(rep);
}

json cmd_selftest(bool allow_long, std::uint64_t seed) {
    SelftestOptions opt;
    opt.include_exhaustive_scan = allow_long;
    opt.seed = seed;
    auto results = run_selftest(opt);
    json checks = json::array();
    bool ok = true;
    for (const auto& r : results) {
        checks.push_back({{"id", r.id},
                          {"name", r.name},
                          {"pass", r.pass},
                          {"skipped", r.skipped},
                          {"detail", r.detail}});
        if (!r.pass) ok = false;
    }
    if (!ok) throw VerifyError(json{{"checks", checks}}.dump());
    return json{{"checks", checks}, {"all_pass", true}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact plane-cubic / Heisenberg / local-symbol toolkit"};
    std::uint64_t seed = 1;
    bool allow_long = false;
    int workers = 1;
    app.add_option("--seed", seed, "seed for randomized subroutines");
    app.add_flag("--allow-long-scans", allow_long, "enable exhaustive PGL3 scans");
    app.add_option("--workers", workers, "worker count for shardable scans (sequential default)")
        ->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);
    set_factor_seed(seed);

    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        json out;
        int code = 0;
        std::string verb;
        try {
            json in = json::parse(line);
            if (!in.contains("verb") || !in.at("verb").is_string())
                throw InputError("missing verb");
            verb = in.at("verb").get<std::string>();
            if (verb == "inflections")
                out = cmd_inflections(in);
            else if (verb == "ei-table")
                out = cmd_ei_table(in);
            else if (verb == "heisenberg-roundtrip")
                out = cmd_roundtrip(in);
            else if (verb == "pencil")
                out = cmd_pencil(in);
            else if (verb == "j")
                out = cmd_j(in);
            else if (verb == "stabilizer-scan")
                out = cmd_stabilizer_scan(in, allow_long);
            else if (verb == "cohomology")
                out = cmd_cohomology(in);
            else if (verb == "gamma-check")
                out = cmd_gamma_check(in);
            else if (verb == "descent")
                out = cmd_descent(in);
            else if (verb == "curve-cocycle")
                out = cmd_curve_cocycle(in);
            else if (verb == "prop17")
                out = cmd_prop17(in);
            else if (verb == "cor19")
                out = cmd_cor19(in);
            else if (verb == "selftest")
                out = cmd_selftest(allow_long, seed);
            else
                throw InputError("unknown verb: " + verb);
        } catch (const json::exception& e) {
            code = 2;
            out = json{{"error", e.what()}};
        } catch (const InputError& e) {
            code = 2;
            out = json{{"error", e.what()}};
        } catch (const VerifyError& e) {
            code = 3;
            out = json{{"error", e.what()}};
        } catch (const SingularCurve& e) {
            code = 3;
            out = json{{"error", e.what()}};
        } catch (const InvalidConfig& e) {
            code = 3;
            out = json{{"error", e.what()}};
        } catch (const NotContained& e) {
            code = 3;
            out = json{{"error", e.what()}};
        } catch (const NotSkewPair& e) {
            code = 3;
            out = json{{"error", e.what()}};
        } catch (const NotStable& e) {
            code = 3;
            out = json{{"error", e.what()}};
        } catch (const NoEquivariantIso& e) {
            code = 3;
            out = json{{"error", e.what()}};
        } catch (const ConstructionFailed& e) {
            code = 3;
            out = json{{"error", e.what()}};
        } catch (const InvalidModule& e) {
            code = 3;
            out = json{{"error", e.what()}};
        } catch (const std::exception& e) {
            code = 4;
            out = json{{"error", e.what()}};
        }
        out["schema"] = "1";
        if (!verb.empty()) out["verb"] = verb;
        std::cout << out.dump() << "\n";
        if (code != 0) return code;
    }
    return 0;
}

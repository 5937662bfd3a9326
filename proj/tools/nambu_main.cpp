// Command-line front end: expression evaluation, bracket computation,
// identity suites, good-pair reports, gauge operations and the demo table
// reproducing the worked bracket computations.

#include "nambu/good_pairs.hpp"
#include "nambu/parser.hpp"
#include "nambu/universal.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace nambu;
using nlohmann::json;

namespace {

struct GlobalOptions {
    int m = 2;
    int n = -1;  // defaults to m
    bool tau = false;
    int trunc = 4;
    std::string format = "text";
    std::uint64_t seed = 0;

    Signature signature() const {
        Signature s{m, n < 0 ? m : n, tau, trunc};
        s.validate();
        return s;
    }
};

int emit_error(const GlobalOptions& g, const std::string& what) {
    if (g.format == "json") {
        json j{{"schema", 1}, {"error", what}};
        std::cout << j.dump() << "\n";
    } else {
        std::cerr << "error: " << what << "\n";
    }
    return 2;
}

void emit_result(const GlobalOptions& g, const std::string& key, const std::string& value) {
    if (g.format == "json") {
        json j{{"schema", 1}, {key, value}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << value << "\n";
    }
}

bool even_only_kind(const std::string& name) {
    return name == "poisson" || name == "lagrange" || name == "nambu" || name == "dzhuma";
}

// --n defaults to --m, except for the purely even bracket kinds
Signature signature_for(const GlobalOptions& g, const std::string& kind_name) {
    GlobalOptions adjusted = g;
    if (adjusted.n < 0 && even_only_kind(kind_name)) adjusted.n = 0;
    return adjusted.signature();
}

BracketKind make_kind(const std::string& name, const Signature& sig, int arity) {
    BracketKind kind;
    if (name == "ho") {
        kind.tag = BracketTag::HO;
    } else if (name == "ko") {
        kind.tag = BracketTag::KO;
    } else if (name == "poisson") {
        kind.tag = BracketTag::Poisson;
        kind.split = PoissonSplit::standard(sig, false);
    } else if (name == "lagrange") {
        kind.tag = BracketTag::Lagrange;
        kind.split = PoissonSplit::standard(sig, true);
    } else if (name == "nambu") {
        kind.tag = BracketTag::Nambu;
        kind.arity = arity > 0 ? arity : sig.even_count;
    } else if (name == "dzhuma") {
        kind.tag = BracketTag::Dzhumadildaev;
        kind.arity = arity > 0 ? arity : sig.even_count + 1;
    } else {
        throw std::invalid_argument("unknown bracket kind '" + name + "'");
    }
    kind.validate(sig);
    return kind;
}

// ---------------------------------------------------------------------------
// demo table
// ---------------------------------------------------------------------------

struct DemoRow {
    std::string name;
    bool passed;
    std::string detail;
};

class Demo {
public:
    explicit Demo(std::uint64_t seed) : sampler_(seed) {}

    std::vector<DemoRow> run() {
        brackets_coordinates();
        intro_brackets();
        calculus_rows();
        po2_rows();
        pon_rows();
        po2h1_rows();
        pontau_rows();
        identity_rows();
        gauge_rows();
        changevars_rows();
        component_rows();
        goodpair_rows();
        universal_rows();
        reconstruction_rows();
        counterexample_rows();
        return rows_;
    }

private:
    void row(const std::string& name, bool ok, const std::string& detail) {
        rows_.push_back({name, ok, detail});
    }
    void check_equal(const std::string& name, const Element& got, const Element& expect) {
        row(name, got == expect, got.render() + (got == expect ? "" : " != " + expect.render()));
    }

    void brackets_coordinates() {
        Signature sig{3, 0, false, 6};
        std::vector<Element> xs{Element::x(sig, 1), Element::x(sig, 2), Element::x(sig, 3)};
        check_equal("nambu.coordinates", bracket_nambu(xs), Element::one(sig));
        Signature dz{2, 0, false, 6};
        check_equal("dzhuma.unit-row",
                    bracket_dzhumadildaev({Element::one(dz), Element::x(dz, 1), Element::x(dz, 2)}),
                    Element::one(dz));
    }

    void intro_brackets() {
        Signature sig{4, 0, false, 4};
        PoissonSplit split = PoissonSplit::standard(sig, false);
        check_equal("poisson.p1q1", bracket_poisson(Element::x(sig, 1), Element::x(sig, 3), split),
                    Element::one(sig));
        Signature lg{3, 0, false, 4};
        PoissonSplit lsplit = PoissonSplit::standard(lg, true);
        check_equal("lagrange.unit-t",
                    bracket_lagrange(Element::one(lg), Element::x(lg, 3), lsplit),
                    Element::constant(lg, Rational(2)));
    }

    void calculus_rows() {
        Signature sig{2, 2, true, 4};
        check_equal("euler.tau", euler_E(Element::tau(sig)), Element::zero(sig));
        Signature ho{3, 3, false, 4};
        Element mu = parse_element("xi1*xi2*xi3", ho);
        auto zd = mu.z_degree();
        row("grading.xi-product", zd.has_value() && *zd == 3,
            "deg(xi1*xi2*xi3) = " + std::to_string(zd.value_or(-1)));
    }

    void po2_rows() {
        for (int h : {1, 2}) {
            ClassificationWitness w = classification_witness(WitnessKind::A1_HO, h, 4);
            const Signature& sig = w.pair.sig;
            bool ok = true;
            std::ostringstream detail;
            for (int i = 1; i <= h; ++i) {
                ok = ok && bracket_ho(Element::x(sig, i), w.mu) == Element::xi(sig, h + i);
                ok = ok && bracket_ho(Element::x(sig, h + i), w.mu) == -Element::xi(sig, i);
            }
            detail << "[x_i, mu] = xi_{h+i}, [x_{h+i}, mu] = -xi_i";
            row("po2.pairing.h" + std::to_string(h), ok, detail.str());

            bool g3 = true;
            for (int it = 0; it < 20; ++it) {
                Element f = sampler_.even_function(sig, 3, 3);
                if (!bracket_ho(w.mu, bracket_ho(f, w.mu)).is_zero()) g3 = false;
            }
            row("po2.g3.h" + std::to_string(h), g3, "[mu, [f, mu]] = 0 on 20 random f");
        }
    }

    void pon_rows() {
        int n = 3;
        Signature sig{n, n, false, 5};
        Element mu = parse_element("xi1*xi2*xi3", sig);
        bool ok = true;
        for (int it = 0; it < 10; ++it) {
            Element f(sig), div(sig);
            for (int i = 1; i <= n; ++i) {
                Element fi = sampler_.even_function(sig, 2, 2);
                f = f + fi * Element::xi(sig, i);
                div = div + d_dx(i, fi);
            }
            ok = ok && bracket_ho(f, mu) == div * mu;
        }
        row("pon.divergence", ok, "[f, xi1*xi2*xi3] = (sum df_i/dx_i) xi1*xi2*xi3");
        bool g3 = true;
        for (int it = 0; it < 10; ++it) {
            Element g = sampler_.even_function(sig, 2, 2);
            if (!bracket_ho(mu, bracket_ho(g, mu)).is_zero()) g3 = false;
        }
        row("pon.g3", g3, "[mu, [g, mu]] = 0");
    }

    void po2h1_rows() {
        int h = 1;
        ClassificationWitness w = classification_witness(WitnessKind::A1_KO, h, 4);
        const Signature& sig = w.pair.sig;
        check_equal("po2h1.bracket-unit", bracket_ko(Element::one(sig), w.mu),
                    Element::xi(sig, h + 1).scaled(Rational(2)));
        bool ok = true;
        for (int i = 1; i <= h + 1; ++i) {
            Element expect =
                Element::xi(sig, i + h + 1) + Element::x(sig, i) * Element::xi(sig, h + 1);
            ok = ok && bracket_ko(Element::x(sig, i), w.mu) == expect;
        }
        row("po2h1.bracket-x", ok, "[x_i, mu]_KO = xi_{i+h+1} - (E-2)(x_i) xi_{h+1}");
        bool g3 = true;
        for (int it = 0; it < 20; ++it) {
            Element f = sampler_.even_function(sig, 2, 3);
            if (!bracket_ko(w.mu, bracket_ko(f, w.mu)).is_zero()) g3 = false;
        }
        row("po2h1.g3", g3, "[mu, [f, mu]]_KO = 0 on 20 random f");
    }

    void pontau_rows() {
        int n = 2;
        Signature sig{n, n, true, 3};
        Element mu = parse_element("xi1*xi2*tau", sig);
        check_equal("pontau.bracket-unit", bracket_ko(Element::one(sig), mu),
                    parse_element("-2*xi1*xi2", sig));
        // [f, mu]_KO vanishes exactly on div_1-free f
        bool ok = true;
        for (int it = 0; it < 10; ++it) {
            Element g = sampler_.even_function(sig, 2, 2);
            Element f = (d_dx(2, g)) * Element::xi(sig, 1) - (d_dx(1, g)) * Element::xi(sig, 2);
            Element ftau = sampler_.even_function(sig, 1, 2);
            f = f - integral_x(1, euler_shifted(ftau, Rational(n))) * Element::xi(sig, 1);
            f = f + ftau * Element::tau(sig);
            if (!bracket_ko(f, mu).is_zero()) ok = false;
        }
        row("pontau.div1", ok, "[f, mu]_KO = 0 whenever div_1(f) = 0");
    }

    void identity_rows() {
        BinaryBracket hob = [](const Element& a, const Element& b) { return bracket_ho(a, b); };
        BinaryBracket kob = [](const Element& a, const Element& b) { return bracket_ko(a, b); };
        Signature ho{3, 3, false, 4};
        Signature ko{2, 2, true, 4};
        bool odd_ho = true, odd_ko = true, jac = true;
        for (int it = 0; it < 20; ++it) {
            Element a = sampler_.homogeneous(ho, it & 1, 2);
            Element b = sampler_.homogeneous(ho, (it >> 1) & 1, 1);
            Element c = sampler_.element(ho, 1, 3);
            odd_ho = odd_ho && check_odd_leibniz(hob, a, b, c).passed;
            Element ka = sampler_.homogeneous(ko, it & 1, 2);
            Element kb = sampler_.homogeneous(ko, (it >> 1) & 1, 1);
            Element kc = sampler_.element(ko, 1, 3);
            odd_ko = odd_ko && check_odd_leibniz(kob, ka, kb, kc).passed;
            jac = jac && check_super_jacobi(hob, a, b, sampler_.homogeneous(ho, it & 1, 1)).passed;
        }
        row("oddleibniz.ho", odd_ho, "D = 0");
        row("oddleibniz.ko", odd_ko, "D = -2 d/dtau");
        row("superjacobi.ho", jac, "shifted-parity jacobi");

        NaryBracket nb = [](const std::vector<Element>& a) { return bracket_nambu(a); };
        Signature nsig{3, 0, false, 6};
        bool fil = true;
        for (int it = 0; it < 10; ++it) {
            std::vector<Element> args;
            for (int i = 0; i < 5; ++i) args.push_back(sampler_.even_function(nsig, 2, 3));
            fil = fil && check_filippov(nb, 3, args).passed;
        }
        row("filippov.nambu", fil, "n = 3 on random quintuples");
    }

    void gauge_rows() {
        Signature ko{2, 2, true, 5};
        Element phi = parse_element("1 + x1", ko);
        GaugeContext ctx = GaugeContext::make(phi, BracketTag::KO);
        bool ok = true;
        for (int it = 0; it < 10; ++it) {
            Element a = sampler_.element(ko, 1, 2);
            Element dphi = bracket_ko(Element::one(ko), phi);
            ok = ok && gauge_derivation(ctx, a) == bracket_ko(phi, a) - dphi * a;
        }
        row("gauge.derivation", ok, "D_phi(a) = [phi, a] - D(phi) a");

        Signature nsig{3, 0, false, 8};
        Element nphi = parse_element("1 + x1", nsig);
        NaryBracket tw = [&nphi](const std::vector<Element>& a) { return gauge_nambu(nphi, a); };
        bool lei = true;
        for (int it = 0; it < 6; ++it) {
            std::vector<Element> lead{sampler_.even_function(nsig, 1, 2),
                                      sampler_.even_function(nsig, 1, 2)};
            Element b = sampler_.even_function(nsig, 1, 2);
            Element c = sampler_.even_function(nsig, 1, 2);
            IdentityReport r = check_generalized_leibniz(tw, lead, b, c);
            if (!r.passed) lei = lei && r.witness->residual.with_truncation(6).is_zero();
        }
        row("gauge.nambu-leibniz", lei, "twisted bracket keeps the generalized Leibniz rule");
    }

    void changevars_rows() {
        Signature sig{3, 3, false, 5};
        Element phi = parse_element("1 + x1", sig);
        PrimedVariables pv = change_of_variables(phi);
        row("changevars.pairing", verify_symplectomorphism(pv).passed,
            "{x'_i, xi'_j} = delta_ij, {x'_i, x'_j} = {xi'_i, xi'_j} = 0");
        Element prod = pv.xis[0] * pv.xis[1] * pv.xis[2];
        check_equal("changevars.product", prod, phi * parse_element("xi1*xi2*xi3", sig));
    }

    void component_rows() {
        GradedPO po22 = GradedPO::ho(2, 4);
        auto c1 = component(po22, -1, 1);
        std::string got;
        for (const auto& e : c1) got += (got.empty() ? "" : ", ") + e.render();
        row("component.po22.j-1", got == "1, x1, x2", "{" + got + "}");
        auto c2 = component(po22, 1, 0);
        row("component.po22.j1", c2.size() == 1 && c2[0].render() == "xi1*xi2",
            "{" + (c2.empty() ? std::string() : c2[0].render()) + "}");
        GradedPO po12 = GradedPO::ko(1, 4);
        auto c3 = component(po12, 0, 0);
        std::string got3;
        for (const auto& e : c3) got3 += (got3.empty() ? "" : ", ") + e.render();
        row("component.po12.j0", got3 == "xi1, tau", "{" + got3 + "}");
    }

    void goodpair_rows() {
        for (auto [kind, size, label] :
             std::vector<std::tuple<WitnessKind, int, std::string>>{
                 {WitnessKind::A1_HO, 1, "a1-ho"},
                 {WitnessKind::A2_HO, 3, "a2-ho"},
                 {WitnessKind::A1_KO, 1, "a1-ko"},
                 {WitnessKind::A2_KO, 2, "a2-ko"}}) {
            ClassificationWitness w = classification_witness(kind, size);
            GoodPairReport r = good_pair_report(w.pair, w.mu, w.arity, 2);
            row("goodpair." + label, r.verdict, "G1/G2/G3 verdict at degree cap 2");
        }
    }

    void universal_rows() {
        SpacePtr sp = SuperSpace::from_signature(Signature{2, 0, false, 2});
        NaryBracket nb = [](const std::vector<Element>& a) { return bracket_nambu(a); };
        MultiMap mu = mu_from_nambu(sp, nb, 2);
        row("universal.mu-membership", gw_membership(mu).passed,
            "mu of the Nambu 2-bracket satisfies the multilinear Leibniz rule");
    }

    void reconstruction_rows() {
        ClassificationWitness a2 = classification_witness(WitnessKind::A2_HO, 3, 4);
        PairBracket pb = nambu_from_pair(a2.pair, a2.mu, 3);
        Signature even{3, 0, false, 4};
        bool ok = true;
        auto grid = monomial_grid(even, 1, 0);
        for (const auto& ma : grid)
            for (const auto& mb : grid)
                for (const auto& mc : grid) {
                    std::vector<Element> args{Element::monomial(even, ma, Rational(1)),
                                              Element::monomial(even, mb, Rational(1)),
                                              Element::monomial(even, mc, Rational(1))};
                    std::vector<Element> largs;
                    for (const auto& a : args) {
                        Element l(a2.pair.sig);
                        for (const auto& [m, c] : a.terms()) l.add_term(m, c);
                        largs.push_back(l);
                    }
                    Element expect(a2.pair.sig);
                    Element nv = bracket_nambu(args);
                    for (const auto& [m, c] : nv.terms()) expect.add_term(m, c);
                    ok = ok && pb(largs) == expect;
                }
        row("reconstruction.nambu", ok, "(PO(3,3), xi1*xi2*xi3) induces the Nambu bracket");

        ClassificationWitness k2 = classification_witness(WitnessKind::A2_KO, 2, 4);
        PairBracket kb = nambu_from_pair(k2.pair, k2.mu, 3);
        Signature keven{2, 0, false, 4};
        bool kok = true;
        auto kgrid = monomial_grid(keven, 1, 0);
        for (const auto& ma : kgrid)
            for (const auto& mb : kgrid)
                for (const auto& mc : kgrid) {
                    std::vector<Element> args{Element::monomial(keven, ma, Rational(1)),
                                              Element::monomial(keven, mb, Rational(1)),
                                              Element::monomial(keven, mc, Rational(1))};
                    std::vector<Element> largs;
                    for (const auto& a : args) {
                        Element l(k2.pair.sig);
                        for (const auto& [m, c] : a.terms()) l.add_term(m, c);
                        largs.push_back(l);
                    }
                    Element expect(k2.pair.sig);
                    Element dv = bracket_dzhumadildaev(args);
                    for (const auto& [m, c] : dv.terms()) expect.add_term(m, c);
                    kok = kok && kb(largs) == expect;
                }
        row("reconstruction.dzhuma", kok,
            "(PO(2,3), xi1*xi2*tau) induces the Dzhumadildaev bracket");
    }

    void counterexample_rows() {
        CounterexampleResult s1 = counterexample_family(CounterexampleFamily::Step1, 6, 4);
        row("counterexample.step1", s1.final_value.render() == "2*xi2*xi3*xi4*xi6",
            "final commutator = " + s1.final_value.render());
        CounterexampleResult e1 = counterexample_family(CounterexampleFamily::KStep1Eq1, 5, 2, 0);
        row("counterexample.kstep1-eq1", !e1.final_value.is_zero(),
            "final commutator = " + e1.final_value.render());
        CounterexampleResult e2 = counterexample_family(CounterexampleFamily::KStep1Eq2, 5, 3, 1);
        row("counterexample.kstep1-eq2", !e2.final_value.is_zero(),
            "final commutator = " + e2.final_value.render());
    }

    Sampler sampler_;
    std::vector<DemoRow> rows_;
};

int run_demo(const GlobalOptions& g) {
    Demo demo(g.seed);
    std::vector<DemoRow> rows = demo.run();
    bool all = true;
    if (g.format == "json") {
        json out;
        out["schema"] = 1;
        out["rows"] = json::array();
        for (const auto& r : rows) {
            out["rows"].push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
            all = all && r.passed;
        }
        out["passed"] = all;
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& r : rows) {
            all = all && r.passed;
            std::ostringstream line;
            line << (r.passed ? "PASS  " : "FAIL  ") << r.name;
            std::string head = line.str();
            if (head.size() < 34) head.resize(34, ' ');
            std::cout << head << " " << r.detail << "\n";
        }
        std::cout << (all ? "all rows passed" : "some rows FAILED") << "\n";
    }
    return all ? 0 : 1;
}

// ---------------------------------------------------------------------------

int run_eval(const GlobalOptions& g, const std::string& expr) {
    Element e = parse_element(expr, g.signature());
    emit_result(g, "result", e.render());
    return 0;
}

int run_bracket(const GlobalOptions& g, const std::string& kind_name, const std::string& phi_text,
                const std::vector<std::string>& exprs) {
    Signature sig = signature_for(g, kind_name);
    BracketKind kind = make_kind(kind_name, sig, static_cast<int>(exprs.size()));
    std::vector<Element> args;
    for (const auto& t : exprs) args.push_back(parse_element(t, sig));
    Element result(sig);
    if (phi_text.empty()) {
        result = kind.apply(args);
    } else {
        Element phi = parse_element(phi_text, sig);
        switch (kind.tag) {
            case BracketTag::HO:
            case BracketTag::KO: {
                if (args.size() != 2) throw std::invalid_argument("bracket: wrong arity");
                GaugeContext ctx = GaugeContext::make(phi, kind.tag);
                result = gauge_bracket(ctx, args[0], args[1]);
                break;
            }
            case BracketTag::Nambu:
                result = gauge_nambu(phi, args);
                break;
            case BracketTag::Dzhumadildaev:
                result = gauge_dzhumadildaev(phi, args);
                break;
            default:
                throw std::invalid_argument("--phi applies to ho, ko, nambu and dzhuma only");
        }
    }
    emit_result(g, "result", result.render());
    return 0;
}

int run_check(const GlobalOptions& g, const std::string& identity, const std::string& kind_name,
              const std::string& phi_text, int count) {
    Signature sig = signature_for(g, kind_name);
    BracketKind kind = make_kind(kind_name, sig, 0);
    Element phi(sig);
    bool twisted = !phi_text.empty();
    if (twisted) phi = parse_element(phi_text, sig);

    NaryBracket nary = [kind, twisted, phi](const std::vector<Element>& a) {
        if (!twisted) return kind.apply(a);
        if (kind.tag == BracketTag::Nambu) return gauge_nambu(phi, a);
        if (kind.tag == BracketTag::Dzhumadildaev) return gauge_dzhumadildaev(phi, a);
        GaugeContext ctx = GaugeContext::make(phi, kind.tag);
        if (a.size() != 2) throw std::invalid_argument("check: wrong arity");
        return gauge_bracket(ctx, a[0], a[1]);
    };
    BinaryBracket binary = [nary](const Element& a, const Element& b) {
        return nary({a, b});
    };
    bool even_only = kind.tag == BracketTag::Nambu || kind.tag == BracketTag::Dzhumadildaev ||
                     kind.tag == BracketTag::Poisson || kind.tag == BracketTag::Lagrange;
    int arity = (kind.tag == BracketTag::Nambu || kind.tag == BracketTag::Dzhumadildaev)
                    ? kind.arity
                    : 2;

    Sampler s(g.seed);
    auto draw = [&](int max_deg) {
        return even_only ? s.even_function(sig, max_deg, 3) : s.element(sig, max_deg, 2, 3);
    };

    std::vector<IdentityReport> failures;
    for (int it = 0; it < count; ++it) {
        IdentityReport r = IdentityReport::pass("");
        if (identity == "filippov") {
            std::vector<Element> args;
            for (int i = 0; i < 2 * arity - 1; ++i) args.push_back(draw(2));
            r = check_filippov(nary, arity, args);
        } else if (identity == "skew") {
            std::vector<Element> args;
            for (int i = 0; i < arity; ++i) args.push_back(draw(2));
            r = check_skew(nary, args, 0, arity - 1);
        } else if (identity == "leibniz") {
            std::vector<Element> lead;
            for (int i = 0; i + 1 < arity; ++i) lead.push_back(draw(2));
            r = check_generalized_leibniz(nary, lead, draw(1), draw(1));
        } else if (identity == "odd-leibniz") {
            r = check_odd_leibniz(binary, s.homogeneous(sig, it & 1, 2),
                                  s.homogeneous(sig, (it >> 1) & 1, 1), s.element(sig, 1, 2));
        } else if (identity == "jacobi") {
            r = check_super_jacobi(binary, s.homogeneous(sig, it & 1, 1),
                                   s.homogeneous(sig, (it >> 1) & 1, 1),
                                   s.homogeneous(sig, it & 1, 1));
        } else {
            throw std::invalid_argument("unknown identity '" + identity + "'");
        }
        if (!r.passed) failures.push_back(std::move(r));
    }
    if (g.format == "json") {
        json out{{"schema", 1},
                 {"identity", identity},
                 {"samples", count},
                 {"failures", json::array()}};
        for (const auto& f : failures) out["failures"].push_back(json::parse(f.to_json()));
        out["passed"] = failures.empty();
        std::cout << out.dump() << "\n";
    } else {
        std::cout << identity << ": " << (count - static_cast<int>(failures.size())) << "/"
                  << count << " samples passed\n";
        for (const auto& f : failures) std::cout << "  failure: " << f.to_json() << "\n";
    }
    return failures.empty() ? 0 : 1;
}

int run_goodpair(const GlobalOptions& g, const std::string& preset, int size, int cap,
                 const std::string& mu_text, int arity) {
    ClassificationWitness w;
    if (!preset.empty()) {
        WitnessKind kind;
        if (preset == "a1-ho")
            kind = WitnessKind::A1_HO;
        else if (preset == "a2-ho")
            kind = WitnessKind::A2_HO;
        else if (preset == "a1-ko")
            kind = WitnessKind::A1_KO;
        else if (preset == "a2-ko")
            kind = WitnessKind::A2_KO;
        else
            throw std::invalid_argument("unknown preset '" + preset + "'");
        w = classification_witness(kind, size, std::max(g.trunc, cap + 2));
    } else {
        if (mu_text.empty()) throw std::invalid_argument("goodpair needs --preset or --mu");
        Signature sig = g.signature();
        GradedPO pair{sig, sig.has_tau ? BracketTag::KO : BracketTag::HO};
        Element mu = parse_element(mu_text, sig);
        auto zd = mu.z_degree();
        if (!zd) throw std::invalid_argument("goodpair: mu must be xi-homogeneous");
        w = ClassificationWitness{pair, mu, arity > 0 ? arity : *zd};
    }
    GoodPairReport report = good_pair_report(w.pair, w.mu, w.arity, cap);
    if (g.format == "json") {
        json j = json::parse(report.to_json());
        j["schema"] = 1;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "g1: " << (report.g1.passed ? "pass" : "FAIL") << "\n";
        std::cout << "g2: " << (report.g2.generated ? "generated" : "NOT generated")
                  << " (degree cap " << report.g2.degree_cap << ")\n";
        for (const auto& m : report.g2.missing) std::cout << "  missing: " << m << "\n";
        std::cout << "g3: " << (report.g3.passed ? "pass" : "FAIL") << "\n";
        if (!report.g3.passed && report.g3.witness) {
            std::cout << "  witness residual: " << report.g3.witness->residual.render() << "\n";
        }
        std::cout << "verdict: " << (report.verdict ? "good pair" : "not a good pair") << "\n";
    }
    return report.verdict ? 0 : 1;
}

int run_counterexample(const GlobalOptions& g, const std::string& family_name, int n, int k,
                       int h) {
    CounterexampleFamily family;
    if (family_name == "step1")
        family = CounterexampleFamily::Step1;
    else if (family_name == "kstep1-1")
        family = CounterexampleFamily::KStep1Eq1;
    else if (family_name == "kstep1-2")
        family = CounterexampleFamily::KStep1Eq2;
    else
        throw std::invalid_argument("unknown family '" + family_name + "'");
    CounterexampleResult r = counterexample_family(family, n, k, h);
    if (g.format == "json") {
        json j{{"schema", 1}, {"mu", r.mu.render()}, {"chain", json::array()},
               {"final", r.final_value.render()}};
        for (const auto& e : r.chain) j["chain"].push_back(e.render());
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "mu = " << r.mu.render() << "\n";
        for (std::size_t i = 0; i < r.chain.size(); ++i)
            std::cout << "chain[" << i << "] = " << r.chain[i].render() << "\n";
        std::cout << "final = " << r.final_value.render() << "\n";
    }
    return 0;
}

int run_changevars(const GlobalOptions& g, const std::string& phi_text) {
    Signature sig = g.signature();
    if (sig.odd_count != sig.even_count || sig.has_tau)
        throw std::invalid_argument("changevars needs an O(n,n) signature (--m equal to --n, no tau)");
    Element phi = parse_element(phi_text, sig);
    PrimedVariables pv = change_of_variables(phi);
    IdentityReport check = verify_symplectomorphism(pv);
    if (g.format == "json") {
        json j{{"schema", 1}, {"x", json::array()}, {"xi", json::array()}};
        for (const auto& e : pv.xs) j["x"].push_back(e.render());
        for (const auto& e : pv.xis) j["xi"].push_back(e.render());
        j["symplectomorphism"] = json::parse(check.to_json());
        std::cout << j.dump(2) << "\n";
    } else {
        for (std::size_t i = 0; i < pv.xs.size(); ++i)
            std::cout << "x'" << (i + 1) << " = " << pv.xs[i].render() << "\n";
        for (std::size_t i = 0; i < pv.xis.size(); ++i)
            std::cout << "xi'" << (i + 1) << " = " << pv.xis[i].render() << "\n";
        std::cout << "pairing check: " << (check.passed ? "pass" : "FAIL") << "\n";
    }
    return check.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"symbolic engine for Nambu brackets and odd Poisson superalgebras"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    GlobalOptions g;
    app.add_option("--m", g.m, "even variable count");
    app.add_option("--n", g.n, "odd variable count (defaults to m)");
    app.add_flag("--tau", g.tau, "append the distinguished odd variable tau");
    app.add_option("--trunc", g.trunc, "truncation order T");
    app.add_option("--format", g.format, "text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", g.seed, "seed for sampled checks");

    auto* eval_cmd = app.add_subcommand("eval", "parse and print the canonical form");
    std::string eval_expr;
    eval_cmd->add_option("expr", eval_expr, "expression")->required();

    auto* bracket_cmd = app.add_subcommand("bracket", "apply a bracket to expressions");
    std::string bracket_kind_name, bracket_phi;
    std::vector<std::string> bracket_args;
    bracket_cmd->add_option("--kind", bracket_kind_name, "ho|ko|poisson|lagrange|nambu|dzhuma")
        ->required();
    bracket_cmd->add_option("--phi", bracket_phi, "gauge twist by an invertible even element");
    bracket_cmd->add_option("exprs", bracket_args, "arguments")->required();

    auto* check_cmd = app.add_subcommand("check", "run an identity suite on random samples");
    std::string check_identity, check_kind = "ho", check_phi;
    int check_count = 50;
    check_cmd->add_option("--identity", check_identity,
                          "filippov|skew|leibniz|odd-leibniz|jacobi")
        ->required();
    check_cmd->add_option("--kind", check_kind, "bracket kind");
    check_cmd->add_option("--phi", check_phi, "gauge twist");
    check_cmd->add_option("--count", check_count, "number of samples");

    auto* gp_cmd = app.add_subcommand("goodpair", "G1/G2/G3 report for a pair");
    std::string gp_preset, gp_mu;
    int gp_size = 3, gp_cap = 2, gp_arity = 0;
    gp_cmd->add_option("--preset", gp_preset, "a1-ho|a2-ho|a1-ko|a2-ko");
    gp_cmd->add_option("--size", gp_size, "h for a1 presets, n for a2 presets");
    gp_cmd->add_option("--cap", gp_cap, "degree cap d");
    gp_cmd->add_option("--mu", gp_mu, "custom mu (uses the global signature)");
    gp_cmd->add_option("--arity", gp_arity, "pair arity for a custom mu");

    auto* ce_cmd = app.add_subcommand("counterexample", "G3 counterexample families");
    std::string ce_family;
    int ce_n = 6, ce_k = 4, ce_h = -1;
    ce_cmd->add_option("--family", ce_family, "step1|kstep1-1|kstep1-2")->required();
    ce_cmd->add_option("--n", ce_n, "ambient size n")->required();
    ce_cmd->add_option("--k", ce_k, "shape parameter k")->required();
    ce_cmd->add_option("--shape-h", ce_h, "shape parameter h (defaults to the maximum)");

    auto* cv_cmd = app.add_subcommand("changevars", "symplectomorphic change of variables");
    std::string cv_phi;
    cv_cmd->add_option("--phi", cv_phi, "invertible even element")->required();

    auto* demo_cmd = app.add_subcommand("demo-paper", "reproduce the worked computations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (app.count_all() && g.format == "json") {
            json j{{"schema", 1}, {"error", e.what()}};
            std::cout << j.dump() << "\n";
            return e.get_exit_code() == 0 ? 0 : 2;
        }
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (eval_cmd->parsed()) return run_eval(g, eval_expr);
        if (bracket_cmd->parsed()) return run_bracket(g, bracket_kind_name, bracket_phi, bracket_args);
        if (check_cmd->parsed())
            return run_check(g, check_identity, check_kind, check_phi, check_count);
        if (gp_cmd->parsed()) return run_goodpair(g, gp_preset, gp_size, gp_cap, gp_mu, gp_arity);
        if (ce_cmd->parsed()) return run_counterexample(g, ce_family, ce_n, ce_k, ce_h);
        if (cv_cmd->parsed()) return run_changevars(g, cv_phi);
        if (demo_cmd->parsed()) return run_demo(g);
    } catch (const ParseError& e) {
        return emit_error(g, e.what());
    } catch (const std::exception& e) {
        return emit_error(g, e.what());
    }
    return 2;
}

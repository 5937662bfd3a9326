#include "nambu/good_pairs.hpp"

#include "nambu/linalg.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <map>
#include <stdexcept>

namespace nambu {

GradedPO GradedPO::ho(int n, int truncation) {
    return GradedPO{Signature{n, n, false, truncation}, BracketTag::HO};
}

GradedPO GradedPO::ko(int n, int truncation) {
    return GradedPO{Signature{n, n, true, truncation}, BracketTag::KO};
}

Element GradedPO::bracket(const Element& a, const Element& b) const {
    return kind == BracketTag::HO ? bracket_ho(a, b) : bracket_ko(a, b);
}

BinaryBracket GradedPO::bracket_fn() const {
    GradedPO self = *this;
    return [self](const Element& a, const Element& b) { return self.bracket(a, b); };
}

std::vector<Element> component(const GradedPO& pair, int j, int d) {
    if (j < -1) throw std::invalid_argument("component: j must be >= -1");
    std::vector<Element> out;
    Signature sig = pair.sig;
    if (sig.truncation < d) sig.truncation = d;
    for (const auto& m : monomial_grid(sig, d, sig.odd_total()))
        if (m.xideg() == j + 1) out.push_back(Element::monomial(sig, m, Rational(1)));
    return out;
}

IdentityReport check_g1(const GradedPO& pair, int d, int max_generator_degree) {
    if (max_generator_degree < 0) max_generator_degree = d + 1;
    Signature work = pair.sig;
    work.truncation = d + 2;
    GradedPO w{work, pair.kind};
    std::vector<Element> generators;  // P_{-1} monomials up to the generator cap
    for (const auto& m : monomial_grid(work, max_generator_degree, 0))
        generators.push_back(Element::monomial(work, m, Rational(1)));
    for (int j = 0; j < work.odd_total(); ++j) {
        for (const auto& m : monomial_grid(work, d, work.odd_total())) {
            if (m.xideg() != j + 1) continue;
            Element a = Element::monomial(work, m, Rational(1));
            bool all_zero = true;
            for (const auto& f : generators) {
                if (!w.bracket(a, f).is_zero()) {
                    all_zero = false;
                    break;
                }
            }
            if (all_zero) return IdentityReport::fail("g1-transitivity", {{a}, a});
        }
    }
    return IdentityReport::pass("g1-transitivity");
}

IdentityReport check_g3(const GradedPO& pair, const Element& mu, int arity, int d) {
    auto zd = mu.z_degree();
    if (!zd || *zd != arity)
        throw std::invalid_argument("check_g3: mu must be xi-homogeneous of degree n");
    if (mu.parity() == Parity::Mixed || (mu.parity() == Parity::Odd) != (arity % 2 == 1))
        throw std::invalid_argument("check_g3: mu must have parity n mod 2");
    Signature work = pair.sig;
    work.truncation = std::max(pair.sig.truncation, arity * std::max(d, 1) + 2);
    GradedPO w{work, pair.kind};
    Element mu_w = mu.with_truncation(work.truncation);

    std::vector<Element> grid;
    for (const auto& m : monomial_grid(work, d, 0))
        grid.push_back(Element::monomial(work, m, Rational(1)));

    std::vector<std::size_t> idx(static_cast<std::size_t>(arity - 1), 0);
    while (true) {
        Element inner = w.bracket(mu_w, grid[idx[0]]);
        for (int t = 1; t < arity - 1; ++t) inner = w.bracket(inner, grid[idx[t]]);
        Element final_value = w.bracket(mu_w, inner);
        if (!final_value.is_zero()) {
            std::vector<Element> inputs;
            for (std::size_t i : idx) inputs.push_back(grid[i]);
            return IdentityReport::fail("g3-nested-commutator",
                                        {std::move(inputs), std::move(final_value)});
        }
        std::size_t i = 0;
        for (; i < idx.size(); ++i) {
            if (++idx[i] < grid.size()) break;
            idx[i] = 0;
        }
        if (i == idx.size()) break;
    }
    return IdentityReport::pass("g3-nested-commutator");
}

namespace {

// monomial position map for the closure window
struct Window {
    Signature sig;
    std::vector<Monomial> monos;
    std::map<Monomial, std::size_t, MonomialLess> index;

    explicit Window(const Signature& s) : sig(s) {
        monos = monomial_grid(s, s.truncation, s.odd_total());
        for (std::size_t i = 0; i < monos.size(); ++i) index.emplace(monos[i], i);
    }
    QVector vec(const Element& e) const {
        QVector v(monos.size(), Rational(0));
        for (const auto& [m, c] : e.terms()) v[index.at(m)] = c;
        return v;
    }
};

}  // namespace

G2Report check_g2(const GradedPO& pair, const Element& mu, int d) {
    Signature work = pair.sig;
    work.truncation = d + 2;
    GradedPO w{work, pair.kind};
    Window win(work);

    std::vector<Element> reps;
    SpanTracker span(win.monos.size());
    std::deque<std::pair<std::size_t, std::size_t>> worklist;
    auto insert = [&](const Element& e) {
        if (e.is_zero()) return;
        if (!span.insert(win.vec(e))) return;
        std::size_t id = reps.size();
        reps.push_back(e);
        for (std::size_t j = 0; j <= id; ++j) worklist.emplace_back(id, j);
    };

    // mu first so early pairs bracket the generators against it
    insert(mu.with_truncation(work.truncation));
    for (const auto& m : monomial_grid(work, d + 2, 0))
        insert(Element::monomial(work, m, Rational(1)));

    // targets: component bases with x-degree <= d
    std::vector<Monomial> targets;
    for (const auto& m : monomial_grid(work, d, work.odd_total())) targets.push_back(m);
    auto all_reached = [&]() {
        for (const auto& m : targets) {
            QVector v(win.monos.size(), Rational(0));
            v[win.index.at(m)] = Rational(1);
            if (!span.contains(v)) return false;
        }
        return true;
    };

    bool reached = all_reached();
    std::size_t processed = 0;
    const std::size_t pair_cap = 500000;
    while (!reached && !worklist.empty()) {
        auto [i, j] = worklist.front();
        worklist.pop_front();
        if (++processed > pair_cap)
            throw std::runtime_error("check_g2: closure pair budget exceeded");
        insert(w.bracket(reps[i], reps[j]));
        insert(reps[i] * reps[j]);
        if (processed % 64 == 0 || worklist.empty()) reached = all_reached();
    }
    if (!reached) reached = all_reached();

    G2Report report;
    report.degree_cap = d;
    if (reached) {
        report.generated = true;
        return report;
    }
    for (const auto& m : targets) {
        QVector v(win.monos.size(), Rational(0));
        v[win.index.at(m)] = Rational(1);
        if (!span.contains(v))
            report.missing.push_back(Element::monomial(work, m, Rational(1)).render());
    }
    report.generated = report.missing.empty();
    return report;
}

std::string GoodPairReport::to_json() const {
    nlohmann::json j;
    j["g1"] = nlohmann::json::parse(g1.to_json());
    j["g2"] = {{"generated", g2.generated}, {"missing", g2.missing}, {"degree_cap", g2.degree_cap}};
    j["g3"] = nlohmann::json::parse(g3.to_json());
    j["verdict"] = verdict;
    return j.dump();
}

GoodPairReport good_pair_report(const GradedPO& pair, const Element& mu, int arity, int d) {
    GoodPairReport r{check_g1(pair, d), check_g2(pair, mu, d), check_g3(pair, mu, arity, d),
                     false};
    r.verdict = r.g1.passed && r.g2.generated && r.g3.passed;
    return r;
}

Rational reconstruction_scale(BracketTag kind, int arity) {
    auto sign = [](int n) { return (n * (n + 1) / 2) % 2 ? Rational(-1) : Rational(1); };
    if (kind == BracketTag::HO) return sign(arity);
    if (kind == BracketTag::KO) return sign(arity - 1) / Rational(2);
    throw std::invalid_argument("reconstruction_scale: pair bracket must be HO or KO");
}

Element PairBracket::operator()(const std::vector<Element>& args) const {
    if (static_cast<int>(args.size()) != arity)
        throw std::invalid_argument("PairBracket: wrong arity");
    const Signature& asig = args[0].signature();
    if (!asig.same_variables(pair.sig))
        throw std::invalid_argument("PairBracket: signature mismatch");
    GradedPO w{asig, pair.kind};
    Element acc = mu.with_truncation(asig.truncation);
    for (const auto& a : args) {
        if (a.signature() != asig) throw std::invalid_argument("PairBracket: signature mismatch");
        if (!a.is_even_subalgebra())
            throw std::invalid_argument("PairBracket: arguments must lie in Pi P_{-1}");
        acc = w.bracket(acc, a);
    }
    return acc.scaled(scale);
}

PairBracket nambu_from_pair(const GradedPO& pair, const Element& mu, int arity) {
    auto zd = mu.z_degree();
    if (!zd || *zd != arity)
        throw std::invalid_argument("nambu_from_pair: mu must be xi-homogeneous of degree n");
    return PairBracket{pair, mu, arity, reconstruction_scale(pair.kind, arity)};
}

ClassificationWitness classification_witness(WitnessKind kind, int size, int truncation) {
    if (size < 1) throw std::invalid_argument("classification_witness: size must be >= 1");
    switch (kind) {
        case WitnessKind::A1_HO: {
            int h = size;
            GradedPO p = GradedPO::ho(2 * h, truncation);
            Element mu(p.sig);
            for (int i = 1; i <= h; ++i) {
                Monomial m;
                m.xexp.assign(p.sig.even_count, 0);
                m.mask = (1u << (i - 1)) | (1u << (i + h - 1));
                mu.add_term(m, Rational(1));
            }
            return {p, mu, 2};
        }
        case WitnessKind::A2_HO: {
            int n = size;
            GradedPO p = GradedPO::ho(n, truncation);
            Monomial m;
            m.xexp.assign(n, 0);
            m.mask = (1u << n) - 1;
            return {p, Element::monomial(p.sig, m, Rational(1)), n};
        }
        case WitnessKind::A1_KO: {
            int h = size;
            GradedPO p = GradedPO::ko(2 * h + 1, truncation);
            Element mu(p.sig);
            for (int i = 1; i <= h + 1; ++i) {
                Monomial m;
                m.xexp.assign(p.sig.even_count, 0);
                m.mask = (1u << (i - 1)) | (1u << (i + h));
                mu.add_term(m, Rational(1));
            }
            return {p, mu, 2};
        }
        case WitnessKind::A2_KO: {
            int n = size;
            GradedPO p = GradedPO::ko(n, truncation);
            Monomial m;
            m.xexp.assign(n, 0);
            m.mask = (1u << (n + 1)) - 1;  // xi_1..xi_n tau
            return {p, Element::monomial(p.sig, m, Rational(1)), n + 1};
        }
    }
    throw std::logic_error("classification_witness: unreachable");
}

namespace {

Element xi_product(const Signature& sig, const std::vector<int>& indices) {
    Element e = Element::one(sig);
    for (int i : indices) e = e * Element::xi(sig, i);
    return e;
}

// k-fold left odd derivative of the x-free part, used for the remainder
// side conditions
bool vanishes_under(const Element& r, const std::vector<int>& xi_indices) {
    Element cur(r.signature());
    for (const auto& [m, c] : r.terms())
        if (m.xdeg() == 0) cur.add_term(m, c);
    for (int i : xi_indices) cur = d_dxi(i, cur);
    return cur.is_zero();
}

}  // namespace

CounterexampleResult counterexample_family(CounterexampleFamily family, int n, int k, int h,
                                           const std::optional<Element>& remainder) {
    const bool ho = family == CounterexampleFamily::Step1;
    if (ho) {
        if (!(2 < k && k < n - 1))
            throw std::invalid_argument("counterexample: Step1 needs 2 < k < n-1");
    } else {
        if (!(2 <= k && k < n - 1))
            throw std::invalid_argument("counterexample: KStep1 needs 2 <= k < n-1");
    }

    // trailing block sizes per shape
    int h_max = 0, trail_start = 0;
    switch (family) {
        case CounterexampleFamily::Step1:
            h_max = k - 2;
            trail_start = k + 3;
            break;
        case CounterexampleFamily::KStep1Eq1:
            h_max = k - 1;
            trail_start = k + 3;
            break;
        case CounterexampleFamily::KStep1Eq2:
            h_max = k - 2;  // nonempty trailing block, else the chain degenerates
            trail_start = k + 2;
            break;
    }
    if (h < 0) h = h_max;
    int h_min = family == CounterexampleFamily::KStep1Eq2 ? 1 : 0;
    if (h < h_min || h > h_max)
        throw std::invalid_argument("counterexample: h outside the family range");
    int trail_count =
        (family == CounterexampleFamily::Step1 ? k - 2 : k - 1) - h;
    std::vector<int> trailing;
    for (int t = 0; t < trail_count; ++t) trailing.push_back(trail_start + t);
    if (!trailing.empty() && trailing.back() > n)
        throw std::invalid_argument("counterexample: trailing indices exceed n");

    int working_trunc = 6 + (remainder ? 2 * remainder->x_degree() : 0);
    GradedPO pair = ho ? GradedPO::ho(n, working_trunc) : GradedPO::ko(n, working_trunc);
    const Signature& sig = pair.sig;

    // first monomial: xi_1..xi_k (tau appended for the KO shapes)
    std::vector<int> first;
    for (int i = 1; i <= k; ++i) first.push_back(i);
    if (!ho) first.push_back(sig.tau_index());
    // second monomial in the written order
    std::vector<int> second;
    for (int i = 1; i <= h; ++i) second.push_back(i);
    second.push_back(k + 1);
    if (family == CounterexampleFamily::KStep1Eq2)
        second.push_back(sig.tau_index());
    else
        second.push_back(k + 2);
    for (int i : trailing) second.push_back(i);

    Element mu = xi_product(sig, first) + xi_product(sig, second);
    if (remainder) {
        Element r = remainder->with_truncation(working_trunc);
        if (!r.signature().same_variables(sig))
            throw std::invalid_argument("counterexample: remainder signature mismatch");
        auto zd = r.z_degree();
        int want = ho ? k : k + 1;
        if (!r.is_zero() && (!zd || *zd != want))
            throw std::invalid_argument("counterexample: remainder must be xi-homogeneous");
        // vanishing-derivative side conditions on the order-zero part
        std::vector<int> cond1, cond2;
        switch (family) {
            case CounterexampleFamily::Step1:
                for (int i = 1; i <= k - 1; ++i) cond1.push_back(i);
                cond2 = second;
                break;
            case CounterexampleFamily::KStep1Eq1:
                for (int i = 1; i <= k; ++i) cond1.push_back(i);
                cond1.push_back(sig.tau_index());
                cond2 = second;
                break;
            case CounterexampleFamily::KStep1Eq2:
                cond1 = second;
                for (int i = 2; i <= k; ++i) cond2.push_back(i);
                cond2.push_back(sig.tau_index());
                break;
        }
        if (!vanishes_under(r, cond1) || !vanishes_under(r, cond2))
            throw std::invalid_argument(
                "counterexample: remainder violates the vanishing-derivative side conditions");
        mu = mu + r;
    }

    CounterexampleResult result;
    result.mu = mu;
    auto push = [&](Element e) {
        result.chain.push_back(e);
        return result.chain.back();
    };

    Element cur(sig);
    if (h >= 1) {
        // [mu, [x_{i_last},..,[x_h,..,[x_2,[x_1^2,[inner, mu]]]]..]]
        Element inner0 = family == CounterexampleFamily::KStep1Eq2
                             ? Element::one(sig)
                             : Element::x(sig, k + 1);
        cur = push(pair.bracket(inner0, mu));
        Element x1sq = Element::x(sig, 1) * Element::x(sig, 1);
        cur = push(pair.bracket(x1sq, cur));
        for (int i = 2; i <= h; ++i) cur = push(pair.bracket(Element::x(sig, i), cur));
        for (int i : trailing) cur = push(pair.bracket(Element::x(sig, i), cur));
    } else {
        // h = 0 variant: [mu, [x_1 x_{k+1}, [x_{i_1},..,[x_{i_last}, mu]..]]]
        cur = mu;
        for (auto it = trailing.rbegin(); it != trailing.rend(); ++it)
            cur = push(pair.bracket(Element::x(sig, *it), cur));
        Element x1xk1 = Element::x(sig, 1) * Element::x(sig, k + 1);
        cur = push(pair.bracket(x1xk1, cur));
    }
    result.final_value = pair.bracket(mu, cur);
    result.chain.push_back(result.final_value);
    if (result.final_value.is_zero())
        throw std::domain_error(
            "counterexample: chain vanished; the instance is degenerate for this family");
    return result;
}

}  // namespace nambu

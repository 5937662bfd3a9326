#include "nambu/identity.hpp"

#include <json.hpp>

#include <utility>

namespace nambu {

std::string IdentityReport::to_json() const {
    nlohmann::json j;
    j["identity"] = identity;
    j["passed"] = passed;
    if (witness) {
        nlohmann::json w;
        w["inputs"] = nlohmann::json::array();
        for (const auto& e : witness->inputs) w["inputs"].push_back(e.render());
        w["residual"] = witness->residual.render();
        j["witness"] = std::move(w);
    }
    return j.dump();
}

namespace {

using ResidualFn = std::function<Element(const std::vector<Element>&)>;

// On failure, re-run on single-monomial restrictions of the failing inputs
// to emit a minimal witness. The residuals here are multilinear in the
// inputs per homogeneous component, so a failing superposition always has
// a failing single-term restriction; the cap guards degenerate cases.
IdentityReport report(std::string name, const std::vector<Element>& inputs,
                      const ResidualFn& residual_fn) {
    Element res = residual_fn(inputs);
    if (res.is_zero()) return IdentityReport::pass(std::move(name));

    std::size_t combos = 1;
    for (const auto& e : inputs) {
        combos *= std::max<std::size_t>(e.term_count(), 1);
        if (combos > 512) break;
    }
    if (combos > 1 && combos <= 512) {
        std::vector<std::vector<Element>> singles;
        for (const auto& e : inputs) {
            std::vector<Element> s;
            for (const auto& [m, c] : e.terms())
                s.push_back(Element::monomial(e.signature(), m, c));
            if (s.empty()) s.push_back(e);
            singles.push_back(std::move(s));
        }
        std::vector<std::size_t> idx(inputs.size(), 0);
        while (true) {
            std::vector<Element> tuple;
            for (std::size_t i = 0; i < idx.size(); ++i) tuple.push_back(singles[i][idx[i]]);
            Element r = residual_fn(tuple);
            if (!r.is_zero())
                return IdentityReport::fail(std::move(name), {std::move(tuple), std::move(r)});
            std::size_t i = 0;
            for (; i < idx.size(); ++i) {
                if (++idx[i] < singles[i].size()) break;
                idx[i] = 0;
            }
            if (i == idx.size()) break;
        }
    }
    return IdentityReport::fail(std::move(name), {inputs, std::move(res)});
}

}  // namespace

IdentityReport check_filippov(const NaryBracket& bracket, int arity,
                              const std::vector<Element>& args) {
    if (static_cast<int>(args.size()) != 2 * arity - 1)
        throw std::invalid_argument("check_filippov: needs 2n-1 arguments");
    auto residual = [&, arity](const std::vector<Element>& in) {
        std::vector<Element> lead(in.begin(), in.begin() + (arity - 1));
        std::vector<Element> tail(in.begin() + (arity - 1), in.end());
        std::vector<Element> lhs_args = lead;
        lhs_args.push_back(bracket(tail));
        Element res = bracket(lhs_args);
        for (int i = 0; i < arity; ++i) {
            std::vector<Element> inner = lead;
            inner.push_back(tail[i]);
            std::vector<Element> outer = tail;
            outer[i] = bracket(inner);
            res = res - bracket(outer);
        }
        return res;
    };
    return report("filippov", args, residual);
}

IdentityReport check_skew(const NaryBracket& bracket, const std::vector<Element>& args, int i,
                          int j) {
    if (i == j || i < 0 || j < 0 || i >= static_cast<int>(args.size()) ||
        j >= static_cast<int>(args.size()))
        throw std::invalid_argument("check_skew: bad transposition");
    auto residual = [&, i, j](const std::vector<Element>& in) {
        std::vector<Element> swapped = in;
        std::swap(swapped[i], swapped[j]);
        return bracket(in) + bracket(swapped);
    };
    return report("skew", args, residual);
}

IdentityReport check_generalized_leibniz(const NaryBracket& bracket,
                                         const std::vector<Element>& leading, const Element& b,
                                         const Element& c) {
    std::vector<Element> inputs = leading;
    inputs.push_back(b);
    inputs.push_back(c);
    auto residual = [&bracket](const std::vector<Element>& in) {
        std::vector<Element> lead(in.begin(), in.end() - 2);
        const Element& bb = in[in.size() - 2];
        const Element& cc = in[in.size() - 1];
        const Signature& sig = bb.signature();
        auto with_last = [&](const Element& last) {
            std::vector<Element> a = lead;
            a.push_back(last);
            return bracket(a);
        };
        return with_last(bb * cc) - with_last(bb) * cc - bb * with_last(cc) +
               with_last(Element::one(sig)) * bb * cc;
    };
    return report("generalized-leibniz", inputs, residual);
}

namespace {

// Residual of the generalized odd Leibniz rule for homogeneous a, b.
Element odd_leibniz_residual_hom(const BinaryBracket& bracket, const Element& a, int pa,
                                 const Element& b, int pb, const Element& c) {
    const Signature& sig = a.signature();
    Element da = bracket(Element::one(sig), a);
    Element res = bracket(a, b * c) - bracket(a, b) * c;
    Element middle = b * bracket(a, c);
    res = (((pa + 1) * pb) & 1) ? res + middle : res - middle;
    Element dterm = da * b * c;
    return ((pa + 1) & 1) ? res + dterm : res - dterm;
}

}  // namespace

IdentityReport check_odd_leibniz(const BinaryBracket& bracket, const Element& a, const Element& b,
                                 const Element& c) {
    auto residual = [&bracket](const std::vector<Element>& in) {
        auto [ae, ao] = in[0].parity_parts();
        auto [be, bo] = in[1].parity_parts();
        Element res(in[0].signature());
        for (int pa = 0; pa < 2; ++pa) {
            const Element& aa = pa ? ao : ae;
            if (aa.is_zero()) continue;
            for (int pb = 0; pb < 2; ++pb) {
                const Element& bb = pb ? bo : be;
                if (bb.is_zero()) continue;
                res = res + odd_leibniz_residual_hom(bracket, aa, pa, bb, pb, in[2]);
            }
        }
        return res;
    };
    return report("odd-leibniz", {a, b, c}, residual);
}

IdentityReport check_super_jacobi(const BinaryBracket& bracket, const Element& a, const Element& b,
                                  const Element& c) {
    auto residual = [&bracket](const std::vector<Element>& in) {
        auto [ae, ao] = in[0].parity_parts();
        auto [be, bo] = in[1].parity_parts();
        Element res(in[0].signature());
        for (int pa = 0; pa < 2; ++pa) {
            const Element& aa = pa ? ao : ae;
            if (aa.is_zero()) continue;
            for (int pb = 0; pb < 2; ++pb) {
                const Element& bb = pb ? bo : be;
                if (bb.is_zero()) continue;
                Element part = bracket(aa, bracket(bb, in[2])) - bracket(bracket(aa, bb), in[2]);
                Element third = bracket(bb, bracket(aa, in[2]));
                // shifted parities pbar = p + 1
                int sign = ((pa + 1) * (pb + 1)) & 1;
                res = res + (sign ? part + third : part - third);
            }
        }
        return res;
    };
    return report("super-jacobi", {a, b, c}, residual);
}

IdentityReport check_odd_skew(const BinaryBracket& bracket, const Element& a, const Element& b) {
    auto residual = [&bracket](const std::vector<Element>& in) {
        auto [ae, ao] = in[0].parity_parts();
        auto [be, bo] = in[1].parity_parts();
        Element res(in[0].signature());
        for (int pa = 0; pa < 2; ++pa) {
            const Element& aa = pa ? ao : ae;
            if (aa.is_zero()) continue;
            for (int pb = 0; pb < 2; ++pb) {
                const Element& bb = pb ? bo : be;
                if (bb.is_zero()) continue;
                Element flip = bracket(bb, aa);
                int sign = ((pa + 1) * (pb + 1)) & 1;
                res = res + (sign ? bracket(aa, bb) - flip : bracket(aa, bb) + flip);
            }
        }
        return res;
    };
    return report("odd-skew", {a, b}, residual);
}

int Sampler::uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

Rational Sampler::coefficient() {
    static const int pool[] = {-2, -1, 1, 2};
    return Rational(pool[uniform(0, 3)]);
}

Monomial Sampler::monomial(const Signature& sig, int max_xdeg, int max_xideg) {
    Monomial m;
    m.xexp.assign(sig.even_count, 0);
    int deg = uniform(0, std::min(max_xdeg, sig.truncation));
    for (int d = 0; d < deg && sig.even_count > 0; ++d) m.xexp[uniform(0, sig.even_count - 1)]++;
    int total = sig.odd_total();
    int want = total == 0 ? 0 : uniform(0, std::min(max_xideg, total));
    while (__builtin_popcount(m.mask) < want) m.mask |= 1u << uniform(0, total - 1);
    return m;
}

Element Sampler::element(const Signature& sig, int max_xdeg, int max_xideg, int terms) {
    Element e(sig);
    for (int t = 0; t < terms; ++t) e.add_term(monomial(sig, max_xdeg, max_xideg), coefficient());
    return e;
}

Element Sampler::homogeneous(const Signature& sig, int parity, int max_xdeg, int terms) {
    Element e(sig);
    int guard = 0;
    while (e.is_zero() || e.term_count() < static_cast<std::size_t>(terms)) {
        Monomial m = monomial(sig, max_xdeg, sig.odd_total());
        if (m.parity() != parity) {
            if (++guard > 200) break;
            continue;
        }
        e.add_term(m, coefficient());
        if (++guard > 200) break;
    }
    return e;
}

Element Sampler::even_function(const Signature& sig, int max_xdeg, int terms) {
    Element e(sig);
    for (int t = 0; t < terms; ++t) {
        Monomial m = monomial(sig, max_xdeg, 0);
        m.mask = 0;
        e.add_term(m, coefficient());
    }
    return e;
}

}  // namespace nambu

#include "nambu/calculus.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace nambu {

Element d_dx(int i, const Element& a) {
    const Signature& sig = a.signature();
    if (i < 1 || i > sig.even_count)
        throw std::invalid_argument("d_dx: index out of range");
    Element r(sig);
    for (const auto& [m, c] : a.terms()) {
        int e = m.xexp[i - 1];
        if (e == 0) continue;
        Monomial d = m;
        d.xexp[i - 1] = e - 1;
        r.add_term(d, c * Rational(e));
    }
    return r;
}

Element d_dxi(int i, const Element& a) {
    const Signature& sig = a.signature();
    if (i < 1 || i > sig.odd_total())
        throw std::invalid_argument("d_dxi: index out of range");
    std::uint32_t bit = 1u << (i - 1);
    Element r(sig);
    for (const auto& [m, c] : a.terms()) {
        if (!(m.mask & bit)) continue;
        Monomial d = m;
        d.mask = m.mask & ~bit;
        int before = __builtin_popcount(m.mask & (bit - 1));
        r.add_term(d, (before & 1) ? -c : c);
    }
    return r;
}

Element d_dtau(const Element& a) {
    const Signature& sig = a.signature();
    if (!sig.has_tau)
        throw std::invalid_argument("d_dtau: signature has no tau");
    return d_dxi(sig.tau_index(), a);
}

Element euler_E(const Element& a) {
    const Signature& sig = a.signature();
    std::uint32_t tau_bit = sig.has_tau ? (1u << (sig.tau_index() - 1)) : 0;
    Element r(sig);
    for (const auto& [m, c] : a.terms()) {
        int deg = m.xdeg() + __builtin_popcount(m.mask & ~tau_bit);
        if (deg == 0) continue;
        r.add_term(m, c * Rational(deg));
    }
    return r;
}

Element euler_shifted(const Element& a, const Rational& c) {
    return euler_E(a) - a.scaled(c);
}

Element integral_x(int i, const Element& a) {
    const Signature& sig = a.signature();
    if (i < 1 || i > sig.even_count)
        throw std::invalid_argument("integral_x: index out of range");
    Element r(sig);
    for (const auto& [m, c] : a.terms()) {
        Monomial d = m;
        d.xexp[i - 1] += 1;
        r.add_term(d, c / Rational(d.xexp[i - 1]));
    }
    return r;
}

namespace {

// HO sum for one parity-homogeneous f; also the HO part of the KO bracket.
Element ho_sum(const Element& f, int pf, const Element& g) {
    const Signature& sig = f.signature();
    Element r(sig);
    int n = std::min(sig.even_count, sig.odd_count);
    for (int i = 1; i <= n; ++i) {
        r = r + d_dx(i, f) * d_dxi(i, g);
        Element second = d_dxi(i, f) * d_dx(i, g);
        r = (pf & 1) ? r - second : r + second;
    }
    return r;
}

Element per_parity(const Element& f, const Element& g,
                   Element (*term)(const Element&, int, const Element&)) {
    auto [fe, fo] = f.parity_parts();
    Element r(f.signature());
    if (!fe.is_zero()) r = r + term(fe, 0, g);
    if (!fo.is_zero()) r = r + term(fo, 1, g);
    return r;
}

Element ko_term(const Element& f, int pf, const Element& g) {
    Element r = ho_sum(f, pf, g);
    r = r + euler_shifted(f, Rational(2)) * d_dtau(g);
    Element second = d_dtau(f) * euler_shifted(g, Rational(2));
    return (pf & 1) ? r - second : r + second;
}

void require_even_args(const std::vector<Element>& args, const char* who) {
    for (const auto& a : args)
        if (!a.is_even_subalgebra())
            throw std::invalid_argument(std::string(who) + ": odd content in argument");
}

int permutation_sign(const std::vector<int>& perm) {
    int inv = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
        for (std::size_t j = i + 1; j < perm.size(); ++j)
            if (perm[i] > perm[j]) ++inv;
    return (inv & 1) ? -1 : 1;
}

Element determinant_permutation_sum(const std::vector<std::vector<Element>>& m) {
    std::size_t n = m.size();
    const Signature& sig = m[0][0].signature();
    std::vector<int> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<int>(i);
    Element det(sig);
    do {
        Element prod = Element::one(sig);
        for (std::size_t i = 0; i < n && !prod.is_zero(); ++i) prod = prod * m[i][perm[i]];
        det = (permutation_sign(perm) < 0) ? det - prod : det + prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

}  // namespace

Element determinant_minor_expansion(const std::vector<std::vector<Element>>& m) {
    std::size_t n = m.size();
    const Signature& sig = m[0][0].signature();
    // minor over a column set, rows n-|cols| .. n-1, keyed by column mask
    std::map<std::uint32_t, Element> memo;
    auto minor = [&](auto&& self, std::uint32_t cols) -> Element {
        if (cols == 0) return Element::one(sig);
        auto it = memo.find(cols);
        if (it != memo.end()) return it->second;
        std::size_t k = __builtin_popcount(cols);
        std::size_t row = n - k;
        Element det(sig);
        int pos = 0;
        for (std::uint32_t cc = cols; cc; cc &= cc - 1, ++pos) {
            int j = __builtin_ctz(cc);
            Element term = m[row][j] * self(self, cols & ~(1u << j));
            det = (pos & 1) ? det - term : det + term;
        }
        memo.emplace(cols, det);
        return det;
    };
    return minor(minor, (1u << n) - 1);
}

Element determinant(const std::vector<std::vector<Element>>& m) {
    if (m.empty()) throw std::invalid_argument("determinant: empty matrix");
    for (const auto& row : m)
        if (row.size() != m.size())
            throw std::invalid_argument("determinant: matrix not square");
    if (m.size() <= 4) return determinant_permutation_sum(m);
    return determinant_minor_expansion(m);
}

Element bracket_ho(const Element& f, const Element& g) {
    const Signature& sig = f.signature();
    if (sig != g.signature())
        throw std::invalid_argument("bracket_ho: signature mismatch");
    if (sig.even_count != sig.odd_count || sig.has_tau)
        throw std::invalid_argument("bracket_ho: needs m == n and no tau");
    return per_parity(f, g, ho_sum);
}

Element bracket_ko(const Element& f, const Element& g) {
    const Signature& sig = f.signature();
    if (sig != g.signature())
        throw std::invalid_argument("bracket_ko: signature mismatch");
    if (!sig.has_tau || sig.even_count != sig.odd_count)
        throw std::invalid_argument("bracket_ko: needs tau and m == n");
    return per_parity(f, g, ko_term);
}

PoissonSplit PoissonSplit::standard(const Signature& sig, bool with_t) {
    int m = sig.even_count;
    int k = with_t ? (m - 1) / 2 : m / 2;
    PoissonSplit s;
    for (int i = 1; i <= k; ++i) s.p.push_back(i);
    for (int i = 1; i <= k; ++i) s.q.push_back(k + i);
    if (with_t) s.t = 2 * k + 1;
    return s;
}

void PoissonSplit::validate(const Signature& sig, bool need_t) const {
    if (p.size() != q.size() || p.empty())
        throw std::invalid_argument("PoissonSplit: p/q sizes differ or empty");
    std::vector<bool> used(sig.even_count + 1, false);
    auto mark = [&](int i) {
        if (i < 1 || i > sig.even_count || used[i])
            throw std::invalid_argument("PoissonSplit: bad or repeated index");
        used[i] = true;
    };
    for (int i : p) mark(i);
    for (int i : q) mark(i);
    if (need_t) {
        if (t == 0) throw std::invalid_argument("PoissonSplit: t required");
        mark(t);
    }
    int expect = static_cast<int>(p.size() + q.size()) + (need_t ? 1 : 0);
    if (expect != sig.even_count)
        throw std::invalid_argument("PoissonSplit: split does not cover the even variables");
}

namespace {

Element poisson_sum(const Element& f, const Element& g, const PoissonSplit& split) {
    Element r(f.signature());
    for (std::size_t i = 0; i < split.p.size(); ++i) {
        r = r + d_dx(split.p[i], f) * d_dx(split.q[i], g);
        r = r - d_dx(split.q[i], f) * d_dx(split.p[i], g);
    }
    return r;
}

}  // namespace

Element bracket_poisson(const Element& f, const Element& g, const PoissonSplit& split) {
    if (f.signature() != g.signature())
        throw std::invalid_argument("bracket_poisson: signature mismatch");
    split.validate(f.signature(), false);
    return poisson_sum(f, g, split);
}

namespace {

Element euler_pq(const Element& a, const PoissonSplit& split) {
    Element r(a.signature());
    for (int i : split.p) r = r + Element::x(a.signature(), i) * d_dx(i, a);
    for (int i : split.q) r = r + Element::x(a.signature(), i) * d_dx(i, a);
    return r;
}

}  // namespace

Element bracket_lagrange(const Element& f, const Element& g, const PoissonSplit& split) {
    if (f.signature() != g.signature())
        throw std::invalid_argument("bracket_lagrange: signature mismatch");
    split.validate(f.signature(), true);
    Element r = poisson_sum(f, g, split);
    Element two_less_E_f = f.scaled(Rational(2)) - euler_pq(f, split);
    Element two_less_E_g = g.scaled(Rational(2)) - euler_pq(g, split);
    r = r + two_less_E_f * d_dx(split.t, g);
    r = r - d_dx(split.t, f) * two_less_E_g;
    return r;
}

Element bracket_nambu(const std::vector<Element>& args) {
    if (args.empty()) throw std::invalid_argument("bracket_nambu: no arguments");
    const Signature& sig = args[0].signature();
    std::size_t n = args.size();
    if (static_cast<int>(n) != sig.even_count)
        throw std::invalid_argument("bracket_nambu: arity must equal the even variable count");
    if (sig.odd_total() != 0)
        throw std::invalid_argument("bracket_nambu: odd variables not allowed");
    for (const auto& a : args)
        if (a.signature() != sig)
            throw std::invalid_argument("bracket_nambu: signature mismatch");
    require_even_args(args, "bracket_nambu");
    std::vector<std::vector<Element>> m(n, std::vector<Element>(n, Element(sig)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = d_dx(static_cast<int>(i) + 1, args[j]);
    return determinant(m);
}

Element bracket_dzhumadildaev(const std::vector<Element>& args) {
    if (args.empty()) throw std::invalid_argument("bracket_dzhumadildaev: no arguments");
    const Signature& sig = args[0].signature();
    std::size_t n = args.size();
    if (static_cast<int>(n) != sig.even_count + 1)
        throw std::invalid_argument(
            "bracket_dzhumadildaev: arity must be the even variable count plus one");
    if (sig.odd_total() != 0)
        throw std::invalid_argument("bracket_dzhumadildaev: odd variables not allowed");
    for (const auto& a : args)
        if (a.signature() != sig)
            throw std::invalid_argument("bracket_dzhumadildaev: signature mismatch");
    require_even_args(args, "bracket_dzhumadildaev");
    std::vector<std::vector<Element>> m(n, std::vector<Element>(n, Element(sig)));
    for (std::size_t j = 0; j < n; ++j) {
        m[0][j] = args[j];
        for (std::size_t i = 1; i < n; ++i) m[i][j] = d_dx(static_cast<int>(i), args[j]);
    }
    return determinant(m);
}

void BracketKind::validate(const Signature& sig) const {
    switch (tag) {
        case BracketTag::HO:
            if (sig.even_count != sig.odd_count || sig.has_tau)
                throw std::invalid_argument("HO bracket needs m == n and no tau");
            break;
        case BracketTag::KO:
            if (!sig.has_tau || sig.even_count != sig.odd_count)
                throw std::invalid_argument("KO bracket needs tau and m == n");
            break;
        case BracketTag::Poisson:
            split.validate(sig, false);
            break;
        case BracketTag::Lagrange:
            split.validate(sig, true);
            break;
        case BracketTag::Nambu:
            if (arity != sig.even_count || sig.odd_total() != 0)
                throw std::invalid_argument("Nambu(n) bracket needs m == n and no odd variables");
            break;
        case BracketTag::Dzhumadildaev:
            if (arity != sig.even_count + 1 || sig.odd_total() != 0)
                throw std::invalid_argument(
                    "Dzhumadildaev(n) bracket needs m == n - 1 and no odd variables");
            break;
    }
}

Element BracketKind::apply(const std::vector<Element>& args) const {
    auto need = [&](std::size_t n) {
        if (args.size() != n) throw std::invalid_argument("bracket: wrong arity");
    };
    switch (tag) {
        case BracketTag::HO:
            need(2);
            return bracket_ho(args[0], args[1]);
        case BracketTag::KO:
            need(2);
            return bracket_ko(args[0], args[1]);
        case BracketTag::Poisson:
            need(2);
            return bracket_poisson(args[0], args[1], split);
        case BracketTag::Lagrange:
            need(2);
            return bracket_lagrange(args[0], args[1], split);
        case BracketTag::Nambu:
            need(static_cast<std::size_t>(arity));
            return bracket_nambu(args);
        case BracketTag::Dzhumadildaev:
            need(static_cast<std::size_t>(arity));
            return bracket_dzhumadildaev(args);
    }
    throw std::logic_error("BracketKind::apply: unreachable");
}

}  // namespace nambu

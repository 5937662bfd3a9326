#include "nambu/algebra.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace nambu {

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

void Signature::validate() const {
    if (even_count < 0 || odd_count < 0 || truncation < 0)
        throw std::invalid_argument("Signature: negative counts");
    if (odd_total() > 31)
        throw std::invalid_argument("Signature: too many odd variables");
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
    int da = a.xdeg(), db = b.xdeg();
    if (da != db) return da < db;
    // within a degree, x1-heavy monomials first: x1^2 < x1*x2 < x2^2
    if (a.xexp != b.xexp) return a.xexp > b.xexp;
    if (a.mask == b.mask) return false;
    // Compare odd index lists lexicographically.
    std::uint32_t ma = a.mask, mb = b.mask;
    while (ma && mb) {
        int ia = __builtin_ctz(ma), ib = __builtin_ctz(mb);
        if (ia != ib) return ia < ib;
        ma &= ma - 1;
        mb &= mb - 1;
    }
    return ma == 0 && mb != 0;
}

int koszul_sign(std::uint32_t a, std::uint32_t b) {
    int inversions = 0;
    std::uint32_t bb = b;
    while (bb) {
        int j = __builtin_ctz(bb);
        // bits of a strictly above j
        inversions += __builtin_popcount(a & ~((2u << j) - 1));
        bb &= bb - 1;
    }
    return (inversions & 1) ? -1 : 1;
}

Element Element::constant(const Signature& sig, const Rational& c) {
    Element e(sig);
    Monomial m;
    m.xexp.assign(sig.even_count, 0);
    e.add_term(m, c);
    return e;
}

Element Element::x(const Signature& sig, int i) {
    if (i < 1 || i > sig.even_count)
        throw std::invalid_argument("Element::x: index out of range");
    Element e(sig);
    Monomial m;
    m.xexp.assign(sig.even_count, 0);
    m.xexp[i - 1] = 1;
    e.add_term(m, Rational(1));
    return e;
}

Element Element::xi(const Signature& sig, int i) {
    if (i < 1 || i > sig.odd_total())
        throw std::invalid_argument("Element::xi: index out of range");
    Element e(sig);
    Monomial m;
    m.xexp.assign(sig.even_count, 0);
    m.mask = 1u << (i - 1);
    e.add_term(m, Rational(1));
    return e;
}

Element Element::tau(const Signature& sig) {
    if (!sig.has_tau)
        throw std::invalid_argument("Element::tau: signature has no tau");
    return xi(sig, sig.tau_index());
}

Element Element::monomial(const Signature& sig, const Monomial& m, const Rational& c) {
    Element e(sig);
    e.add_term(m, c);
    return e;
}

void Element::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    if (static_cast<int>(m.xexp.size()) != sig_.even_count)
        throw std::invalid_argument("Element: monomial arity mismatch");
    if (m.mask >> sig_.odd_total())
        throw std::invalid_argument("Element: odd index out of range");
    if (m.xdeg() > sig_.truncation) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Rational Element::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational() : it->second;
}

Parity Element::parity() const {
    bool even = false, odd = false;
    for (const auto& [m, c] : terms_) (m.parity() ? odd : even) = true;
    if (odd && even) return Parity::Mixed;
    return odd ? Parity::Odd : Parity::Even;
}

bool Element::is_even_subalgebra() const {
    for (const auto& [m, c] : terms_)
        if (m.mask) return false;
    return true;
}

std::optional<int> Element::z_degree() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
        int k = m.xideg();
        if (!d)
            d = k;
        else if (*d != k)
            return std::nullopt;
    }
    return d;
}

int Element::x_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m.xdeg());
    return d;
}

void Element::require_same_signature(const Element& o) const {
    if (sig_ != o.sig_)
        throw std::invalid_argument("Element: signature mismatch");
}

Element Element::operator-() const {
    Element r(sig_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Element Element::operator+(const Element& o) const {
    require_same_signature(o);
    Element r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Element Element::operator-(const Element& o) const {
    require_same_signature(o);
    Element r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Element Element::operator*(const Element& o) const {
    require_same_signature(o);
    Element r(sig_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            if (ma.mask & mb.mask) continue;  // repeated odd variable
            Monomial m;
            m.xexp.resize(sig_.even_count);
            int deg = 0;
            for (int i = 0; i < sig_.even_count; ++i) {
                m.xexp[i] = ma.xexp[i] + mb.xexp[i];
                deg += m.xexp[i];
            }
            if (deg > sig_.truncation) continue;
            m.mask = ma.mask | mb.mask;
            Rational c = ca * cb;
            if (koszul_sign(ma.mask, mb.mask) < 0) c = -c;
            r.add_term(m, c);
        }
    }
    return r;
}

Element Element::scaled(const Rational& c) const {
    Element r(sig_);
    if (c.is_zero()) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

std::pair<Element, Element> Element::parity_parts() const {
    Element even(sig_), odd(sig_);
    for (const auto& [m, c] : terms_) (m.parity() ? odd : even).terms_.emplace(m, c);
    return {even, odd};
}

Element Element::invert() const {
    if (!is_even_subalgebra())
        throw std::domain_error("Element::invert: odd content unsupported");
    Monomial unit;
    unit.xexp.assign(sig_.even_count, 0);
    Rational c0 = coeff(unit);
    if (c0.is_zero())
        throw std::domain_error("Element::invert: zero constant term");
    // a = c0 (1 + u) with u of positive x-degree, so
    // a^{-1} = c0^{-1} sum_k (-u)^k, finite modulo truncation.
    Rational inv_c0 = Rational(1) / c0;
    Element u = scaled(inv_c0) - one(sig_);
    Element result = one(sig_);
    Element pw = one(sig_);
    for (int k = 1; k <= sig_.truncation; ++k) {
        pw = pw * u;
        if (pw.is_zero()) break;
        result = (k & 1) ? result - pw : result + pw;
    }
    return result.scaled(inv_c0);
}

Element Element::with_truncation(int t) const {
    Signature s = sig_;
    s.truncation = t;
    Element r(s);
    for (const auto& [m, c] : terms_)
        if (m.xdeg() <= t) r.terms_.emplace(m, c);
    return r;
}

namespace {

std::string variable_name(const Signature& sig, bool odd, int index1) {
    if (!odd) return "x" + std::to_string(index1);
    if (sig.has_tau && index1 == sig.tau_index()) return "tau";
    return "xi" + std::to_string(index1);
}

std::string render_term(const Signature& sig, const Monomial& m, const Rational& coeff_abs) {
    std::vector<std::string> factors;
    bool coeff_is_one = coeff_abs == Rational(1);
    if (!coeff_is_one || (m.xdeg() == 0 && m.mask == 0)) factors.push_back(coeff_abs.str());
    for (int i = 0; i < sig.even_count; ++i) {
        if (m.xexp[i] == 0) continue;
        std::string f = variable_name(sig, false, i + 1);
        if (m.xexp[i] > 1) f += "^" + std::to_string(m.xexp[i]);
        factors.push_back(f);
    }
    for (std::uint32_t mm = m.mask; mm; mm &= mm - 1)
        factors.push_back(variable_name(sig, true, __builtin_ctz(mm) + 1));
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        if (i) out += "*";
        out += factors[i];
    }
    return out;
}

}  // namespace

std::string Element::render() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        bool neg = c.sign() < 0;
        Rational mag = neg ? -c : c;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        out += render_term(sig_, m, mag);
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Element& e) { return os << e.render(); }

std::vector<Monomial> monomial_grid(const Signature& sig, int max_xdeg, int max_xideg) {
    max_xdeg = std::min(max_xdeg, sig.truncation);
    std::vector<std::vector<int>> exps;
    std::vector<int> cur(sig.even_count, 0);
    // enumerate exponent vectors of total degree <= max_xdeg
    auto rec = [&](auto&& self, int pos, int left) -> void {
        if (pos == sig.even_count) {
            exps.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[pos] = e;
            self(self, pos + 1, left - e);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, max_xdeg);

    std::vector<Monomial> out;
    std::uint32_t top = 1u << sig.odd_total();
    for (std::uint32_t mask = 0; mask < top; ++mask) {
        if (__builtin_popcount(mask) > max_xideg) continue;
        for (const auto& e : exps) {
            Monomial m;
            m.xexp = e;
            m.mask = mask;
            out.push_back(std::move(m));
        }
    }
    std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) {
        return MonomialLess{}(a, b);
    });
    return out;
}

}  // namespace nambu

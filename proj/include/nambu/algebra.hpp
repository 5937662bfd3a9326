#pragma once

#include "nambu/rational.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nambu {

/// Ambient algebra descriptor for O(m,n) = Lambda(n(+1))[[x_1..x_m]] with
/// x-degree truncation. When has_tau is set, the odd variables are
/// xi_1..xi_n, tau and tau carries odd index n+1.
struct Signature {
    int even_count = 0;   // m
    int odd_count = 0;    // n, not counting tau
    bool has_tau = false;
    int truncation = 0;   // T, max retained total x-degree

    int odd_total() const { return odd_count + (has_tau ? 1 : 0); }
    int tau_index() const { return has_tau ? odd_count + 1 : 0; }

    friend bool operator==(const Signature& a, const Signature& b) {
        return a.even_count == b.even_count && a.odd_count == b.odd_count &&
               a.has_tau == b.has_tau && a.truncation == b.truncation;
    }
    friend bool operator!=(const Signature& a, const Signature& b) { return !(a == b); }

    /// Same variables, possibly different truncation.
    bool same_variables(const Signature& o) const {
        return even_count == o.even_count && odd_count == o.odd_count && has_tau == o.has_tau;
    }

    void validate() const;
};

/// x^alpha * xi_S with alpha the even exponent vector and S a strictly
/// increasing odd index set stored as a bitmask (bit i-1 = xi_i present).
struct Monomial {
    std::vector<int> xexp;
    std::uint32_t mask = 0;

    int xdeg() const {
        int d = 0;
        for (int e : xexp) d += e;
        return d;
    }
    int xideg() const { return __builtin_popcount(mask); }
    int parity() const { return xideg() & 1; }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.mask == b.mask && a.xexp == b.xexp;
    }
};

/// Canonical term order: (total x-degree, lexicographic even exponents,
/// odd mask as increasing index list, lexicographically). This order also
/// fixes the golden-file text rendering.
struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sign of sorting the concatenation (A ascending | B ascending) into one
/// ascending list: (-1)^{#(i in A, j in B : i > j)}. Zero overlap assumed.
int koszul_sign(std::uint32_t a, std::uint32_t b);

enum class Parity { Even, Odd, Mixed };

/// Element of O(m,n): sparse exact-rational combination of monomials,
/// truncated at the signature's total x-degree T. Values are immutable in
/// use: all operations are pure and return new elements.
class Element {
public:
    Element() = default;
    explicit Element(Signature sig) : sig_(std::move(sig)) {}

    static Element zero(const Signature& sig) { return Element(sig); }
    static Element constant(const Signature& sig, const Rational& c);
    static Element one(const Signature& sig) { return constant(sig, Rational(1)); }
    /// x_i, 1-based.
    static Element x(const Signature& sig, int i);
    /// xi_i, 1-based; i may be n+1 (= tau) when the signature has tau.
    static Element xi(const Signature& sig, int i);
    static Element tau(const Signature& sig);
    static Element monomial(const Signature& sig, const Monomial& m, const Rational& c);

    const Signature& signature() const { return sig_; }
    const std::map<Monomial, Rational, MonomialLess>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Coefficient of a monomial (zero if absent).
    Rational coeff(const Monomial& m) const;

    Parity parity() const;
    bool is_homogeneous() const { return parity() != Parity::Mixed; }
    /// True when no odd variable appears.
    bool is_even_subalgebra() const;

    /// Common xi-degree of all terms (the Q_j grading), absent if not
    /// homogeneous in xi-degree. The Lie grading P_j is this minus 1.
    std::optional<int> z_degree() const;

    /// Max total x-degree over terms (0 for the zero element).
    int x_degree() const;

    Element operator-() const;
    Element operator+(const Element& o) const;
    Element operator-(const Element& o) const;
    Element operator*(const Element& o) const;
    Element scaled(const Rational& c) const;

    friend bool operator==(const Element& a, const Element& b) {
        return a.sig_ == b.sig_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    /// Split into (even part, odd part).
    std::pair<Element, Element> parity_parts() const;

    /// Geometric-series inverse: requires nonzero constant term and no odd
    /// variables. a * invert(a) == 1 up to the truncation order.
    Element invert() const;

    /// Same variables, different truncation order; terms above the new T
    /// are dropped.
    Element with_truncation(int t) const;

    /// Canonical text form, e.g. "3/2*x1^2*xi1*xi3 - xi2". tau renders as
    /// "tau". The zero element renders as "0".
    std::string render() const;

    void add_term(const Monomial& m, const Rational& c);

private:
    void require_same_signature(const Element& o) const;

    Signature sig_;
    std::map<Monomial, Rational, MonomialLess> terms_;
};

std::ostream& operator<<(std::ostream& os, const Element& e);

/// All monomials of the signature with x-degree <= max_xdeg and xi-degree
/// <= max_xideg, in canonical order.
std::vector<Monomial> monomial_grid(const Signature& sig, int max_xdeg, int max_xideg);

}  // namespace nambu

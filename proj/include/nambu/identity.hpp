#pragma once

#include "nambu/calculus.hpp"

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace nambu {

using BinaryBracket = std::function<Element(const Element&, const Element&)>;
using NaryBracket = std::function<Element(const std::vector<Element>&)>;

struct Witness {
    std::vector<Element> inputs;
    Element residual;
};

/// Structured verdict of an identity check. passed == true iff no witness;
/// a failing witness carries a residual that is nonzero in canonical form.
struct IdentityReport {
    std::string identity;
    bool passed = true;
    std::optional<Witness> witness;

    static IdentityReport pass(std::string name) { return {std::move(name), true, std::nullopt}; }
    static IdentityReport fail(std::string name, Witness w) {
        return {std::move(name), false, std::move(w)};
    }

    /// {"identity": .., "passed": .., "witness"?: {"inputs": [..], "residual": ..}}
    std::string to_json() const;
};

/// Filippov-Jacobi residual for an n-ary bracket on 2n-1 arguments
/// (a_1..a_{n-1}, b_1..b_n):
///   [a,, [b_1..b_n]] - sum_i [b_1,..,[a,, b_i],..,b_n].
IdentityReport check_filippov(const NaryBracket& bracket, int arity,
                              const std::vector<Element>& args);

/// bracket(args) + bracket(args with positions i and j swapped), 0-based.
IdentityReport check_skew(const NaryBracket& bracket, const std::vector<Element>& args, int i,
                          int j);

/// Generalized Leibniz residual {a,,bc} - {a,,b}c - b{a,,c} + {a,,1}bc.
IdentityReport check_generalized_leibniz(const NaryBracket& bracket,
                                         const std::vector<Element>& leading, const Element& b,
                                         const Element& c);

/// Generalized odd Leibniz residual with D(a) = [1,a]:
///   [a,bc] - [a,b]c - (-1)^{(p(a)+1)p(b)} b[a,c] - (-1)^{p(a)+1} D(a)bc,
/// evaluated per homogeneous parity component of a and b.
IdentityReport check_odd_leibniz(const BinaryBracket& bracket, const Element& a, const Element& b,
                                 const Element& c);

/// Shifted-parity super Jacobi residual
///   [a,[b,c]] - [[a,b],c] - (-1)^{pbar(a) pbar(b)} [b,[a,c]]
/// with pbar = p + 1, per homogeneous components of a and b.
IdentityReport check_super_jacobi(const BinaryBracket& bracket, const Element& a, const Element& b,
                                  const Element& c);

/// Odd skew-supersymmetry residual [a,b] + (-1)^{pbar(a) pbar(b)} [b,a].
IdentityReport check_odd_skew(const BinaryBracket& bracket, const Element& a, const Element& b);

/// Deterministic random element source for the identity suites:
/// coefficients from {-2,-1,1,2}, x-degree <= 2 by default.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}

    int uniform(int lo, int hi);
    Rational coefficient();
    Monomial monomial(const Signature& sig, int max_xdeg, int max_xideg);
    Element element(const Signature& sig, int max_xdeg, int max_xideg, int terms = 3);
    /// Homogeneous element of the requested parity (0 or 1).
    Element homogeneous(const Signature& sig, int parity, int max_xdeg, int terms = 3);
    /// Element of the purely even subalgebra (no odd variables).
    Element even_function(const Signature& sig, int max_xdeg, int terms = 3);

private:
    std::mt19937_64 rng_;
};

}  // namespace nambu

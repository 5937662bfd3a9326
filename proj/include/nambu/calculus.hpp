#pragma once

#include "nambu/algebra.hpp"

#include <vector>

namespace nambu {

/// Formal partial derivative in x_i (1-based).
Element d_dx(int i, const Element& a);

/// Left odd derivative in xi_i (1-based; tau is the last odd index). On
/// xi_{j1}..xi_{jk} with j_r = i this is (-1)^{r-1} xi_{j1}..^..xi_{jk}.
Element d_dxi(int i, const Element& a);

/// d_dxi at the tau index.
Element d_dtau(const Element& a);

/// Euler operator E = sum_i x_i d/dx_i + sum_i xi_i d/dxi_i, tau excluded:
/// multiplies each monomial by its total non-tau degree.
Element euler_E(const Element& a);

/// (E - c)(a).
Element euler_shifted(const Element& a, const Rational& c);

/// Formal antiderivative in x_i with zero constant of integration.
Element integral_x(int i, const Element& a);

/// Buttin bracket on O(n,n):
///   [f,g] = sum_i ( df/dx_i dg/dxi_i + (-1)^{p(f)} df/dxi_i dg/dx_i ).
/// Extended bilinearly over parity components of f. Requires m == n and no
/// tau in the signature.
Element bracket_ho(const Element& f, const Element& g);

/// KO bracket on O(n,n+1):
///   [f,g]_KO = [f,g]_HO + (E-2)(f) dg/dtau + (-1)^{p(f)} df/dtau (E-2)(g),
/// with derivation D = -2 d/dtau. Requires tau and m == n.
Element bracket_ko(const Element& f, const Element& g);

/// p/q(/t) pairing over the even indices for the Poisson and Lagrange
/// brackets (1-based even variable indices).
struct PoissonSplit {
    std::vector<int> p;
    std::vector<int> q;
    int t = 0;  // 0 = none

    /// p_i = x_i, q_i = x_{k+i}; with_t additionally sets t = x_{2k+1}.
    static PoissonSplit standard(const Signature& sig, bool with_t);
    void validate(const Signature& sig, bool need_t) const;
};

/// {f,g}_P = sum_i ( df/dp_i dg/dq_i - df/dq_i dg/dp_i ).
Element bracket_poisson(const Element& f, const Element& g, const PoissonSplit& split);

/// {f,g}_L = {f,g}_P + (2-E)f dg/dt - df/dt (2-E)g, with E over the p/q
/// variables only.
Element bracket_lagrange(const Element& f, const Element& g, const PoissonSplit& split);

/// Nambu n-bracket {f_1,..,f_n} = det(df_i/dx_j) on n even variables.
/// Arguments must live in the even subalgebra.
Element bracket_nambu(const std::vector<Element>& args);

/// Dzhumadildaev n-bracket on n-1 even variables: determinant of the
/// matrix with first row (f_1..f_n) and remaining rows (D_i f_j).
Element bracket_dzhumadildaev(const std::vector<Element>& args);

/// Determinant of a square matrix of elements, expanded by signed
/// permutation sum for size <= 4 and by memoized minor expansion above.
Element determinant(const std::vector<std::vector<Element>>& m);

/// Minor-expansion determinant; kept as the second algebraic route and
/// cross-checked against the permutation sum in the tests.
Element determinant_minor_expansion(const std::vector<std::vector<Element>>& m);

/// Bracket selector used by the CLI and the identity suites.
enum class BracketTag { HO, KO, Poisson, Lagrange, Nambu, Dzhumadildaev };

struct BracketKind {
    BracketTag tag = BracketTag::HO;
    int arity = 2;        // meaningful for Nambu / Dzhumadildaev
    PoissonSplit split;   // meaningful for Poisson / Lagrange

    /// Checks the signature constraints of the chosen bracket.
    void validate(const Signature& sig) const;
    Element apply(const std::vector<Element>& args) const;
};

}  // namespace nambu

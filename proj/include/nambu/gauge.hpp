#pragma once

#include "nambu/identity.hpp"

namespace nambu {

/// Gauge twist data for an odd bracket: phi invertible, purely even, of
/// xi-degree 0, with [phi,phi] = 0 under the base bracket. phi_inverse is
/// cached at construction.
struct GaugeContext {
    Element phi;
    Element phi_inverse;
    BracketTag base = BracketTag::HO;

    static GaugeContext make(const Element& phi, BracketTag base);
};

/// [a,b]^phi = phi^{-1} [phi a, phi b] under the base odd bracket.
Element gauge_bracket(const GaugeContext& ctx, const Element& a, const Element& b);

/// The twisted derivation D_phi(a) = [1,a]^phi = [phi,a] - D(phi) a.
Element gauge_derivation(const GaugeContext& ctx, const Element& a);

/// {f_1,..,f_n}^phi = phi^{-1} {phi f_1,..,phi f_n} for an n-ary bracket.
Element gauge_nary(const Element& phi, const NaryBracket& bracket,
                   const std::vector<Element>& args);

Element gauge_nambu(const Element& phi, const std::vector<Element>& args);
Element gauge_dzhumadildaev(const Element& phi, const std::vector<Element>& args);

/// Primed generators of the symplectomorphic change of variables attached
/// to an invertible even phi on an O(n,n) signature:
///   x'_1 = Phi = int_0^{x_1} phi^{-1} dt,   xi'_1 = phi xi_1,
///   x'_i = x_i,  xi'_i = xi_i - phi (dPhi/dx_i) xi_1   (i != 1).
/// Internals run at truncation T+1, so every returned generator is exact
/// through degree T.
struct PrimedVariables {
    std::vector<Element> xs;
    std::vector<Element> xis;
};

PrimedVariables change_of_variables(const Element& phi);

/// Checks all pairwise HO brackets of the primed generators against the
/// canonical pairing: {x'_i,x'_j} = 0, {xi'_i,xi'_j} = 0, {x'_i,xi'_j} =
/// delta_ij, up to truncation.
IdentityReport verify_symplectomorphism(const PrimedVariables& primed);

}  // namespace nambu

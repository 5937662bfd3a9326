#include "nambu/gauge.hpp"

#include <stdexcept>

namespace nambu {

namespace {

Element base_bracket(BracketTag tag, const Element& a, const Element& b) {
    switch (tag) {
        case BracketTag::HO:
            return bracket_ho(a, b);
        case BracketTag::KO:
            return bracket_ko(a, b);
        default:
            throw std::invalid_argument("gauge: base bracket must be HO or KO");
    }
}

}  // namespace

GaugeContext GaugeContext::make(const Element& phi, BracketTag base) {
    if (base != BracketTag::HO && base != BracketTag::KO)
        throw std::invalid_argument("GaugeContext: base bracket must be HO or KO");
    if (!phi.is_even_subalgebra())
        throw std::invalid_argument("GaugeContext: phi must have xi-degree 0");
    Element inv = phi.invert();  // throws when not invertible
    if (!base_bracket(base, phi, phi).is_zero())
        throw std::invalid_argument("GaugeContext: [phi,phi] != 0");
    return GaugeContext{phi, inv, base};
}

Element gauge_bracket(const GaugeContext& ctx, const Element& a, const Element& b) {
    if (a.signature() != ctx.phi.signature() || b.signature() != ctx.phi.signature())
        throw std::invalid_argument("gauge_bracket: signature mismatch");
    return ctx.phi_inverse * base_bracket(ctx.base, ctx.phi * a, ctx.phi * b);
}

Element gauge_derivation(const GaugeContext& ctx, const Element& a) {
    return gauge_bracket(ctx, Element::one(a.signature()), a);
}

Element gauge_nary(const Element& phi, const NaryBracket& bracket,
                   const std::vector<Element>& args) {
    Element inv = phi.invert();
    std::vector<Element> twisted;
    twisted.reserve(args.size());
    for (const auto& a : args) twisted.push_back(phi * a);
    return inv * bracket(twisted);
}

Element gauge_nambu(const Element& phi, const std::vector<Element>& args) {
    return gauge_nary(phi, [](const std::vector<Element>& a) { return bracket_nambu(a); }, args);
}

Element gauge_dzhumadildaev(const Element& phi, const std::vector<Element>& args) {
    return gauge_nary(
        phi, [](const std::vector<Element>& a) { return bracket_dzhumadildaev(a); }, args);
}

PrimedVariables change_of_variables(const Element& phi) {
    const Signature& sig = phi.signature();
    if (sig.even_count != sig.odd_count || sig.has_tau)
        throw std::invalid_argument("change_of_variables: needs an O(n,n) signature");
    if (!phi.is_even_subalgebra())
        throw std::invalid_argument("change_of_variables: phi must be purely even");
    int n = sig.even_count;
    int t_out = sig.truncation;

    // Work one degree higher: the integral raises x-degree by 1.
    Element phi_w = phi.with_truncation(t_out + 1);
    const Signature& wsig = phi_w.signature();
    Element phi_inv = phi_w.invert();
    Element big_phi = integral_x(1, phi_inv);

    PrimedVariables out;
    out.xs.push_back(big_phi.with_truncation(t_out));
    for (int i = 2; i <= n; ++i) out.xs.push_back(Element::x(sig, i));
    out.xis.push_back((phi_w * Element::xi(wsig, 1)).with_truncation(t_out));
    for (int i = 2; i <= n; ++i) {
        Element xi_i = Element::xi(wsig, i) - phi_w * d_dx(i, big_phi) * Element::xi(wsig, 1);
        out.xis.push_back(xi_i.with_truncation(t_out));
    }
    return out;
}

IdentityReport verify_symplectomorphism(const PrimedVariables& primed) {
    if (primed.xs.size() != primed.xis.size() || primed.xs.empty())
        throw std::invalid_argument("verify_symplectomorphism: length mismatch");
    std::size_t n = primed.xs.size();
    const Signature& sig = primed.xs[0].signature();
    // The generators are exact through degree T; differentiating them
    // consumes one degree, so the pairing is certified through T-1.
    int certified = sig.truncation - 1;
    auto check = [&](const Element& a, const Element& b,
                     const Element& expect) -> std::optional<Witness> {
        Element res = (bracket_ho(a, b) - expect).with_truncation(certified);
        if (res.is_zero()) return std::nullopt;
        return Witness{{a, b}, res.with_truncation(sig.truncation)};
    };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i <= j) {
                if (auto w = check(primed.xs[i], primed.xs[j], Element::zero(sig)))
                    return IdentityReport::fail("symplectomorphism", std::move(*w));
                if (auto w = check(primed.xis[i], primed.xis[j], Element::zero(sig)))
                    return IdentityReport::fail("symplectomorphism", std::move(*w));
            }
            Element expect = (i == j) ? Element::one(sig) : Element::zero(sig);
            if (auto w = check(primed.xs[i], primed.xis[j], expect))
                return IdentityReport::fail("symplectomorphism", std::move(*w));
        }
    }
    return IdentityReport::pass("symplectomorphism");
}

}  // namespace nambu

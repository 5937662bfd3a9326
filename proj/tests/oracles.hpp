#pragma once

// Test-only reference implementations, kept independent of the library
// code paths they check.

#include "nambu/calculus.hpp"
#include "nambu/identity.hpp"

#include <numeric>
#include <vector>

namespace nambu::testing {

/// Sign of a permutation restricted to Pi-odd entries, computed the slow
/// way: decompose into adjacent transpositions applied to a scratch list
/// and flip the sign whenever two odd entries cross.
inline int shuffle_sign_by_transpositions(std::vector<int> positions,
                                          const std::vector<int>& pbars) {
    int sign = 1;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        std::size_t best = i;
        for (std::size_t j = i + 1; j < positions.size(); ++j)
            if (positions[j] < positions[best]) best = j;
        while (best > i) {
            if (pbars[positions[best]] && pbars[positions[best - 1]]) sign = -sign;
            std::swap(positions[best], positions[best - 1]);
            --best;
        }
    }
    return sign;
}

/// Determinant by first-row cofactor recursion on element matrices.
inline Element det_cofactor(const std::vector<std::vector<Element>>& m) {
    std::size_t n = m.size();
    const Signature& sig = m[0][0].signature();
    if (n == 1) return m[0][0];
    Element det(sig);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<Element>> minor;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Element> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(m[r][c]);
            minor.push_back(std::move(row));
        }
        Element term = m[0][j] * det_cofactor(minor);
        det = (j & 1) ? det - term : det + term;
    }
    return det;
}

/// Random f = sum f_i xi_i with sum_i df_i/dx_i = 0, built from
/// antisymmetric potentials g_ij: f_i = sum_j d(g_ij)/dx_j.
inline Element divergence_free_odd(Sampler& s, const Signature& sig, int max_xdeg) {
    int n = sig.even_count;
    std::vector<std::vector<Element>> g(n + 1, std::vector<Element>(n + 1, Element(sig)));
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            g[i][j] = s.even_function(sig, max_xdeg, 2);
            g[j][i] = -g[i][j];
        }
    Element f(sig);
    for (int i = 1; i <= n; ++i) {
        Element fi(sig);
        for (int j = 1; j <= n; ++j)
            if (j != i) fi = fi + d_dx(j, g[i][j]);
        f = f + fi * Element::xi(sig, i);
    }
    return f;
}

/// Random f = sum_{i<=n} f_i xi_i + f_{n+1} tau with
/// div_1(f) = sum_i df_i/dx_i + (E - n)(f_{n+1}) = 0.
inline Element div1_free(Sampler& s, const Signature& sig, int max_xdeg) {
    int n = sig.even_count;
    Element f = divergence_free_odd(s, sig, max_xdeg);
    Element f_tau = s.even_function(sig, max_xdeg, 2);
    Element correction = euler_shifted(f_tau, Rational(n));
    // cancel the tau part's contribution through the first even variable
    f = f - integral_x(1, correction) * Element::xi(sig, 1);
    f = f + f_tau * Element::tau(sig);
    return f;
}

/// Rebuilds an element term-by-term over another signature with the same
/// even variable count.
inline Element relift(const Element& e, const Signature& sig) {
    Element out(sig);
    for (const auto& [m, c] : e.terms()) out.add_term(m, c);
    return out;
}

/// div_1 = Delta + (E - n) d/dtau with Delta = sum_i d^2/dx_i dxi_i.
inline Element div1(const Element& f) {
    const Signature& sig = f.signature();
    Element out(sig);
    for (int i = 1; i <= sig.even_count; ++i) out = out + d_dx(i, d_dxi(i, f));
    return out + euler_shifted(d_dtau(f), Rational(sig.even_count));
}

}  // namespace nambu::testing

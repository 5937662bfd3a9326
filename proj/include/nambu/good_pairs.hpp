#pragma once

#include "nambu/gauge.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nambu {

/// PO(n,n) or PO(n,n+1) with the grading of type (0,..,0|1,..,1(,1)):
/// deg x_i = 0, deg xi_i = deg tau = 1, so P_j = Q_{j+1} and P_{-1} is the
/// completely odd component F[[x_1..x_n]].
struct GradedPO {
    Signature sig;
    BracketTag kind = BracketTag::HO;

    static GradedPO ho(int n, int truncation);
    static GradedPO ko(int n, int truncation);

    Element bracket(const Element& a, const Element& b) const;
    BinaryBracket bracket_fn() const;
};

/// Monomial basis of P_j with x-degree <= d.
std::vector<Element> component(const GradedPO& pair, int j, int d);

/// G1 transitivity at truncation: flags any basis element of P_j (j >= 0,
/// x-degree <= d) that commutes with every P_{-1} generator of x-degree
/// <= max_generator_degree (default d + 1). Restricting the generator set
/// builds deliberate failures.
IdentityReport check_g1(const GradedPO& pair, int d, int max_generator_degree = -1);

/// G3: [mu, [[mu,a_1],..,a_{arity-1}]] over all tuples of P_{-1} monomials
/// with x-degree <= d.
IdentityReport check_g3(const GradedPO& pair, const Element& mu, int arity, int d);

struct G2Report {
    bool generated = false;
    std::vector<std::string> missing;
    int degree_cap = 0;
};

/// G2 generation at truncation: closes {P_{-1} monomials of x-degree <=
/// d+2} and mu under bracket and wedge (working truncation d+2) and
/// compares the span against every component basis with x-degree <= d.
G2Report check_g2(const GradedPO& pair, const Element& mu, int d);

struct GoodPairReport {
    IdentityReport g1;
    G2Report g2;
    IdentityReport g3;
    bool verdict = false;

    std::string to_json() const;
};

GoodPairReport good_pair_report(const GradedPO& pair, const Element& mu, int arity, int d);

/// The n-ary bracket on N = Pi P_{-1} induced by a good pair:
///   {f_1,..,f_n} = scale * [..[[mu,f_1],f_2]..,f_n],
/// where the constant is fixed so that the standard pairs (mu = xi_1..xi_n
/// under HO, mu = xi_1..xi_n tau under KO) reproduce the Nambu and
/// Dzhumadildaev determinant brackets exactly on coordinates.
struct PairBracket {
    GradedPO pair;
    Element mu;
    int arity = 2;
    Rational scale = Rational(1);

    Element operator()(const std::vector<Element>& args) const;
};

PairBracket nambu_from_pair(const GradedPO& pair, const Element& mu, int arity);

/// The raw nested-commutator calibration constant absorbed by PairBracket.
Rational reconstruction_scale(BracketTag kind, int arity);

enum class WitnessKind { A1_HO, A2_HO, A1_KO, A2_KO };

struct ClassificationWitness {
    GradedPO pair;
    Element mu;
    int arity = 2;
};

/// The classification's standard pairs:
///   a1-HO: (PO(2h,2h),    sum_i xi_i xi_{i+h},     2-pair)
///   a2-HO: (PO(n,n),      xi_1..xi_n,              n-pair)
///   a1-KO: (PO(2h+1,2h+2), sum_i xi_i xi_{i+h+1},  2-pair)
///   a2-KO: (PO(n,n+1),    xi_1..xi_n tau,          (n+1)-pair)
/// size is h for the a1 kinds and n for the a2 kinds.
ClassificationWitness classification_witness(WitnessKind kind, int size, int truncation = 4);

enum class CounterexampleFamily { Step1, KStep1Eq1, KStep1Eq2 };

struct CounterexampleResult {
    Element mu;
    /// Innermost commutator first, final value last.
    std::vector<Element> chain;
    Element final_value;
};

/// Builds mu of the stated counterexample shape and evaluates the exact
/// commutator chain whose final value does not vanish, certifying the G3
/// failure. h defaults to the largest admissible value; a remainder term
/// may be supplied and is validated against the vanishing-derivative side
/// conditions.
CounterexampleResult counterexample_family(CounterexampleFamily family, int n, int k, int h = -1,
                                           const std::optional<Element>& remainder = std::nullopt);

}  // namespace nambu

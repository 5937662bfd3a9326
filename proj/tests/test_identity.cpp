#include "nambu/identity.hpp"
#include "nambu/parser.hpp"

#include <doctest.h>

#include "oracles.hpp"

using namespace nambu;

namespace {

NaryBracket nambu_fn() {
    return [](const std::vector<Element>& a) { return bracket_nambu(a); };
}
NaryBracket dzhuma_fn() {
    return [](const std::vector<Element>& a) { return bracket_dzhumadildaev(a); };
}
BinaryBracket ho_fn() {
    return [](const Element& a, const Element& b) { return bracket_ho(a, b); };
}
BinaryBracket ko_fn() {
    return [](const Element& a, const Element& b) { return bracket_ko(a, b); };
}

}  // namespace

TEST_CASE("filippov checker") {
    Signature sig{3, 0, false, 6};
    Sampler s(31);
    for (int it = 0; it < 10; ++it) {
        std::vector<Element> args;
        for (int i = 0; i < 5; ++i) args.push_back(s.even_function(sig, 2, 3));
        CHECK(check_filippov(nambu_fn(), 3, args).passed);
    }
    // f*g*h is not an n-Lie bracket
    NaryBracket product = [](const std::vector<Element>& a) {
        Element r = a[0];
        for (std::size_t i = 1; i < a.size(); ++i) r = r * a[i];
        return r;
    };
    std::vector<Element> bad{Element::x(sig, 1), Element::x(sig, 2), Element::x(sig, 1),
                             Element::x(sig, 2), Element::x(sig, 1)};
    IdentityReport r = check_filippov(product, 3, bad);
    CHECK_FALSE(r.passed);
    REQUIRE(r.witness.has_value());
    CHECK_FALSE(r.witness->residual.is_zero());

    std::vector<Element> zeros(5, Element::zero(sig));
    CHECK(check_filippov(product, 3, zeros).passed);
    CHECK_THROWS_AS(check_filippov(nambu_fn(), 3, zeros = {Element::zero(sig)}),
                    std::invalid_argument);
}

TEST_CASE("skew checker") {
    Signature sig{3, 0, false, 6};
    std::vector<Element> xs{Element::x(sig, 1), Element::x(sig, 2), Element::x(sig, 3)};
    CHECK(check_skew(nambu_fn(), xs, 0, 1).passed);

    Signature dz{2, 0, false, 6};
    Sampler s(37);
    std::vector<Element> args;
    for (int i = 0; i < 3; ++i) args.push_back(s.even_function(dz, 2, 3));
    CHECK(check_skew(dzhuma_fn(), args, 0, 2).passed);

    NaryBracket sym = [](const std::vector<Element>& a) { return a[0] * a[1]; };
    IdentityReport r = check_skew(sym, {Element::x(dz, 1), Element::x(dz, 2)}, 0, 1);
    CHECK_FALSE(r.passed);
    CHECK(r.witness.has_value());
}

TEST_CASE("generalized leibniz checker") {
    Signature sig{3, 0, false, 6};
    Sampler s(41);
    for (int it = 0; it < 10; ++it) {
        std::vector<Element> lead{s.even_function(sig, 2, 2), s.even_function(sig, 2, 2)};
        Element b = s.even_function(sig, 2, 2), c = s.even_function(sig, 2, 2);
        CHECK(check_generalized_leibniz(nambu_fn(), lead, b, c).passed);
        // the Nambu bracket kills a constant slot
        std::vector<Element> with_one = lead;
        with_one.push_back(Element::one(sig));
        CHECK(bracket_nambu(with_one).is_zero());
    }
    Signature dz{2, 0, false, 6};
    bool saw_nonzero_unit_term = false;
    for (int it = 0; it < 10; ++it) {
        std::vector<Element> lead{s.even_function(dz, 2, 2), s.even_function(dz, 2, 2)};
        Element b = s.even_function(dz, 2, 2), c = s.even_function(dz, 2, 2);
        CHECK(check_generalized_leibniz(dzhuma_fn(), lead, b, c).passed);
        std::vector<Element> with_one = lead;
        with_one.push_back(Element::one(dz));
        if (!bracket_dzhumadildaev(with_one).is_zero()) saw_nonzero_unit_term = true;
    }
    CHECK(saw_nonzero_unit_term);  // {a..,1} != 0 generically
}

TEST_CASE("odd leibniz checker") {
    Sampler s(43);
    // HO: D = 0
    Signature ho{3, 3, false, 5};
    for (int it = 0; it < 10; ++it) {
        Element a = s.homogeneous(ho, s.uniform(0, 1), 2);
        Element b = s.homogeneous(ho, s.uniform(0, 1), 1);
        Element c = s.element(ho, 1, 3);
        CHECK(check_odd_leibniz(ho_fn(), a, b, c).passed);
        CHECK(bracket_ho(Element::one(ho), a).is_zero());
    }
    // KO: D = -2 d/dtau
    Signature ko{2, 2, true, 5};
    for (int it = 0; it < 10; ++it) {
        Element a = s.homogeneous(ko, s.uniform(0, 1), 2);
        Element b = s.homogeneous(ko, s.uniform(0, 1), 1);
        Element c = s.element(ko, 1, 3);
        CHECK(check_odd_leibniz(ko_fn(), a, b, c).passed);
        CHECK(bracket_ko(Element::one(ko), a) == d_dtau(a).scaled(Rational(-2)));
    }
    // a = 1 reduces to D(1) b c = 0
    Element b = s.element(ko, 1, 2), c = s.element(ko, 1, 2);
    CHECK(check_odd_leibniz(ko_fn(), Element::one(ko), b, c).passed);
}

TEST_CASE("super jacobi checker") {
    Sampler s(47);
    Signature ho{2, 2, false, 3};
    for (int it = 0; it < 10; ++it) {
        Element a = s.homogeneous(ho, s.uniform(0, 1), 1);
        Element b = s.homogeneous(ho, s.uniform(0, 1), 1);
        Element c = s.homogeneous(ho, s.uniform(0, 1), 1);
        CHECK(check_super_jacobi(ho_fn(), a, b, c).passed);
    }
    Signature ko{2, 2, true, 4};
    for (int it = 0; it < 10; ++it) {
        Element a = s.homogeneous(ko, s.uniform(0, 1), 1);
        Element b = s.homogeneous(ko, s.uniform(0, 1), 1);
        Element c = s.homogeneous(ko, s.uniform(0, 1), 1);
        CHECK(check_super_jacobi(ko_fn(), a, b, c).passed);
    }
    Element xi1 = Element::xi(ho, 1);
    CHECK(check_super_jacobi(ho_fn(), xi1, xi1, xi1).passed);
}

TEST_CASE("D is an odd derivation of product and bracket") {
    Sampler s(53);
    Signature ko{2, 2, true, 4};
    auto D = [&](const Element& a) { return bracket_ko(Element::one(ko), a); };
    for (int it = 0; it < 20; ++it) {
        int pa = s.uniform(0, 1);
        Element a = s.homogeneous(ko, pa, 1);
        Element b = s.element(ko, 1, 3);
        // product rule: D(ab) = D(a)b + (-1)^{p(a)} a D(b)
        Element lhs = D(a * b);
        Element rhs = D(a) * b + (pa ? -(a * D(b)) : a * D(b));
        CHECK(lhs == rhs);
        // bracket rule with the shifted parity: D[a,b] = [D a, b] + (-1)^{pbar(a)} [a, D b]
        Element lhs2 = D(bracket_ko(a, b));
        Element rhs2 = bracket_ko(D(a), b) +
                       (((pa + 1) & 1) ? -bracket_ko(a, D(b)) : bracket_ko(a, D(b)));
        CHECK(lhs2 == rhs2);
    }
}

TEST_CASE("witness minimization produces a single-monomial witness") {
    Signature sig{2, 0, false, 6};
    NaryBracket sym = [](const std::vector<Element>& a) { return a[0] * a[1]; };
    Element a = parse_element("x1 + x2", sig), b = parse_element("x1 - 2*x2", sig);
    IdentityReport r = check_skew(sym, {a, b}, 0, 1);
    REQUIRE_FALSE(r.passed);
    REQUIRE(r.witness.has_value());
    for (const auto& in : r.witness->inputs) CHECK(in.term_count() == 1);
}

TEST_CASE("exhaustive grid mode") {
    // every identity checker accepts grid tuples; run skew exhaustively on
    // all monomials with x-degree <= 1
    Signature sig{2, 0, false, 6};
    auto grid = monomial_grid(sig, 1, 0);
    for (const auto& ma : grid)
        for (const auto& mb : grid) {
            std::vector<Element> args{Element::monomial(sig, ma, Rational(1)),
                                      Element::monomial(sig, mb, Rational(1)),
                                      Element::one(sig)};
            CHECK(check_skew(dzhuma_fn(), args, 0, 1).passed);
        }
}

TEST_CASE("report json shape") {
    Signature sig{2, 0, false, 4};
    NaryBracket sym = [](const std::vector<Element>& a) { return a[0] * a[1]; };
    IdentityReport r = check_skew(sym, {Element::x(sig, 1), Element::x(sig, 2)}, 0, 1);
    std::string j = r.to_json();
    CHECK(j.find("\"identity\":\"skew\"") != std::string::npos);
    CHECK(j.find("\"passed\":false") != std::string::npos);
    CHECK(j.find("\"witness\"") != std::string::npos);
}

#include "nambu/parser.hpp"
#include "nambu/identity.hpp"

#include <doctest.h>

using namespace nambu;

TEST_CASE("parse basics") {
    Signature sig{2, 3, true, 5};
    Element e = parse_element("x1^2*xi1 - 3/2*xi2", sig);
    CHECK(e.render() == "-3/2*xi2 + x1^2*xi1");
    CHECK(parse_element("xi2*xi1", sig).render() == "-xi1*xi2");
    CHECK(parse_element("xi1^2", sig).is_zero());
    CHECK(parse_element("tau", sig) == Element::xi(sig, 4));
    CHECK(parse_element("(1 + x1)*(1 - x1)", sig).render() == "1 - x1^2");
    CHECK(parse_element("2/4", sig).render() == "1/2");
}

TEST_CASE("parse errors carry positions") {
    Signature sig{2, 2, false, 4};
    CHECK_THROWS_AS(parse_element("x3", sig), ParseError);
    CHECK_THROWS_AS(parse_element("xi5", sig), ParseError);
    CHECK_THROWS_AS(parse_element("tau", sig), ParseError);
    CHECK_THROWS_AS(parse_element("y1", sig), ParseError);
    CHECK_THROWS_AS(parse_element("x1 + ", sig), ParseError);
    CHECK_THROWS_AS(parse_element("(x1", sig), ParseError);
    CHECK_THROWS_AS(parse_element("x1^", sig), ParseError);
    CHECK_THROWS_AS(parse_element("1/0", sig), ParseError);
    try {
        parse_element("x1 + y2", sig);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.position == 5);
    }
}

TEST_CASE("round trip on random elements") {
    Sampler s(149);
    std::vector<Signature> sigs{{2, 2, false, 4}, {3, 3, false, 4}, {2, 2, true, 4},
                                {1, 0, false, 6}};
    for (int it = 0; it < 1000; ++it) {
        const Signature& sig = sigs[it % sigs.size()];
        Element e = s.element(sig, 3, sig.odd_total(), 4);
        std::string text = e.render();
        Element back = parse_element(text, sig);
        CHECK(back == e);
        // render of parse is idempotent
        CHECK(back.render() == text);
    }
}

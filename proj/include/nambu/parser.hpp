#pragma once

#include "nambu/algebra.hpp"

#include <stdexcept>
#include <string>

namespace nambu {

struct ParseError : std::runtime_error {
    std::size_t position;
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
};

/// Parses an expression into canonical form against the signature.
///
/// Grammar:
///   expr   := ['-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' uint)?
///   atom   := rational | var | '(' expr ')'
/// with variables x1..xm, xi1..xi<n(+1)> and "tau" for the last odd
/// variable when the signature has tau. Rational literals are "a" or
/// "a/b"; no decimals. An odd variable squared folds to zero.
Element parse_element(const std::string& input, const Signature& sig);

}  // namespace nambu

#pragma once

/**
 * @file parser.hpp
 * @brief Text syntax for set expressions (the spelling GaussSet::str() emits).
 *
 *   expr  := P2 | empty | upper(int,int) | lattice(int,int)
 *          | prod(ints,ints) | finite{(int,int), ...}
 *          | translate(expr,int,int) | dilate(int,int,expr)
 *          | union(expr,expr) | inter(expr,expr) | diff(expr,expr) | compl(expr)
 *          | delim(bound,bound)
 *   ints  := P | mult(int) | {int, ...} | union(ints,ints) | inter(ints,ints) | compl(ints)
 *   bound := const(real) | pow(real,real) | exp(real,real)
 *   real  := decimal literal (0.5, 2.5e-3) or rational literal (1/2)
 *
 * Whitespace is ignored between tokens. diff(b,a) is b minus a.
 */

#include "gaussdens/set_model.hpp"

#include <string_view>

namespace gaussdens {

/// Throws ParseError (with 1-based line and column) on malformed text and
/// ValidationError when a well-formed expression breaks a set invariant.
GaussSet parse_expression(std::string_view text);
IntSet parse_int_set(std::string_view text);
BoundFn parse_bound(std::string_view text);

}  // namespace gaussdens

#pragma once

// Text and JSON input formats.
//
// Braid words: whitespace-separated tokens A(i,j), optionally followed by ^k
// for an integer k (expanded to |k| letters, inverted for k < 0), and
// commutators [w1, w2] = w1 w2 w1^-1 w2^-1 of braid words, which may nest and
// also take an exponent. The empty string is the identity.
//
// Longitude tuples: {"n": 3, "K": 4, "words": [[2, 3, -2], [], [1]]} where
// each word is a list of signed generator indices (+i for x_i, -i for
// x_i^-1). "K" is optional; when present the boundary condition is only
// required modulo Gamma_{K+1}.

#include "stringlink/freegroup.hpp"

#include <string_view>

namespace stringlink {

/// Throws ParseError on syntax errors and on indices outside 1..strands.
BraidWord parse_braid(std::string_view text, int strands);

/// Throws ParseError for malformed JSON and PreconditionError when the
/// tuple violates normalization or the boundary condition.
LongitudeTuple parse_longitude_tuple(std::string_view json);

std::string longitude_tuple_to_json(const LongitudeTuple& tuple);

}  // namespace stringlink

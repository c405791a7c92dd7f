#pragma once

// Ring expressions over a1, a2 and integers with + - * ^ and parentheses,
// e.g. "(1-a2)*(a1-1)" or "2*a1^2*a2 + 3".

#include <string>

#include "metab/grpring.hpp"

namespace metab {

/// Throws ParseError with the byte offset of the first bad token. Negative
/// exponents are accepted on a1 and a2 only.
RingElem parse_ring_expr(const RingCtx& ctx, const std::string& text);

}  // namespace metab

#pragma once

// Elementary functions used internally by the special-function and
// acceleration layers. They are accurate to a few ulp at the operand
// precision; callers are expected to pass operands that already carry
// guard bits.

#include "norlund/bigreal.hpp"

namespace norlund::elementary {

/// Natural logarithm, x > 0.
BigReal log(const BigReal& x);
BigReal exp(const BigReal& x);
/// base^exponent for base > 0.
BigReal pow(const BigReal& base, const BigReal& exponent);

}  // namespace norlund::elementary

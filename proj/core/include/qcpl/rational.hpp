#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace qcpl {

/// Exact arbitrary-precision rational, the coefficient field of the symbolic engine.
using Rational = boost::multiprecision::cpp_rational;

/// base^e for integer e of either sign; throws std::domain_error on 0^negative.
Rational rational_pow(const Rational& base, long e);

}  // namespace qcpl

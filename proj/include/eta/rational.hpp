#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace eta {

using Int = mpz_class;
using Rat = mpq_class;

/// Parses "3", "-3", "3/4" into an exact rational. Throws std::invalid_argument.
Rat rat_from_string(const std::string& text);

/// Canonical form: "3", "-3", "3/4". Denominator 1 prints as an integer.
std::string rat_to_string(const Rat& value);

/// Conversion with range check; throws std::overflow_error if it does not fit.
long long int_to_longlong(const Int& value);

}  // namespace eta

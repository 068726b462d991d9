#pragma once

#include <string>

#include <gmpxx.h>

namespace hecke {

// Parses a decimal literal ("0.465", "1.34", "12") into the exact fraction.
mpq_class mpq_from_decimal(const std::string& s);

// "5" for integers, "93/200" otherwise.
std::string to_fraction_string(const mpq_class& q);

double approx(const mpq_class& q);

}  // namespace hecke

#pragma once

#include "philoop/scalar.hpp"
#include "philoop/series.hpp"

#include <string_view>

namespace philoop {

/// Parses a Laurent polynomial such as "1 - 3/2*x^-1 + x^2".
///
/// Terms are products of rationals, `x^k` and, when `ctx` is given, `w^k`
/// (the primitive root of unity). No parentheses: write "1/2*x + w*x".
LaurentSeries parse_series(std::string_view text, const FieldPtr &ctx = nullptr);

/// Parses a scalar of Q(w) such as "1/2 + w^2".
Scalar parse_scalar(std::string_view text, const FieldPtr &ctx = nullptr);

} // namespace philoop

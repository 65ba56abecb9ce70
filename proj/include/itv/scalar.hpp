#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <string>
#include <string_view>

namespace itv {

/// Exact backend used to reproduce tables without rounding.
using Rational = boost::rational<long long>;

inline double to_double(double x) { return x; }
inline double to_double(const Rational& x) { return boost::rational_cast<double>(x); }

inline bool is_zero(double x) { return x == 0.0; }
inline bool is_zero(const Rational& x) { return x.numerator() == 0; }

template <class S>
S scalar_from_int(long long v) {
    return S(v);
}

/// Converts a decimal literal such as "-1", "0.25" or "1.5e-3" into the
/// scalar type. Decimal input is represented exactly by the rational backend.
template <class S>
S scalar_from_decimal(std::string_view text);

template <>
double scalar_from_decimal<double>(std::string_view text);

template <>
Rational scalar_from_decimal<Rational>(std::string_view text);

std::string format_scalar(double x);
std::string format_scalar(const Rational& x);

} // namespace itv

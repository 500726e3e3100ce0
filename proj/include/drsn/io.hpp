#ifndef DRSN_IO_HPP
#define DRSN_IO_HPP

#include <string>

#include "drsn/normalform.hpp"
#include "drsn/series.hpp"
#include "drsn/vfields.hpp"

namespace drsn {

// Shared text syntax: a series is a sum of terms C*x^a*y1^b*y2^c where C is
// a decimal literal R, an imaginary literal Ri, or a pair (R,I); unit factors
// and ^1 may be omitted; whitespace is insignificant.
TruncatedSeries parse_series(const std::string& text, int order);

// Canonical form: graded-lex order, coefficients as (R,I) with 17 significant
// digits.  parse_series(print_series(s)) reproduces s exactly.
std::string print_series(const TruncatedSeries& s);

// Three lines `dx: <series>`, `dy1: <series>`, `dy2: <series>`.
VectorField parse_field(const std::string& text, int order);
std::string print_field(const VectorField& f);

std::string print_complex(Complex z);

} // namespace drsn

#endif

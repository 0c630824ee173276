#ifndef HANNERLAB_RATIONAL_HPP
#define HANNERLAB_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace hannerlab {

// Canonical arbitrary-precision rational: reduced, positive denominator.
using Rat = mpq_class;
using Int = mpz_class;

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rat& r);

// Accepts "p", "p/q", "-p/q" with optional surrounding whitespace.
Rat parse_rat(const std::string& text);

double to_double(const Rat& r);

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline int sign(const Rat& r) { return sgn(r); }

Rat abs_rat(const Rat& r);

} // namespace hannerlab

#endif

#pragma once

#include <gmpxx.h>

#include <string>

namespace qforms {

// Exact arbitrary-precision rationals.  Every coefficient in the engine is
// one of these; there are no tolerances anywhere.
using Rat = mpq_class;

// Parses "p", "-p" or "p/q".  Throws ParseError on malformed input or a zero
// denominator.
Rat rat_parse(const std::string& text);

// Canonical "p" / "p/q" rendering.
std::string rat_str(const Rat& r);

// mpq_class(p, q) does not canonicalize; this does.
inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline int parity_sign(long parity) { return (parity % 2 == 0) ? 1 : -1; }

} // namespace qforms

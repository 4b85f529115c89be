#pragma once

// Exact rational scalar used throughout. Backed by GMP via boost::multiprecision;
// all construction goes through the helpers below so values are always canonical
// (lowest terms, positive denominator). No floating point enters any decision path.

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>

namespace gptlab {

using Rat = boost::multiprecision::mpq_rational;
using Int = boost::multiprecision::mpz_int;

inline Rat make_rat(long num, long den = 1) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    Rat r(num);
    r /= den;  // operator/ canonicalizes and fixes the sign
    return r;
}

// Accepts "p", "p/q", optional leading '-'. Rejects q <= 0 after canonicalization.
inline Rat rat_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            return Rat(Int(s));
        }
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::domain_error("rational with zero denominator");
        Rat r(num);
        r /= Rat(den);
        return r;
    } catch (const std::domain_error&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed rational literal: " + s);
    }
}

// Canonical form: "p" when the denominator is 1, else "p/q" with q > 0.
inline std::string rat_to_string(const Rat& r) {
    return r.str();
}

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline int sign(const Rat& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

}  // namespace gptlab

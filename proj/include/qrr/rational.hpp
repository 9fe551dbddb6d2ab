#ifndef QRR_RATIONAL_HPP
#define QRR_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace qrr {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return rat_den(r) == 1; }

// floor toward -inf, exact
inline Int rat_floor(const Rat& r) {
  Int n = rat_num(r), d = rat_den(r);
  Int q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

inline Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

inline double rat_double(const Rat& r) {
  return rat_num(r).convert_to<double>() / rat_den(r).convert_to<double>();
}

inline long rat_long(const Rat& r) {
  if (!is_integer(r)) throw std::invalid_argument("rat_long: not an integer: " + r.str());
  return rat_num(r).convert_to<long>();
}

inline std::string rat_str(const Rat& r) { return r.str(); }

// parse "a/b" or "a"
inline Rat rat_parse(const std::string& s) { return Rat(s); }

// fractional part in [0,1)
inline Rat rat_frac(const Rat& r) { return r - Rat(rat_floor(r)); }

} // namespace qrr

#endif

// Exact arithmetic primitives shared by every module: arbitrary-precision
// integers, rationals, and small vector helpers. No floating point anywhere.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace logfan {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using IVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(const Int& a, const Int& b) {
  return boost::multiprecision::gcd(a, b);
}

inline Int lcm_int(const Int& a, const Int& b) {
  return boost::multiprecision::lcm(a, b);
}

inline Int rat_num(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int rat_den(const Rat& q) { return boost::multiprecision::denominator(q); }

// floor of a/b for b > 0
inline Int floor_div(const Int& a, const Int& b) {
  if (b <= 0) throw std::invalid_argument("floor_div: divisor must be positive");
  Int q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

inline Int floor_rat(const Rat& q) { return floor_div(rat_num(q), rat_den(q)); }

inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

inline bool is_integral(const Rat& q) { return rat_den(q) == 1; }

// gcd of all entries, 0 for the zero vector
inline Int content(const IVec& v) {
  Int g = 0;
  for (const Int& a : v) g = gcd_int(g, a);
  return g;
}

// divide by the content; identity on the zero vector
inline IVec primitive(IVec v) {
  Int g = content(v);
  if (g > 1)
    for (Int& a : v) a /= g;
  return v;
}

inline bool is_zero(const IVec& v) {
  for (const Int& a : v)
    if (a != 0) return false;
  return true;
}

inline bool is_zero(const QVec& v) {
  for (const Rat& a : v)
    if (a != 0) return false;
  return true;
}

inline IVec add(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IVec sub(const IVec& a, const IVec& b) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IVec neg(IVec a) {
  for (Int& x : a) x = -x;
  return a;
}

inline IVec scale(const IVec& a, const Int& c) {
  IVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

inline Int dot(const IVec& a, const IVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot(const QVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot(const IVec& a, const QVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  Rat s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

inline QVec to_rat(const IVec& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = v[i];
  return r;
}

inline QVec add(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline QVec sub(const QVec& a, const QVec& b) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline QVec scale(const QVec& a, const Rat& c) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c;
  return r;
}

// lexicographic order, used everywhere a canonical order of vectors is needed
inline bool lex_less(const IVec& a, const IVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline bool lex_less(const QVec& a, const QVec& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::string to_string(const Int& a);
std::string to_string(const Rat& q);
std::string to_string(const IVec& v);
std::string to_string(const QVec& v);

// trial division; residue characteristics stay word-sized
bool is_prime(const Int& p);

}  // namespace logfan

#pragma once
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace apex {

// Exact arithmetic everywhere: geometric predicates never see a double.
using Int = mpz_class;
using Rat = mpq_class;

inline int sgn(const Rat& q) { return mpq_sgn(q.get_mpq_t()); }
inline int sgn(const Int& n) { return mpz_sgn(n.get_mpz_t()); }

inline int cmp(const Rat& a, const Rat& b) { return mpq_cmp(a.get_mpq_t(), b.get_mpq_t()); }

inline Int rat_num(const Rat& q) { return q.get_num(); }
inline Int rat_den(const Rat& q) { return q.get_den(); }

// floor(q) as an integer
inline Int rat_floor(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Int rat_ceil(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline bool is_integer(const Rat& q) { return rat_den(q) == 1; }

inline Rat rat_abs(const Rat& q) { return sgn(q) < 0 ? Rat(-q) : q; }
inline Int int_abs(const Int& n) { return sgn(n) < 0 ? Int(-n) : n; }

// Canonical serialization: "p/q", or just "p" for integers.
inline std::string rat_str(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  return c.get_str();
}

// Accepts "p/q", "p", optional leading '-'.  Throws on garbage.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  Rat q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  if (rat_den(q) == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

// Reduced fraction n/d; the raw two-argument mpq_class constructor does not reduce,
// and unreduced values break exact equality.
inline Rat frac(long n, long d) {
  Rat q(n, d);
  q.canonicalize();
  return q;
}

// True if q is a multiple of 1/m (i.e. q*m is an integer).
inline bool on_grid(const Rat& q, long m) { return is_integer(Rat(q * m)); }

}  // namespace apex

#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace patdens {

using Rational = mpq_class;
using BigInt = mpz_class;

static_assert(sizeof(unsigned long) == sizeof(std::uint64_t), "LP64 platform expected");

inline BigInt big(std::uint64_t v) { return BigInt(static_cast<unsigned long>(v)); }

inline Rational make_rational(std::uint64_t num, std::uint64_t den) {
  Rational r(big(num), big(den));
  r.canonicalize();
  return r;
}

/// "p/q", or "p" for integers.
inline std::string to_string(const Rational& r) { return r.get_str(); }

}  // namespace patdens

#pragma once

#include <gmpxx.h>
#include <string>

namespace tautring4 {

using Q = mpq_class;
using Z = mpz_class;

// Always "p/q", also for integers, so scripts can parse every coefficient the same way.
inline std::string to_fraction(const Q& x) {
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

// Accepts "p", "p/q", "-p/q". Throws std::invalid_argument on junk.
Q parse_fraction(const std::string& s);

}  // namespace tautring4

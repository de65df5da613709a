#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace pecoh {

/// Arbitrary-precision signed integer used for every exact computation.
using Integer = boost::multiprecision::cpp_int;

/// Quotient rounded towards negative infinity. `b` must be nonzero.
Integer floor_div(const Integer& a, const Integer& b);

/// Least nonnegative residue of `a` modulo `m > 0`.
Integer mod_positive(const Integer& a, const Integer& m);

struct ExtendedGcd {
    Integer g; ///< nonnegative gcd
    Integer s; ///< s*a + t*b == g
    Integer t;
};

ExtendedGcd extended_gcd(const Integer& a, const Integer& b);

std::string to_string(const Integer& value);

/// Distinct prime factors in increasing order; `n` must be nonzero.
std::vector<Integer> prime_factors(Integer n);

/// Primes up to and including `bound`.
std::vector<std::int64_t> primes_up_to(std::int64_t bound);

} // namespace pecoh

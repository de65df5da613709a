#include "pecoh/integer.hpp"

#include "pecoh/errors.hpp"

namespace pecoh {

Integer floor_div(const Integer& a, const Integer& b)
{
    if (b == 0)
        throw InternalError("floor_div: division by zero");
    Integer q = a / b; // truncates towards zero
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

Integer mod_positive(const Integer& a, const Integer& m)
{
    Integer r = a % m;
    if (r < 0)
        r += m;
    return r;
}

ExtendedGcd extended_gcd(const Integer& a, const Integer& b)
{
    Integer old_r = a, r = b;
    Integer old_s = 1, s = 0;
    Integer old_t = 0, t = 1;
    while (r != 0) {
        Integer q = old_r / r;
        Integer tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    return {old_r, old_s, old_t};
}

std::string to_string(const Integer& value)
{
    return value.str();
}

std::vector<Integer> prime_factors(Integer n)
{
    if (n == 0)
        throw InternalError("prime_factors: zero has no factorisation");
    if (n < 0)
        n = -n;
    std::vector<Integer> out;
    for (Integer p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            out.push_back(p);
            while (n % p == 0)
                n /= p;
        }
    }
    if (n > 1)
        out.push_back(n);
    return out;
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound)
{
    std::vector<std::int64_t> out;
    if (bound < 2)
        return out;
    std::vector<bool> composite(static_cast<std::size_t>(bound) + 1, false);
    for (std::int64_t i = 2; i <= bound; ++i) {
        if (composite[static_cast<std::size_t>(i)])
            continue;
        out.push_back(i);
        for (std::int64_t j = i * i; j <= bound; j += i)
            composite[static_cast<std::size_t>(j)] = true;
    }
    return out;
}

} // namespace pecoh

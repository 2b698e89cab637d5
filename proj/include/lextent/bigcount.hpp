#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace lextent {

// Exact nonnegative integer count. Extension counts hit n! scale immediately,
// so all counting arithmetic is arbitrary precision from the start.
using BigCount = mpz_class;

inline BigCount factorial(unsigned long n) {
    BigCount r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline BigCount binomial(unsigned long n, unsigned long k) {
    BigCount r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline std::string to_decimal(const BigCount& v) { return v.get_str(); }

}  // namespace lextent

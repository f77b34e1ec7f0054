#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>

namespace degdist {

// Runtime-precision binary float backed by MPFR. Expression templates are
// disabled so that generic code can use `auto` freely.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

constexpr int kMinDigits = 30;
constexpr int kMaxDigits = 200;

// Sets the default working precision (decimal digits) for newly created Reals
// and restores the previous value on destruction.
class PrecisionScope {
public:
    explicit PrecisionScope(int digits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned previous_;
};

int working_digits();
Real eps_digits(int digits);  // 10^(-digits)
Real real_pi();
Real to_real(const Rational& q);
std::string fmt(const Real& x, int digits);

}  // namespace degdist

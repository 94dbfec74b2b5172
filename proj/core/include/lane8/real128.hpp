#pragma once

#include <quadmath.h>

#include <cstdio>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace lane8 {

/// Quad-precision scalar (IEEE binary128, ~33 significant decimal digits).
/// Wraps __float128 so code templated on the scalar type can use it like a
/// built-in floating type; the math functions below are found by ADL.
class Real128 {
public:
    constexpr Real128() = default;
    constexpr Real128(double v) : v_(v) {}
    constexpr Real128(int v) : v_(v) {}
    constexpr Real128(long v) : v_(v) {}
    constexpr explicit Real128(__float128 v) : v_(v) {}

    constexpr __float128 raw() const { return v_; }
    explicit constexpr operator double() const { return static_cast<double>(v_); }

    Real128& operator+=(Real128 o) { v_ += o.v_; return *this; }
    Real128& operator-=(Real128 o) { v_ -= o.v_; return *this; }
    Real128& operator*=(Real128 o) { v_ *= o.v_; return *this; }
    Real128& operator/=(Real128 o) { v_ /= o.v_; return *this; }

    friend constexpr Real128 operator+(Real128 a, Real128 b) { return Real128(a.v_ + b.v_); }
    friend constexpr Real128 operator-(Real128 a, Real128 b) { return Real128(a.v_ - b.v_); }
    friend constexpr Real128 operator*(Real128 a, Real128 b) { return Real128(a.v_ * b.v_); }
    friend constexpr Real128 operator/(Real128 a, Real128 b) { return Real128(a.v_ / b.v_); }
    friend constexpr Real128 operator-(Real128 a) { return Real128(-a.v_); }
    friend constexpr Real128 operator+(Real128 a) { return a; }

    friend constexpr bool operator==(Real128 a, Real128 b) { return a.v_ == b.v_; }
    friend constexpr bool operator!=(Real128 a, Real128 b) { return a.v_ != b.v_; }
    friend constexpr bool operator<(Real128 a, Real128 b) { return a.v_ < b.v_; }
    friend constexpr bool operator<=(Real128 a, Real128 b) { return a.v_ <= b.v_; }
    friend constexpr bool operator>(Real128 a, Real128 b) { return a.v_ > b.v_; }
    friend constexpr bool operator>=(Real128 a, Real128 b) { return a.v_ >= b.v_; }

private:
    __float128 v_{0};
};

inline Real128 exp(Real128 x) { return Real128(expq(x.raw())); }
inline Real128 log(Real128 x) { return Real128(logq(x.raw())); }
inline Real128 log2(Real128 x) { return Real128(log2q(x.raw())); }
inline Real128 sqrt(Real128 x) { return Real128(sqrtq(x.raw())); }
inline Real128 sin(Real128 x) { return Real128(sinq(x.raw())); }
inline Real128 cos(Real128 x) { return Real128(cosq(x.raw())); }
inline Real128 abs(Real128 x) { return Real128(fabsq(x.raw())); }
inline Real128 fabs(Real128 x) { return Real128(fabsq(x.raw())); }
inline Real128 floor(Real128 x) { return Real128(floorq(x.raw())); }
inline Real128 pow(Real128 a, Real128 b) { return Real128(powq(a.raw(), b.raw())); }
inline bool isfinite(Real128 x) { return finiteq(x.raw()) != 0; }

/// Shortest decimal form that parses back to the identical bits (36 digits).
inline std::string to_string(Real128 x, int digits = 36) {
    char buf[64];
    quadmath_snprintf(buf, sizeof buf, "%.*Qe", digits - 1, x.raw());
    return buf;
}

inline Real128 real128_from_string(const std::string& s) {
    char* end = nullptr;
    __float128 v = strtoflt128(s.c_str(), &end);
    if (end == s.c_str())
        throw std::invalid_argument("real128_from_string: not a number: '" + s + "'");
    return Real128(v);
}

std::ostream& operator<<(std::ostream& os, Real128 x);

}  // namespace lane8

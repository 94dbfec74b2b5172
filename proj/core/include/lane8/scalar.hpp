#pragma once

#include <charconv>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lane8/real128.hpp"

namespace lane8 {

// Unqualified math calls in templated code resolve for double through these
// and for Real128 through its ADL friends.
inline double exp(double x) { return std::exp(x); }
inline double log(double x) { return std::log(x); }
inline double log2(double x) { return std::log2(x); }
inline double sqrt(double x) { return std::sqrt(x); }
inline double sin(double x) { return std::sin(x); }
inline double cos(double x) { return std::cos(x); }
inline double abs(double x) { return std::fabs(x); }
inline double fabs(double x) { return std::fabs(x); }
inline double floor(double x) { return std::floor(x); }
inline double pow(double a, double b) { return std::pow(a, b); }
inline bool isfinite(double x) { return std::isfinite(x); }

enum class Precision { Standard, Extended };

inline const char* name(Precision p) { return p == Precision::Standard ? "std" : "ext"; }

inline Precision parse_precision(const std::string& s) {
    if (s == "std" || s == "standard") return Precision::Standard;
    if (s == "ext" || s == "extended") return Precision::Extended;
    throw std::invalid_argument("unknown precision '" + s + "' (expected std|ext)");
}

/// Per-mode numeric facts and string conversion. STANDARD is binary64,
/// EXTENDED is binary128 (about 33 significant decimal digits).
template <class R>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr Precision mode = Precision::Standard;
    static constexpr int max_digits10 = 17;
    static double epsilon() { return std::numeric_limits<double>::epsilon(); }
    static double default_tol() { return 1e-14; }
    static double parse(const std::string& s) {
        try {
            std::size_t pos = 0;
            double v = std::stod(s, &pos);
            while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
            if (pos != s.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw std::invalid_argument("not a number: '" + s + "'");
        }
    }
    static std::string str(double v, int digits = max_digits10) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
        return buf;
    }
};

template <>
struct scalar_traits<Real128> {
    static constexpr Precision mode = Precision::Extended;
    static constexpr int max_digits10 = 36;
    // binary128 epsilon 2^-112; spelled with ldexpq so strict -std=c++20
    // builds do not need the GNU Q-literal extension
    static Real128 epsilon() { return Real128(ldexpq(1.0, -112)); }
    static Real128 default_tol() { return real128_from_string("1e-22"); }
    static Real128 parse(const std::string& s) { return real128_from_string(s); }
    static std::string str(Real128 v, int digits = max_digits10) { return to_string(v, digits); }
};

}  // namespace lane8

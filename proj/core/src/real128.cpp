#include "lane8/real128.hpp"

#include <ostream>

namespace lane8 {

std::ostream& operator<<(std::ostream& os, Real128 x) {
    char buf[64];
    quadmath_snprintf(buf, sizeof buf, "%.33Qg", x.raw());
    return os << buf;
}

}  // namespace lane8

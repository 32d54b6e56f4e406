#include "dimer/vec2.hpp"

#include <numeric>
#include <sstream>

namespace dimer {

std::int64_t gcd_abs(std::int64_t a, std::int64_t b) {
    return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

bool is_multiple_of(const Vec2& d, const Vec2& s) {
    if (s.x == 0 && s.y == 0) return d.x == 0 && d.y == 0;
    if (cross(d, s) != 0) return false;
    if (s.x != 0) return d.x % s.x == 0;
    return d.y % s.y == 0;
}

std::string to_string(const Vec2& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Vec2& v) {
    return os << '(' << v.x << ',' << v.y << ')';
}

}  // namespace dimer

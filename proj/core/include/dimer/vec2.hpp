#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace dimer {

struct Vec2 {
    std::int64_t x = 0;
    std::int64_t y = 0;

    friend auto operator<=>(const Vec2&, const Vec2&) = default;

    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
    friend Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
    friend Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
    friend Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
    friend Vec2 operator*(std::int64_t k, const Vec2& a) { return {k * a.x, k * a.y}; }
};

inline std::int64_t cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

// Orientation of (o,a,b): >0 counterclockwise.
inline std::int64_t orient(const Vec2& o, const Vec2& a, const Vec2& b) { return cross(a - o, b - o); }

std::int64_t gcd_abs(std::int64_t a, std::int64_t b);

// Lattice length of a vector, i.e. gcd of the absolute coordinates.
inline std::int64_t lattice_length(const Vec2& v) { return gcd_abs(v.x, v.y); }

inline bool is_primitive(const Vec2& v) { return lattice_length(v) == 1; }

// True iff d is an integer multiple of s (s may be zero).
bool is_multiple_of(const Vec2& d, const Vec2& s);

std::string to_string(const Vec2& v);
std::ostream& operator<<(std::ostream& os, const Vec2& v);

}  // namespace dimer

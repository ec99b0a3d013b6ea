#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cuspidal {

using Int = long long;

/// A Hirzebruch surface F_e. e=0 is the quadric P1xP1, e=1 the plane
/// blown up in one point.
struct SurfaceId {
    Int e = 0;

    explicit SurfaceId(Int e_) : e(e_) {
        if (e < 0) throw std::invalid_argument("Hirzebruch index e must be >= 0");
    }
};

/// Divisor class a*L + b*M in the fiber/section basis of Pic(F_e),
/// with L^2 = 0, L.M = 1, M^2 = e. Negative coefficients are allowed
/// here (the canonical class needs them); curve-level validation
/// happens in CurveSpec.
struct DivisorClass {
    Int a = 0;
    Int b = 0;

    friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
};

inline Int intersect(SurfaceId s, DivisorClass d1, DivisorClass d2) {
    return d1.a * d2.b + d2.a * d1.b + s.e * d1.b * d2.b;
}

inline DivisorClass canonical(SurfaceId s) {
    return DivisorClass{s.e - 2, -2};
}

/// True for classes that can represent an irreducible curve other than
/// a fiber or the special section: b > 0, a >= 0.
inline bool is_curve_class(DivisorClass c) {
    return c.b > 0 && c.a >= 0;
}

/// (b-1)(2a-2+be)/2, the genus of a smooth curve of type (a,b).
inline Int arithmetic_genus(SurfaceId s, DivisorClass c) {
    Int num = (c.b - 1) * (2 * c.a - 2 + c.b * s.e);
    if (num % 2 != 0)
        throw std::domain_error("malformed class: genus formula is not an integer for (" +
                                std::to_string(c.a) + "," + std::to_string(c.b) + ")");
    return num / 2;
}

/// Number of monomials x0^a0 x1^a1 y0^b0 y1^b1 with
/// a0+a1-e*b1 = a and b0+b1 = b, all exponents >= 0.
inline Int graded_dimension(SurfaceId s, Int a, Int b) {
    if (b < 0) return 0;
    Int count = 0;
    for (Int b1 = 0; b1 <= b; ++b1) {
        Int x_total = a + s.e * b1;  // a0 + a1
        if (x_total >= 0) count += x_total + 1;
    }
    return count;
}

}  // namespace cuspidal

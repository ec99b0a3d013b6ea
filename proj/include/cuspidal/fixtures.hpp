#pragma once

#include <array>

#include "cuspidal/polyengine.hpp"

namespace cuspidal::fixtures {

// --- The four-cusped plane quintic and its transforms -----------------------

/// Plane quintic with cuspidal configuration [2_3],[2],[2],[2];
/// the [2_3] cusp sits at (0:0:1), its tangent line is V(x).
inline constexpr const char* quintic_text =
    "y^4*z - 2*x*y^2*z^2 + x^2*z^3 + 2*x^2*y^3 - 18*x^3*y*z - 27*x^5";

/// Blow-up of the quintic's smooth tangent-line point: composition of
/// the coordinate swap y <-> z with x:=x0*y1, y:=x1*y1, z:=y0.
inline SubstitutionMap map_plane_to_f1() {
    return SubstitutionMap::parse("plane_to_f1", plane_vars(), surface_vars(),
                                  {"x0*y1", "y0", "x1*y1"});
}

/// The resulting (1,4)-curve on F_1 (the substituted quintic equals
/// -y1 times this polynomial).
inline constexpr const char* f1_curve_text =
    "-y0^4*x1 + 2*y1^2*x0*y0^2*x1^2 - y1^4*x0^2*x1^3 - 2*y1*x0^2*y0^3"
    " + 18*y1^3*x0^3*y0*x1 + 27*y1^4*x0^5";

/// One-up elementary transformation F_1 -> F_2: y1 := x0*y1.
inline SubstitutionMap map_f1_to_f2() {
    return SubstitutionMap::parse("f1_to_f2", surface_vars(), surface_vars(),
                                  {"x0", "x1", "y0", "x0*y1"});
}

/// The resulting (1,4)-curve on F_2.
inline constexpr const char* f2_curve_text =
    "-y0^4*x1 + 2*x0^3*y1^2*y0^2*x1^2 - x0^6*y1^4*x1^3 - 2*x0^3*y1*y0^3"
    " + 18*x0^6*y1^3*y0*x1 + 27*x0^9*y1^4";

/// One-down transformation F_1 -> F_0 composed with the coordinate
/// change y0 := y0 - x1*y1 that first moves the cusp off the contracted
/// locus: net substitution y0 := x0*y0 - x1*y1.
inline SubstitutionMap map_f1_to_f0() {
    return SubstitutionMap::parse("f1_to_f0", surface_vars(), surface_vars(),
                                  {"x0", "x1", "x0*y0 - x1*y1", "y1"});
}

/// The resulting (5,4)-curve on F_0.
inline constexpr const char* f0_curve_text =
    "-x1*x0^4*y0^4 + 4*x0^3*y0^3*x1^2*y1 - 6*x0^2*y0^2*x1^3*y1^2"
    " + 4*x0*y0*x1^4*y1^3 - x1^5*y1^4 + 2*y1^2*x0^3*x1^2*y0^2"
    " - 4*y1^3*x0^2*x1^3*y0 + 2*y1^4*x0*x1^4 + y1^4*x0^2*x1^3"
    " - 2*y1*x0^5*y0^3 + 6*y1^2*x0^4*y0^2*x1 - 6*y1^3*x0^3*y0*x1^2"
    " + 18*y1^3*x0^4*x1*y0 - 18*y1^4*x0^3*x1^2 + 27*y1^4*x0^5";

// --- The real tricuspidal quartic and its tangent line ----------------------

/// Real plane quartic with three ordinary cusps.
inline constexpr const char* quartic_text =
    "y^2*z^2 + x^2*z^2 + x^2*y^2 - 2*x^2*y*z - 2*x*y^2*z - 2*x*y*z^2";

/// A real line tangent to the quartic meeting it in three real points.
inline constexpr const char* tangent_line_text =
    "2048/125*x + 2048/27*y - 1048576/3375*z";

/// Tangency point of the line (contact order 2), chart z=1.
inline Point2 quartic_tangency_point() { return {Rational("64/9"), Rational("64/25")}; }

/// Transversal intersection points of the line (contact order 1), chart z=1.
inline std::array<Point2, 2> quartic_transversal_points() {
    return {Point2{Rational(16), Rational("16/25")}, Point2{Rational("4/9"), Rational(4)}};
}

/// The quartic's three cusps, all ordinary, at the coordinate points.
inline std::array<Point2, 1> quartic_cusp_in_chart_z() { return {Point2{0, 0}}; }

// --- Parsed accessors --------------------------------------------------------

inline MPoly quintic() { return MPoly::parse(quintic_text, plane_vars()); }
inline MPoly quartic() { return MPoly::parse(quartic_text, plane_vars()); }
inline MPoly tangent_line() { return MPoly::parse(tangent_line_text, plane_vars()); }
inline BigradedPolynomial f1_curve() { return BigradedPolynomial::parse(SurfaceId(1), f1_curve_text); }
inline BigradedPolynomial f2_curve() { return BigradedPolynomial::parse(SurfaceId(2), f2_curve_text); }
inline BigradedPolynomial f0_curve() { return BigradedPolynomial::parse(SurfaceId(0), f0_curve_text); }

}  // namespace cuspidal::fixtures

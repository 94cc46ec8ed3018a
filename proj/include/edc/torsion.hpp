#pragma once

// 2-descent on curves with full rational 2-torsion, the 4-torsion tables keyed
// by quadratic characters, explicit order-4 points, and 8-torsion halvability.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "edc/curve.hpp"
#include "edc/field.hpp"

namespace edc {

struct TorsionError : Error {
    using Error::Error;
};

// image in (F_q^x / squares)^3, stored componentwise as +-1
struct DescentImage {
    std::array<int, 3> comps{1, 1, 1};
    bool trivial() const { return comps[0] == 1 && comps[1] == 1 && comps[2] == 1; }
    DescentImage operator*(const DescentImage& o) const {
        return {{comps[0] * o.comps[0], comps[1] * o.comps[1], comps[2] * o.comps[2]}};
    }
    bool operator==(const DescentImage& o) const { return comps == o.comps; }
};

// legendre curves use roots (0, 1, d); weierstrass curves must split completely
DescentImage two_descent(const Curve& c, const Point& pt);
bool is_halvable(const Curve& c, const Point& pt);

enum class TorsionShape { Z4xZ4, Z4xZ2, Z2xZ2 };
std::string torsion_shape_name(TorsionShape s);
GroupStructure torsion_shape_structure(TorsionShape s);

enum class TwoTorsionBase { X0, X1, Xd };  // (0,0), (1,0), (d,0)
std::string two_torsion_base_name(TwoTorsionBase b);

struct TorsionProfile {
    int chi_d = 0, chi_1md = 0, chi_m1 = 0;
    TorsionShape four_torsion = TorsionShape::Z2xZ2;
    std::vector<TwoTorsionBase> halvable_two_torsion;
    bool order8_present = false;
    std::string to_json() const;
};

// table prediction keyed by (chi2(-1), chi2(d), chi2(1-d)); validated against
// the brute-force 4-torsion before returning
TorsionProfile four_torsion_profile(const FieldElement& d);

struct Order4Point {
    TwoTorsionBase base = TwoTorsionBase::X0;
    int sign = +1;           // which of the +- pair
    bool negated = false;    // the listed form or its negative
    Curve curve;             // L_d over the field of definition of the coordinates
    Point coords;
    bool rational = false;   // defined over the base field
};

// the twelve order-4 points (six listed forms and their negatives), each over
// the smallest field containing its family's radicals
std::vector<Order4Point> order4_points(const FieldElement& d);

// halvability verdict for a named F_q-rational order-4 point, evaluated from
// the square-ness of {x, x-1, x-d} at its abscissa
bool order4_halvable(const FieldElement& d, TwoTorsionBase base, int sign);

// brute-force oracles
TorsionShape four_torsion_brute(const FieldElement& d);
std::vector<Point> doubling_image(const Curve& c);
bool halvable_brute(const Curve& c, const Point& pt);

}  // namespace edc

#include "edc/torsion.hpp"

#include <algorithm>

#include "json.hpp"

namespace edc {

std::string torsion_shape_name(TorsionShape s) {
    switch (s) {
        case TorsionShape::Z4xZ4: return "Z4xZ4";
        case TorsionShape::Z4xZ2: return "Z4xZ2";
        case TorsionShape::Z2xZ2: return "Z2xZ2";
    }
    return "?";
}

GroupStructure torsion_shape_structure(TorsionShape s) {
    switch (s) {
        case TorsionShape::Z4xZ4: return {4, 4};
        case TorsionShape::Z4xZ2: return {2, 4};
        case TorsionShape::Z2xZ2: return {2, 2};
    }
    return {1, 1};
}

std::string two_torsion_base_name(TwoTorsionBase b) {
    switch (b) {
        case TwoTorsionBase::X0: return "(0,0)";
        case TwoTorsionBase::X1: return "(1,0)";
        case TwoTorsionBase::Xd: return "(d,0)";
    }
    return "?";
}

// ---------------- 2-descent ----------------

namespace {

std::array<FieldElement, 3> two_torsion_roots(const Curve& c) {
    const auto& ctx = c.ctx();
    if (c.kind() == CurveKind::Legendre)
        return {ctx->zero(), ctx->one(), c.param(0)};
    if (c.kind() != CurveKind::Weierstrass)
        throw TorsionError("2-descent needs a Legendre or Weierstrass model");
    std::vector<FieldElement> roots;
    for (uint64_t x = 0; x < ctx->q(); ++x) {
        uint64_t f = ctx->add(
            ctx->mul(ctx->add(ctx->mul(ctx->add(x, c.param(0).code()), x), c.param(1).code()), x),
            c.param(2).code());
        if (f == 0) roots.push_back(ctx->from_code(x));
    }
    if (roots.size() != 3)
        throw TorsionError("curve does not have full rational 2-torsion");
    std::sort(roots.begin(), roots.end(), [&](const FieldElement& a, const FieldElement& b) {
        return ctx->lex_less(a.code(), b.code());
    });
    return {roots[0], roots[1], roots[2]};
}

int chi_nonzero(const FieldElement& v) {
    int c = v.chi2();
    if (c == 0) throw TorsionError("descent hit a zero difference");
    return c;
}

}  // namespace

DescentImage two_descent(const Curve& c, const Point& pt) {
    auto e = two_torsion_roots(c);
    if (pt.is_infinity()) return DescentImage{};
    if (!pt.is_affine()) throw TorsionError("descent needs an affine point or infinity");
    const FieldElement& x = pt.x();
    const FieldElement& y = pt.y();
    if (!y.is_zero())
        return DescentImage{{chi_nonzero(x - e[0]), chi_nonzero(x - e[1]), chi_nonzero(x - e[2])}};
    // the three special rows replace the vanishing coordinate by the product of
    // the other two differences
    for (int i = 0; i < 3; ++i) {
        if (x == e[i]) {
            std::array<int, 3> comps;
            int prod = 1;
            for (int j = 0; j < 3; ++j) {
                if (j == i) continue;
                comps[j] = chi_nonzero(e[i] - e[j]);
                prod *= comps[j];
            }
            comps[i] = prod;
            return DescentImage{comps};
        }
    }
    throw TorsionError("point of order 2 is not on the curve");
}

bool is_halvable(const Curve& c, const Point& pt) { return two_descent(c, pt).trivial(); }

// ---------------- 4-torsion tables ----------------

namespace {

struct FamilyData {
    std::vector<FieldElement> radicands;       // in the base field
    bool rational;                             // all radicands are squares
};

FamilyData family_radicands(TwoTorsionBase base, const FieldElement& d) {
    const auto& ctx = d.ctx();
    FieldElement one = ctx->one();
    FamilyData fam;
    switch (base) {
        case TwoTorsionBase::X0: fam.radicands = {d, -one}; break;
        case TwoTorsionBase::X1: fam.radicands = {one - d}; break;
        case TwoTorsionBase::Xd: fam.radicands = {d, d - one}; break;
    }
    fam.rational = true;
    for (const auto& r : fam.radicands)
        if (r.chi2() != 1) fam.rational = false;
    return fam;
}

// coordinates of the +- pair over a field already containing the radicals
std::pair<Point, Point> family_points(TwoTorsionBase base, const FieldElement& D) {
    const auto& f = D.ctx();
    FieldElement one = f->one();
    switch (base) {
        case TwoTorsionBase::X0: {
            FieldElement s = *D.sqrt();
            FieldElement i = *(-one).sqrt();
            return {Point::affine(s, i * s * (one - s)), Point::affine(-s, i * s * (one + s))};
        }
        case TwoTorsionBase::X1: {
            FieldElement u = *(one - D).sqrt();
            return {Point::affine(one + u, u * (one + u)), Point::affine(one - u, -u * (one - u))};
        }
        case TwoTorsionBase::Xd: {
            FieldElement sd = *D.sqrt();
            FieldElement se = *(D - one).sqrt();
            FieldElement r = sd * se;
            return {Point::affine(D + r, r * (sd + se)), Point::affine(D - r, r * (sd - se))};
        }
    }
    throw TorsionError("bad family");
}

}  // namespace

TorsionShape four_torsion_brute(const FieldElement& d) {
    Curve c = Curve::legendre(d);
    auto pts = enumerate_points(c);
    uint64_t n4 = 0;
    for (const Point& pt : pts)
        if (scalar_mul(c, 4, pt).is_infinity()) ++n4;
    switch (n4) {
        case 16: return TorsionShape::Z4xZ4;
        case 8: return TorsionShape::Z4xZ2;
        case 4: return TorsionShape::Z2xZ2;
    }
    throw TorsionError("unexpected 4-torsion cardinality " + std::to_string(n4));
}

std::vector<Point> doubling_image(const Curve& c) {
    auto pts = enumerate_points(c);
    std::vector<Point> out;
    out.reserve(pts.size());
    for (const Point& pt : pts) out.push_back(add_points(c, pt, pt));
    return out;
}

bool halvable_brute(const Curve& c, const Point& pt) {
    for (const Point& q : enumerate_points(c))
        if (add_points(c, q, q) == pt) return true;
    return false;
}

bool order4_halvable(const FieldElement& d, TwoTorsionBase base, int sign) {
    if (d.is_zero() || d.is_one()) throw TorsionError("degenerate parameter");
    FamilyData fam = family_radicands(base, d);
    if (!fam.rational)
        throw TorsionError("order-4 point " + two_torsion_base_name(base) +
                           (sign >= 0 ? "+" : "-") + " is not rational over F_q");
    auto pair = family_points(base, d);
    const Point& pt = sign >= 0 ? pair.first : pair.second;
    const FieldElement& x = pt.x();
    return x.chi2() == 1 && (x - d.ctx()->one()).chi2() == 1 && (x - d).chi2() == 1;
}

std::vector<Order4Point> order4_points(const FieldElement& d) {
    if (d.is_zero() || d.is_one()) throw TorsionError("degenerate parameter");
    const auto& ctx = d.ctx();
    std::vector<Order4Point> out;
    for (TwoTorsionBase base : {TwoTorsionBase::X0, TwoTorsionBase::X1, TwoTorsionBase::Xd}) {
        FamilyData fam = family_radicands(base, d);
        FieldElement D = d;
        Curve curve = Curve::legendre(d);
        if (!fam.rational) {
            Extension ext = lift_to_extension(ctx, 2);
            D = ext.embed(d);
            curve = Curve::legendre(D);
        }
        auto pair = family_points(base, D);
        FieldElement base_x = base == TwoTorsionBase::X0   ? D.ctx()->zero()
                              : base == TwoTorsionBase::X1 ? D.ctx()->one()
                                                           : D;
        Point expected = Point::affine(base_x, D.ctx()->zero());
        for (int sign : {+1, -1}) {
            const Point& pt = sign > 0 ? pair.first : pair.second;
            if (!is_on_curve(curve, pt))
                throw TorsionError("order-4 point formula left the curve");
            if (!(add_points(curve, pt, pt) == expected))
                throw TorsionError("order-4 point does not double to its base");
            Order4Point rec;
            rec.base = base;
            rec.sign = sign;
            rec.curve = curve;
            rec.coords = pt;
            rec.rational = fam.rational;
            out.push_back(rec);
            rec.negated = true;
            rec.coords = negate_point(curve, pt);
            out.push_back(rec);
        }
    }
    return out;
}

TorsionProfile four_torsion_profile(const FieldElement& d) {
    if (d.is_zero() || d.is_one()) throw TorsionError("degenerate parameter");
    const auto& ctx = d.ctx();
    TorsionProfile prof;
    prof.chi_d = d.chi2();
    prof.chi_1md = (ctx->one() - d).chi2();
    prof.chi_m1 = (-ctx->one()).chi2();

    if (prof.chi_m1 == 1) {  // q = 1 mod 4
        if (prof.chi_d == 1 && prof.chi_1md == 1) {
            prof.four_torsion = TorsionShape::Z4xZ4;
            prof.halvable_two_torsion = {TwoTorsionBase::X0, TwoTorsionBase::X1, TwoTorsionBase::Xd};
        } else if (prof.chi_d == -1 && prof.chi_1md == 1) {
            prof.four_torsion = TorsionShape::Z4xZ2;
            prof.halvable_two_torsion = {TwoTorsionBase::X1};
        } else if (prof.chi_d == 1 && prof.chi_1md == -1) {
            prof.four_torsion = TorsionShape::Z4xZ2;
            prof.halvable_two_torsion = {TwoTorsionBase::X0};
        } else {
            prof.four_torsion = TorsionShape::Z2xZ2;
        }
    } else {  // q = -1 mod 4
        if (prof.chi_d == -1 && prof.chi_1md == -1) {
            prof.four_torsion = TorsionShape::Z2xZ2;
        } else if (prof.chi_d == 1 && prof.chi_1md == -1) {
            prof.four_torsion = TorsionShape::Z4xZ2;
            prof.halvable_two_torsion = {TwoTorsionBase::Xd};
        } else {
            prof.four_torsion = TorsionShape::Z4xZ2;
            prof.halvable_two_torsion = {TwoTorsionBase::X1};
        }
    }

    // order-8 points exist iff some rational order-4 point is halvable
    prof.order8_present = false;
    for (TwoTorsionBase base : {TwoTorsionBase::X0, TwoTorsionBase::X1, TwoTorsionBase::Xd}) {
        if (!family_radicands(base, d).rational) continue;
        for (int sign : {+1, -1})
            if (order4_halvable(d, base, sign)) prof.order8_present = true;
    }

    if (four_torsion_brute(d) != prof.four_torsion)
        throw TorsionError("table prediction disagrees with the enumerated 4-torsion for d = " +
                           d.str());
    return prof;
}

std::string TorsionProfile::to_json() const {
    nlohmann::json j;
    j["chi_d"] = chi_d;
    j["chi_1md"] = chi_1md;
    j["chi_m1"] = chi_m1;
    j["four_torsion"] = torsion_shape_name(four_torsion);
    auto arr = nlohmann::json::array();
    for (auto b : halvable_two_torsion) arr.push_back(two_torsion_base_name(b));
    j["halvable"] = arr;
    j["order8"] = order8_present;
    return j.dump();
}

}  // namespace edc

#pragma once

// Curve models over F_q, group laws, point counting, j-invariants and
// brute-force group structure. Supported models: Edwards x^2+y^2 = 1+d x^2 y^2,
// twisted Edwards a x^2+y^2 = 1+d x^2 y^2, Legendre y^2 = x(x-1)(x-d),
// Weierstrass y^2 = x^3+a2 x^2+a4 x+a6, Montgomery B y^2 = x^3+A x^2+x and
// Huff a x(y^2-1) = b y(x^2-1).

#include <cstdint>
#include <string>
#include <vector>

#include "edc/field.hpp"

namespace edc {

struct CurveError : Error {
    using Error::Error;
};

enum class CurveKind { Edwards, TwistedEdwards, Legendre, Weierstrass, Montgomery, Huff };
enum class CountMethod { Exhaustive, CharSum };

// Labels for the four points of the desingularized Edwards model at infinity.
// X+- sit over the x-direction singular point (y -> +-1/sqrt(d), order 2),
// Y+- over the y-direction one (x -> +-1/sqrt(d), order 4); all four are
// F_q-rational exactly when chi2(d) = 1, matching the 2+2*chi2(d) count.
enum class ExcLabel : uint8_t { XPlus, XMinus, YPlus, YMinus };

class Point {
public:
    static Point affine(FieldElement x, FieldElement y);
    static Point infinity();
    static Point exceptional(ExcLabel label);

    bool is_affine() const { return tag_ == Tag::Affine; }
    bool is_infinity() const { return tag_ == Tag::Infinity; }
    bool is_exceptional() const { return tag_ == Tag::Exceptional; }
    const FieldElement& x() const;
    const FieldElement& y() const;
    ExcLabel label() const;

    bool operator==(const Point& o) const;
    bool operator!=(const Point& o) const { return !(*this == o); }

    std::string str() const;  // "(x,y)" | "inf" | "exc:X+"

private:
    enum class Tag : uint8_t { Affine, Infinity, Exceptional };
    Tag tag_ = Tag::Infinity;
    FieldElement x_, y_;
    ExcLabel label_ = ExcLabel::XPlus;
};

std::string exc_label_name(ExcLabel label);
ExcLabel exc_label_from_name(const std::string& name);

class Curve {
public:
    Curve() = default;  // invalid placeholder; factories produce usable curves

    static Curve edwards(const FieldElement& d);
    static Curve twisted_edwards(const FieldElement& a, const FieldElement& d);
    static Curve legendre(const FieldElement& d);
    static Curve weierstrass(const FieldElement& a2, const FieldElement& a4, const FieldElement& a6);
    static Curve montgomery(const FieldElement& A, const FieldElement& B);
    static Curve huff(const FieldElement& a, const FieldElement& b);
    static Curve make(CurveKind kind, const std::vector<FieldElement>& params);

    CurveKind kind() const { return kind_; }
    const FieldCtxPtr& ctx() const { return ctx_; }
    const FieldElement& param(size_t i) const { return params_.at(i); }
    size_t param_count() const { return params_.size(); }
    bool valid() const { return ctx_ != nullptr; }

    Point identity() const;
    std::string describe() const;  // "edwards:2@13^1"

private:
    Curve(CurveKind kind, FieldCtxPtr ctx, std::vector<FieldElement> params)
        : kind_(kind), ctx_(std::move(ctx)), params_(std::move(params)) {}
    CurveKind kind_ = CurveKind::Edwards;
    FieldCtxPtr ctx_;
    std::vector<FieldElement> params_;
};

std::string curve_kind_name(CurveKind kind);

bool is_on_curve(const Curve& c, const Point& pt);
Point negate_point(const Curve& c, const Point& pt);
// Group law. Edwards uses the unified formulas and routes exceptional inputs /
// vanishing denominators through the Weierstrass correspondence; Legendre and
// Montgomery use the chord-tangent law on their cubic. TwistedEdwards and Huff
// are unsupported (convert first).
Point add_points(const Curve& c, const Point& a, const Point& b);
Point sub_points(const Curve& c, const Point& a, const Point& b);
Point scalar_mul(const Curve& c, uint64_t k, const Point& pt);

uint64_t count_points(const Curve& c, CountMethod method = CountMethod::CharSum);
int64_t trace_of_frobenius(const Curve& c);
FieldElement j_invariant(const Curve& c);

struct GroupStructure {
    uint64_t n1 = 1, n2 = 1;  // group is Z/n1 x Z/n2 with n1 | n2
    bool operator==(const GroupStructure& o) const { return n1 == o.n1 && n2 == o.n2; }
};
GroupStructure group_structure(const Curve& c);

// all F_q-rational points (affine plus infinity / exceptional as representable;
// twisted Edwards and Huff enumerate affine points only)
std::vector<Point> enumerate_points(const Curve& c);
uint64_t point_order(const Curve& c, const Point& pt, uint64_t group_order);

// Weierstrass model W_d : y^2 = x^3 + 2(1+d) x^2 + (1-d)^2 x attached to E_d,
// with the everywhere-defined correspondence of desingularized models.
Curve edwards_weierstrass_form(const Curve& edwards);
Point edwards_to_weierstrass(const Curve& edwards, const Point& pt);   // extended tau
Point weierstrass_to_edwards(const Curve& edwards, const Point& pt);   // extended tau^{-1}

Point parse_point(const std::string& text, const FieldCtxPtr& ctx);

}  // namespace edc

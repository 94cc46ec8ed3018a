#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "edc/curve.hpp"

using namespace edc;

namespace {
std::vector<std::pair<uint64_t, unsigned>> odd_prime_powers(uint64_t bound) {
    std::vector<std::pair<uint64_t, unsigned>> out;
    for (uint64_t p = 3; p <= bound; p += 2) {
        if (!is_prime_u64(p)) continue;
        uint64_t q = p;
        unsigned m = 1;
        while (q <= bound) {
            out.push_back({p, m});
            if (q > bound / p) break;
            q *= p;
            ++m;
        }
    }
    return out;
}
}  // namespace

TEST_CASE("curve validation") {
    auto f = FieldContext::create(13);
    CHECK_THROWS_AS(Curve::edwards(f->zero()), CurveError);
    CHECK_THROWS_AS(Curve::edwards(f->one()), CurveError);
    CHECK_THROWS_AS(Curve::legendre(f->one()), CurveError);
    CHECK_THROWS_AS(Curve::twisted_edwards(f->make(3), f->make(3)), CurveError);
    CHECK_THROWS_AS(Curve::montgomery(f->make(2), f->zero()), CurveError);
    CHECK_THROWS_AS(Curve::montgomery(f->make(2), f->make(1)), CurveError);  // A^2 = 4
    CHECK_THROWS_AS(Curve::huff(f->make(2), f->make(2)), CurveError);
    // singular cubic y^2 = x^3
    CHECK_THROWS_AS(Curve::weierstrass(f->zero(), f->zero(), f->zero()), CurveError);
    CHECK(Curve::edwards(f->make(2)).describe() == "edwards:2@13^1");
}

TEST_CASE("membership") {
    auto f = FieldContext::create(13);
    Curve e = Curve::edwards(f->make(2));
    CHECK(is_on_curve(e, Point::affine(f->make(1), f->zero())));
    CHECK_FALSE(is_on_curve(e, Point::affine(f->make(1), f->one())));
    Curve l = Curve::legendre(f->make(2));
    CHECK(is_on_curve(l, Point::affine(f->make(1), f->zero())));
    CHECK_FALSE(is_on_curve(l, Point::affine(f->make(3), f->one())));
    CHECK(is_on_curve(l, Point::infinity()));
    CHECK_FALSE(is_on_curve(e, Point::infinity()));
    // exceptional points exist iff d is a square; chi2(2) = -1 mod 13
    CHECK_FALSE(is_on_curve(e, Point::exceptional(ExcLabel::XPlus)));
    Curve e3 = Curve::edwards(f->make(3));
    CHECK(is_on_curve(e3, Point::exceptional(ExcLabel::XPlus)));
}

TEST_CASE("edwards group law") {
    auto f = FieldContext::create(13);
    Curve e = Curve::edwards(f->make(2));
    Point p = Point::affine(f->make(1), f->zero());
    Point id = Point::affine(f->zero(), f->one());
    CHECK(add_points(e, p, id) == p);
    CHECK(add_points(e, p, p) == Point::affine(f->zero(), f->make(12)));
    CHECK(scalar_mul(e, 0, p) == id);
    CHECK(scalar_mul(e, 2, p) == Point::affine(f->zero(), f->make(12)));
    CHECK(scalar_mul(e, 4, p) == id);
}

TEST_CASE("legendre group law") {
    auto f = FieldContext::create(13);
    Curve l = Curve::legendre(f->make(2));
    Point p = Point::affine(f->make(1), f->zero());
    CHECK(add_points(l, p, p) == Point::infinity());
    CHECK(add_points(l, p, Point::infinity()) == p);
}

TEST_CASE("counts and traces") {
    auto f5 = FieldContext::create(5);
    CHECK(count_points(Curve::legendre(f5->make(2)), CountMethod::Exhaustive) == 8);
    CHECK(count_points(Curve::legendre(f5->make(2)), CountMethod::CharSum) == 8);
    CHECK(trace_of_frobenius(Curve::legendre(f5->make(2))) == -2);

    auto f13 = FieldContext::create(13);
    CHECK(count_points(Curve::legendre(f13->make(2))) == 8);
    CHECK(trace_of_frobenius(Curve::legendre(f13->make(2))) == 6);
    CHECK(trace_of_frobenius(Curve::legendre(f13->make(3))) == -2);
    CHECK(count_points(Curve::edwards(f13->make(2))) == 8);
}

TEST_CASE("point count consistency across models and methods") {
    for (auto [p, m] : odd_prime_powers(121)) {
        auto f = FieldContext::create(p, m);
        for (uint64_t d = 2; d < f->q(); ++d) {
            FieldElement dd = f->from_code(d);
            uint64_t nl_ex = count_points(Curve::legendre(dd), CountMethod::Exhaustive);
            uint64_t nl_cs = count_points(Curve::legendre(dd), CountMethod::CharSum);
            uint64_t ne_ex = count_points(Curve::edwards(dd), CountMethod::Exhaustive);
            uint64_t ne_cs = count_points(Curve::edwards(dd), CountMethod::CharSum);
            REQUIRE(nl_ex == nl_cs);
            REQUIRE(ne_ex == ne_cs);
            REQUIRE(ne_ex == nl_ex);  // the two models are isogenous
            REQUIRE(nl_ex % 4 == 0);
            int64_t a = static_cast<int64_t>(f->q()) + 1 - static_cast<int64_t>(nl_ex);
            REQUIRE(a * a <= 4 * static_cast<int64_t>(f->q()));
        }
    }
}

TEST_CASE("full xy-scan agrees at small sizes") {
    for (uint64_t p : {5ull, 7ull, 11ull, 13ull}) {
        auto f = FieldContext::create(p);
        for (uint64_t d = 2; d < p; ++d) {
            FieldElement dd = f->from_code(d);
            uint64_t brute = 0;
            for (uint64_t x = 0; x < p; ++x)
                for (uint64_t y = 0; y < p; ++y) {
                    uint64_t lhs = f->mul(y, y);
                    uint64_t rhs = f->mul(f->mul(x, f->sub(x, 1)), f->sub(x, d));
                    if (lhs == rhs) ++brute;
                }
            REQUIRE(brute + 1 == count_points(Curve::legendre(dd)));
        }
    }
}

TEST_CASE("montgomery and twisted counts") {
    auto f = FieldContext::create(13);
    Curve mont = Curve::montgomery(f->make(4), f->make(5));
    CHECK(count_points(mont, CountMethod::Exhaustive) == count_points(mont, CountMethod::CharSum));
    for (uint64_t a = 2; a < 13; ++a) {
        for (uint64_t d = 2; d < 13; ++d) {
            if (a == d) continue;
            Curve tw = Curve::twisted_edwards(f->make(a), f->make(d));
            uint64_t ex = count_points(tw, CountMethod::Exhaustive);
            uint64_t cs = count_points(tw, CountMethod::CharSum);
            REQUIRE(ex == cs);
            // quadratic-twist relation against L_{d/a}
            uint64_t nl = count_points(Curve::legendre(f->make(d) / f->make(a)));
            if (f->chi2(a) == 1) REQUIRE(ex == nl);
            else REQUIRE(ex == 2 * 13 + 2 - nl);
        }
    }
}

TEST_CASE("huff count matches the edwards parameter") {
    for (uint64_t p : {5ull, 13ull}) {
        auto f = FieldContext::create(p);
        for (uint64_t a = 1; a < p; ++a)
            for (uint64_t b = 1; b < p; ++b) {
                if (f->mul(a, a) == f->mul(b, b)) continue;
                uint64_t num = f->sub(a, b), den = f->add(a, b);
                uint64_t d = f->div(f->mul(num, num), f->mul(den, den));
                if (d == 0 || d == 1) continue;
                Curve h = Curve::huff(f->make(a), f->make(b));
                REQUIRE(count_points(h, CountMethod::Exhaustive) ==
                        count_points(Curve::edwards(f->from_code(d))));
                REQUIRE(count_points(h, CountMethod::CharSum) ==
                        count_points(h, CountMethod::Exhaustive));
            }
    }
}

TEST_CASE("edwards completeness for nonsquare d") {
    for (auto [p, m] : odd_prime_powers(121)) {
        auto f = FieldContext::create(p, m);
        uint64_t minus_one = f->neg(1);
        for (uint64_t d = 2; d < f->q(); ++d) {
            if (f->chi2(d) != -1) continue;
            Curve e = Curve::edwards(f->from_code(d));
            auto pts = enumerate_points(e);
            uint64_t violations = 0;
            for (const Point& a : pts) {
                if (!a.is_affine()) ++violations;
                for (const Point& b : pts) {
                    // the unified denominators 1 +- d x1 x2 y1 y2 never vanish
                    uint64_t t = f->mul(f->mul(f->mul(d, a.x().code()), b.x().code()),
                                        f->mul(a.y().code(), b.y().code()));
                    if (t == 1 || t == minus_one) ++violations;
                }
            }
            REQUIRE(violations == 0);
        }
    }
}

TEST_CASE("group law spot checks") {
    std::mt19937_64 rng(42);
    for (uint64_t p : {13ull, 17ull}) {
        auto f = FieldContext::create(p);
        std::vector<Curve> curves;
        curves.push_back(Curve::edwards(f->make(3)));
        curves.push_back(Curve::edwards(f->make(p == 13 ? 2 : 3)));
        curves.push_back(Curve::legendre(f->make(5)));
        curves.push_back(Curve::weierstrass(f->make(1), f->make(3), f->make(1)));
        curves.push_back(Curve::montgomery(f->make(3), f->make(1)));
        for (const Curve& c : curves) {
            auto pts = enumerate_points(c);
            for (int rep = 0; rep < 1000; ++rep) {
                const Point& a = pts[rng() % pts.size()];
                const Point& b = pts[rng() % pts.size()];
                const Point& cpt = pts[rng() % pts.size()];
                REQUIRE(add_points(c, add_points(c, a, b), cpt) ==
                        add_points(c, a, add_points(c, b, cpt)));
                REQUIRE(add_points(c, a, negate_point(c, a)) == c.identity());
            }
        }
    }
}

TEST_CASE("j-invariants") {
    auto f = FieldContext::create(13);
    CHECK(j_invariant(Curve::legendre(f->make(2))).code() == 1728 % 13);
    CHECK(j_invariant(Curve::edwards(f->make(12))).code() == 1728 % 13);  // j_E(-1) = 1728
    // j_L(d) = 0 iff d^2 - d + 1 = 0: mod 13 roots of x^2-x+1 are 4 and 10
    CHECK(j_invariant(Curve::legendre(f->make(4))).is_zero());
    CHECK(j_invariant(Curve::legendre(f->make(10))).is_zero());

    // the attached Weierstrass model carries j_E, and the Legendre cubic carries j_L
    for (uint64_t d = 2; d < 13; ++d) {
        Curve e = Curve::edwards(f->from_code(d));
        CHECK(j_invariant(e) == j_invariant(edwards_weierstrass_form(e)));
        Curve l = Curve::legendre(f->from_code(d));
        Curve lw = Curve::weierstrass(-(f->one() + f->from_code(d)), f->from_code(d), f->zero());
        CHECK(j_invariant(l) == j_invariant(lw));
    }
}

TEST_CASE("group structure") {
    auto f5 = FieldContext::create(5);
    GroupStructure g = group_structure(Curve::legendre(f5->make(2)));
    CHECK(g == GroupStructure{2, 4});

    auto f13 = FieldContext::create(13);
    GroupStructure g16 = group_structure(Curve::legendre(f13->make(3)));
    CHECK(g16.n1 * g16.n2 == 16);
    CHECK((g16.n1 == 1 || g16.n1 == 2 || g16.n1 == 4));

    for (uint64_t d = 2; d < 13; ++d) {
        Curve l = Curve::legendre(f13->from_code(d));
        GroupStructure s = group_structure(l);
        CHECK(s.n1 * s.n2 == count_points(l));
        CHECK(s.n2 % s.n1 == 0);
        CHECK((13 - 1) % s.n1 == 0);
        CHECK(s.n1 % 2 == 0);  // full rational 2-torsion
        // the Edwards model carries the same group as its Weierstrass form
        Curve e = Curve::edwards(f13->from_code(d));
        CHECK(group_structure(e) == group_structure(edwards_weierstrass_form(e)));
    }
}

TEST_CASE("tau correspondence") {
    auto f = FieldContext::create(13);
    for (uint64_t d : {3ull, 9ull, 10ull, 12ull, 2ull, 5ull}) {
        Curve e = Curve::edwards(f->from_code(d));
        Curve w = edwards_weierstrass_form(e);
        auto pts = enumerate_points(e);
        auto wpts = enumerate_points(w);
        REQUIRE(pts.size() == wpts.size());
        std::set<std::string> seen;
        for (const Point& pt : pts) {
            Point img = edwards_to_weierstrass(e, pt);
            REQUIRE(is_on_curve(w, img));
            REQUIRE(weierstrass_to_edwards(e, img) == pt);
            seen.insert(img.str());
        }
        REQUIRE(seen.size() == pts.size());
        // group transport
        for (const Point& a : pts)
            for (const Point& b : pts) {
                Point lhs = edwards_to_weierstrass(e, add_points(e, a, b));
                Point rhs = add_points(w, edwards_to_weierstrass(e, a), edwards_to_weierstrass(e, b));
                REQUIRE(lhs == rhs);
            }
    }
}

TEST_CASE("point parsing and printing") {
    auto f = FieldContext::create(13);
    CHECK(parse_point("0,1", f) == Point::affine(f->zero(), f->one()));
    CHECK(parse_point("inf", f).is_infinity());
    CHECK(parse_point("exc:X+", f) == Point::exceptional(ExcLabel::XPlus));
    CHECK(parse_point("(3,4)", f) == Point::affine(f->make(3), f->make(4)));
    CHECK_THROWS_AS(parse_point("0;1", f), Error);
    CHECK(Point::affine(f->make(3), f->make(4)).str() == "(3,4)");
    auto f9 = FieldContext::create(3, 2);
    Point pt = parse_point("1,2,0,1", f9);
    CHECK(pt.x() == f9->from_coeffs({1, 2}));
    CHECK(pt.y() == f9->from_coeffs({0, 1}));
}

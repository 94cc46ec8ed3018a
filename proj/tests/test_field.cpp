#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>
#include <set>

#include "edc/field.hpp"

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
    std::sort(out.begin(), out.end(), [](auto a, auto b) {
        auto qa = a.first, qb = b.first;
        for (unsigned i = 1; i < a.second; ++i) qa *= a.first;
        for (unsigned i = 1; i < b.second; ++i) qb *= b.first;
        return qa < qb;
    });
    return out;
}
}  // namespace

TEST_CASE("context construction") {
    auto f13 = FieldContext::create(13);
    CHECK(f13->q() == 13);
    CHECK(f13->describe() == "13^1");

    auto f9 = FieldContext::create(3, 2);
    CHECK(f9->q() == 9);
    // smallest lexicographic irreducible quadratic over F_3 is x^2 + 1
    CHECK(f9->modulus() == std::vector<uint64_t>{1, 0, 1});
    CHECK(f9->describe() == "3^2:1,0,1");

    CHECK_THROWS_AS(FieldContext::create(9), FieldError);   // composite
    CHECK_THROWS_AS(FieldContext::create(2), FieldError);   // even
    CHECK_THROWS_AS(FieldContext::create(1021, 3), FieldError);  // above census bound
    // reducible modulus: x^2 over F_3
    CHECK_THROWS_AS(FieldContext::create(3, 2, std::vector<uint64_t>{0, 0, 1}), FieldError);
}

TEST_CASE("arithmetic in F_13") {
    auto f = FieldContext::create(13);
    CHECK((f->make(7) * f->make(2)).code() == 1);
    CHECK(f->make(9).inverse().code() == 3);
    CHECK((f->make(5) + f->zero()) == f->make(5));
    CHECK((f->make(5) - f->make(7)).code() == 11);
    CHECK((-f->make(5)).code() == 8);
    CHECK(f->make(2).pow(-1).code() == 7);
    CHECK_THROWS_AS(f->make(1) / f->zero(), FieldError);
    CHECK_THROWS_AS(f->zero().inverse(), FieldError);

    auto f17 = FieldContext::create(17);
    CHECK_THROWS_AS(f->make(1) + f17->make(1), FieldError);
}

TEST_CASE("arithmetic in an extension") {
    auto f9 = FieldContext::create(3, 2);
    // generator x with x^2 = -1: (x)(x) = 2
    FieldElement x = f9->from_coeffs({0, 1});
    CHECK((x * x).code() == 2);
    FieldElement a = f9->from_coeffs({1, 2});
    CHECK((a * a.inverse()).is_one());
    CHECK(a.pow(8).is_one());  // group order 8
}

TEST_CASE("chi2") {
    auto f = FieldContext::create(13);
    CHECK(f->chi2(0) == 0);
    CHECK(f->chi2(2) == -1);
    CHECK(f->chi2(12) == 1);
    // matches enumeration of squares
    std::set<uint64_t> squares;
    for (uint64_t x = 1; x < 13; ++x) squares.insert(x * x % 13);
    for (uint64_t x = 1; x < 13; ++x) CHECK(f->chi2(x) == (squares.count(x) ? 1 : -1));
}

TEST_CASE("canonical square roots") {
    auto f = FieldContext::create(13);
    CHECK(f->sqrt(12).value() == 5);  // roots 5 and 8
    CHECK_FALSE(f->sqrt(2).has_value());
    CHECK(f->sqrt(1).value() == 1);
    CHECK(f->sqrt(0).value() == 0);

    auto f9 = FieldContext::create(3, 2);
    for (uint64_t x = 0; x < 9; ++x) {
        auto r = f9->sqrt(x);
        if (!r) continue;
        CHECK(f9->mul(*r, *r) == x);
        // canonical: lexicographically at most its negation
        CHECK_FALSE(f9->lex_less(f9->neg(*r), *r));
    }
}

TEST_CASE("fourth power classes") {
    auto f13 = FieldContext::create(13);
    CHECK(f13->fourth_power_class(3) == FourthPowerClass::FourthPower);
    CHECK(f13->fourth_power_class(4) == FourthPowerClass::SquareNotFourth);
    CHECK(f13->fourth_power_class(2) == FourthPowerClass::NonSquare);
    CHECK(f13->fourth_power_class(0) == FourthPowerClass::Zero);
    // fourth powers mod 13 are {1,3,9}
    std::set<uint64_t> fp;
    for (uint64_t x = 1; x < 13; ++x) fp.insert(x * x % 13 * x % 13 * x % 13);
    CHECK(fp == std::set<uint64_t>{1, 3, 9});

    auto f7 = FieldContext::create(7);  // q = 3 mod 4: fourth powers = squares
    CHECK(f7->fourth_power_class(2) == FourthPowerClass::FourthPower);
    for (uint64_t x = 1; x < 7; ++x)
        CHECK((f7->fourth_power_class(x) == FourthPowerClass::FourthPower) == (f7->chi2(x) == 1));
}

TEST_CASE("square and fourth power counts") {
    for (auto [p, m] : odd_prime_powers(121)) {
        auto f = FieldContext::create(p, m);
        uint64_t q = f->q();
        uint64_t squares = 0, fourths = 0;
        for (uint64_t x = 1; x < q; ++x) {
            if (f->chi2(x) == 1) ++squares;
            if (f->fourth_power_class(x) == FourthPowerClass::FourthPower) ++fourths;
        }
        CHECK(squares == (q - 1) / 2);
        if (q % 4 == 1) CHECK(fourths == (q - 1) / 4);
        else CHECK(fourths == (q - 1) / 2);
    }
}

TEST_CASE("chi2 multiplicativity") {
    for (auto [p, m] : odd_prime_powers(121)) {
        auto f = FieldContext::create(p, m);
        uint64_t q = f->q();
        for (uint64_t x = 1; x < q; ++x)
            for (uint64_t y = 1; y < q; ++y)
                REQUIRE(f->chi2(f->mul(x, y)) == f->chi2(x) * f->chi2(y));
    }
}

TEST_CASE("sqrt properties") {
    for (auto [p, m] : odd_prime_powers(121)) {
        auto f = FieldContext::create(p, m);
        for (uint64_t x = 1; x < f->q(); ++x) {
            auto r = f->sqrt(x);
            REQUIRE(r.has_value() == (f->chi2(x) == 1));
            if (r) {
                REQUIRE(f->mul(*r, *r) == x);
                REQUIRE(f->mul(f->neg(*r), f->neg(*r)) == x);
            }
        }
    }
}

TEST_CASE("extension lifting") {
    auto f13 = FieldContext::create(13);
    Extension e = lift_to_extension(f13, 2);
    CHECK(e.field->q() == 169);
    CHECK(e.embed_code(1) == 1);
    // every F_13 element becomes a square in F_169
    for (uint64_t x = 1; x < 13; ++x) CHECK(e.field->chi2(e.embed_code(x)) == 1);

    // embedding is a ring homomorphism
    auto f9 = FieldContext::create(3, 2);
    Extension e2 = lift_to_extension(f9, 2);
    CHECK(e2.field->q() == 81);
    for (uint64_t a = 0; a < 9; ++a)
        for (uint64_t b = 0; b < 9; ++b) {
            REQUIRE(e2.embed_code(f9->add(a, b)) ==
                    e2.field->add(e2.embed_code(a), e2.embed_code(b)));
            REQUIRE(e2.embed_code(f9->mul(a, b)) ==
                    e2.field->mul(e2.embed_code(a), e2.embed_code(b)));
        }
    CHECK_THROWS_AS(lift_to_extension(f13, 3), FieldError);
    // size bound: 521^4 is far above the default census bound
    CHECK_THROWS_AS(lift_to_extension(FieldContext::create(521), 4), FieldError);
}

TEST_CASE("element serialization") {
    auto f13 = FieldContext::create(13);
    CHECK(f13->format_element(7) == "7");
    CHECK(f13->parse_element("20") == 7);   // reduced, not rejected
    CHECK(f13->parse_element("-1") == 12);
    auto f9 = FieldContext::create(3, 2);
    FieldElement a = f9->from_coeffs({1, 2});
    CHECK(a.str() == "1,2");
    CHECK(f9->parse_element("1,2") == a.code());
    CHECK_THROWS_AS(f13->parse_element("x"), FieldError);
}

// the character-sum identity behind the Edwards/Legendre count comparison:
// sum over x of F((a1 x^2 + b1 x + c1)/(a2 x^2 + b2 x + c2)) rewritten through
// chi2(D x^2 + Delta x + d) for F = chi2
TEST_CASE("quadratic character sum identity") {
    std::mt19937_64 rng(0xffeeddcc);
    for (auto [p, m] : odd_prime_powers(121)) {
        auto f = FieldContext::create(p, m);
        uint64_t q = f->q();
        int tried = 0;
        while (tried < 50) {
            uint64_t a1 = rng() % q, b1 = rng() % q, c1 = rng() % q;
            uint64_t a2 = rng() % q, b2 = rng() % q, c2 = rng() % q;
            uint64_t four = f->from_int(4), two = f->from_int(2);
            uint64_t D = f->sub(f->mul(b2, b2), f->mul(four, f->mul(a2, c2)));
            uint64_t Delta = f->add(f->sub(f->mul(four, f->mul(a1, c2)), f->mul(two, f->mul(b1, b2))),
                                    f->mul(four, f->mul(a2, c1)));
            uint64_t dd = f->sub(f->mul(b1, b1), f->mul(four, f->mul(a1, c1)));
            uint64_t disc = f->sub(f->mul(Delta, Delta), f->mul(four, f->mul(dd, D)));
            if (disc == 0) continue;
            ++tried;
            int64_t lhs = 0;
            for (uint64_t x = 0; x < q; ++x) {
                uint64_t den = f->add(f->mul(f->add(f->mul(a2, x), b2), x), c2);
                if (den == 0) continue;
                uint64_t num = f->add(f->mul(f->add(f->mul(a1, x), b1), x), c1);
                lhs += f->chi2(f->div(num, den));
            }
            int64_t rhs = 0;
            for (uint64_t x = 0; x < q; ++x) {
                uint64_t g = f->add(f->mul(f->add(f->mul(D, x), Delta), x), dd);
                rhs += f->chi2(g) * f->chi2(x);
                rhs += f->chi2(x);
            }
            if (a2 != 0) rhs -= f->chi2(f->div(a1, a2));
            REQUIRE(lhs == rhs);
        }
    }
}

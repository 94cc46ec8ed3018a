#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "edc/census.hpp"

using namespace edc;

TEST_CASE("unobstructed traces") {
    CHECK(unobstructed_traces(FieldContext::create(13)) == std::vector<int64_t>{-6, -2, 2, 6});
    CHECK(unobstructed_traces(FieldContext::create(7)) == std::vector<int64_t>{-4, 4});
    CHECK(unobstructed_traces(FieldContext::create(5)) == std::vector<int64_t>{-2, 2});
}

TEST_CASE("spectrum of F_13") {
    auto ctx = FieldContext::create(13);
    CensusTable t = trace_spectrum(ctx);
    CHECK(t.classes.size() == 4);
    CHECK(t.n_of(6) == 2);
    CHECK(t.n_of(-6) == 1);
    CHECK(t.n_of(-2) == 6);
    CHECK(t.n_of(2) == 2);
    // d = 2 files under A = 6 as a nonsquare; d = 3 under A = -2 as a fourth power
    const TraceClass* c6 = t.find(6);
    REQUIRE(c6 != nullptr);
    CHECK(std::find(c6->d_codes.begin(), c6->d_codes.end(), 2) != c6->d_codes.end());
    CHECK(c6->n_n2 >= 1);
    const TraceClass* cm2 = t.find(-2);
    REQUIRE(cm2 != nullptr);
    CHECK(std::find(cm2->d_codes.begin(), cm2->d_codes.end(), 3) != cm2->d_codes.end());
    CHECK(cm2->n_4 == 2);  // the fourth powers 3 and 9

    // threading gives an identical table
    CensusTable t4 = trace_spectrum(ctx, 4);
    CHECK(census_to_csv(t4) == census_to_csv(t));
}

TEST_CASE("isogeny class counts") {
    CHECK(isogeny_class_count(FieldContext::create(13)).formula == 4);
    CHECK(isogeny_class_count(FieldContext::create(13)).consistent());
    auto r7 = isogeny_class_count(FieldContext::create(7));
    CHECK(r7.formula == 3);
    CHECK(r7.consistent());
    auto r9 = isogeny_class_count(FieldContext::create(3, 2));
    CHECK(r9.formula == 3);
    CHECK(r9.consistent());
}

TEST_CASE("deuring polynomial") {
    DeuringPoly h3 = deuring_poly(3);
    CHECK(h3.coeffs == std::vector<uint64_t>{2, 2});  // -(1 + x) mod 3
    DeuringPoly h5 = deuring_poly(5);
    CHECK(h5.coeffs == std::vector<uint64_t>{1, 4, 1});  // x^2 + 4x + 1
    DeuringPoly h7 = deuring_poly(7);
    CHECK(h7.coeffs.size() == 4);

    CHECK(supersingular_params(FieldContext::create(3)).size() == 1);
    CHECK(supersingular_params(FieldContext::create(3))[0].code() == 2);
    CHECK(supersingular_params(FieldContext::create(5)).empty());
    auto roots7 = supersingular_params(FieldContext::create(7));
    std::set<uint64_t> got;
    for (const auto& r : roots7) got.insert(r.code());
    CHECK(got == std::set<uint64_t>{2, 4, 6});
    // all roots live in F_{p^2} and carry the even-power trace there
    CHECK(supersingular_params(FieldContext::create(7, 2)).size() == 3);
}

TEST_CASE("class number oracle") {
    CHECK(class_number_oracle(7) == 1);
    CHECK(class_number_oracle(11) == 1);
    CHECK(class_number_oracle(23) == 3);
    CHECK(class_number_oracle(163) == 1);
    CHECK(class_number_oracle(47) == 5);
    CHECK_THROWS_AS(class_number_oracle(13), CensusError);
    CHECK_THROWS_AS(class_number_oracle(3), CensusError);
}

TEST_CASE("deuring report") {
    CHECK(deuring_report(FieldContext::create(13)).verified);
    CHECK(deuring_report(FieldContext::create(3)).verified);
    CHECK(deuring_report(FieldContext::create(11)).verified);
    CHECK(deuring_report(FieldContext::create(7, 2)).verified);
}

TEST_CASE("katz ratios at small fields") {
    auto t13 = trace_spectrum(FieldContext::create(13));
    TheoremReport rep = katz_ratio_report(t13);
    CHECK(rep.verified);
    // F_13: A = 6 has ord2(8) = 3 -> r = 2; A = -2 has ord2(16) = 4 -> r = 3
    CHECK(t13.n_of(6) == 2 * t13.n_of(-6));
    CHECK(t13.n_of(-2) == 3 * t13.n_of(2));

    CHECK(katz_ratio_report(trace_spectrum(FieldContext::create(29))).verified);
    CHECK_THROWS_AS(katz_ratio_report(trace_spectrum(FieldContext::create(7))), CensusError);
}

TEST_CASE("partition identity reports") {
    auto t13 = trace_spectrum(FieldContext::create(13));
    CHECK(theorem_report(t13, "7.6").verified);
    CHECK(theorem_report(t13, "7.8").verified);
    CHECK(theorem_report(t13, "8.2").verified);
    CHECK(theorem_report(t13, "8.4").verified);
    CHECK_THROWS_AS(theorem_report(t13, "7.7"), CensusError);  // wrong residue class

    auto t7 = trace_spectrum(FieldContext::create(7));
    CHECK(theorem_report(t7, "7.7").verified);
    CHECK(theorem_report(t7, "7.8").verified);
    CHECK(theorem_report(t7, "8.1").verified);
    CHECK_THROWS_AS(theorem_report(t7, "8.2"), CensusError);
    CHECK_THROWS_AS(theorem_report(t7, "9.9"), CensusError);

    // F_13 example from the spectrum: N_4(-2) = N(-2) - 2N(2) = 6 - 4 = 2
    CHECK(t13.n_4_of(-2) == 2);
    CHECK(t13.n_of(-2) - 2 * t13.n_of(2) == 2);
}

TEST_CASE("bijection mechanics at F_13") {
    auto ctx = FieldContext::create(13);
    CensusTable t = trace_spectrum(ctx);
    // d = 4: sqrt = 2, lambda1 = -8 = 5, lambda2 = 8/9 = 11
    BijectionReport rep = bijection_trace(ctx->make(4), t);
    CHECK(rep.lambda1.code() == 5);
    CHECK(rep.lambda2.code() == 11);
    CHECK(rep.lambdas_nonsquare);
    CHECK(rep.lambda_relation);
    CHECK(rep.traces_match);
    CHECK(rep.mu_pair_matches);
    std::set<uint64_t> mus{rep.mu1.code(), rep.mu2.code()};
    CHECK(mus == std::set<uint64_t>{4, 10});
    CHECK(rep.all_passed());

    CHECK_THROWS_AS(bijection_trace(ctx->make(3), t), CensusError);  // fourth power
    CHECK_THROWS_AS(bijection_trace(ctx->make(2), t), CensusError);  // nonsquare
}

TEST_CASE("classify") {
    auto ctx = FieldContext::create(13);
    ClassifyRecord r2 = classify(ctx->make(2));
    CHECK(r2.trace == 6);
    CHECK(r2.order == 8);
    CHECK(r2.complete);
    CHECK_FALSE(r2.original_isogenous);
    CHECK_FALSE(r2.supersingular);

    ClassifyRecord r3 = classify(ctx->make(3));
    CHECK(r3.trace == -2);
    CHECK(r3.order == 16);
    CHECK(r3.fourth_class == FourthPowerClass::FourthPower);
    CHECK(r3.original_isogenous);

    auto f3 = FieldContext::create(3);
    CHECK(classify(f3->make(2)).supersingular);
    std::string json = r3.to_json();
    CHECK(json.find("\"supersingular\": false") != std::string::npos);
}

TEST_CASE("census round trips") {
    for (auto ctx : {FieldContext::create(13), FieldContext::create(3, 2)}) {
        CensusTable t = trace_spectrum(ctx);
        CensusTable via_csv = census_from_csv(census_to_csv(t));
        CHECK(census_to_csv(via_csv) == census_to_csv(t));
        CensusTable via_json = census_from_json(census_to_json(t));
        CHECK(census_to_json(via_json) == census_to_json(t));
        CHECK(via_csv.ctx->describe() == ctx->describe());
        CHECK(via_csv.classes.size() == t.classes.size());
    }
}

TEST_CASE("spectrum keys are the unobstructed plus supersingular traces") {
    for (uint64_t q = 3; q <= 400; q += 2) {
        uint64_t p = q;
        unsigned m = 1;
        if (!is_prime_u64(q)) {
            bool found = false;
            for (uint64_t b = 3; b * b <= q; b += 2) {
                if (!is_prime_u64(b)) continue;
                uint64_t t = b;
                unsigned e = 1;
                while (t < q) t *= b, ++e;
                if (t == q) {
                    p = b;
                    m = e;
                    found = true;
                    break;
                }
            }
            if (!found) continue;
        }
        auto ctx = FieldContext::create(p, m);
        CensusTable table = trace_spectrum(ctx);
        std::set<int64_t> keys;
        for (const auto& [a, cls] : table.classes) keys.insert(a);
        std::set<int64_t> expect;
        for (int64_t a : unobstructed_traces(ctx)) expect.insert(a);
        // supersingular classes
        if (!supersingular_params(ctx).empty()) {
            if (m % 2 == 1) {
                expect.insert(0);
            } else {
                uint64_t pk = 1;
                for (unsigned i = 0; i < m / 2; ++i) pk *= p;
                int64_t eps = (pk % 4 == 1) ? 1 : -1;
                expect.insert(eps * 2 * static_cast<int64_t>(pk));
            }
        }
        REQUIRE(keys == expect);
    }
}

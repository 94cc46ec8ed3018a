#pragma once

// Per-field parameter census: the trace spectrum with refined counts, the
// isogeny-class counting formulas, supersingular parameters via the Deuring
// polynomial, a reduced-forms class-number oracle, and report generators for
// the ratio and partition identities.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "edc/curve.hpp"
#include "edc/field.hpp"
#include "edc/torsion.hpp"

namespace edc {

struct CensusError : Error {
    using Error::Error;
};

struct TraceClass {
    int64_t trace = 0;
    std::vector<uint64_t> d_codes;  // canonically sorted parameter codes
    uint64_t n = 0;                 // = n_n2 + n_2n4 + n_4
    uint64_t n_n2 = 0;              // non-square d
    uint64_t n_2 = 0;               // square d (= n_2n4 + n_4)
    uint64_t n_2n4 = 0;             // square but not fourth power
    uint64_t n_4 = 0;               // fourth power
};

struct CensusTable {
    FieldCtxPtr ctx;
    std::map<int64_t, TraceClass> classes;

    const TraceClass* find(int64_t trace) const;
    uint64_t n_of(int64_t trace) const;
    uint64_t n_n2_of(int64_t trace) const;
    uint64_t n_2n4_of(int64_t trace) const;
    uint64_t n_4_of(int64_t trace) const;
};

// all A with |A| <= 2 sqrt(q), gcd(A, p) = 1, A = q+1 (mod 4), ascending
std::vector<int64_t> unobstructed_traces(const FieldCtxPtr& ctx);

CensusTable trace_spectrum(const FieldCtxPtr& ctx, unsigned threads = 1);

struct ClassCountResult {
    uint64_t formula = 0;
    uint64_t observed = 0;
    bool consistent() const { return formula == observed; }
};
ClassCountResult isogeny_class_count(const FieldCtxPtr& ctx, unsigned threads = 1);

struct DeuringPoly {
    uint64_t p = 0;
    std::vector<uint64_t> coeffs;  // over F_p, low degree first, degree (p-1)/2
};
DeuringPoly deuring_poly(uint64_t p);

// roots of the Deuring polynomial in F_q; asserts the supersingular trace
// pattern (0 for odd powers, eps*2*p^{m/2} with eps*p^{m/2} = 1 mod 4 for even)
std::vector<FieldElement> supersingular_params(const FieldCtxPtr& ctx);

// class number h(-p) for p = 3 (mod 4), p > 3, by counting reduced primitive
// binary quadratic forms of discriminant -p
uint64_t class_number_oracle(uint64_t p);

struct TheoremCheck {
    std::string context;
    bool passed = true;
    std::string detail;
};

struct TheoremReport {
    std::string theorem;
    std::string field;
    bool verified = true;
    std::vector<TheoremCheck> checks;

    void add(bool ok, const std::string& context, const std::string& detail);
    std::string to_json() const;
};

TheoremReport katz_ratio_report(const CensusTable& table);
// which: 7.6, 7.7, 7.8, 8.1, 8.2, 8.4
TheoremReport theorem_report(const CensusTable& table, const std::string& which);
// Deuring root counts, S_p identities and the supersingular trace pattern
TheoremReport deuring_report(const FieldCtxPtr& ctx);

struct BijectionReport {
    FieldElement d, lambda1, lambda2, mu1, mu2;
    bool lambdas_nonsquare = false;
    bool traces_match = false;
    bool lambda_relation = false;       // lambda2 = lambda1/(lambda1-1)
    bool mu_pair_matches = false;       // {mu1, mu2} = {d, 1/d}
    std::array<bool, 4> doubling{};     // the four compositions act as [2]
    bool all_passed() const;
    std::string to_json() const;
};
BijectionReport bijection_trace(const FieldElement& d, const CensusTable& table);

struct ClassifyRecord {
    FieldElement d;
    int64_t trace = 0;
    uint64_t order = 0;
    int chi_d = 0;
    bool complete = false;
    FourthPowerClass fourth_class = FourthPowerClass::Zero;
    std::vector<FieldElement> orbit_values;
    std::vector<FieldElement> iso_class_values;
    TorsionProfile torsion;
    bool supersingular = false;
    bool original_isogenous = false;
    std::string to_json() const;
};
ClassifyRecord classify(const FieldElement& d);

// serialization (io.cpp)
std::string fourth_class_name(FourthPowerClass c);
FieldCtxPtr parse_ctx_string(const std::string& text, uint64_t max_q = FieldContext::kDefaultMaxQ);
std::string census_to_csv(const CensusTable& table);
std::string census_to_json(const CensusTable& table);
CensusTable census_from_csv(const std::string& text, uint64_t max_q = FieldContext::kDefaultMaxQ);
CensusTable census_from_json(const std::string& text, uint64_t max_q = FieldContext::kDefaultMaxQ);

}  // namespace edc

#pragma once

// Exact arithmetic in F_{p^m} for odd p at desk scale (q bounded, default 2^20).
// Elements are stored as base-p digit codes in [0, q); the digit sequence is the
// coefficient vector of the polynomial representative, low degree first.

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace edc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct FieldError : Error {
    using Error::Error;
};

enum class FourthPowerClass { Zero, FourthPower, SquareNotFourth, NonSquare };

class FieldContext;
using FieldCtxPtr = std::shared_ptr<const FieldContext>;

class FieldElement {
public:
    FieldElement() = default;
    FieldElement(FieldCtxPtr ctx, uint64_t code) : ctx_(std::move(ctx)), code_(code) {}

    const FieldCtxPtr& ctx() const { return ctx_; }
    uint64_t code() const { return code_; }
    bool valid() const { return ctx_ != nullptr; }
    bool is_zero() const { return code_ == 0; }
    bool is_one() const { return code_ == 1; }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator/(const FieldElement& o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;
    FieldElement pow(long long e) const;
    int chi2() const;
    std::optional<FieldElement> sqrt() const;
    FourthPowerClass fourth_power_class() const;

    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    std::string str() const;

private:
    FieldCtxPtr ctx_;
    uint64_t code_ = 0;
};

class FieldContext : public std::enable_shared_from_this<FieldContext> {
public:
    static constexpr uint64_t kDefaultMaxQ = 1ull << 20;
    static constexpr unsigned kMaxDegree = 32;

    // modulus: monic polynomial coefficients, low degree first, size m+1.
    // Empty modulus selects the lexicographically smallest monic irreducible
    // (coefficients compared low-degree-first), so runs are reproducible.
    static FieldCtxPtr create(uint64_t p, unsigned m = 1,
                              std::vector<uint64_t> modulus = {},
                              uint64_t max_q = kDefaultMaxQ);

    uint64_t p() const { return p_; }
    unsigned m() const { return m_; }
    uint64_t q() const { return q_; }
    uint64_t max_q() const { return max_q_; }
    const std::vector<uint64_t>& modulus() const { return modulus_; }
    bool same(const FieldContext& o) const;

    // code-level arithmetic (hot paths work on raw codes)
    uint64_t add(uint64_t a, uint64_t b) const;
    uint64_t sub(uint64_t a, uint64_t b) const;
    uint64_t neg(uint64_t a) const;
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t inv(uint64_t a) const;
    uint64_t div(uint64_t a, uint64_t b) const;
    uint64_t pow(uint64_t a, uint64_t e) const;
    uint64_t pow_int(uint64_t a, long long e) const;
    uint64_t from_int(long long v) const;  // constant polynomial, reduced mod p

    // quadratic character as x^((q-1)/2); prime fields keep a lazy table.
    int chi2(uint64_t a) const;
    // canonical square root: integer representative <= (p-1)/2 for m = 1,
    // lexicographically smaller coefficient sequence (low-degree-first) otherwise
    std::optional<uint64_t> sqrt(uint64_t a) const;
    FourthPowerClass fourth_power_class(uint64_t a) const;
    bool lex_less(uint64_t a, uint64_t b) const;

    FieldElement make(long long v) const { return FieldElement(shared_from_this(), from_int(v)); }
    FieldElement from_code(uint64_t code) const;
    FieldElement from_coeffs(const std::vector<uint64_t>& coeffs) const;
    FieldElement zero() const { return FieldElement(shared_from_this(), 0); }
    FieldElement one() const { return FieldElement(shared_from_this(), 1); }

    std::string describe() const;                      // "13^1" or "3^2:1,0,1"
    std::string format_element(uint64_t code) const;   // "7" or "1,2"
    uint64_t parse_element(const std::string& text) const;

    FieldContext(const FieldContext&) = delete;
    FieldContext& operator=(const FieldContext&) = delete;

private:
    FieldContext() = default;

    void decode(uint64_t code, uint64_t* digits) const;
    uint64_t encode(const uint64_t* digits) const;
    const std::vector<int8_t>& chi_table() const;

    uint64_t p_ = 0;
    unsigned m_ = 1;
    uint64_t q_ = 0;
    uint64_t max_q_ = kDefaultMaxQ;
    std::vector<uint64_t> modulus_;
    std::vector<uint64_t> xpow_;  // rows x^{m+j} mod modulus, j = 0..m-2, flattened

    mutable std::vector<int8_t> chi_table_;
    mutable std::once_flag chi_once_;
    mutable uint64_t nonsquare_ = 0;  // cached witness for square-root extraction
    mutable std::once_flag nonsquare_once_;
};

// F_{q^k} together with the embedding of the base field, k in {2, 4}.
struct Extension {
    FieldCtxPtr base;
    FieldCtxPtr field;
    std::vector<uint64_t> gen_pows;  // codes of rho^0..rho^{m-1} in the extension

    uint64_t embed_code(uint64_t code) const;
    FieldElement embed(const FieldElement& a) const;
};

Extension lift_to_extension(const FieldCtxPtr& base, unsigned k,
                            std::optional<uint64_t> max_q_override = {});

// primality by trial division; used for context validation and factoring desk-scale orders
bool is_prime_u64(uint64_t n);
uint64_t isqrt_u64(uint64_t n);

}  // namespace edc

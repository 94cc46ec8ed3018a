#include "edc/field.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <cmath>
#include <sstream>

namespace edc {

namespace {

// ---- small polynomial helpers over F_p (vectors low-degree-first, may carry leading zeros) ----

int poly_deg(const std::vector<uint64_t>& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

uint64_t inv_mod_prime(uint64_t a, uint64_t p) {
    uint64_t r = 1, e = p - 2, b = a % p;
    while (e) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

// remainder of f by monic-normalizable g, in place arithmetic over F_p
std::vector<uint64_t> poly_rem(std::vector<uint64_t> f, const std::vector<uint64_t>& g, uint64_t p) {
    int dg = poly_deg(g);
    uint64_t lead_inv = inv_mod_prime(g[dg], p);
    for (int i = poly_deg(f); i >= dg; i = poly_deg(f)) {
        uint64_t c = f[i] * lead_inv % p;
        for (int j = 0; j <= dg; ++j) {
            uint64_t sub = c * g[j] % p;
            uint64_t& slot = f[i - dg + j];
            slot = (slot + p - sub) % p;
        }
    }
    return f;
}

bool poly_is_irreducible(const std::vector<uint64_t>& f, uint64_t p) {
    int n = poly_deg(f);
    if (n <= 0) return false;
    if (n == 1) return true;
    // trial division by every monic polynomial of degree 1..n/2
    for (int e = 1; e <= n / 2; ++e) {
        uint64_t count = 1;
        for (int i = 0; i < e; ++i) count *= p;
        std::vector<uint64_t> g(e + 1, 0);
        g[e] = 1;
        for (uint64_t idx = 0; idx < count; ++idx) {
            uint64_t t = idx;
            for (int i = 0; i < e; ++i) {
                g[i] = t % p;
                t /= p;
            }
            if (poly_deg(poly_rem(f, g, p)) < 0) return false;
        }
    }
    return true;
}

}  // namespace

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

uint64_t isqrt_u64(uint64_t n) {
    uint64_t r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// ---------------- FieldContext ----------------

FieldCtxPtr FieldContext::create(uint64_t p, unsigned m, std::vector<uint64_t> modulus, uint64_t max_q) {
    if (p < 3 || p % 2 == 0) throw FieldError("characteristic must be an odd prime, got " + std::to_string(p));
    if (!is_prime_u64(p)) throw FieldError("composite characteristic " + std::to_string(p));
    if (m < 1 || m > kMaxDegree) throw FieldError("extension degree out of range");

    uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
        if (q > max_q / p) throw FieldError("field size p^m exceeds census bound " + std::to_string(max_q));
        q *= p;
    }
    if (q > max_q) throw FieldError("field size p^m exceeds census bound " + std::to_string(max_q));

    auto ctx = std::shared_ptr<FieldContext>(new FieldContext());
    ctx->p_ = p;
    ctx->m_ = m;
    ctx->q_ = q;
    ctx->max_q_ = max_q;

    if (m == 1) {
        if (!modulus.empty()) {
            if (modulus.size() != 2 || modulus[1] != 1)
                throw FieldError("modulus must be monic of degree 1 for a prime field");
        }
        ctx->modulus_.clear();
        return ctx;
    }

    if (modulus.empty()) {
        // smallest monic irreducible, coefficients compared low-degree-first:
        // enumerate (c0,...,c_{m-1}) with c0 as the most significant position
        std::vector<uint64_t> f(m + 1, 0);
        f[m] = 1;
        bool found = false;
        uint64_t total = q;  // p^m candidates
        for (uint64_t idx = 0; idx < total && !found; ++idx) {
            uint64_t t = idx;
            for (unsigned i = 0; i < m; ++i) {
                unsigned pos = m - 1 - i;  // low-degree coefficient varies slowest
                uint64_t digit = t % p;
                t /= p;
                f[pos] = digit;
            }
            if (poly_is_irreducible(f, p)) found = true;
        }
        if (!found) throw FieldError("no irreducible modulus found");  // cannot happen
        modulus = f;
    } else {
        if (modulus.size() != m + 1 || modulus[m] != 1)
            throw FieldError("modulus must be monic of degree m");
        for (auto& c : modulus) c %= p;
        if (!poly_is_irreducible(modulus, p))
            throw FieldError("modulus polynomial is reducible over F_p");
    }
    ctx->modulus_ = modulus;

    // reduction rows: x^{m+j} mod modulus for j = 0..m-2
    ctx->xpow_.assign((m - 1) * m, 0);
    std::vector<uint64_t> row(m);
    for (unsigned i = 0; i < m; ++i) row[i] = (p - modulus[i] % p) % p;  // x^m
    for (unsigned j = 0; j + 1 < m; ++j) {
        if (j > 0) {
            std::vector<uint64_t> next(m, 0);
            uint64_t carry = row[m - 1];
            for (unsigned i = m - 1; i >= 1; --i) next[i] = row[i - 1];
            next[0] = 0;
            for (unsigned i = 0; i < m; ++i)
                next[i] = (next[i] + carry * ctx->xpow_[i]) % p;
            row = next;
        }
        for (unsigned i = 0; i < m; ++i) ctx->xpow_[j * m + i] = row[i];
    }
    return ctx;
}

bool FieldContext::same(const FieldContext& o) const {
    if (this == &o) return true;
    return p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_;
}

void FieldContext::decode(uint64_t code, uint64_t* digits) const {
    for (unsigned i = 0; i < m_; ++i) {
        digits[i] = code % p_;
        code /= p_;
    }
}

uint64_t FieldContext::encode(const uint64_t* digits) const {
    uint64_t code = 0;
    for (unsigned i = m_; i-- > 0;) code = code * p_ + digits[i] % p_;
    return code;
}

uint64_t FieldContext::add(uint64_t a, uint64_t b) const {
    if (m_ == 1) {
        uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint64_t da[kMaxDegree], db[kMaxDegree], dr[kMaxDegree];
    decode(a, da);
    decode(b, db);
    for (unsigned i = 0; i < m_; ++i) {
        uint64_t s = da[i] + db[i];
        dr[i] = s >= p_ ? s - p_ : s;
    }
    return encode(dr);
}

uint64_t FieldContext::neg(uint64_t a) const {
    if (m_ == 1) return a == 0 ? 0 : p_ - a;
    uint64_t da[kMaxDegree], dr[kMaxDegree];
    decode(a, da);
    for (unsigned i = 0; i < m_; ++i) dr[i] = da[i] == 0 ? 0 : p_ - da[i];
    return encode(dr);
}

uint64_t FieldContext::sub(uint64_t a, uint64_t b) const {
    if (m_ == 1) return a >= b ? a - b : a + p_ - b;
    return add(a, neg(b));
}

uint64_t FieldContext::mul(uint64_t a, uint64_t b) const {
    if (m_ == 1) return a * b % p_;
    uint64_t da[kMaxDegree], db[kMaxDegree];
    uint64_t prod[2 * kMaxDegree] = {0};
    decode(a, da);
    decode(b, db);
    for (unsigned i = 0; i < m_; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; j < m_; ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
    for (unsigned k = 2 * m_ - 2; k >= m_; --k) {
        uint64_t c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        const uint64_t* row = &xpow_[(k - m_) * m_];
        for (unsigned i = 0; i < m_; ++i)
            prod[i] = (prod[i] + c * row[i]) % p_;
    }
    return encode(prod);
}

uint64_t FieldContext::pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1, b = a;
    while (e) {
        if (e & 1) r = mul(r, b);
        b = mul(b, b);
        e >>= 1;
    }
    return r;
}

uint64_t FieldContext::inv(uint64_t a) const {
    if (a == 0) throw FieldError("inversion of zero");
    return pow(a, q_ - 2);
}

uint64_t FieldContext::div(uint64_t a, uint64_t b) const {
    if (b == 0) throw FieldError("division by zero");
    return mul(a, inv(b));
}

uint64_t FieldContext::pow_int(uint64_t a, long long e) const {
    if (e >= 0) return pow(a, static_cast<uint64_t>(e));
    return pow(inv(a), static_cast<uint64_t>(-e));
}

uint64_t FieldContext::from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += static_cast<long long>(p_);
    return static_cast<uint64_t>(r);
}

const std::vector<int8_t>& FieldContext::chi_table() const {
    std::call_once(chi_once_, [this] {
        chi_table_.assign(q_, -1);
        chi_table_[0] = 0;
        for (uint64_t x = 1; x < q_; ++x) {
            uint64_t s = mul(x, x);
            chi_table_[s] = 1;
        }
    });
    return chi_table_;
}

int FieldContext::chi2(uint64_t a) const {
    if (a == 0) return 0;
    if (m_ == 1 && q_ <= (1ull << 21)) return chi_table()[a];  // table acceleration for prime fields
    return pow(a, (q_ - 1) / 2) == 1 ? 1 : -1;
}

bool FieldContext::lex_less(uint64_t a, uint64_t b) const {
    if (m_ == 1) return a < b;
    uint64_t da[kMaxDegree], db[kMaxDegree];
    decode(a, da);
    decode(b, db);
    for (unsigned i = 0; i < m_; ++i) {
        if (da[i] != db[i]) return da[i] < db[i];
    }
    return false;
}

std::optional<uint64_t> FieldContext::sqrt(uint64_t a) const {
    if (a == 0) return 0;
    if (chi2(a) != 1) return std::nullopt;

    // Tonelli-Shanks over F_q
    uint64_t t = q_ - 1;
    unsigned s = 0;
    while (t % 2 == 0) {
        t /= 2;
        ++s;
    }
    uint64_t root;
    if (s == 1) {
        root = pow(a, (q_ + 1) / 4);
    } else {
        std::call_once(nonsquare_once_, [this] {
            uint64_t z = 2;
            while (z < q_ && chi2(z) != -1) ++z;
            nonsquare_ = z;
        });
        uint64_t c = pow(nonsquare_, t);
        uint64_t r = pow(a, (t + 1) / 2);
        uint64_t u = pow(a, t);
        unsigned mlev = s;
        while (u != 1) {
            unsigned i = 0;
            uint64_t v = u;
            while (v != 1) {
                v = mul(v, v);
                ++i;
            }
            uint64_t b = c;
            for (unsigned j = 0; j + i + 1 < mlev; ++j) b = mul(b, b);
            r = mul(r, b);
            c = mul(b, b);
            u = mul(u, c);
            mlev = i;
        }
        root = r;
    }
    uint64_t other = neg(root);
    return lex_less(root, other) ? root : other;
}

FourthPowerClass FieldContext::fourth_power_class(uint64_t a) const {
    if (a == 0) return FourthPowerClass::Zero;
    uint64_t g = (q_ - 1) % 4 == 0 ? 4 : 2;
    if (pow(a, (q_ - 1) / g) == 1) return FourthPowerClass::FourthPower;
    if (chi2(a) == 1) return FourthPowerClass::SquareNotFourth;
    return FourthPowerClass::NonSquare;
}

FieldElement FieldContext::from_code(uint64_t code) const {
    if (code >= q_) throw FieldError("element code out of range");
    return FieldElement(shared_from_this(), code);
}

FieldElement FieldContext::from_coeffs(const std::vector<uint64_t>& coeffs) const {
    if (coeffs.size() > m_) throw FieldError("too many coefficients for this field");
    uint64_t digits[kMaxDegree] = {0};
    for (size_t i = 0; i < coeffs.size(); ++i) digits[i] = coeffs[i] % p_;
    return FieldElement(shared_from_this(), encode(digits));
}

std::string FieldContext::describe() const {
    std::ostringstream os;
    os << p_ << '^' << m_;
    if (m_ > 1) {
        os << ':';
        for (unsigned i = 0; i <= m_; ++i) {
            if (i) os << ',';
            os << modulus_[i];
        }
    }
    return os.str();
}

std::string FieldContext::format_element(uint64_t code) const {
    if (m_ == 1) return std::to_string(code);
    uint64_t digits[kMaxDegree];
    decode(code, digits);
    std::ostringstream os;
    for (unsigned i = 0; i < m_; ++i) {
        if (i) os << ',';
        os << digits[i];
    }
    return os.str();
}

uint64_t FieldContext::parse_element(const std::string& text) const {
    std::vector<uint64_t> coeffs;
    std::string cur;
    auto flush = [&] {
        if (cur.empty()) throw FieldError("malformed field element literal '" + text + "'");
        long long v = 0;
        size_t pos = 0;
        try {
            v = std::stoll(cur, &pos);
        } catch (...) {
            throw FieldError("malformed field element literal '" + text + "'");
        }
        if (pos != cur.size()) throw FieldError("malformed field element literal '" + text + "'");
        coeffs.push_back(from_int(v));
        cur.clear();
    };
    for (char ch : text) {
        if (ch == ',') {
            flush();
        } else if (!std::isspace(static_cast<unsigned char>(ch))) {
            cur.push_back(ch);
        }
    }
    flush();
    if (coeffs.size() != 1 && coeffs.size() != m_)
        throw FieldError("expected " + std::to_string(m_) + " coefficients in '" + text + "'");
    if (coeffs.size() == 1 && m_ > 1) coeffs.resize(m_, 0);
    uint64_t digits[kMaxDegree] = {0};
    for (size_t i = 0; i < coeffs.size(); ++i) digits[i] = coeffs[i];
    return encode(digits);
}

// ---------------- FieldElement operators ----------------

namespace {
const FieldContext& common_ctx(const FieldElement& a, const FieldElement& b) {
    if (!a.valid() || !b.valid()) throw FieldError("operation on uninitialized element");
    if (!a.ctx()->same(*b.ctx())) throw FieldError("mixed field contexts");
    return *a.ctx();
}
}  // namespace

FieldElement FieldElement::operator+(const FieldElement& o) const {
    const auto& c = common_ctx(*this, o);
    return FieldElement(ctx_, c.add(code_, o.code_));
}
FieldElement FieldElement::operator-(const FieldElement& o) const {
    const auto& c = common_ctx(*this, o);
    return FieldElement(ctx_, c.sub(code_, o.code_));
}
FieldElement FieldElement::operator*(const FieldElement& o) const {
    const auto& c = common_ctx(*this, o);
    return FieldElement(ctx_, c.mul(code_, o.code_));
}
FieldElement FieldElement::operator/(const FieldElement& o) const {
    const auto& c = common_ctx(*this, o);
    return FieldElement(ctx_, c.div(code_, o.code_));
}
FieldElement FieldElement::operator-() const { return FieldElement(ctx_, ctx_->neg(code_)); }
FieldElement FieldElement::inverse() const { return FieldElement(ctx_, ctx_->inv(code_)); }
FieldElement FieldElement::pow(long long e) const { return FieldElement(ctx_, ctx_->pow_int(code_, e)); }
int FieldElement::chi2() const { return ctx_->chi2(code_); }

std::optional<FieldElement> FieldElement::sqrt() const {
    auto r = ctx_->sqrt(code_);
    if (!r) return std::nullopt;
    return FieldElement(ctx_, *r);
}

FourthPowerClass FieldElement::fourth_power_class() const { return ctx_->fourth_power_class(code_); }

bool FieldElement::operator==(const FieldElement& o) const {
    if (!valid() || !o.valid()) return valid() == o.valid();
    return ctx_->same(*o.ctx_) && code_ == o.code_;
}

std::string FieldElement::str() const { return ctx_->format_element(code_); }

// ---------------- extensions ----------------

uint64_t Extension::embed_code(uint64_t code) const {
    if (base->m() == 1) return code;  // constants keep their code
    uint64_t acc = 0;
    uint64_t c = code;
    for (unsigned i = 0; i < base->m(); ++i) {
        uint64_t digit = c % base->p();
        c /= base->p();
        if (digit) acc = field->add(acc, field->mul(digit, gen_pows[i]));
    }
    return acc;
}

FieldElement Extension::embed(const FieldElement& a) const {
    if (!a.ctx()->same(*base)) throw FieldError("embedding applied to foreign element");
    return FieldElement(field, embed_code(a.code()));
}

Extension lift_to_extension(const FieldCtxPtr& base, unsigned k, std::optional<uint64_t> max_q_override) {
    if (k != 2 && k != 4) throw FieldError("extension degree must be 2 or 4");
    uint64_t bound = max_q_override.value_or(base->max_q());
    Extension ext;
    ext.base = base;
    ext.field = FieldContext::create(base->p(), base->m() * k, {}, bound);
    if (base->m() == 1) {
        ext.gen_pows = {1};
        return ext;
    }
    // embed the degree-m subfield: locate the lexicographically smallest root of the
    // old modulus in the new field, then map the old generator to it
    const auto& f = base->modulus();
    std::optional<uint64_t> root;
    for (uint64_t x = 0; x < ext.field->q(); ++x) {
        uint64_t acc = 0;
        for (unsigned i = base->m() + 1; i-- > 0;) {
            acc = ext.field->mul(acc, x);
            acc = ext.field->add(acc, f[i] % base->p());
        }
        if (acc == 0) {
            if (!root || ext.field->lex_less(x, *root)) root = x;
        }
    }
    if (!root) throw FieldError("modulus has no root in the extension");  // cannot happen
    ext.gen_pows.resize(base->m());
    uint64_t acc = 1;
    for (unsigned i = 0; i < base->m(); ++i) {
        ext.gen_pows[i] = acc;
        acc = ext.field->mul(acc, *root);
    }
    return ext;
}

}  // namespace edc

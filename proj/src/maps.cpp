#include "edc/maps.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace edc {

std::string defined_over_name(DefinedOver level) {
    switch (level) {
        case DefinedOver::BaseField: return "base-field";
        case DefinedOver::QuadraticExt: return "quadratic-extension";
        case DefinedOver::QuarticExt: return "quartic-extension";
    }
    return "?";
}

std::string sigma_kind_name(SigmaKind kind) {
    switch (kind) {
        case SigmaKind::S1: return "s1";
        case SigmaKind::S2: return "s2";
        case SigmaKind::S12: return "s12";
        case SigmaKind::S21: return "s21";
        case SigmaKind::S121: return "s121";
    }
    return "?";
}

namespace {

struct Work {
    FieldCtxPtr base;
    FieldCtxPtr field;
    DefinedOver level = DefinedOver::BaseField;
    std::function<uint64_t(uint64_t)> embed;

    FieldElement lift(const FieldElement& a) const {
        return FieldElement(field, embed(a.code()));
    }
};

Work resolve_work(const FieldCtxPtr& base, const std::vector<FieldElement>& radicands) {
    bool need_ext = false;
    for (const auto& r : radicands)
        if (r.chi2() == -1) need_ext = true;
    Work w;
    w.base = base;
    if (!need_ext) {
        w.field = base;
        w.level = DefinedOver::BaseField;
        w.embed = [](uint64_t c) { return c; };
    } else {
        Extension ext = lift_to_extension(base, 2);
        w.field = ext.field;
        w.level = DefinedOver::QuadraticExt;
        w.embed = [ext](uint64_t c) { return ext.embed_code(c); };
    }
    return w;
}

FieldElement sqrt_in(const FieldElement& a, const char* what) {
    auto r = a.sqrt();
    if (!r) throw MapError(std::string("required square root of ") + what + " does not exist");
    return *r;
}

void check_param(const FieldElement& d, const char* name) {
    if (d.is_zero() || d.is_one())
        throw MapError(std::string(name) + " parameter is degenerate (0 or 1)");
}

// resolve an X/Y exceptional label on E_t from the coordinate limit value;
// inv_rt is 1/sqrt(t) for the canonical root
ExcLabel label_from_limit(const FieldElement& value, const FieldElement& inv_rt, bool x_type) {
    if (value == inv_rt) return x_type ? ExcLabel::XPlus : ExcLabel::YPlus;
    if (value == -inv_rt) return x_type ? ExcLabel::XMinus : ExcLabel::YMinus;
    throw MapError("coordinate limit does not match an exceptional point");
}

FieldElement inv_sqrt_of(const FieldElement& t) {
    return sqrt_in(t, "the codomain parameter").inverse();
}

bool exc_labels_flip(const FieldElement& d_base, const Work& w, const FieldElement& d_work) {
    // whether base-field exceptional labels swap sign under the embedding
    if (w.level == DefinedOver::BaseField) return false;
    if (d_base.chi2() != 1) return false;  // no base-rational exceptional points
    FieldElement lifted_root = w.lift(*d_base.sqrt());
    return lifted_root != *d_work.sqrt();
}

}  // namespace

Point RationalMap::lift_point(const Point& base_pt) const {
    if (work_ctx->same(*base_ctx)) return base_pt;
    if (base_pt.is_infinity()) return base_pt;
    if (base_pt.is_affine()) {
        if (!base_pt.x().ctx()->same(*base_ctx)) throw MapError("point not over the base field");
        return Point::affine(FieldElement(work_ctx, embed_code(base_pt.x().code())),
                             FieldElement(work_ctx, embed_code(base_pt.y().code())));
    }
    if (!exc_flip) return base_pt;
    switch (base_pt.label()) {
        case ExcLabel::XPlus: return Point::exceptional(ExcLabel::XMinus);
        case ExcLabel::XMinus: return Point::exceptional(ExcLabel::XPlus);
        case ExcLabel::YPlus: return Point::exceptional(ExcLabel::YMinus);
        case ExcLabel::YMinus: return Point::exceptional(ExcLabel::YPlus);
    }
    throw MapError("bad exceptional label");
}

Point RationalMap::apply(const Point& base_pt) const { return eval(lift_point(base_pt)); }

// ---------------- orbit ----------------

std::vector<FieldElement> orbit(const FieldElement& d) {
    check_param(d, "orbit");
    const auto& ctx = d.ctx();
    FieldElement one = ctx->one();
    std::vector<FieldElement> vals = {d,
                                      one - d,
                                      d.inverse(),
                                      one - d.inverse(),
                                      (one - d).inverse(),
                                      d / (d - one)};
    std::sort(vals.begin(), vals.end(),
              [&](const FieldElement& a, const FieldElement& b) { return ctx->lex_less(a.code(), b.code()); });
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    return vals;
}

// ---------------- sigma ----------------

RationalMap sigma_map(SigmaKind kind, const FieldElement& d) {
    check_param(d, "sigma");
    const auto& ctx = d.ctx();
    FieldElement one = ctx->one();
    FieldElement minus_one = -one;

    std::vector<FieldElement> radicands;
    switch (kind) {
        case SigmaKind::S1: radicands = {minus_one}; break;
        case SigmaKind::S2: radicands = {d}; break;
        case SigmaKind::S12: radicands = {minus_one, d}; break;
        case SigmaKind::S21: radicands = {minus_one, one - d}; break;
        case SigmaKind::S121: radicands = {one - d}; break;
    }
    Work w = resolve_work(ctx, radicands);
    FieldElement D = w.lift(d);
    FieldElement One = w.field->one();

    FieldElement target;
    switch (kind) {
        case SigmaKind::S1: target = One - D; break;
        case SigmaKind::S2: target = D.inverse(); break;
        case SigmaKind::S12: target = One - D.inverse(); break;
        case SigmaKind::S21: target = (One - D).inverse(); break;
        case SigmaKind::S121: target = D / (D - One); break;
    }
    check_param(target, "sigma target");

    RationalMap f;
    f.name = sigma_kind_name(kind);
    f.base_ctx = ctx;
    f.work_ctx = w.field;
    f.embed_code = w.embed;
    f.defined_over = w.level;
    f.domain = Curve::legendre(D);
    f.codomain = Curve::legendre(target);
    f.degree = 1;
    f.kernel = {Point::infinity()};

    // constants of the five formulas; the 3/2-power of z is sqrt(z)*z with the
    // canonical branch
    FieldElement i, scale, shift_num;
    switch (kind) {
        case SigmaKind::S1: {
            i = sqrt_in(-One, "-1");
            f.eval = [D, i, One](const Point& P) {
                if (P.is_infinity()) return P;
                return Point::affine(One - P.x(), i * P.y());
            };
            break;
        }
        case SigmaKind::S2: {
            FieldElement d32 = sqrt_in(D, "d") * D;
            f.eval = [D, d32](const Point& P) {
                if (P.is_infinity()) return P;
                return Point::affine(P.x() / D, P.y() / d32);
            };
            break;
        }
        case SigmaKind::S12: {
            i = sqrt_in(-One, "-1");
            FieldElement d32 = sqrt_in(D, "d") * D;
            f.eval = [D, i, d32, One](const Point& P) {
                if (P.is_infinity()) return P;
                return Point::affine(One - P.x() / D, i * P.y() / d32);
            };
            break;
        }
        case SigmaKind::S21: {
            i = sqrt_in(-One, "-1");
            FieldElement c32 = sqrt_in(One - D, "1-d") * (One - D);
            f.eval = [D, i, c32, One](const Point& P) {
                if (P.is_infinity()) return P;
                return Point::affine((One - P.x()) / (One - D), i * P.y() / c32);
            };
            break;
        }
        case SigmaKind::S121: {
            FieldElement c32 = sqrt_in(One - D, "1-d") * (One - D);
            f.eval = [D, c32, One](const Point& P) {
                if (P.is_infinity()) return P;
                return Point::affine((P.x() - D) / (One - D), -P.y() / c32);
            };
            break;
        }
    }
    return f;
}

// ---------------- psi and its dual ----------------

RationalMap psi_map(const FieldElement& d) {
    check_param(d, "psi");
    const auto& ctx = d.ctx();
    FieldElement one = ctx->one();

    RationalMap f;
    f.name = "psi";
    f.base_ctx = ctx;
    f.work_ctx = ctx;
    f.embed_code = [](uint64_t c) { return c; };
    f.defined_over = DefinedOver::BaseField;
    f.domain = Curve::edwards(d);
    f.codomain = Curve::legendre(d);
    f.degree = 2;
    f.kernel = {Point::affine(ctx->zero(), one), Point::affine(ctx->zero(), -one)};
    f.eval = [d, one, ctx](const Point& P) {
        if (P.is_exceptional()) {
            // X+- are the order-2 points over (0,0); Y+- sit over (d,0)
            switch (P.label()) {
                case ExcLabel::XPlus:
                case ExcLabel::XMinus:
                    return Point::affine(ctx->zero(), ctx->zero());
                default:
                    return Point::affine(d, ctx->zero());
            }
        }
        if (!P.is_affine()) throw MapError("psi: point not on the Edwards model");
        const FieldElement& x = P.x();
        const FieldElement& y = P.y();
        if (x.is_zero()) return Point::infinity();  // kernel
        FieldElement u = (x * x).inverse();
        FieldElement v = y * (d - one) / (x * (one - y * y));
        return Point::affine(u, v);
    };
    return f;
}

RationalMap psi_dual_map(const FieldElement& d) {
    check_param(d, "psi-dual");
    const auto& ctx = d.ctx();
    FieldElement one = ctx->one();

    RationalMap f;
    f.name = "psi-dual";
    f.base_ctx = ctx;
    f.work_ctx = ctx;
    f.embed_code = [](uint64_t c) { return c; };
    f.defined_over = DefinedOver::BaseField;
    f.domain = Curve::legendre(d);
    f.codomain = Curve::edwards(d);
    f.degree = 2;
    f.kernel = {Point::infinity(), Point::affine(ctx->zero(), ctx->zero())};
    f.eval = [d, one, ctx](const Point& P) {
        Point identity = Point::affine(ctx->zero(), one);
        if (P.is_infinity()) return identity;
        const FieldElement& x = P.x();
        const FieldElement& y = P.y();
        if (x.is_zero() && y.is_zero()) return identity;
        FieldElement den1 = d - x * x;
        FieldElement num2 = y * y - x * x * (one - d);
        FieldElement den2 = y * y + x * x * (one - d);
        if (den1.is_zero()) {
            FieldElement inv_rt = sqrt_in(d, "d").inverse();
            return Point::exceptional(label_from_limit(num2 / den2, inv_rt, true));
        }
        if (den2.is_zero()) {
            FieldElement inv_rt = sqrt_in(d, "d").inverse();
            return Point::exceptional(label_from_limit(ctx->make(2) * y / den1, inv_rt, false));
        }
        return Point::affine(ctx->make(2) * y / den1, num2 / den2);
    };
    return f;
}

// ---------------- tau chain ----------------

TauChain tau_chain(const FieldElement& d) {
    check_param(d, "tau");
    const auto& ctx = d.ctx();
    FieldElement one = ctx->one();
    Curve e = Curve::edwards(d);
    Curve w = edwards_weierstrass_form(e);
    Curve l = Curve::legendre(d);
    auto ident = [](uint64_t c) { return c; };

    TauChain chain;
    auto init = [&](RationalMap& f, const char* name, const Curve& dom, const Curve& cod,
                    int degree, std::vector<Point> kernel) {
        f.name = name;
        f.domain = dom;
        f.codomain = cod;
        f.degree = degree;
        f.kernel = std::move(kernel);
        f.defined_over = DefinedOver::BaseField;
        f.base_ctx = ctx;
        f.work_ctx = ctx;
        f.embed_code = ident;
    };
    init(chain.tau, "tau", e, w, 1, {Point::affine(ctx->zero(), one)});
    init(chain.tau_inv, "tau-inv", w, e, 1, {Point::infinity()});
    init(chain.phi, "phi", w, l, 2,
         {Point::infinity(), Point::affine(ctx->zero(), ctx->zero())});
    init(chain.phi_dual, "phi-dual", l, w, 2,
         {Point::infinity(), Point::affine(ctx->zero(), ctx->zero())});
    chain.tau.eval = [e](const Point& P) { return edwards_to_weierstrass(e, P); };
    chain.tau_inv.eval = [e](const Point& P) { return weierstrass_to_edwards(e, P); };
    chain.phi.eval = [d, one, ctx](const Point& P) {
        if (P.is_infinity()) return P;
        const FieldElement& x = P.x();
        const FieldElement& y = P.y();
        if (x.is_zero()) return Point::infinity();  // (0,0) generates the kernel
        FieldElement x2 = x * x;
        FieldElement omd = one - d;
        FieldElement u = y * y / (ctx->make(4) * x2);
        FieldElement v = y * (omd * omd - x2) / (ctx->make(8) * x2);
        return Point::affine(u, v);
    };
    chain.phi_dual.eval = [d, ctx](const Point& P) {
        if (P.is_infinity()) return P;
        const FieldElement& x = P.x();
        const FieldElement& y = P.y();
        if (x.is_zero()) return Point::infinity();
        FieldElement x2 = x * x;
        return Point::affine(y * y / x2, y * (d - x2) / x2);
    };
    return chain;
}

// ---------------- twisted psi ----------------

RationalMap psi_twisted(const FieldElement& a, const FieldElement& d) {
    if (a.is_zero() || d.is_zero() || a == d) throw MapError("twisted parameters are degenerate");
    const auto& ctx = a.ctx();
    Work w = resolve_work(ctx, {a});
    FieldElement A = w.lift(a), D = w.lift(d);
    FieldElement One = w.field->one();
    FieldElement da = D / A;
    check_param(da, "twisted target");

    FieldElement ra = sqrt_in(A, "a");
    FieldElement a32 = ra * A;

    RationalMap f;
    f.name = "psi-twisted";
    f.base_ctx = ctx;
    f.work_ctx = w.field;
    f.embed_code = w.embed;
    f.defined_over = w.level;
    f.domain = Curve::twisted_edwards(A, D);
    f.codomain = Curve::legendre(da);
    f.degree = 2;
    f.kernel = {Point::affine(w.field->zero(), One), Point::affine(w.field->zero(), -One)};
    f.eval = [A, D, a32, One](const Point& P) {
        if (!P.is_affine()) throw MapError("psi-twisted: expected an affine twisted point");
        const FieldElement& x = P.x();
        const FieldElement& y = P.y();
        if (x.is_zero()) return Point::infinity();
        FieldElement u = (A * x * x).inverse();
        FieldElement v = y * (D - A) / (a32 * x * (One - y * y));
        return Point::affine(u, v);
    };
    return f;
}

RationalMap psi_twisted_dual(const FieldElement& a, const FieldElement& d) {
    if (a.is_zero() || d.is_zero() || a == d) throw MapError("twisted parameters are degenerate");
    const auto& ctx = a.ctx();
    Work w = resolve_work(ctx, {a});
    FieldElement A = w.lift(a), D = w.lift(d);
    FieldElement One = w.field->one();
    FieldElement da = D / A;
    check_param(da, "twisted target");
    FieldElement ra = sqrt_in(A, "a");

    RationalMap f;
    f.name = "psi-twisted-dual";
    f.base_ctx = ctx;
    f.work_ctx = w.field;
    f.embed_code = w.embed;
    f.defined_over = w.level;
    f.domain = Curve::legendre(da);
    f.codomain = Curve::twisted_edwards(A, D);
    f.degree = 2;
    f.kernel = {Point::infinity(), Point::affine(w.field->zero(), w.field->zero())};
    f.eval = [A, D, ra, One, w](const Point& P) {
        Point identity = Point::affine(w.field->zero(), One);
        if (P.is_infinity()) return identity;
        const FieldElement& x = P.x();
        const FieldElement& y = P.y();
        if (x.is_zero() && y.is_zero()) return identity;
        FieldElement den1 = D - A * x * x;
        FieldElement den2 = A * y * y + x * x * (A - D);
        if (den1.is_zero() || den2.is_zero())
            throw MapUndefined("psi-twisted-dual: image lies at infinity of the twisted model");
        FieldElement u = w.field->make(2) * ra * y / den1;
        FieldElement v = (A * y * y - x * x * (A - D)) / den2;
        return Point::affine(u, v);
    };
    return f;
}

// ---------------- omega ----------------

RationalMap omega_four_isogeny(SigmaKind kind, const FieldElement& d) {
    check_param(d, "omega");
    RationalMap sigma = sigma_map(kind, d);
    FieldElement D = sigma.domain.param(0);        // d over the work field
    FieldElement T = sigma.codomain.param(0);      // sigma(d) over the work field
    RationalMap psi_d = psi_map(D);
    RationalMap psi_hat = psi_dual_map(T);

    RationalMap f;
    f.name = "omega-" + sigma_kind_name(kind);
    f.base_ctx = sigma.base_ctx;
    f.work_ctx = sigma.work_ctx;
    f.embed_code = sigma.embed_code;
    f.defined_over = sigma.defined_over;
    f.domain = psi_d.domain;
    f.codomain = psi_hat.codomain;
    f.degree = 4;
    FieldElement one = f.work_ctx->one();
    f.kernel = {Point::affine(f.work_ctx->zero(), one), Point::affine(f.work_ctx->zero(), -one)};
    switch (kind) {
        case SigmaKind::S1:
        case SigmaKind::S21:
            f.kernel.push_back(Point::affine(one, f.work_ctx->zero()));
            f.kernel.push_back(Point::affine(-one, f.work_ctx->zero()));
            break;
        case SigmaKind::S2:
            f.kernel.push_back(Point::exceptional(ExcLabel::XPlus));
            f.kernel.push_back(Point::exceptional(ExcLabel::XMinus));
            break;
        case SigmaKind::S12:
        case SigmaKind::S121:
            f.kernel.push_back(Point::exceptional(ExcLabel::YPlus));
            f.kernel.push_back(Point::exceptional(ExcLabel::YMinus));
            break;
    }
    f.exc_flip = exc_labels_flip(d, Work{f.base_ctx, f.work_ctx, f.defined_over, f.embed_code}, D);
    f.eval = [psi_d, sigma, psi_hat](const Point& P) {
        return psi_hat.eval(sigma.eval(psi_d.eval(P)));
    };
    return f;
}

// ---------------- rho ----------------

namespace {
FieldElement dbar_from_root(const FieldElement& root) {
    const auto& one = root.ctx()->one();
    FieldElement b = (one + root) / (one - root);
    return b * b;
}
}  // namespace

RationalMap rho_map(const FieldElement& d, int sign) {
    check_param(d, "rho");
    const auto& ctx = d.ctx();
    Work w = resolve_work(ctx, {-ctx->one(), d});
    FieldElement D = w.lift(d);
    FieldElement One = w.field->one();
    FieldElement i = sqrt_in(-One, "-1");
    FieldElement s = sqrt_in(D, "d");
    FieldElement ss = sign >= 0 ? s : -s;
    FieldElement t = dbar_from_root(ss);
    check_param(t, "rho target");
    FieldElement inv_rt = inv_sqrt_of(t);

    RationalMap f;
    f.name = sign >= 0 ? "rho+" : "rho-";
    f.base_ctx = ctx;
    f.work_ctx = w.field;
    f.embed_code = w.embed;
    f.defined_over = w.level;
    f.domain = Curve::legendre(D);
    f.codomain = Curve::edwards(t);
    f.degree = 1;
    f.kernel = {Point::infinity()};
    f.eval = [D, i, ss, inv_rt, One, w](const Point& P) {
        if (P.is_infinity()) return Point::affine(w.field->zero(), One);
        const FieldElement& x = P.x();
        const FieldElement& y = P.y();
        if (x.is_zero() && y.is_zero()) return Point::affine(w.field->zero(), -One);
        if (y.is_zero())  // (1,0) and (d,0) land on the order-2 points at infinity
            return Point::exceptional(label_from_limit((x - ss) / (x + ss), inv_rt, true));
        if ((x + ss).is_zero())
            return Point::exceptional(label_from_limit(i * (One - ss) * x / y, inv_rt, false));
        FieldElement u = i * (One - ss) * x / y;
        FieldElement v = (x - ss) / (x + ss);
        return Point::affine(u, v);
    };
    return f;
}

RationalMap rho_dual_map(const FieldElement& d, int sign) {
    check_param(d, "rho-dual");
    const auto& ctx = d.ctx();
    Work w = resolve_work(ctx, {-ctx->one(), d});
    FieldElement D = w.lift(d);
    FieldElement One = w.field->one();
    FieldElement i = sqrt_in(-One, "-1");
    FieldElement s = sqrt_in(D, "d");
    FieldElement ss = sign >= 0 ? s : -s;
    FieldElement t = dbar_from_root(ss);
    check_param(t, "rho target");
    FieldElement rt = sqrt_in(t, "dbar");

    RationalMap f;
    f.name = sign >= 0 ? "rho-dual+" : "rho-dual-";
    f.base_ctx = ctx;
    f.work_ctx = w.field;
    f.embed_code = w.embed;
    f.defined_over = w.level;
    f.domain = Curve::edwards(t);
    f.codomain = Curve::legendre(D);
    f.degree = 1;
    f.kernel = {Point::affine(w.field->zero(), One)};
    f.exc_flip = false;  // domain parameter lives only in the work field
    f.eval = [D, i, ss, rt, One, w](const Point& P) {
        if (P.is_exceptional()) {
            FieldElement inv_rt = rt.inverse();
            switch (P.label()) {
                case ExcLabel::XPlus:
                case ExcLabel::XMinus: {
                    FieldElement v = P.label() == ExcLabel::XPlus ? inv_rt : -inv_rt;
                    FieldElement x = ss * (One + v) / (One - v);
                    return Point::affine(x, w.field->zero());
                }
                default: {
                    FieldElement u = P.label() == ExcLabel::YPlus ? inv_rt : -inv_rt;
                    FieldElement x = -ss;
                    FieldElement y = i * (One - ss) * x / u;
                    return Point::affine(x, y);
                }
            }
        }
        if (!P.is_affine()) throw MapError("rho-dual: point not on the Edwards model");
        const FieldElement& x = P.x();
        const FieldElement& y = P.y();
        if (x.is_zero() && y == One) return Point::infinity();
        if (x.is_zero()) return Point::affine(w.field->zero(), w.field->zero());
        FieldElement u = ss * (One + y) / (One - y);
        FieldElement v = ss * i * (One - ss) * (One + y) / (x * (One - y));
        return Point::affine(u, v);
    };
    return f;
}

// ---------------- Montgomery form ----------------

std::pair<Curve, RationalMap> montgomery_from_legendre(const FieldElement& d) {
    check_param(d, "montgomery");
    const auto& ctx = d.ctx();
    Work w = resolve_work(ctx, {d});
    FieldElement D = w.lift(d);
    FieldElement One = w.field->one();
    FieldElement s = sqrt_in(D, "d");
    FieldElement A = -(One + D) / s;
    FieldElement B = (D * s).inverse();
    Curve mont = Curve::montgomery(A, B);

    RationalMap f;
    f.name = "legendre-to-montgomery";
    f.base_ctx = ctx;
    f.work_ctx = w.field;
    f.embed_code = w.embed;
    f.defined_over = w.level;
    f.domain = Curve::legendre(D);
    f.codomain = mont;
    f.degree = 1;
    f.kernel = {Point::infinity()};
    f.eval = [s](const Point& P) {
        if (P.is_infinity()) return P;
        return Point::affine(P.x() / s, P.y());
    };
    return {mont, f};
}

// ---------------- epsilon ----------------

RationalMap epsilon_isogeny(int family, int sign, const FieldElement& d) {
    check_param(d, "epsilon");
    if (family < 1 || family > 3) throw MapError("epsilon family must be 1, 2 or 3");
    const auto& ctx = d.ctx();
    FieldElement one = ctx->one();

    std::vector<FieldElement> radicands;
    if (family == 1) radicands = {-one, d};
    else if (family == 2) radicands = {one - d};
    else radicands = {d - one, d / (d - one)};

    Work w = resolve_work(ctx, radicands);
    FieldElement D = w.lift(d);
    FieldElement One = w.field->one();
    FieldElement zero = w.field->zero();

    RationalMap f;
    f.name = "eps" + std::to_string(family) + (sign >= 0 ? "+" : "-");
    f.base_ctx = ctx;
    f.work_ctx = w.field;
    f.embed_code = w.embed;
    f.defined_over = w.level;
    f.domain = Curve::edwards(D);
    f.degree = 2;
    f.kernel = {Point::affine(zero, One), Point::affine(zero, -One)};
    f.exc_flip = exc_labels_flip(d, w, D);

    Point identity = Point::affine(zero, One);
    Point minus_identity = Point::affine(zero, -One);

    if (family == 1) {
        FieldElement i = sqrt_in(-One, "-1");
        FieldElement s0 = sqrt_in(D, "d");
        FieldElement ss = sign >= 0 ? s0 : -s0;
        FieldElement t = dbar_from_root(ss);
        check_param(t, "epsilon target");
        f.codomain = Curve::edwards(t);
        FieldElement inv_rt = inv_sqrt_of(t);
        FieldElement C = i * (One - ss) / (D - One);
        f.eval = [D, ss, C, inv_rt, One, identity, minus_identity](const Point& P) {
            if (P.is_exceptional()) {
                switch (P.label()) {
                    case ExcLabel::XPlus:
                    case ExcLabel::XMinus:
                        return minus_identity;
                    default:
                        return Point::exceptional(
                            label_from_limit((D - ss) / (D + ss), inv_rt, true));
                }
            }
            const FieldElement& x = P.x();
            const FieldElement& y = P.y();
            if (x.is_zero()) return identity;  // kernel
            if (y.is_zero())
                return Point::exceptional(label_from_limit((One - ss) / (One + ss), inv_rt, true));
            FieldElement u = C * (One - y * y) / (x * y);
            FieldElement den = One + ss * x * x;
            if (den.is_zero()) return Point::exceptional(label_from_limit(u, inv_rt, false));
            return Point::affine(u, (One - ss * x * x) / den);
        };
    } else if (family == 2) {
        FieldElement w0 = sqrt_in(One - D, "1-d");
        FieldElement ws = sign >= 0 ? w0 : -w0;
        FieldElement am = One - ws, ap = One + ws;
        FieldElement t = (ap / am) * (ap / am);
        check_param(t, "epsilon target");
        f.codomain = Curve::edwards(t);
        FieldElement inv_rt = inv_sqrt_of(t);
        f.eval = [am, ap, inv_rt, One, identity](const Point& P) {
            if (P.is_exceptional()) {
                FieldElement v = am / ap;
                bool xside = P.label() == ExcLabel::XPlus || P.label() == ExcLabel::XMinus;
                return Point::exceptional(label_from_limit(xside ? v : -v, inv_rt, true));
            }
            const FieldElement& x = P.x();
            const FieldElement& y = P.y();
            if (x.is_zero()) return identity;
            FieldElement u = am * x * y;
            FieldElement den = One - ap * x * x;
            if (den.is_zero()) return Point::exceptional(label_from_limit(u, inv_rt, false));
            return Point::affine(u, (One - am * x * x) / den);
        };
    } else {
        // family 3: the printed constant (sqrt(d-1) -+ sqrt(d))/(1-d) does not land
        // на the stated codomain; the working instantiation links the branches as
        // g = sqrt(d/(d-1)), s = sqrt(d-1)*g and scales the first coordinate by
        // e - s = sqrt(d-1)(1 - g), without the 1/(1-d) factor.
        FieldElement e = sqrt_in(D - One, "d-1");
        FieldElement r = sqrt_in(D / (D - One), "d/(d-1)");
        FieldElement g = sign >= 0 ? r : -r;
        FieldElement s = e * g;
        FieldElement C = e - s;
        FieldElement cp = D + (One - D) * g;
        FieldElement cm = D - (One - D) * g;
        FieldElement t = dbar_from_root(g);
        check_param(t, "epsilon target");
        f.codomain = Curve::edwards(t);
        FieldElement inv_rt = inv_sqrt_of(t);
        f.eval = [C, cp, cm, inv_rt, One, identity, minus_identity](const Point& P) {
            if (P.is_exceptional()) {
                switch (P.label()) {
                    case ExcLabel::YPlus:
                    case ExcLabel::YMinus:
                        return minus_identity;
                    default:
                        return Point::exceptional(label_from_limit(cp / cm, inv_rt, true));
                }
            }
            const FieldElement& x = P.x();
            const FieldElement& y = P.y();
            if (x.is_zero()) return identity;
            if (y.is_zero())
                return Point::exceptional(label_from_limit((One - cp) / (One - cm), inv_rt, true));
            FieldElement u = C * x / y;
            FieldElement den = One - cm * x * x;
            if (den.is_zero()) return Point::exceptional(label_from_limit(u, inv_rt, false));
            return Point::affine(u, (One - cp * x * x) / den);
        };
    }
    return f;
}

// ---------------- isomorphism class of E_d ----------------

std::vector<FieldElement> edwards_iso_class(const FieldElement& d) {
    check_param(d, "iso-class");
    const auto& ctx = d.ctx();
    uint64_t q = ctx->q();
    if (q > 65535) throw MapError("base field too large for the quartic computation");
    uint64_t q4 = q * q * q * q;
    Extension ext = lift_to_extension(ctx, 4, std::max<uint64_t>(ctx->max_q(), q4));

    const auto& F = ext.field;
    FieldElement One = F->one();
    FieldElement Dv = FieldElement(F, ext.embed_code(d.code()));
    FieldElement s = sqrt_in(Dv, "d");
    auto t4 = s.sqrt();
    if (!t4) t4 = (-s).sqrt();
    if (!t4) throw MapError("no fourth root of d in the quartic extension");
    FieldElement i4 = sqrt_in(-One, "-1");

    // membership of a quartic-field value in the embedded base field
    std::unordered_map<uint64_t, uint64_t> retract;
    retract.reserve(q);
    for (uint64_t c = 0; c < q; ++c) retract.emplace(ext.embed_code(c), c);

    std::vector<uint64_t> found = {d.code(), d.inverse().code()};
    for (const FieldElement& root : {*t4, i4 * *t4}) {
        for (int sgn : {+1, -1}) {
            FieldElement r = sgn > 0 ? root : -root;
            FieldElement v = (One + r) / (One - r);
            FieldElement v4 = (v * v) * (v * v);
            auto it = retract.find(v4.code());
            if (it != retract.end()) found.push_back(it->second);
        }
    }
    std::sort(found.begin(), found.end(),
              [&](uint64_t a, uint64_t b) { return ctx->lex_less(a, b); });
    found.erase(std::unique(found.begin(), found.end()), found.end());
    std::vector<FieldElement> out;
    for (uint64_t c : found)
        if (c != 0 && c != 1) out.push_back(ctx->from_code(c));
    return out;
}

// ---------------- E_d -> L_delta ----------------

RationalMap edwards_to_legendre_iso(const FieldElement& d) {
    check_param(d, "edwards-to-legendre");
    const auto& ctx = d.ctx();
    Work w = resolve_work(ctx, {-ctx->one(), d});
    FieldElement D = w.lift(d);
    FieldElement One = w.field->one();
    FieldElement i = sqrt_in(-One, "-1");
    FieldElement s = sqrt_in(D, "d");
    FieldElement K = (s + One) / (s - One);
    FieldElement delta = K * K;
    check_param(delta, "delta");
    FieldElement K2 = w.field->make(2) * i * (One + s) / ((One - s) * (One - s));

    RationalMap f;
    f.name = "edwards-to-legendre";
    f.base_ctx = ctx;
    f.work_ctx = w.field;
    f.embed_code = w.embed;
    f.defined_over = w.level;
    f.domain = Curve::edwards(D);
    f.codomain = Curve::legendre(delta);
    f.degree = 1;
    f.kernel = {Point::affine(w.field->zero(), One)};
    f.exc_flip = exc_labels_flip(d, w, D);
    f.eval = [D, s, K, K2, delta, One, w](const Point& P) {
        if (P.is_exceptional()) {
            switch (P.label()) {
                case ExcLabel::XPlus: return Point::affine(delta, w.field->zero());
                case ExcLabel::XMinus: return Point::affine(One, w.field->zero());
                case ExcLabel::YPlus: return Point::affine(-K, -(K2 * s));
                default: return Point::affine(-K, K2 * s);
            }
        }
        const FieldElement& x = P.x();
        const FieldElement& y = P.y();
        if (x.is_zero() && y == One) return Point::infinity();
        if (x.is_zero()) return Point::affine(w.field->zero(), w.field->zero());
        FieldElement u = K * (One + y) / (One - y);
        FieldElement v = K2 * (One + y) / (x * (One - y));
        return Point::affine(u, v);
    };
    return f;
}

// ---------------- Huff parameter ----------------

FieldElement huff_param(const FieldElement& a, const FieldElement& b) {
    Curve::huff(a, b);  // validates
    FieldElement r = (a - b) / (a + b);
    FieldElement d = r * r;
    check_param(d, "huff");
    return d;
}

// ---------------- twisted addition (through the scaling isomorphism) ----------------

std::optional<Point> twisted_add(const Curve& tw, const Point& a, const Point& b) {
    if (tw.kind() != CurveKind::TwistedEdwards) throw MapError("twisted_add needs a twisted curve");
    const auto& ctx = tw.ctx();
    FieldElement A = tw.param(0), D = tw.param(1);
    auto ra = A.sqrt();
    if (!ra) throw MapError("twisted_add: sqrt(a) missing; lift to the quadratic extension first");
    Curve e = Curve::edwards(D / A);
    auto conv = [&](const Point& P) {
        return Point::affine(*ra * P.x(), P.y());
    };
    if (!a.is_affine() || !b.is_affine()) throw MapError("twisted_add: affine inputs required");
    Point sum = add_points(e, conv(a), conv(b));
    if (!sum.is_affine()) return std::nullopt;
    return Point::affine(sum.x() / *ra, sum.y());
}

// ---------------- verification harness ----------------

namespace {
Point generic_add(const Curve& c, const Point& a, const Point& b, bool& representable) {
    representable = true;
    if (c.kind() == CurveKind::TwistedEdwards) {
        auto s = twisted_add(c, a, b);
        if (!s) {
            representable = false;
            return Point::infinity();
        }
        return *s;
    }
    return add_points(c, a, b);
}
}  // namespace

VerifyReport verify_isogeny(const RationalMap& f, int samples, uint64_t seed) {
    VerifyReport rep;
    rep.map_name = f.name;

    // (a) image membership over every rational domain point
    std::vector<Point> pts = enumerate_points(f.domain);
    size_t skipped = 0;
    for (const Point& P : pts) {
        Point img;
        try {
            img = f.eval(P);
        } catch (const MapUndefined&) {
            ++skipped;
            continue;
        } catch (const Error& err) {
            rep.image_membership.passed = false;
            rep.image_membership.detail = "evaluation failed at " + P.str() + ": " + err.what();
            break;
        }
        if (!is_on_curve(f.codomain, img)) {
            rep.image_membership.passed = false;
            rep.image_membership.detail = P.str() + " maps off-curve to " + img.str();
            break;
        }
    }
    if (rep.image_membership.passed) {
        rep.image_membership.detail =
            "checked " + std::to_string(pts.size() - skipped) + " points" +
            (skipped ? " (" + std::to_string(skipped) + " at-infinity images skipped)" : "");
    }

    // (b) homomorphism on sampled affine pairs
    std::vector<Point> affine;
    for (const Point& P : pts)
        if (P.is_affine()) affine.push_back(P);
    std::mt19937_64 rng(seed);
    int done = 0;
    long attempts = 0;
    const long max_attempts = 40L * samples + 1000;
    while (done < samples && attempts < max_attempts && rep.homomorphism.passed && affine.size() >= 2) {
        ++attempts;
        const Point& P = affine[rng() % affine.size()];
        const Point& Q = affine[rng() % affine.size()];
        bool rep_ok = true;
        Point sum;
        try {
            sum = generic_add(f.domain, P, Q, rep_ok);
        } catch (const Error&) {
            continue;
        }
        if (!rep_ok) continue;
        Point lhs, fp, fq;
        try {
            lhs = f.eval(sum);
            fp = f.eval(P);
            fq = f.eval(Q);
        } catch (const MapUndefined&) {
            continue;
        }
        bool cod_ok = true;
        Point rhs;
        try {
            rhs = generic_add(f.codomain, fp, fq, cod_ok);
        } catch (const Error&) {
            continue;
        }
        if (!cod_ok) continue;
        if (!(lhs == rhs)) {
            rep.homomorphism.passed = false;
            rep.homomorphism.detail = "f(P+Q) != f(P)+f(Q) at P=" + P.str() + " Q=" + Q.str() +
                                      ": " + lhs.str() + " vs " + rhs.str();
        }
        ++done;
    }
    if (rep.homomorphism.passed)
        rep.homomorphism.detail = "verified on " + std::to_string(done) + " pairs";

    // (c) equal point counts over the working field
    uint64_t nd = count_points(f.domain), nc = count_points(f.codomain);
    if (nd != nc) {
        rep.count_equality.passed = false;
        rep.count_equality.detail = "domain has " + std::to_string(nd) + " points, codomain " +
                                    std::to_string(nc);
    } else {
        rep.count_equality.detail = std::to_string(nd) + " points on both sides";
    }

    // (d) kernel size equals degree; kernel maps to the identity
    if (f.degree <= 4) {
        if (static_cast<int>(f.kernel.size()) != f.degree) {
            rep.kernel_matches_degree.passed = false;
            rep.kernel_matches_degree.detail = "kernel lists " + std::to_string(f.kernel.size()) +
                                               " points for degree " + std::to_string(f.degree);
        } else {
            Point id = f.codomain.identity();
            for (const Point& K : f.kernel) {
                Point img = f.eval(K);
                if (!(img == id)) {
                    rep.kernel_matches_degree.passed = false;
                    rep.kernel_matches_degree.detail = "kernel point " + K.str() + " maps to " + img.str();
                    break;
                }
            }
            if (rep.kernel_matches_degree.passed)
                rep.kernel_matches_degree.detail = "kernel of size " + std::to_string(f.degree) +
                                                   " maps to the identity";
        }
    } else {
        rep.kernel_matches_degree.detail = "degree above 4, kernel check skipped";
    }
    return rep;
}

std::string VerifyReport::to_json() const {
    nlohmann::json j;
    j["map"] = map_name;
    j["passed"] = all_passed();
    auto put = [&](const char* key, const CheckResult& c) {
        j["checks"][key] = {{"passed", c.passed}, {"detail", c.detail}};
    };
    put("image_membership", image_membership);
    put("homomorphism", homomorphism);
    put("count_equality", count_equality);
    put("kernel_matches_degree", kernel_matches_degree);
    return j.dump(2);
}

}  // namespace edc

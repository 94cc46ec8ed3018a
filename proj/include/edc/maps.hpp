#pragma once

// The explicit isomorphism/isogeny catalog between Edwards, Legendre,
// Weierstrass and Montgomery models, with field-of-definition tracking and a
// generic verification harness. Maps whose formulas need square roots that are
// missing from the base field are constructed over the quadratic extension
// instead of failing; callers filter on defined_over.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "edc/curve.hpp"
#include "edc/field.hpp"

namespace edc {

struct MapError : Error {
    using Error::Error;
};
// evaluation hit a point whose image is not representable in the target model
// (only the twisted-Edwards affine chart has such holes)
struct MapUndefined : MapError {
    using MapError::MapError;
};

enum class DefinedOver { BaseField, QuadraticExt, QuarticExt };
std::string defined_over_name(DefinedOver level);

struct RationalMap {
    std::string name;
    Curve domain;    // over the work field
    Curve codomain;  // over the work field
    int degree = 1;
    std::vector<Point> kernel;  // includes the domain identity
    DefinedOver defined_over = DefinedOver::BaseField;
    FieldCtxPtr base_ctx;
    FieldCtxPtr work_ctx;
    std::function<uint64_t(uint64_t)> embed_code;   // base code -> work code
    std::function<Point(const Point&)> eval;        // acts on work-field points
    // whether base-field exceptional labels swap sign under the embedding
    // (the canonical square root of d may differ between the two fields)
    bool exc_flip = false;

    Point lift_point(const Point& base_pt) const;   // embed a base-field point
    Point apply(const Point& base_pt) const;        // lift, then evaluate
};

enum class SigmaKind { S1, S2, S12, S21, S121 };
std::string sigma_kind_name(SigmaKind kind);

// parameter orbit {d, 1-d, 1/d, 1-1/d, 1/(1-d), d/(d-1)}, duplicates removed
std::vector<FieldElement> orbit(const FieldElement& d);

RationalMap sigma_map(SigmaKind kind, const FieldElement& d);
RationalMap psi_map(const FieldElement& d);        // E_d -> L_d, degree 2
RationalMap psi_dual_map(const FieldElement& d);   // L_d -> E_d, degree 2

struct TauChain {
    RationalMap tau;       // E_d -> W_d
    RationalMap tau_inv;   // W_d -> E_d
    RationalMap phi;       // W_d -> L_d, degree 2
    RationalMap phi_dual;  // L_d -> W_d, degree 2
};
TauChain tau_chain(const FieldElement& d);

RationalMap psi_twisted(const FieldElement& a, const FieldElement& d);       // E_{a,d} -> L_{d/a}
RationalMap psi_twisted_dual(const FieldElement& a, const FieldElement& d);  // L_{d/a} -> E_{a,d}

RationalMap omega_four_isogeny(SigmaKind kind, const FieldElement& d);  // E_d -> E_{sigma(d)}, degree 4

RationalMap rho_map(const FieldElement& d, int sign);       // L_d -> E_{dbar^sign}
RationalMap rho_dual_map(const FieldElement& d, int sign);  // E_{dbar^sign} -> L_d

std::pair<Curve, RationalMap> montgomery_from_legendre(const FieldElement& d);

// family 1: radical sqrt(d); family 2: sqrt(1-d); family 3: sqrt(d-1), sqrt(d/(d-1))
RationalMap epsilon_isogeny(int family, int sign, const FieldElement& d);

std::vector<FieldElement> edwards_iso_class(const FieldElement& d);
RationalMap edwards_to_legendre_iso(const FieldElement& d);  // E_d -> L_delta

FieldElement huff_param(const FieldElement& a, const FieldElement& b);

// twisted-Edwards group operation through the scaling to E_{d/a}; empty result
// means the sum lands at infinity of the twisted model
std::optional<Point> twisted_add(const Curve& tw, const Point& a, const Point& b);

struct CheckResult {
    bool passed = true;
    std::string detail;
};

struct VerifyReport {
    std::string map_name;
    CheckResult image_membership;
    CheckResult homomorphism;
    CheckResult count_equality;
    CheckResult kernel_matches_degree;
    bool all_passed() const {
        return image_membership.passed && homomorphism.passed && count_equality.passed &&
               kernel_matches_degree.passed;
    }
    std::string to_json() const;
};

VerifyReport verify_isogeny(const RationalMap& f, int samples, uint64_t seed = 0x1db7a5eedULL);

}  // namespace edc

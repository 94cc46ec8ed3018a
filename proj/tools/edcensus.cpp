// Command-line front end: censuses, theorem verification, map evaluation and
// parameter classification for Edwards/Legendre curves over small fields.

#include <fstream>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "edc/census.hpp"
#include "edc/curve.hpp"
#include "edc/field.hpp"
#include "edc/maps.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerifyFailed = 2;
constexpr int kExitPrecondition = 3;

struct CommonOpts {
    uint64_t p = 0;
    unsigned m = 1;
    std::string format = "csv";
    std::string out;
    uint64_t max_q = edc::FieldContext::kDefaultMaxQ;
    unsigned threads = 1;
};

void write_output(const CommonOpts& opts, const std::string& payload) {
    if (opts.out.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream os(opts.out, std::ios::binary);
    if (!os) throw edc::Error("cannot open output file '" + opts.out + "'");
    os << payload;
}

edc::FieldCtxPtr make_ctx(const CommonOpts& opts) {
    return edc::FieldContext::create(opts.p, opts.m, {}, opts.max_q);
}

edc::RationalMap build_map(const std::string& name, const edc::FieldElement& d,
                           const std::optional<edc::FieldElement>& a) {
    using edc::SigmaKind;
    if (name == "psi") {
        if (a) return edc::psi_twisted(*a, d);
        return edc::psi_map(d);
    }
    if (name == "psi-dual") {
        if (a) return edc::psi_twisted_dual(*a, d);
        return edc::psi_dual_map(d);
    }
    if (name == "tau") return edc::tau_chain(d).tau;
    if (name == "tau-inv") return edc::tau_chain(d).tau_inv;
    if (name == "phi") return edc::tau_chain(d).phi;
    if (name == "phi-dual") return edc::tau_chain(d).phi_dual;
    if (name == "s1") return edc::sigma_map(SigmaKind::S1, d);
    if (name == "s2") return edc::sigma_map(SigmaKind::S2, d);
    if (name == "s12") return edc::sigma_map(SigmaKind::S12, d);
    if (name == "s21") return edc::sigma_map(SigmaKind::S21, d);
    if (name == "s121") return edc::sigma_map(SigmaKind::S121, d);
    if (name == "omega-s1") return edc::omega_four_isogeny(SigmaKind::S1, d);
    if (name == "omega-s2") return edc::omega_four_isogeny(SigmaKind::S2, d);
    if (name == "omega-s12") return edc::omega_four_isogeny(SigmaKind::S12, d);
    if (name == "omega-s21") return edc::omega_four_isogeny(SigmaKind::S21, d);
    if (name == "omega-s121") return edc::omega_four_isogeny(SigmaKind::S121, d);
    if (name == "rho+") return edc::rho_map(d, +1);
    if (name == "rho-") return edc::rho_map(d, -1);
    if (name == "rho-dual+") return edc::rho_dual_map(d, +1);
    if (name == "rho-dual-") return edc::rho_dual_map(d, -1);
    if (name == "eps1+") return edc::epsilon_isogeny(1, +1, d);
    if (name == "eps1-") return edc::epsilon_isogeny(1, -1, d);
    if (name == "eps2+") return edc::epsilon_isogeny(2, +1, d);
    if (name == "eps2-") return edc::epsilon_isogeny(2, -1, d);
    if (name == "eps3+") return edc::epsilon_isogeny(3, +1, d);
    if (name == "eps3-") return edc::epsilon_isogeny(3, -1, d);
    if (name == "e2l") return edc::edwards_to_legendre_iso(d);
    if (name == "mont") return edc::montgomery_from_legendre(d).second;
    throw edc::MapError("unknown map name '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"explicit isogenies and isogeny-class censuses for Edwards and Legendre curves"};
    app.require_subcommand(1);

    CommonOpts opts;
    std::string d_text, a_text, b_text, point_text, map_name, theorem = "all";
    bool allow_extension = false;

    auto add_common = [&](CLI::App* cmd, bool needs_p = true) {
        auto* o = cmd->add_option("--p", opts.p, "field characteristic (odd prime)");
        if (needs_p) o->required();
        cmd->add_option("--m", opts.m, "extension degree (default 1)");
        cmd->add_option("--format", opts.format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", opts.out, "write output to a file instead of stdout");
        cmd->add_option("--max-q", opts.max_q, "census size bound override");
        cmd->add_option("--threads", opts.threads, "worker threads for census scans");
    };

    CLI::App* census = app.add_subcommand("census", "trace spectrum with refined counts");
    add_common(census);

    CLI::App* verify = app.add_subcommand("verify", "check the ratio/partition identities");
    add_common(verify);
    verify->add_option("--theorem", theorem,
                       "6.5, 7.1-7.2 (alias katz), 7.6, 7.7, 7.8, 8.1, 8.2, 8.4 or all");

    CLI::App* mapcmd = app.add_subcommand("map", "evaluate a named map at a point");
    add_common(mapcmd);
    mapcmd->add_option("--name", map_name, "map name")->required();
    mapcmd->add_option("--d", d_text, "curve parameter d");
    mapcmd->add_option("--a", a_text, "twist parameter a (twisted psi) or huff parameter a");
    mapcmd->add_option("--b", b_text, "huff parameter b");
    mapcmd->add_option("--point", point_text, "input point: x,y | inf | exc:LABEL");
    mapcmd->add_flag("--allow-extension", allow_extension,
                     "evaluate maps that are only defined over an extension");

    CLI::App* classifycmd = app.add_subcommand("classify", "full record for one parameter");
    add_common(classifycmd);
    classifycmd->add_option("--d", d_text, "curve parameter d")->required();

    CLI::App* deuringcmd = app.add_subcommand("deuring", "Deuring polynomial and its roots");
    add_common(deuringcmd);

    CLI::App* orbitcmd = app.add_subcommand("orbit", "parameter orbit of d");
    add_common(orbitcmd);
    orbitcmd->add_option("--d", d_text, "curve parameter d")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (census->parsed()) {
            auto ctx = make_ctx(opts);
            edc::CensusTable table = edc::trace_spectrum(ctx, opts.threads);
            write_output(opts, opts.format == "json" ? edc::census_to_json(table)
                                                     : edc::census_to_csv(table));
            return kExitOk;
        }

        if (verify->parsed()) {
            auto ctx = make_ctx(opts);
            edc::CensusTable table = edc::trace_spectrum(ctx, opts.threads);
            std::vector<edc::TheoremReport> reports;
            uint64_t q = ctx->q();
            auto want = [&](const std::string& id) { return theorem == id || theorem == "all"; };
            if (want("6.5")) reports.push_back(edc::deuring_report(ctx));
            if (theorem == "katz" || theorem == "7.1-7.2" || theorem == "7.1" || theorem == "7.2" ||
                theorem == "all") {
                if (q % 4 == 1)
                    reports.push_back(edc::katz_ratio_report(table));
                else if (theorem != "all")
                    throw edc::CensusError("the ratio rules require q = 1 (mod 4)");
            }
            for (const char* id : {"7.6", "7.7", "7.8", "8.1", "8.2", "8.4"}) {
                if (!want(id)) continue;
                bool applies = true;
                if ((std::string(id) == "7.6" || std::string(id) == "8.2" ||
                     std::string(id) == "8.4") &&
                    q % 4 != 1)
                    applies = false;
                if ((std::string(id) == "7.7" || std::string(id) == "8.1") && q % 4 != 3)
                    applies = false;
                if (!applies) {
                    if (theorem != "all")
                        throw edc::CensusError(std::string("theorem ") + id +
                                               " does not apply to this residue class");
                    continue;
                }
                reports.push_back(edc::theorem_report(table, id));
            }
            if (reports.empty()) throw edc::CensusError("unknown theorem id '" + theorem + "'");
            bool all_ok = true;
            std::string payload;
            for (const auto& r : reports) {
                all_ok = all_ok && r.verified;
                payload += r.to_json();
                payload += "\n";
            }
            write_output(opts, payload);
            return all_ok ? kExitOk : kExitVerifyFailed;
        }

        if (mapcmd->parsed()) {
            auto ctx = make_ctx(opts);
            if (map_name == "huff") {
                if (a_text.empty() || b_text.empty())
                    throw edc::MapError("the huff parameter map needs --a and --b");
                edc::FieldElement a = ctx->from_code(ctx->parse_element(a_text));
                edc::FieldElement b = ctx->from_code(ctx->parse_element(b_text));
                std::cout << edc::huff_param(a, b).str() << "\n";
                return kExitOk;
            }
            if (d_text.empty() || point_text.empty())
                throw edc::MapError("map evaluation needs --d and --point");
            edc::FieldElement d = ctx->from_code(ctx->parse_element(d_text));
            std::optional<edc::FieldElement> a;
            if (!a_text.empty()) a = ctx->from_code(ctx->parse_element(a_text));
            edc::RationalMap f = build_map(map_name, d, a);
            if (f.defined_over != edc::DefinedOver::BaseField && !allow_extension)
                throw edc::MapError("map is defined over the " +
                                    edc::defined_over_name(f.defined_over) +
                                    "; pass --allow-extension to evaluate there");
            edc::Point pt = edc::parse_point(point_text, ctx);
            edc::Point img = f.apply(pt);
            std::cout << img.str() << "\n";
            return kExitOk;
        }

        if (classifycmd->parsed()) {
            auto ctx = make_ctx(opts);
            edc::FieldElement d = ctx->from_code(ctx->parse_element(d_text));
            write_output(opts, edc::classify(d).to_json());
            return kExitOk;
        }

        if (deuringcmd->parsed()) {
            auto ctx = make_ctx(opts);
            edc::DeuringPoly H = edc::deuring_poly(ctx->p());
            auto roots = edc::supersingular_params(ctx);
            std::ostringstream os;
            os << "# ctx=" << ctx->describe() << "\n";
            os << "# H_p coefficients (low degree first) over F_" << H.p << "\n";
            for (size_t i = 0; i < H.coeffs.size(); ++i) {
                if (i) os << ',';
                os << H.coeffs[i];
            }
            os << "\n# roots in " << ctx->describe() << "\n";
            for (size_t i = 0; i < roots.size(); ++i) {
                if (i) os << ';';
                os << roots[i].str();
            }
            os << "\nS=" << roots.size() << "\n";
            write_output(opts, os.str());
            return kExitOk;
        }

        if (orbitcmd->parsed()) {
            auto ctx = make_ctx(opts);
            edc::FieldElement d = ctx->from_code(ctx->parse_element(d_text));
            std::ostringstream os;
            os << "# ctx=" << ctx->describe() << "\n";
            auto orb = edc::orbit(d);
            for (size_t i = 0; i < orb.size(); ++i) {
                if (i) os << ';';
                os << orb[i].str();
            }
            os << "\n";
            write_output(opts, os.str());
            return kExitOk;
        }
    } catch (const edc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

#include <sstream>

#include "json.hpp"
#include "edc/census.hpp"

namespace edc {

std::string fourth_class_name(FourthPowerClass c) {
    switch (c) {
        case FourthPowerClass::Zero: return "zero";
        case FourthPowerClass::FourthPower: return "fourth-power";
        case FourthPowerClass::SquareNotFourth: return "square-not-fourth";
        case FourthPowerClass::NonSquare: return "nonsquare";
    }
    return "?";
}

FieldCtxPtr parse_ctx_string(const std::string& text, uint64_t max_q) {
    auto caret = text.find('^');
    if (caret == std::string::npos) throw CensusError("malformed field descriptor '" + text + "'");
    uint64_t p = std::stoull(text.substr(0, caret));
    auto colon = text.find(':', caret);
    unsigned m = static_cast<unsigned>(
        std::stoul(text.substr(caret + 1, colon == std::string::npos ? std::string::npos
                                                                     : colon - caret - 1)));
    std::vector<uint64_t> modulus;
    if (colon != std::string::npos) {
        std::string rest = text.substr(colon + 1);
        std::string cur;
        for (char ch : rest) {
            if (ch == ',') {
                modulus.push_back(std::stoull(cur));
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        if (!cur.empty()) modulus.push_back(std::stoull(cur));
    }
    return FieldContext::create(p, m, modulus, max_q);
}

static std::string join_codes(const FieldCtxPtr& ctx, const std::vector<uint64_t>& codes) {
    std::string out;
    for (size_t i = 0; i < codes.size(); ++i) {
        if (i) out += ';';
        out += ctx->format_element(codes[i]);
    }
    return out;
}

std::string census_to_csv(const CensusTable& table) {
    std::ostringstream os;
    os << "# edcensus census\n";
    os << "# format-version=1\n";
    os << "# ctx=" << table.ctx->describe() << "\n";
    os << "A,N,N_n2,N_2n4,N_4,d_list\n";
    for (const auto& [a, cls] : table.classes) {
        os << a << ',' << cls.n << ',' << cls.n_n2 << ',' << cls.n_2n4 << ',' << cls.n_4 << ",\""
           << join_codes(table.ctx, cls.d_codes) << "\"\n";
    }
    return os.str();
}

std::string census_to_json(const CensusTable& table) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["ctx"] = table.ctx->describe();
    auto arr = nlohmann::json::array();
    for (const auto& [a, cls] : table.classes) {
        nlohmann::json e;
        e["A"] = a;
        e["N"] = cls.n;
        e["N_n2"] = cls.n_n2;
        e["N_2n4"] = cls.n_2n4;
        e["N_4"] = cls.n_4;
        auto ds = nlohmann::json::array();
        for (uint64_t c : cls.d_codes) ds.push_back(table.ctx->format_element(c));
        e["d"] = ds;
        arr.push_back(e);
    }
    j["classes"] = arr;
    return j.dump(2);
}

namespace {

TraceClass make_class(const FieldCtxPtr& ctx, int64_t a, uint64_t n, uint64_t n_n2, uint64_t n_2n4,
                      uint64_t n_4, const std::vector<std::string>& ds) {
    TraceClass cls;
    cls.trace = a;
    cls.n = n;
    cls.n_n2 = n_n2;
    cls.n_2n4 = n_2n4;
    cls.n_4 = n_4;
    cls.n_2 = n_2n4 + n_4;
    for (const auto& s : ds) cls.d_codes.push_back(ctx->parse_element(s));
    if (cls.d_codes.size() != cls.n) throw CensusError("class size disagrees with its d-list");
    return cls;
}

}  // namespace

CensusTable census_from_csv(const std::string& text, uint64_t max_q) {
    CensusTable table;
    std::istringstream is(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            auto pos = line.find("ctx=");
            if (pos != std::string::npos) table.ctx = parse_ctx_string(line.substr(pos + 4), max_q);
            continue;
        }
        if (!header_seen) {  // column header
            header_seen = true;
            continue;
        }
        if (!table.ctx) throw CensusError("census file lacks a ctx header");
        // A,N,N_n2,N_2n4,N_4,"d1;d2;..."
        std::vector<std::string> cols;
        std::string cur;
        bool quoted = false;
        for (char ch : line) {
            if (ch == '"') {
                quoted = !quoted;
            } else if (ch == ',' && !quoted) {
                cols.push_back(cur);
                cur.clear();
            } else {
                cur.push_back(ch);
            }
        }
        cols.push_back(cur);
        if (cols.size() != 6) throw CensusError("malformed census row '" + line + "'");
        std::vector<std::string> ds;
        std::string el;
        for (char ch : cols[5]) {
            if (ch == ';') {
                ds.push_back(el);
                el.clear();
            } else {
                el.push_back(ch);
            }
        }
        if (!el.empty()) ds.push_back(el);
        int64_t a = std::stoll(cols[0]);
        table.classes[a] = make_class(table.ctx, a, std::stoull(cols[1]), std::stoull(cols[2]),
                                      std::stoull(cols[3]), std::stoull(cols[4]), ds);
    }
    if (!table.ctx) throw CensusError("census file lacks a ctx header");
    return table;
}

CensusTable census_from_json(const std::string& text, uint64_t max_q) {
    nlohmann::json j = nlohmann::json::parse(text);
    if (j.at("format_version").get<int>() != 1) throw CensusError("unsupported format version");
    CensusTable table;
    table.ctx = parse_ctx_string(j.at("ctx").get<std::string>(), max_q);
    for (const auto& e : j.at("classes")) {
        int64_t a = e.at("A").get<int64_t>();
        std::vector<std::string> ds;
        for (const auto& s : e.at("d")) ds.push_back(s.get<std::string>());
        table.classes[a] =
            make_class(table.ctx, a, e.at("N").get<uint64_t>(), e.at("N_n2").get<uint64_t>(),
                       e.at("N_2n4").get<uint64_t>(), e.at("N_4").get<uint64_t>(), ds);
    }
    return table;
}

}  // namespace edc

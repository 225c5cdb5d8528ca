#pragma once

// JSON conversions for the command-line front end. Rationals and slopes are
// strings ("p/q", "inf"); everything else is plain integers and arrays.

#include "json.hpp"
#include <sstream>
#include <string>

#include "tight/census.hpp"
#include "tight/dividing_sets.hpp"
#include "tight/traversal.hpp"

namespace tight::cli {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return r.str(); }

inline Json to_json(const Slope& s) {
    if (s.is_infinite()) return "inf";
    return s.value().str();
}

inline Json to_json(const RInvariants& r) { return Json{{"values", r.values}, {"block_sizes", r.block_sizes}}; }

inline Json to_json(const LabeledEta& x) { return Json{{"l", x.l}, {"eta", x.eta.values}}; }

inline Json to_json(const IntMatrix2& m) { return Json::array({Json::array({m.a, m.b}), Json::array({m.c, m.d})}); }

inline Json sign_json(const std::optional<Sign>& s) {
    if (!s) return nullptr;
    return *s == Sign::positive ? "+" : "-";
}

inline std::optional<Sign> parse_sign(const Json& j) {
    if (j.is_null()) return std::nullopt;
    auto s = j.get<std::string>();
    if (s == "+") return Sign::positive;
    if (s == "-") return Sign::negative;
    throw DomainError("sign must be \"+\", \"-\" or null");
}

// Endpoints are written "b3", "t0", "h1".
inline std::string endpoint_str(const Endpoint& e) {
    const char* tag = e.side == Side::bottom ? "b" : e.side == Side::top ? "t" : "h";
    return tag + std::to_string(e.index);
}

inline Endpoint parse_endpoint(const std::string& s) {
    if (s.size() < 2) throw DomainError("bad endpoint: " + s);
    Endpoint e;
    switch (s[0]) {
        case 'b': e.side = Side::bottom; break;
        case 't': e.side = Side::top; break;
        case 'h': e.side = Side::hole; break;
        default: throw DomainError("bad endpoint: " + s);
    }
    std::size_t used = 0;
    try {
        e.index = std::stoll(s.substr(1), &used);
    } catch (const std::exception&) {
        throw DomainError("bad endpoint: " + s);
    }
    if (used != s.size() - 1 || e.index < 0) throw DomainError("bad endpoint: " + s);
    return e;
}

inline Json arcs_json(const std::vector<Arc>& arcs) {
    Json out = Json::array();
    for (const auto& a : arcs)
        out.push_back(Json{{"from", endpoint_str(a.a)}, {"to", endpoint_str(a.b)}, {"winding", a.winding}});
    return out;
}

inline std::vector<Arc> parse_arcs(const Json& j) {
    std::vector<Arc> out;
    for (const auto& a : j)
        out.push_back(Arc{parse_endpoint(a.at("from").get<std::string>()), parse_endpoint(a.at("to").get<std::string>()),
                          a.value("winding", Int{0})});
    return out;
}

inline Json to_json(const AnnulusMulticurve& m) {
    return Json{{"surface", "annulus"},   {"bottom", m.bottom},   {"top", m.top},
                {"arcs", arcs_json(m.arcs)}, {"cores", m.cores}, {"contractible", m.contractible},
                {"sign", sign_json(m.sign)}};
}

inline Json to_json(const PantsMulticurve& m) {
    return Json{{"surface", "pants"},
                {"bottom", m.bottom},
                {"top", m.top},
                {"hole", m.hole},
                {"arcs", arcs_json(m.arcs)},
                {"bottom_parallel", m.bottom_parallel},
                {"top_parallel", m.top_parallel},
                {"hole_parallel", m.hole_parallel},
                {"contractible", m.contractible},
                {"sign", sign_json(m.sign)}};
}

inline Json to_json(const PuncturedTorusMulticurve& m) {
    Json arcs = Json::array(), closed = Json::array();
    for (const auto& a : m.arcs) arcs.push_back(Json{{"from", a.a}, {"to", a.b}, {"class", {a.hx, a.hy}}});
    for (const auto& [s, k] : m.closed) closed.push_back(Json{{"slope", to_json(s)}, {"count", k}});
    return Json{{"surface", "punctured-torus"}, {"boundary", m.boundary},         {"arcs", arcs},
                {"closed", closed},             {"contractible", m.contractible}, {"sign", sign_json(m.sign)}};
}

inline Json to_json(const TorusMulticurve& m) {
    Json regions = Json::array();
    for (const auto& r : m.regions) regions.push_back(Json{{"chi", r.chi}, {"sign", sign_json(r.sign)}});
    return Json{{"surface", "torus"},
                {"slope", m.slope ? to_json(*m.slope) : Json(nullptr)},
                {"essential", m.essential},
                {"contractible", m.contractible},
                {"regions", regions},
                {"signs_consistent", m.signs_consistent},
                {"tight", is_tight(m)}};
}

using AnyMulticurve = std::variant<AnnulusMulticurve, PantsMulticurve, PuncturedTorusMulticurve>;

inline AnyMulticurve parse_multicurve(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("multicurve is not valid JSON: ") + e.what());
    }
    try {
        auto surface = j.at("surface").get<std::string>();
        if (surface == "annulus") {
            AnnulusMulticurve m;
            m.bottom = j.at("bottom").get<Int>();
            m.top = j.at("top").get<Int>();
            m.arcs = parse_arcs(j.value("arcs", Json::array()));
            m.cores = j.value("cores", Int{0});
            m.contractible = j.value("contractible", Int{0});
            m.sign = parse_sign(j.value("sign", Json(nullptr)));
            validate(m);
            return m;
        }
        if (surface == "pants") {
            PantsMulticurve m;
            m.bottom = j.at("bottom").get<Int>();
            m.top = j.at("top").get<Int>();
            m.hole = j.at("hole").get<Int>();
            m.arcs = parse_arcs(j.value("arcs", Json::array()));
            m.bottom_parallel = j.value("bottom_parallel", Int{0});
            m.top_parallel = j.value("top_parallel", Int{0});
            m.hole_parallel = j.value("hole_parallel", Int{0});
            m.contractible = j.value("contractible", Int{0});
            m.sign = parse_sign(j.value("sign", Json(nullptr)));
            validate(m);
            return m;
        }
        if (surface == "punctured-torus") {
            PuncturedTorusMulticurve m;
            m.boundary = j.at("boundary").get<Int>();
            for (const auto& a : j.value("arcs", Json::array())) {
                auto cls = a.value("class", Json::array({0, 0}));
                m.arcs.push_back(PuncturedArc{a.at("from").get<Int>(), a.at("to").get<Int>(), cls.at(0).get<Int>(),
                                              cls.at(1).get<Int>()});
            }
            for (const auto& c : j.value("closed", Json::array()))
                m.closed.emplace_back(Slope::parse(c.at("slope").get<std::string>()), c.value("count", Int{1}));
            m.contractible = j.value("contractible", Int{0});
            m.sign = parse_sign(j.value("sign", Json(nullptr)));
            validate(m);
            return m;
        }
        throw DomainError("unknown surface: " + surface);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("malformed multicurve: ") + e.what());
    }
}

inline Json to_json(const std::variant<FiniteSlope, InfiniteSlope>& where) {
    if (auto* f = std::get_if<FiniteSlope>(&where)) return Json{{"slope", Rational(f->p, f->q).str()}};
    return Json{{"slope", "inf"}, {"multicurve", to_json(std::get<InfiniteSlope>(where).gamma)}};
}

inline Json to_json(const TraversalState& s) {
    Json labels = Json::array();
    for (const auto& x : s.labels) labels.push_back(to_json(x));
    Json j = to_json(s.where);
    j["labels"] = labels;
    j["euler"] = {s.euler.first, s.euler.second};
    return j;
}

}  // namespace tight::cli

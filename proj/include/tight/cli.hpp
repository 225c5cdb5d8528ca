#pragma once

// Command-line front end. run() parses argv-style arguments, prints one JSON
// document (or a flat table) on `out` and returns the exit code:
// 0 ok, 1 bad input, 2 internal disagreement between formulas.

#include "CLI11.hpp"

#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "tight/cli_json.hpp"
#include "tight/solid_torus.hpp"

namespace tight::cli {

inline std::vector<Int> parse_int_list(const std::string& text) {
    std::vector<Int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        try {
            out.push_back(std::stoll(item, &used));
        } catch (const std::exception&) {
            throw DomainError("bad integer list: " + text);
        }
        if (used != item.size()) throw DomainError("bad integer list: " + text);
    }
    if (out.empty()) throw DomainError("empty integer list");
    return out;
}

/// Document printed for every query.
struct QueryResult {
    std::string command;
    Json input = Json::object();
    Json result;
    std::optional<Json> witnesses;
    std::optional<Json> truncation;

    Json to_json() const {
        Json j{{"command", command}, {"input", input}, {"result", result}};
        if (witnesses) j["witnesses"] = *witnesses;
        if (truncation) j["truncation"] = *truncation;
        return j;
    }
};

inline void print_table(const Json& j, std::ostream& out) {
    auto flat = j.flatten();
    for (const auto& [key, value] : flat.items()) out << key << '\t' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
}

namespace detail {

inline SeifertDescriptor descriptor(Int e0, const std::string& r) {
    SeifertDescriptor sd{e0, Rational::parse(r)};
    sd.validate();
    return sd;
}

inline RInvariants find_eta(const SeifertDescriptor& sd, const std::string& text) {
    auto values = parse_int_list(text);
    for (const auto& e : exceptional_etas(sd))
        if (e.values == values) return e;
    throw DomainError("eta " + text + " is not an r-invariant of the exceptional filling");
}

inline void require_l(Int l) {
    if (l != 2 && l != -2) throw DomainError("--l must be 2 or -2");
}

inline Json background_json(const BackgroundEntry& e) {
    Json j;
    std::visit(
        [&](const auto& b) {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, NegativeBase>) {
                j = Json{{"type", "negative-base"}, {"index", b.index}, {"t", b.t}};
            } else if constexpr (std::is_same_v<T, ThreeTorus>) {
                j = Json{{"type", "three-torus"}, {"n", b.n}, {"c", {b.c.c1, b.c.c2, b.c.c3}}, {"t", b.t}};
            } else if constexpr (std::is_same_v<T, InvariantT0>) {
                j = Json{{"type", "invariant-t0"}, {"n", b.n}, {"slope", cli::to_json(b.slope)}, {"t", b.t}};
            } else {
                j = Json{{"type", "exceptional"}, {"l", b.l}};
            }
        },
        e.background);
    j["fiber_count"] = e.fiber_count;
    return j;
}

template <class M>
Json multicurve_json(const M& m) {
    return cli::to_json(m);
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Tight contact structures on Seifert manifolds over the torus with one singular fibre", "tight"};
    app.require_subcommand(1, 1);
    app.fallthrough();
    bool table = false;
    app.add_flag("--json", "JSON output (default)");
    app.add_flag("--table", table, "tab-separated key/value output");

    QueryResult q;
    std::function<void()> action;

    // Option storage shared by the subcommands.
    std::string value, coeffs, slope, r, matrix, from, to, sweep = "increasing", multicurve, side, span, c;
    std::string meridian = "0";
    Int e0 = 0, t = 0, n = 1, size = 0, division = 1;
    Int max_denominator = 8, max_division = 3;
    Int bg_division = 2, bg_denominator = 2, max_c = 2;
    std::vector<Int> ls;
    std::vector<std::string> etas;

    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<void()> fn) {
        auto* sub = parent->add_subcommand(name, help);
        sub->callback([&, sub, fn] {
            std::string path;
            for (auto* p = sub; p && p->get_parent(); p = p->get_parent())
                path = path.empty() ? p->get_name() : p->get_name() + " " + path;
            q.command = path;
            action = fn;
        });
        return sub;
    };
    auto group = [&](const std::string& name, const std::string& help) {
        auto* g = app.add_subcommand(name, help);
        g->require_subcommand(1, 1);
        return g;
    };

    // cf
    auto* cf = group("cf", "negative continued fractions");
    leaf(cf, "expand", "coefficients of a rational < -1", [&] {
            Rational s = Rational::parse(value);
            q.input = {{"value", s.str()}};
            q.result = cf_expand(s).coefficients;
        })->add_option("--value", value, "rational p/q")->required();
    leaf(cf, "value", "evaluate coefficients", [&] {
            auto e = parse_int_list(coeffs);
            q.input = {{"coeffs", e}};
            q.result = cf_value(e).str();
        })->add_option("--coeffs", coeffs, "a0,a1,...")->required();

    // slope map, surgery-matrix
    auto* sl = group("slope", "slopes under SL2(Z)");
    auto* map = leaf(sl, "map", "image of a slope under A(r) or an explicit matrix", [&] {
        Slope s = Slope::parse(slope);
        IntMatrix2 g;
        q.input = {{"slope", to_json(s)}};
        if (!matrix.empty()) {
            auto v = parse_int_list(matrix);
            if (v.size() != 4) throw DomainError("--matrix needs four entries");
            g = IntMatrix2{v[0], v[1], v[2], v[3]};
            q.input["matrix"] = to_json(g);
        } else if (!r.empty()) {
            Rational rr = Rational::parse(r);
            g = surgery_matrix(rr);
            q.input["r"] = rr.str();
        } else {
            throw DomainError("slope map needs --r or --matrix");
        }
        q.result = to_json(mobius(g, s));
    });
    map->add_option("--slope", slope, "p/q or inf")->required();
    map->add_option("--r", r, "surgery coefficient p/q in (0,1)");
    map->add_option("--matrix", matrix, "a,b,c,d with ad - bc = +-1");

    leaf(&app, "surgery-matrix", "the gluing matrix A(r)", [&] {
            Rational rr = Rational::parse(r);
            q.input = {{"r", rr.str()}};
            q.result = to_json(surgery_matrix(rr));
        })->add_option("--r", r, "p/q in (0,1)")->required();

    // farey
    auto* fa = group("farey", "Farey graph paths");
    auto farey_opts = [&](CLI::App* s) {
        s->add_option("--from", from, "start slope")->required();
        s->add_option("--to", to, "end slope")->required();
        s->add_option("--sweep", sweep, "increasing or decreasing")->check(CLI::IsMember({"increasing", "decreasing"}));
    };
    auto farey_path = [&] {
        Slope a = Slope::parse(from), b = Slope::parse(to);
        q.input = {{"from", to_json(a)}, {"to", to_json(b)}, {"sweep", sweep}};
        return shortest_path(a, b, sweep == "increasing" ? Sweep::increasing : Sweep::decreasing);
    };
    farey_opts(leaf(fa, "path", "shortest path along the arc", [&] {
        auto p = farey_path();
        Json vs = Json::array();
        for (const auto& v : p.vertices) vs.push_back(to_json(v));
        q.result = {{"vertices", vs}, {"length", p.length()}};
    }));
    farey_opts(leaf(fa, "blocks", "continued fraction blocks of the shortest path", [&] {
        auto bd = block_decomposition(farey_path());
        Json blocks = Json::array();
        for (const auto& b : bd.blocks) {
            Json vs = Json::array();
            for (const auto& v : b.vertices) vs.push_back(to_json(v));
            blocks.push_back({{"vertices", vs}, {"pivot", to_json(b.pivot)}, {"size", b.size()}});
        }
        q.result = {{"sizes", bd.sizes()}, {"sign_classes", bd.sign_classes()}, {"blocks", blocks}};
    }));

    // solid-torus
    auto* st = group("solid-torus", "tight structures on a solid torus");
    auto solid_opts = [&](CLI::App* s) {
        s->add_option("--slope", slope, "dividing slope")->required();
        s->add_option("--meridian", meridian, "meridian slope (default 0, the vector (1,0))");
        s->add_option("--division", division, "half the number of dividing curves");
    };
    auto boundary = [&] {
        SolidTorusBoundary b{Slope::parse(meridian), Slope::parse(slope), division};
        q.input = {{"meridian", to_json(b.meridian)}, {"slope", to_json(b.dividing)}, {"division", division}};
        return b;
    };
    solid_opts(leaf(st, "count", "number of tight structures", [&] {
        auto b = boundary();
        Int k = count_tight(b);
        if (k != static_cast<Int>(enumerate_tight(b).size()))
            throw InconsistencyError("count formula disagrees with enumeration");
        q.result = k;
    }));
    solid_opts(leaf(st, "enumerate", "all r-invariant tuples", [&] {
        Json list = Json::array();
        for (const auto& e : enumerate_tight(boundary())) list.push_back(to_json(e));
        q.result = list;
    }));

    // census
    auto* ce = group("census", "counts over M(e0, r)");
    auto* fc = leaf(ce, "fiber-count", "tight fillings of the singular fibre for twisting t", [&] {
        Rational rr = Rational::parse(r);
        q.input = {{"t", t}, {"r", rr.str()}};
        Int k = fiber_count(t, rr);
        if (k > 0) {
            auto b = fiber_boundary(t, rr);
            if (count_tight(b) != k || static_cast<Int>(enumerate_tight(b).size()) != k || fiber_count_shifted(t, rr) != k)
                throw InconsistencyError("fibre count formulas disagree");
        }
        q.result = k;
    });
    fc->add_option("--t", t, "twisting number <= 0")->required();
    fc->add_option("--r", r, "p/q in (0,1)")->required();

    auto seifert_opts = [&](CLI::App* s) {
        s->add_option("--e0", e0, "Euler number of the circle bundle")->required();
        s->add_option("--r", r, "p/q in (0,1)")->required();
    };
    auto sd_input = [&] {
        auto sd = detail::descriptor(e0, r);
        q.input = {{"e0", sd.e0}, {"r", sd.r.str()}};
        return sd;
    };
    seifert_opts(leaf(ce, "exceptional", "number of exceptional tight structures", [&] {
        auto sd = sd_input();
        Int k = exceptional_count(sd);
        auto classes = exceptional_enumerate(sd);
        if (k != static_cast<Int>(classes.size())) throw InconsistencyError("exceptional count disagrees with orbit count");
        Json w = Json::array();
        for (const auto& cls : classes) {
            Json members = Json::array();
            for (const auto& x : cls) members.push_back(to_json(x));
            w.push_back(members);
        }
        q.result = k;
        q.witnesses = w;
    }));
    auto* bg = leaf(ce, "backgrounds", "background census with fibre counts", [&] {
        auto sd = sd_input();
        BackgroundBounds b{bg_division, bg_denominator, max_c};
        auto census = enumerate_backgrounds(sd, b);
        Json list = Json::array();
        for (const auto& e : census.entries) list.push_back(detail::background_json(e));
        q.result = list;
        if (census.truncated)
            q.truncation = Json{{"max_division", b.max_division}, {"max_denominator", b.max_denominator}, {"max_c", b.max_c}};
    });
    seifert_opts(bg);
    bg->add_option("--max-division", bg_division, "largest division number");
    bg->add_option("--max-denominator", bg_denominator, "largest slope height");
    bg->add_option("--max-c", max_c, "largest |c_i|");
    seifert_opts(leaf(ce, "twisting", "admissible twisting numbers", [&] { q.result = admissible_twisting(sd_input()); }));
    auto* tor = leaf(ce, "torus", "invariants of the T^3 structure labelled (n, c)", [&] {
        auto v = parse_int_list(c);
        if (v.size() != 3) throw DomainError("--c needs three entries");
        q.input = {{"n", n}, {"c", v}};
        auto inv = torus_invariants(n, Triple{v[0], v[1], v[2]});
        auto back = torus_label(inv);
        if (back.first != n || std::llabs(back.second.c3) != std::llabs(v[2]))
            throw InconsistencyError("torus label does not invert");
        q.result = {{"n1", inv.n1}, {"s1", to_json(inv.s1)}, {"n2", inv.n2}, {"s2", to_json(inv.s2)}, {"t", inv.t}};
    });
    tor->add_option("--n", n, "positive integer")->required();
    tor->add_option("--c", c, "c1,c2,c3 primitive")->required();

    // divide
    auto* dv = group("divide", "abstract dividing sets");
    auto mc_opt = [&](CLI::App* s) {
        s->add_option("--multicurve", multicurve, "multicurve as JSON")->required();
        return s;
    };
    auto parsed = [&] {
        auto m = parse_multicurve(multicurve);
        q.input = {{"multicurve", std::visit([](const auto& x) { return detail::multicurve_json(x); }, m)}};
        return m;
    };
    auto annulus_only = [&](const AnyMulticurve& m) {
        auto* a = std::get_if<AnnulusMulticurve>(&m);
        if (!a) throw DomainError("this operation needs an annulus multicurve");
        return *a;
    };
    mc_opt(leaf(dv, "close", "glue the annulus into a torus", [&] { q.result = to_json(close_annulus(annulus_only(parsed()))); }));
    mc_opt(leaf(dv, "hat", "remove contractible curves", [&] {
        q.result = std::visit([](const auto& x) { return detail::multicurve_json(hat(x)); }, parsed());
    }));
    mc_opt(leaf(dv, "euler", "Euler signature chi(+) - chi(-)", [&] {
        q.result = std::visit([](const auto& x) { return euler_signature(x); }, parsed());
    }));
    auto* tp = mc_opt(leaf(dv, "template", "attach an elementary template", [&] {
        auto m = annulus_only(parsed());
        auto sp = parse_int_list(span);
        if (sp.size() != 2) throw DomainError("--span needs two point indices");
        Side s = side == "bottom" ? Side::bottom : Side::top;
        q.input["side"] = side;
        q.input["span"] = sp;
        q.input["size"] = size;
        auto v = attach_template(m, s, {sp[0], sp[1]}, size);
        q.result = {{"verdict", v.overtwisted ? "overtwisted" : "tight"},
                    {"multicurve", v.result ? to_json(*v.result) : Json(nullptr)}};
    }));
    tp->add_option("--side", side, "bottom or top")->required()->check(CLI::IsMember({"bottom", "top"}));
    tp->add_option("--span", span, "adjacent points i,j")->required();
    tp->add_option("--size", size, "template size n (2n points on the glued side)")->required();

    // traverse, isotopic
    auto traversal_opts = [&](CLI::App* s) {
        seifert_opts(s);
        s->add_option("--l", ls, "label +2 or -2")->required();
        s->add_option("--eta", etas, "r0,r1,...")->required();
        s->add_option("--max-denominator", max_denominator, "largest wall slope denominator");
        s->add_option("--max-division", max_division, "largest infinite-slope division number");
    };
    auto opts = [&] {
        q.input["max_denominator"] = max_denominator;
        q.input["max_division"] = max_division;
        return TraversalOptions{max_denominator, max_division};
    };
    auto* tr = leaf(&app, "traverse", "state traversal for one exceptional label", [&] {
        auto sd = sd_input();
        if (ls.size() != 1 || etas.size() != 1) throw DomainError("traverse takes one --l and one --eta");
        detail::require_l(ls[0]);
        auto eta = detail::find_eta(sd, etas[0]);
        q.input["l"] = ls[0];
        q.input["eta"] = eta.values;
        auto o = opts();
        auto v = traverse(sd, initial_state(sd, ls[0], eta, o), o);
        q.result = {{"verdict", v.tight ? "tight" : "overtwisted"}, {"states", static_cast<Int>(v.visited.size())}};
        if (!v.tight) {
            Json w = Json::array();
            for (const auto& s : v.witness) w.push_back(to_json(s));
            q.witnesses = w;
        }
    });
    traversal_opts(tr);
    auto* iso = leaf(&app, "isotopic", "compare two exceptional labels", [&] {
        auto sd = sd_input();
        if (ls.size() != 2 || etas.size() != 2) throw DomainError("isotopic takes --l and --eta twice each");
        std::vector<LabeledEta> xs;
        Json echo = Json::array();
        for (int i = 0; i < 2; ++i) {
            detail::require_l(ls[i]);
            xs.push_back({ls[i], detail::find_eta(sd, etas[i])});
            echo.push_back(to_json(xs.back()));
        }
        q.input["labels"] = echo;
        auto o = opts();
        q.result = isotopic(sd, xs[0], xs[1], o);
    });
    traversal_opts(iso);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const InconsistencyError& e) {
        err << "inconsistency: " << e.what() << '\n';
        return 2;
    }
    if (!action) {
        err << app.help();
        return 1;
    }
    try {
        action();
    } catch (const InconsistencyError& e) {
        err << "inconsistency: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    Json doc = q.to_json();
    if (table) {
        print_table(doc, out);
    } else {
        out << doc.dump(2) << '\n';
    }
    return 0;
}

}  // namespace tight::cli

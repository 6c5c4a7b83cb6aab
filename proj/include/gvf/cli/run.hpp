#pragma once

#include "gvf/core/checks.hpp"
#include "gvf/core/gvf.hpp"
#include "gvf/core/quadratic.hpp"
#include "gvf/core/qz_structure.hpp"
#include "gvf/io/json.hpp"
#include "gvf/positivity/cross_validate.hpp"
#include "gvf/positivity/positivity.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace gvf::cli {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2 };

struct Options {
    std::string field = "Q";
    unsigned long p = 3;
    long d = 2;
    std::string structure = "r=1";
    unsigned long seed = 1;
    bool logic = false;
    double tol = 1e-9;
    std::vector<std::string> args;

    std::string epsilon = "1";
    int degree = 4;
    long coeff = 8;
    long budget = 2000000;
    std::size_t count = 100;
    long bound = 20;
    std::string battery = "all";
};

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline Rational parse_structure(const std::string& s) {
    if (s.rfind("r=", 0) != 0) throw UsageError("--structure expects r=<nonnegative rational>, got '" + s + "'");
    Rational r;
    try {
        r = Lexer(s.substr(2)).rational();
    } catch (const ParseError& e) {
        throw UsageError("--structure: " + std::string(e.what()));
    }
    return r;
}

inline Rational parse_epsilon(const std::string& s) {
    Lexer lx(s);
    Rational e = lx.rational();
    if (!lx.at_end()) lx.fail("expected end of epsilon");
    if (e <= 0) throw UsageError("--epsilon must be positive");
    return e;
}

inline Json header(const std::string& command, const std::string& field, const Options& o) {
    Json j = {{"schemaVersion", kSchemaVersion}, {"command", command}, {"field", field}};
    j["structure"] = {{"r", rational_text(parse_structure(o.structure))}};
    return j;
}

template <class V>
Json place_values(const std::vector<std::pair<Place, V>>& xs) {
    Json out = Json::array();
    for (auto& [v, x] : xs) out.push_back({{"place", json_place(v)}, {"value", json_value(x)}});
    return out;
}

// Calls fn(G) with the discrete structure selected by --field.
template <class Fn>
int with_discrete(const Options& o, const std::string& command, Fn fn) {
    Rational r = parse_structure(o.structure);
    if (o.field == "Q") return fn(DiscreteGVF<QField>(QField{}, r));
    if (o.field == "Fpt") return fn(DiscreteGVF<FptField>(FptField(o.p), r));
    if (o.field == "Quad") return fn(DiscreteGVF<QuadField>(QuadField(o.d), r));
    if (o.field == "Qz") throw UsageError(command + " is not available for --field Qz");
    throw UsageError("unknown field '" + o.field + "' (expected Q, Fpt, Quad or Qz)");
}

template <class G>
auto elements(const G& g, const std::vector<std::string>& xs) {
    return parse_elements(g.field(), xs);
}

inline void need_args(const Options& o, std::size_t lo, const std::string& what) {
    if (o.args.size() < lo) throw UsageError("expected " + what);
}

inline int cmd_height(const Options& o, std::ostream& out) {
    need_args(o, 1, "at least one element");
    if (o.field == "Qz") {
        QzStructure S(o.tol);
        if (parse_structure(o.structure) != 1) throw UsageError("the Q(z) structure is fixed at r=1");
        auto a = parse_elements(S.field(), o.args);
        auto h = S.height(a);
        Json j = header("height", S.field().name(), o);
        j["tuple"] = json_elements(a);
        j["height"] = o.logic && h.is_minus_inf() ? Json{{"logic", -1}, {"approx", -1.0}} : json_value(h);
        out << j.dump(2) << "\n";
        return kOk;
    }
    return with_discrete(o, "height", [&](const auto& G) {
        auto a = elements(G, o.args);
        auto h = G.height(a);
        Json j = header("height", G.field().name(), o);
        j["tuple"] = json_elements(a);
        j["height"] = o.logic && h.is_minus_inf() ? Json{{"logic", -1}, {"approx", -1.0}} : json_value(h);
        out << j.dump(2) << "\n";
        return kOk;
    });
}

inline int cmd_localterm(const Options& o, std::ostream& out) {
    need_args(o, 2, "a term followed by elements");
    auto t = parse_tropical(o.args[0]);
    std::vector<std::string> xs(o.args.begin() + 1, o.args.end());
    return with_discrete(o, "localterm", [&](const auto& G) {
        auto a = elements(G, xs);
        Json j = header("localterm", G.field().name(), o);
        j["term"] = t.to_string();
        j["tuple"] = json_elements(a);
        j["value"] = json_value(G.local_term(t, a));
        out << j.dump(2) << "\n";
        return kOk;
    });
}

inline int cmd_prodcheck(const Options& o, std::ostream& out) {
    need_args(o, 1, "one element");
    if (o.args.size() != 1) throw UsageError("prodcheck takes exactly one element");
    if (o.field == "Qz") {
        QzStructure S(o.tol);
        auto a = parse_element(S.field(), o.args[0]);
        auto pf = S.product_formula(a);
        bool ok = pf.total.contains(0.0) && pf.total.width() <= 1e-6;
        Json j = header("prodcheck", S.field().name(), o);
        j["element"] = to_string(a);
        j["gauss"] = json_value(pf.gauss);
        j["points"] = json_value(pf.points);
        j["arch"] = json_value(pf.arch);
        j["sum"] = json_value(pf.total);
        j["width"] = pf.total.width();
        j["ok"] = ok;
        out << j.dump(2) << "\n";
        return ok ? kOk : kNegative;
    }
    return with_discrete(o, "prodcheck", [&](const auto& G) {
        auto a = parse_element(G.field(), o.args[0]);
        if (G.field().is_zero(a)) throw DomainError("the product formula needs a nonzero element");
        using V = typename std::decay_t<decltype(G)>::Value;
        std::vector<std::pair<Place, V>> rows;
        for (auto& v : G.places({a})) rows.emplace_back(v, G.value(v, a) * G.weight(v));
        auto s = G.product_formula_sum(a);
        Json j = header("prodcheck", G.field().name(), o);
        j["element"] = to_string(a);
        j["places"] = place_values(rows);
        j["sum"] = json_value(s);
        j["ok"] = vsign(s) == 0;
        out << j.dump(2) << "\n";
        return vsign(s) == 0 ? kOk : kNegative;
    });
}

inline int cmd_positivity(const Options& o, std::ostream& out) {
    need_args(o, 2, "a term followed by elements");
    auto t = parse_tropical(o.args[0]);
    std::vector<std::string> xs(o.args.begin() + 1, o.args.end());
    return with_discrete(o, "positivity", [&](const auto& G) {
        const auto& F = G.field();
        auto a = elements(G, xs);
        auto alpha = divisor_from_term(F, t, a);
        auto verdict = is_positive(F, alpha);
        Json j = header("positivity", F.name(), o);
        j["term"] = t.to_string();
        j["tuple"] = json_elements(a);
        j["divisor"] = to_string(alpha);
        j["positive"] = verdict.positive;
        j["zero"] = verdict.zero;
        j["verdict"] = verdict.zero ? "positive-and-zero" : verdict.positive ? "positive" : "not-positive";
        Json checked = Json::array();
        for (auto& v : verdict.checked) checked.push_back(json_place(v));
        j["checkedPlaces"] = checked;
        j["witness"] = nullptr;
        if (verdict.witness)
            j["witness"] = {{"place", json_place(verdict.witness->first)}, {"value", json_value(verdict.witness->second)}};
        out << j.dump(2) << "\n";
        return verdict.positive ? kOk : kNegative;
    });
}

inline int cmd_cert_search(const Options& o, std::ostream& out) {
    need_args(o, 1, "at least one element");
    Rational eps = parse_epsilon(o.epsilon);
    if (o.degree < 1 || o.coeff < 1 || o.budget < 1) throw UsageError("--degree, --coeff and --budget must be positive");
    return with_discrete(o, "certificate search", [&](const auto& G) {
        const auto& F = G.field();
        auto a = elements(G, o.args);
        auto res = search_neg_certificate(F, a, eps, o.degree, o.coeff, o.budget);
        Json j = header("certificate search", F.name(), o);
        j["status"] = to_string(res.status);
        j["nodes"] = res.nodes;
        j["certificate"] = nullptr;
        if (res.cert) {
            j["certificate"] = certificate_json(a, *res.cert);
            j["cost"] = json_double(res.cert->cost().approx());
            j["verified"] = verify_neg_certificate(F, a, *res.cert).ok;
        }
        out << j.dump(2) << "\n";
        return res.cert ? kOk : kNegative;
    });
}

inline int cmd_cert_verify(const Options& o, std::ostream& out) {
    if (o.args.size() != 1) throw UsageError("certificate verify takes one file name ('-' for standard input)");
    Json cj;
    try {
        if (o.args[0] == "-") {
            cj = Json::parse(std::cin);
        } else {
            std::ifstream in(o.args[0]);
            if (!in) throw UsageError("cannot open " + o.args[0]);
            cj = Json::parse(in);
        }
    } catch (const Json::parse_error& e) {
        throw ParseError(e.byte, "malformed certificate JSON");
    }
    if (cj.is_object() && cj.contains("certificate") && cj["certificate"].is_object()) cj = Json(cj["certificate"]);
    return with_discrete(o, "certificate verify", [&](const auto& G) {
        const auto& F = G.field();
        auto [a, cert] = certificate_from_json(F, cj);
        auto chk = verify_neg_certificate(F, a, cert);
        Json j = header("certificate verify", F.name(), o);
        j["certificate"] = certificate_json(a, cert);
        j["identity"] = chk.identity;
        j["bound"] = chk.bound;
        j["ok"] = chk.ok;
        j["cost"] = json_double(cert.cost().approx());
        j["reason"] = chk.reason;
        out << j.dump(2) << "\n";
        return chk.ok ? kOk : kNegative;
    });
}

inline int cmd_extend(const Options& o, std::ostream& out) {
    need_args(o, 1, "at least one element");
    auto G = DiscreteGVF<QuadField>(QuadField(o.d), parse_structure(o.structure));
    const QuadField& F = G.field();
    auto a = parse_elements(F, o.args);
    Json j = header("extend", F.name(), o);
    j["tuple"] = json_elements(a);
    j["height"] = json_value(G.height(a));
    bool ok = true;
    Json rows = Json::array();
    for (auto& x : a) {
        auto rep = check_galois_invariance(G, x);
        ok = ok && rep.ok();
        Json r = {{"element", to_string(x)},
                  {"conjugate", to_string(x.conj())},
                  {"ht", json_value(G.ht(x))},
                  {"htConjugate", json_value(G.ht(x.conj()))},
                  {"galoisInvariant", rep.ok()}};
        if (!x.is_zero()) {
            std::vector<std::pair<Place, LogReal>> pv;
            for (auto& v : G.places({x})) pv.emplace_back(v, G.value(v, x));
            r["places"] = place_values(pv);
        }
        rows.push_back(r);
    }
    j["elements"] = rows;
    bool rational = std::all_of(a.begin(), a.end(), [](const QuadElem& x) { return x.is_rational(); });
    j["restriction"] = nullptr;
    if (rational) {
        std::vector<Rational> q;
        for (auto& x : a) q.push_back(x.a());
        auto R = restrict(G);
        auto base = DiscreteGVF<QField>(QField{}, parse_structure(o.structure));
        auto hr = R.height(q), hq = base.height(q);
        bool same = hr == hq;
        ok = ok && same;
        j["restriction"] = {{"restricted", json_value(hr)}, {"base", json_value(hq)}, {"equal", same}};
    }
    j["ok"] = ok;
    out << j.dump(2) << "\n";
    return ok ? kOk : kNegative;
}

inline int cmd_measures(const Options& o, std::ostream& out) {
    need_args(o, 1, "one or two elements");
    if (o.args.size() > 2) throw UsageError("measures takes one or two elements");
    return with_discrete(o, "measures", [&](const auto& G) {
        const auto& F = G.field();
        auto xs = elements(G, o.args);
        auto mu = G.local_measure(xs[0]);
        Json atoms = Json::array();
        for (auto& A : mu.atoms)
            atoms.push_back({{"place", json_place(A.place)},
                             {"anchor", json_value(A.anchor)},
                             {"weight", rational_text(A.weight)},
                             {"mass", json_value(A.mass)}});
        auto inv = G.local_measure(F.one() / xs[0]);
        bool balance = mu.total() == inv.total();
        bool ok = balance;
        Json j = header("measures", F.name(), o);
        j["element"] = to_string(xs[0]);
        j["atoms"] = atoms;
        j["total"] = json_value(mu.total());
        j["inverseTotal"] = json_value(inv.total());
        j["massBalance"] = balance;
        j["rn"] = nullptr;
        if (xs.size() == 2) {
            auto rn = G.rn_check(xs[0], xs[1], div(F, xs[0]).positive_part());
            ok = ok && rn.ok;
            j["rn"] = {{"other", to_string(xs[1])},
                       {"ok", rn.ok},
                       {"sharedAtoms", rn.shared_atoms},
                       {"functionalChecked", rn.functional_checked},
                       {"failures", rn.failures}};
        }
        j["ok"] = ok;
        out << j.dump(2) << "\n";
        return ok ? kOk : kNegative;
    });
}

inline Json battery_json(const BatteryReport& r) {
    return {{"name", r.name}, {"cases", r.cases}, {"checks", r.checks}, {"failures", r.failures}, {"ok", r.ok()}};
}

template <class Fn>
int with_generator(const Options& o, const std::string& command, Fn fn) {
    return with_discrete(o, command, [&](const auto& G) {
        using F = std::decay_t<decltype(G.field())>;
        if constexpr (std::is_same_v<F, QField>) return fn(G, [](Rng& rng) { return random_rational(rng); });
        else if constexpr (std::is_same_v<F, FptField>) {
            auto p = G.field().p;
            return fn(G, [p](Rng& rng) { return random_fp_ratio(p, rng); });
        } else {
            long d = G.field().d;
            return fn(G, [d](Rng& rng) { return random_quad(d, rng); });
        }
    });
}

inline int cmd_renorm(const Options& o, std::ostream& out) {
    if (!o.args.empty()) throw UsageError("renorm-test takes no positional arguments");
    return with_generator(o, "renorm-test", [&](const auto& G, auto gen) {
        Rng rng(o.seed);
        auto rep = renorm_battery(G, gen, o.count, rng);
        Json j = header("renorm-test", G.field().name(), o);
        j["seed"] = o.seed;
        j["report"] = battery_json(rep);
        out << j.dump(2) << "\n";
        return rep.ok() ? kOk : kNegative;
    });
}

inline int cmd_axioms(const Options& o, std::ostream& out) {
    if (!o.args.empty()) throw UsageError("axioms takes no positional arguments");
    static const std::vector<std::string> names = {"product", "heights", "gauge", "conversions", "measures"};
    if (o.battery != "all" && std::find(names.begin(), names.end(), o.battery) == names.end())
        throw UsageError("unknown battery '" + o.battery + "'");
    return with_generator(o, "axioms", [&](const auto& G, auto gen) {
        Rng rng(o.seed);
        std::vector<BatteryReport> reps;
        auto want = [&](const std::string& n) { return o.battery == "all" || o.battery == n; };
        if (want("product")) reps.push_back(product_formula_battery(G, gen, o.count, rng));
        if (want("heights")) reps.push_back(height_axiom_battery(G, gen, o.count, rng));
        if (want("gauge")) reps.push_back(gauge_battery(G, gen, o.count, rng));
        if (want("conversions")) reps.push_back(conversion_battery(G, gen, o.count, rng));
        if (want("measures")) reps.push_back(measure_battery(G, gen, o.count, rng));
        bool ok = true;
        Json arr = Json::array();
        for (auto& r : reps) {
            ok = ok && r.ok();
            arr.push_back(battery_json(r));
        }
        Json j = header("axioms", G.field().name(), o);
        j["seed"] = o.seed;
        j["batteries"] = arr;
        j["ok"] = ok;
        out << j.dump(2) << "\n";
        return ok ? kOk : kNegative;
    });
}

inline int cmd_uniqueness(const Options& o, std::ostream& out) {
    if (!o.args.empty()) throw UsageError("uniqueness takes no positional arguments");
    auto rep = uniqueness_witness(o.d, o.bound);
    Json j = header("uniqueness", QuadField(o.d).name(), o);
    Json places = Json::array();
    for (auto& v : rep.places) places.push_back(json_place(v));
    j["bound"] = rep.bound;
    j["places"] = places;
    j["elements"] = json_elements(rep.elements);
    j["symbols"] = rep.symbols;
    j["rank"] = rep.rank;
    j["kernelDimension"] = rep.kernel_dimension;
    j["productFormulaInKernel"] = rep.product_formula_in_kernel;
    j["positiveDirection"] = rep.positive_direction;
    bool ok = rep.kernel_dimension == 1 && rep.product_formula_in_kernel && rep.positive_direction;
    j["ok"] = ok;
    out << j.dump(2) << "\n";
    return ok ? kOk : kNegative;
}

// Options are "--name" or "--name=value"; everything else is positional, so
// elements such as -1/2 or -t need no escaping.
inline std::vector<std::string> reorder(const std::vector<std::string>& args) {
    static const std::vector<std::string> flags = {"--logic", "--help", "-h"};
    std::vector<std::string> head, opts, pos;
    std::size_t i = 0;
    if (i < args.size()) head.push_back(args[i++]);
    auto is_opt = [](const std::string& s) {
        return s == "-h" || (s.size() > 2 && s[0] == '-' && s[1] == '-' && std::isalpha(static_cast<unsigned char>(s[2])));
    };
    for (; i < args.size(); ++i) {
        const std::string& s = args[i];
        if (s == "--") {
            pos.insert(pos.end(), args.begin() + static_cast<long>(i) + 1, args.end());
            break;
        }
        if (is_opt(s)) {
            opts.push_back(s);
            bool flag = std::find(flags.begin(), flags.end(), s) != flags.end();
            if (!flag && s.find('=') == std::string::npos && i + 1 < args.size()) opts.push_back(args[++i]);
        } else {
            pos.push_back(s);
        }
    }
    if (!head.empty() && head[0] == "certificate" && !pos.empty()) {
        head.push_back(pos.front());
        pos.erase(pos.begin());
    }
    std::vector<std::string> out = head;
    out.insert(out.end(), opts.begin(), opts.end());
    if (!pos.empty()) {
        out.push_back("--");
        out.insert(out.end(), pos.begin(), pos.end());
    }
    return out;
}

inline Json error_json(const std::string& kind, const std::string& message) {
    return {{"schemaVersion", kSchemaVersion}, {"error", {{"kind", kind}, {"message", message}}}};
}

}  // namespace detail

// Runs one command; args exclude the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact computations with globally valued fields", "gvf"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* s) {
        s->add_option("--field", o.field, "Q, Fpt, Quad or Qz")->check(CLI::IsMember({"Q", "Fpt", "Quad", "Qz"}));
        s->add_option("--p", o.p, "characteristic for --field Fpt");
        s->add_option("--d", o.d, "squarefree d for --field Quad");
        s->add_option("--structure", o.structure, "global scale, r=<rational>");
        s->add_option("--seed", o.seed, "random seed");
        s->add_flag("--logic", o.logic, "report the height of a zero tuple as -1");
        s->add_option("--tol", o.tol, "interval tolerance for --field Qz");
        s->add_option("args", o.args, "elements, terms or files");
    };
    std::map<std::string, std::function<int()>> handlers;
    auto sub = [&](const std::string& name, const std::string& help, std::function<int()> h) {
        CLI::App* s = app.add_subcommand(name, help);
        common(s);
        handlers[name] = std::move(h);
        return s;
    };
    sub("height", "height of a tuple", [&] { return detail::cmd_height(o, out); });
    sub("localterm", "local term of a tropical term at a tuple", [&] { return detail::cmd_localterm(o, out); });
    sub("prodcheck", "product formula for one element", [&] { return detail::cmd_prodcheck(o, out); });
    sub("positivity", "positivity of the lattice divisor of a term", [&] { return detail::cmd_positivity(o, out); });
    CLI::App* cert = app.add_subcommand("certificate", "negativity certificates");
    cert->require_subcommand(1);
    for (auto [name, help] : {std::pair<std::string, std::string>{"search", "search for a certificate"},
                              {"verify", "verify a certificate file"}}) {
        CLI::App* s = cert->add_subcommand(name, help);
        common(s);
        s->add_option("--epsilon", o.epsilon, "positive rational epsilon");
        s->add_option("--degree", o.degree, "maximal total degree");
        s->add_option("--coeff", o.coeff, "maximal |m_s|");
        s->add_option("--budget", o.budget, "search node budget");
        handlers["certificate " + name] = name == "search" ? std::function<int()>([&] { return detail::cmd_cert_search(o, out); })
                                                           : std::function<int()>([&] { return detail::cmd_cert_verify(o, out); });
    }
    sub("extend", "symmetric extension to Q(sqrt(d))", [&] { return detail::cmd_extend(o, out); });
    sub("measures", "local measure and Radon-Nikodym check", [&] { return detail::cmd_measures(o, out); });
    sub("renorm-test", "random renormalization battery", [&] { return detail::cmd_renorm(o, out); })
        ->add_option("--count", o.count, "number of cases");
    sub("uniqueness", "uniqueness witness over Q(sqrt(d))", [&] { return detail::cmd_uniqueness(o, out); })
        ->add_option("--bound", o.bound, "prime bound");
    CLI::App* ax = sub("axioms", "randomized property batteries", [&] { return detail::cmd_axioms(o, out); });
    ax->add_option("--count", o.count, "cases per battery");
    ax->add_option("--battery", o.battery, "all, product, heights, gauge, conversions or measures");

    std::vector<std::string> argv = detail::reorder(args);
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "gvf: " << e.what() << "\n";
        out << detail::error_json("usage", e.what()).dump(2) << "\n";
        return kUsage;
    }

    std::string key;
    for (auto* s : app.get_subcommands()) {
        key = s->get_name();
        for (auto* t : s->get_subcommands()) key += " " + t->get_name();
    }
    try {
        return handlers.at(key)();
    } catch (const ParseError& e) {
        err << "gvf: " << e.what() << "\n";
        Json j = detail::error_json("parse", e.what());
        j["error"]["position"] = e.position();
        out << j.dump(2) << "\n";
    } catch (const UsageError& e) {
        err << "gvf: " << e.what() << "\n";
        out << detail::error_json("usage", e.what()).dump(2) << "\n";
    } catch (const DomainError& e) {
        err << "gvf: " << e.what() << "\n";
        out << detail::error_json("domain", e.what()).dump(2) << "\n";
    }
    return kUsage;
}

}  // namespace gvf::cli

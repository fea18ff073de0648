// pdyn: exact-arithmetic toolkit for preimage towers of invariant
// hypersurfaces under split rational maps on (P^1)^n.

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "pdyn/chebyshev.hpp"
#include "pdyn/degree_growth.hpp"
#include "pdyn/elliptic.hpp"
#include "pdyn/exceptional.hpp"
#include "pdyn/io.hpp"
#include "pdyn/separability.hpp"
#include "pdyn/torus.hpp"
#include "pdyn/tower.hpp"
#include "pdyn/version.hpp"

using namespace pdyn;

namespace {

struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> input_files;
    Json params = Json::object();
    long seed = 0;
};

Json base_report(const RunManifest& m) {
    Json out;
    out["tool"] = "pdyn";
    out["version"] = kVersion;
    out["command"] = m.subcommand;
    out["params"] = m.params;
    Json digests = Json::object();
    for (auto& [name, path] : m.input_files) digests[name + "_digest"] = fnv1a64_hex(read_file(path));
    out["inputs"] = digests;
    if (m.seed) out["seed"] = m.seed;
    return out;
}

void emit(const Json& j, const std::string& out_path) {
    std::string text = j.dump(2);
    if (out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream f(out_path);
        if (!f) throw ParseError("cannot write " + out_path);
        f << text << "\n";
    }
}

// Collects every validation problem before failing, so bad fixture files
// report all of their issues at once.
struct InputLoader {
    std::vector<std::string> errors;

    template <class F>
    auto attempt(const std::string& label, F&& fn) -> std::optional<decltype(fn())> {
        try {
            return fn();
        } catch (const Error& e) {
            errors.push_back(label + ": " + e.what());
        } catch (const std::exception& e) {
            errors.push_back(label + ": " + e.what());
        }
        return std::nullopt;
    }

    void require_clean() const {
        if (errors.empty()) return;
        std::string all = "input validation failed:";
        for (auto& e : errors) all += "\n  - " + e;
        throw ParseError(all);
    }
};

Json classify_to_json(const ExceptionalClass& c) {
    Json out;
    switch (c.kind) {
        case ExceptionalClass::Kind::PowerLike:
            out["kind"] = "PowerLike";
            out["exponent"] = c.exponent;
            break;
        case ExceptionalClass::Kind::ChebyshevLike:
            out["kind"] = "ChebyshevLike";
            out["sign"] = c.sign > 0 ? "+" : "-";
            out["degree"] = c.degree;
            break;
        default:
            out["kind"] = "Unknown";
            out["witness"] = c.witness;
            return out;
    }
    if (c.conjugator) {
        out["conjugator"] = Json::array({rat_to_string(c.conjugator->a()),
                                         rat_to_string(c.conjugator->b()),
                                         rat_to_string(c.conjugator->c()),
                                         rat_to_string(c.conjugator->d())});
    }
    return out;
}

// When every component is exceptional of one common degree, the torus
// machinery applies and its s1 bound is worth reporting next to the
// empirical index.
std::optional<long> torus_s1_if_applicable(const SplitMap& f, long ext_degree) {
    long d = f.degree_vector()[0];
    for (long c : f.degree_vector())
        if (c != d || c < 2) return std::nullopt;
    for (int i = 0; i < f.n(); ++i) {
        auto cls = classify_exceptional(f.component(i));
        if (cls.kind == ExceptionalClass::Kind::Unknown) return std::nullopt;
    }
    Int B = extension_degree_bound(std::max(2L, ext_degree), f.n());
    return s1_bound(d, B);
}

int dispatch(CLI::App& app) {
    // ---- chebyshev ----
    auto* cheb = app.get_subcommand("chebyshev");
    if (cheb->parsed()) {
        unsigned r = cheb->get_option("--degree")->as<unsigned>();
        std::string out_path = cheb->get_option("--out")->as<std::string>();
        RunManifest m{"chebyshev"};
        m.params["degree"] = r;
        ChebyshevPoly T = chebyshev(r);
        Json rep = base_report(m);
        Json coeffs = Json::array();
        for (auto& c : T.poly.coeffs()) coeffs.push_back(rat_to_string(c));
        rep["coefficients"] = coeffs;
        rep["identity_verified"] = true;
        rep["map"] = map_to_json(chebyshev_map(r));
        emit(rep, out_path);
        return 0;
    }

    // ---- lattes ----
    auto* lat = app.get_subcommand("lattes");
    if (lat->parsed()) {
        std::string a = lat->get_option("--a")->as<std::string>();
        std::string b = lat->get_option("--b")->as<std::string>();
        long mm = lat->get_option("--m")->as<long>();
        std::string out_path = lat->get_option("--out")->as<std::string>();
        RunManifest m{"lattes"};
        m.params["a"] = a;
        m.params["b"] = b;
        m.params["m"] = mm;
        EllipticCurveQ E(rat_from_string(a), rat_from_string(b));
        LattesMap L = lattes_from_curve(E, mm);
        Json rep = base_report(m);
        rep["curve"] = Json{{"a", rat_to_string(E.a())}, {"b", rat_to_string(E.b())}};
        rep["multiplier"] = L.multiplier;
        rep["degree"] = static_cast<long>(L.map.degree());
        rep["map"] = map_to_json(L.map);
        emit(rep, out_path);
        return 0;
    }

    // ---- s1 ----
    auto* s1c = app.get_subcommand("s1");
    if (s1c->parsed()) {
        long d = s1c->get_option("--d")->as<long>();
        std::string out_path = s1c->get_option("--out")->as<std::string>();
        RunManifest m{"s1"};
        m.params["d"] = d;
        Int B;
        if (s1c->count("--B")) {
            B = Int(s1c->get_option("--B")->as<std::string>());
            m.params["B"] = B.str();
        } else if (s1c->count("--ext-degree") && s1c->count("--n")) {
            long D = s1c->get_option("--ext-degree")->as<long>();
            int n = s1c->get_option("--n")->as<int>();
            B = extension_degree_bound(D, n);
            m.params["ext_degree"] = D;
            m.params["n"] = n;
            m.params["B"] = B.str();
        } else {
            throw ParseError("s1 needs --B or both --ext-degree and --n");
        }
        TorsionOrderSet orders = bounded_degree_torsion_orders(d, B);
        Json rep = base_report(m);
        Json ords = Json::array();
        for (auto& k : orders.orders) ords.push_back(k.str());
        rep["orders"] = ords;
        rep["s1"] = s1_bound(d, B);
        emit(rep, out_path);
        return 0;
    }

    // ---- tower ----
    auto* tow = app.get_subcommand("tower");
    if (tow->parsed()) {
        std::string map_path = tow->get_option("--map")->as<std::string>();
        std::string var_path = tow->get_option("--variety")->as<std::string>();
        std::string out_path = tow->get_option("--out")->as<std::string>();
        SearchConfig cfg;
        cfg.height_bound = Int(tow->get_option("--height")->as<std::string>());
        cfg.max_level = tow->get_option("--smax")->as<long>();
        cfg.threads = tow->get_option("--threads")->as<int>();
        bool timings = tow->get_option("--timings")->as<bool>();
        long ext_degree = tow->get_option("--ext-degree")->as<long>();
        RunManifest m{"tower"};
        m.input_files["map"] = map_path;
        m.input_files["variety"] = var_path;
        m.params["height"] = cfg.height_bound.str();
        m.params["smax"] = cfg.max_level;
        m.params["threads"] = cfg.threads;
        InputLoader loader;
        auto f = loader.attempt("map", [&] { return split_map_from_json(load_json_file(map_path)); });
        auto V = loader.attempt("variety", [&] { return variety_from_json(load_json_file(var_path)); });
        loader.require_clean();
        TowerReport r = stabilization_report(*V, *f, cfg);
        r.torus_s1 = torus_s1_if_applicable(*f, ext_degree);
        Json rep = base_report(m);
        rep.update(tower_report_to_json(r, timings));
        emit(rep, out_path);
        if (r.budget_truncated) return 2;
        return r.stabilized_in_window ? 0 : 2;
    }

    // ---- cancel ----
    auto* can = app.get_subcommand("cancel");
    if (can->parsed()) {
        std::string map_path = can->get_option("--map")->as<std::string>();
        std::string out_path = can->get_option("--out")->as<std::string>();
        SearchConfig cfg;
        cfg.height_bound = Int(can->get_option("--height")->as<std::string>());
        cfg.cancel_max = can->get_option("--nmax")->as<long>();
        RunManifest m{"cancel"};
        m.input_files["map"] = map_path;
        m.params["height"] = cfg.height_bound.str();
        m.params["nmax"] = cfg.cancel_max;
        InputLoader loader;
        auto f = loader.attempt("map", [&] { return map_from_json(load_json_file(map_path)); });
        loader.require_clean();
        CancellationReport r = cancellation_report(*f, cfg);
        Json rep = base_report(m);
        rep.update(cancellation_report_to_json(r));
        emit(rep, out_path);
        return 0;
    }

    // ---- degree-growth ----
    auto* dg = app.get_subcommand("degree-growth");
    if (dg->parsed()) {
        std::string map_path = dg->get_option("--map")->as<std::string>();
        std::string var_path = dg->get_option("--variety")->as<std::string>();
        std::string out_path = dg->get_option("--out")->as<std::string>();
        long mmax = dg->get_option("--mmax")->as<long>();
        RunManifest m{"degree-growth"};
        m.input_files["map"] = map_path;
        m.input_files["variety"] = var_path;
        m.params["mmax"] = mmax;
        InputLoader loader;
        auto f = loader.attempt("map", [&] { return split_map_from_json(load_json_file(map_path)); });
        auto V = loader.attempt("variety", [&] { return variety_from_json(load_json_file(var_path)); });
        loader.require_clean();
        RestrictedDegree rd = restricted_degree(*V, *f);
        Json rep = base_report(m);
        rep["consistent"] = rd.consistent;
        Json routes = Json::array();
        for (std::size_t i = 0; i < rd.witnesses.size(); ++i)
            routes.push_back(Json{{"j", rd.witnesses[i] + 1}, {"value", rd.route_values[i].str()}});
        rep["routes"] = routes;
        if (rd.consistent) {
            rep["restricted_degree"] = rd.degree.str();
            DegreeProfile prof = degree_growth_profile(*V, *f, mmax);
            Json entries = Json::array();
            for (auto& [mm, dd] : prof.entries)
                entries.push_back(Json::array({mm, dd.str()}));
            rep["profile"] = entries;
        }
        emit(rep, out_path);
        return 0;
    }

    // ---- lemma21-replay ----
    auto* rep21 = app.get_subcommand("lemma21-replay");
    if (rep21->parsed()) {
        std::string table_path = rep21->get_option("--table")->as<std::string>();
        std::string out_path = rep21->get_option("--out")->as<std::string>();
        long mmax = rep21->get_option("--mmax")->as<long>();
        RunManifest m{"lemma21-replay"};
        m.input_files["table"] = table_path;
        m.params["mmax"] = mmax;
        Json j = load_json_file(table_path);
        IntersectionTable t;
        t.n = j.at("n").get<int>();
        t.k = j.at("k").get<int>();
        t.degrees = j.at("degrees").get<std::vector<long>>();
        t.dim_v = j.at("dim_v").get<int>();
        t.d2 = j.at("d2").get<int>();
        t.d1_prime = j.at("d1_prime").get<int>();
        for (auto& row : j.at("values")) {
            std::vector<int> S = row.at("S").get<std::vector<int>>();
            for (auto& s : S) s -= 1;  // axes are 1-based in files
            std::sort(S.begin(), S.end());
            t.values[S] = Int(row.at("v").get<std::string>());
        }
        ReplayReport r = lemma21_replay(t, mmax);
        Json rep = base_report(m);
        Json rows = Json::array();
        for (auto& row : r.rows)
            rows.push_back(Json{{"m", row.m},
                                {"route1", rat_to_string(row.route1)},
                                {"route2", rat_to_string(row.route2)},
                                {"agree", row.agree}});
        rep["rows"] = rows;
        rep["all_agree"] = r.all_agree;
        rep["conclusion"] = r.all_agree
                                ? "both coefficient routes give one restricted degree"
                                : "routes disagree: the growth comparison forces a product split";
        emit(rep, out_path);
        return 0;
    }

    // ---- separability ----
    auto* sep = app.get_subcommand("separability");
    if (sep->parsed()) {
        std::string out_path = sep->get_option("--out")->as<std::string>();
        int arity = sep->get_option("--arity")->as<int>();
        std::string affine = sep->get_option("--affine")->as<std::string>();
        std::string poly_path = sep->get_option("--poly")->as<std::string>();
        int split = sep->get_option("--split")->as<int>();
        RunManifest m{"separability"};
        m.params["split"] = split;
        MultiPoly h(1);
        if (!affine.empty()) {
            h = parse_affine_poly(affine, arity);
            m.params["affine"] = affine;
            m.params["arity"] = arity;
        } else if (!poly_path.empty()) {
            m.input_files["poly"] = poly_path;
            h = multipoly_from_json(load_json_file(poly_path));
        } else {
            throw ParseError("separability needs --affine or --poly");
        }
        if (split < 1 || split >= h.arity())
            throw ParseError("--split must cut both blocks nonempty");
        std::vector<int> b1, b2;
        for (int v = 0; v < h.arity(); ++v) (v < split ? b1 : b2).push_back(v);
        SeparabilityResult r = separability_test(h, b1, b2);
        Json rep = base_report(m);
        rep["separable"] = r.separable;
        if (r.separable) {
            rep["h1"] = multipoly_to_json(*r.h1);
            rep["h2"] = multipoly_to_json(*r.h2);
        } else {
            Json w;
            w["rows"] = Json::array({r.witness->row1, r.witness->row2});
            w["cols"] = Json::array({r.witness->col1, r.witness->col2});
            w["entries"] = Json::array({rat_to_string(r.witness->entries[0][0]),
                                        rat_to_string(r.witness->entries[0][1]),
                                        rat_to_string(r.witness->entries[1][0]),
                                        rat_to_string(r.witness->entries[1][1])});
            rep["witness_minor"] = w;
        }
        emit(rep, out_path);
        return 0;
    }

    // ---- classify ----
    auto* cls = app.get_subcommand("classify");
    if (cls->parsed()) {
        std::string map_path = cls->get_option("--map")->as<std::string>();
        std::string out_path = cls->get_option("--out")->as<std::string>();
        RunManifest m{"classify"};
        m.input_files["map"] = map_path;
        InputLoader loader;
        auto f = loader.attempt("map", [&] { return map_from_json(load_json_file(map_path)); });
        loader.require_clean();
        Json rep = base_report(m);
        rep.update(classify_to_json(classify_exceptional(*f)));
        emit(rep, out_path);
        return 0;
    }

    // ---- check-invariant ----
    auto* inv = app.get_subcommand("check-invariant");
    if (inv->parsed()) {
        std::string map_path = inv->get_option("--map")->as<std::string>();
        std::string var_path = inv->get_option("--variety")->as<std::string>();
        std::string out_path = inv->get_option("--out")->as<std::string>();
        bool asserted = inv->get_option("--assert-irreducible")->as<bool>();
        RunManifest m{"check-invariant"};
        m.input_files["map"] = map_path;
        m.input_files["variety"] = var_path;
        m.params["assert_irreducible"] = asserted;
        InputLoader loader;
        auto f = loader.attempt("map", [&] { return split_map_from_json(load_json_file(map_path)); });
        auto V = loader.attempt("variety", [&] { return variety_from_json(load_json_file(var_path)); });
        loader.require_clean();
        Json rep = base_report(m);
        rep["forward_invariant"] = is_forward_invariant(*V, *f);
        rep["verdict"] = to_string(is_invariant(*V, *f, asserted));
        rep["multidegree"] = V->multidegree();
        emit(rep, out_path);
        return 0;
    }

    std::cerr << "no subcommand given; see --help\n";
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pdyn: preimage towers of invariant hypersurfaces on (P^1)^n, exactly"};
    app.require_subcommand(0, 1);

    auto* cheb = app.add_subcommand("chebyshev", "emit the degree-r Chebyshev polynomial and map");
    cheb->add_option("--degree", "degree r >= 1")->required();
    cheb->add_option("--out", "write the report here instead of stdout")->default_str("");

    auto* lat = app.add_subcommand("lattes", "multiplication-by-m map of y^2 = x^3 + a x + b");
    lat->add_option("--a", "curve coefficient a (rational)")->required();
    lat->add_option("--b", "curve coefficient b (rational)")->required();
    lat->add_option("--m", "multiplier, |m| >= 2")->required();
    lat->add_option("--out")->default_str("");

    auto* s1c = app.add_subcommand("s1", "torsion-order bound s1 for d-power towers");
    s1c->add_option("--d", "power map degree d >= 2")->required();
    s1c->add_option("--B", "degree bound for the torsion orders");
    s1c->add_option("--ext-degree", "extension degree D of the paper's bound");
    s1c->add_option("--n", "number of coordinates n");
    s1c->add_option("--out")->default_str("");

    auto* tow = app.add_subcommand("tower", "preimage-tower stabilization report");
    tow->add_option("--map", "split map JSON file")->required();
    tow->add_option("--variety", "hypersurface JSON file")->required();
    tow->add_option("--height", "prefix height bound H")->default_str("10");
    tow->add_option("--smax", "deepest tower level")->default_val(4L);
    tow->add_option("--threads", "worker threads for the point sweep")->default_val(1);
    tow->add_flag("--timings", "include per-level wall times (breaks byte determinism)");
    tow->add_option("--ext-degree", "D for the comparison s1 bound")->default_val(2L);
    tow->add_option("--out")->default_str("");

    auto* can = app.add_subcommand("cancel", "orbit-collision (dynamical cancellation) report");
    can->add_option("--map", "self-map JSON file")->required();
    can->add_option("--height", "height bound H")->default_str("10");
    can->add_option("--nmax", "iteration window")->default_val(4L);
    can->add_option("--out")->default_str("");

    auto* dg = app.add_subcommand("degree-growth", "restricted degree and growth profile");
    dg->add_option("--map")->required();
    dg->add_option("--variety")->required();
    dg->add_option("--mmax")->default_val(4L);
    dg->add_option("--out")->default_str("");

    auto* rep21 = app.add_subcommand("lemma21-replay", "coefficient-comparison replay on user data");
    rep21->add_option("--table", "intersection table JSON")->required();
    rep21->add_option("--mmax")->default_val(3L);
    rep21->add_option("--out")->default_str("");

    auto* sep = app.add_subcommand("separability", "two-block product test for a polynomial");
    sep->add_option("--affine", "polynomial text in x1..xn")->default_str("");
    sep->add_option("--arity", "number of variables for --affine")->default_val(2);
    sep->add_option("--poly", "term-list JSON file")->default_str("");
    sep->add_option("--split", "first block = variables 1..split")->default_val(1);
    sep->add_option("--out")->default_str("");

    auto* cls = app.add_subcommand("classify", "exceptional normal-form classification of a map");
    cls->add_option("--map")->required();
    cls->add_option("--out")->default_str("");

    auto* inv = app.add_subcommand("check-invariant", "forward/full invariance verdict");
    inv->add_option("--map")->required();
    inv->add_option("--variety")->required();
    inv->add_flag("--assert-irreducible", "caller vouches for irreducibility of V");
    inv->add_option("--out")->default_str("");

    CLI11_PARSE(app, argc, argv);

    try {
        return dispatch(app);
    } catch (const Error& e) {
        std::cerr << "pdyn: " << e.what() << "\n";
        return e.kind() == ErrorKind::Budget ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "pdyn: " << e.what() << "\n";
        return 1;
    }
}

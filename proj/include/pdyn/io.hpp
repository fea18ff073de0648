#pragma once

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pdyn/degree_growth.hpp"
#include "pdyn/hypersurface.hpp"
#include "pdyn/multipoly.hpp"
#include "pdyn/ratmap.hpp"
#include "pdyn/tower.hpp"

namespace pdyn {

using Json = nlohmann::ordered_json;

// ---- polynomial text grammar ------------------------------------------------
//
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' natural)?
//   base   := rational | variable | '(' expr ')'
//   rational := integer ['/' natural]
//   variable := x<k>            (affine; bare 'x' means x1)
//             | X<k> | Y<k>     (homogeneous pair coordinates)
//
// Affine variables map to slots k-1 in an arity-n polynomial; homogeneous
// X_k, Y_k map to slots 2(k-1), 2(k-1)+1 in an arity-2n polynomial.

namespace detail {

class PolyParser {
public:
    PolyParser(const std::string& text, int arity, bool homogeneous)
        : s_(text), arity_(arity), homog_(homogeneous) {}

    MultiPoly parse() {
        MultiPoly p = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("polynomial text, position " + std::to_string(pos_) + ": " + msg);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    MultiPoly expr() {
        bool neg = false;
        skip_ws();
        if (eat('-')) neg = true;
        else eat('+');
        MultiPoly acc = term();
        if (neg) acc = -acc;
        while (true) {
            if (eat('+'))
                acc = acc + term();
            else if (eat('-'))
                acc = acc - term();
            else
                break;
        }
        return acc;
    }

    MultiPoly term() {
        MultiPoly acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }

    MultiPoly factor() {
        MultiPoly b = base();
        if (eat('^')) {
            unsigned long e = natural();
            b = b.pow(e);
        }
        return b;
    }

    MultiPoly base() {
        char c = peek();
        if (c == '(') {
            eat('(');
            MultiPoly p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (c == 'x' || c == 'X' || c == 'Y') return variable();
        if (std::isdigit(static_cast<unsigned char>(c))) return MultiPoly::constant(arity_, rational());
        fail("expected a variable, number or '('");
    }

    MultiPoly variable() {
        char kind = s_[pos_++];
        long index = 1;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            index = static_cast<long>(natural());
        else if (kind != 'x')
            fail("homogeneous variables need an index (X1, Y1, ...)");
        if (index < 1) fail("variable index must be >= 1");
        int slot;
        if (kind == 'x') {
            if (homog_) fail("affine variable in homogeneous context");
            slot = static_cast<int>(index - 1);
        } else {
            if (!homog_) fail("homogeneous variable in affine context");
            slot = static_cast<int>(2 * (index - 1) + (kind == 'Y' ? 1 : 0));
        }
        if (slot >= arity_) fail("variable index exceeds declared arity");
        return MultiPoly::variable(arity_, slot);
    }

    unsigned long natural() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return std::stoul(s_.substr(start, pos_ - start));
    }

    Rat rational() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        Int numpart(s_.substr(start, pos_ - start));
        if (pos_ < s_.size() && s_[pos_] == '/') {
            ++pos_;
            std::size_t dstart = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (dstart == pos_) fail("expected a denominator");
            Int denpart(s_.substr(dstart, pos_ - dstart));
            if (denpart == 0) fail("zero denominator");
            return Rat(numpart, denpart);
        }
        return Rat(numpart);
    }

    const std::string& s_;
    std::size_t pos_ = 0;
    int arity_;
    bool homog_;
};

}  // namespace detail

inline MultiPoly parse_affine_poly(const std::string& text, int n) {
    return detail::PolyParser(text, n, false).parse();
}

inline MultiPoly parse_homogeneous_poly(const std::string& text, int n_pairs) {
    return detail::PolyParser(text, 2 * n_pairs, true).parse();
}

// ---- JSON forms -------------------------------------------------------------

inline Json multipoly_to_json(const MultiPoly& p) {
    Json terms = Json::array();
    for (auto& [e, c] : p.terms()) {
        Json t;
        t["e"] = e;
        t["c"] = rat_to_string(c);
        terms.push_back(t);
    }
    return Json{{"arity", p.arity()}, {"terms", terms}};
}

inline MultiPoly multipoly_from_json(const Json& j) {
    if (!j.contains("arity") || !j.contains("terms"))
        throw ParseError("polynomial object needs 'arity' and 'terms'");
    MultiPoly p(j.at("arity").get<int>());
    for (auto& t : j.at("terms")) {
        ExpVec e = t.at("e").get<ExpVec>();
        Rat c = rat_from_string(t.at("c").get<std::string>());
        p.add_term(e, c);
    }
    return p;
}

inline Json map_to_json(const RatMap1& f) {
    Json P = Json::array(), Q = Json::array();
    for (auto& c : f.numerator_form().coeffs()) P.push_back(rat_to_string(c));
    for (auto& c : f.denominator_form().coeffs()) Q.push_back(rat_to_string(c));
    return Json{{"P", P}, {"Q", Q}};
}

inline RatMap1 map_from_json(const Json& j) {
    if (j.contains("num") || j.contains("den")) {
        // affine shortcut: rational function in x
        std::string num = j.value("num", "0");
        std::string den = j.value("den", "1");
        MultiPoly pn = parse_affine_poly(num, 1), pd = parse_affine_poly(den, 1);
        return RatMap1::from_affine(to_unipoly(pn, 0), to_unipoly(pd, 0));
    }
    if (!j.contains("P") || !j.contains("Q"))
        throw ParseError("map object needs P and Q (or num/den)");
    auto coeffs = [](const Json& arr) {
        std::vector<Rat> c;
        for (auto& v : arr) c.push_back(rat_from_string(v.get<std::string>()));
        return c;
    };
    return RatMap1::make(BinForm(coeffs(j.at("P"))), BinForm(coeffs(j.at("Q"))));
}

inline Json split_map_to_json(const SplitMap& f) {
    Json comps = Json::array();
    for (int i = 0; i < f.n(); ++i) comps.push_back(map_to_json(f.component(i)));
    return Json{{"components", comps}};
}

inline SplitMap split_map_from_json(const Json& j) {
    std::vector<RatMap1> comps;
    if (j.contains("components")) {
        for (auto& c : j.at("components")) comps.push_back(map_from_json(c));
    } else {
        comps.push_back(map_from_json(j));  // single-component shorthand
    }
    return SplitMap(std::move(comps));
}

inline Json variety_to_json(const Hypersurface& V) {
    return Json{{"n", V.n()}, {"h", multipoly_to_json(V.poly())}};
}

inline Hypersurface variety_from_json(const Json& j) {
    if (!j.contains("n")) throw ParseError("variety object needs 'n'");
    int n = j.at("n").get<int>();
    if (j.contains("affine"))
        return Hypersurface::from_affine(n, parse_affine_poly(j.at("affine").get<std::string>(), n));
    if (j.contains("homogeneous"))
        return Hypersurface::make(n,
                                  parse_homogeneous_poly(j.at("homogeneous").get<std::string>(), n));
    if (j.contains("h")) return Hypersurface::make(n, multipoly_from_json(j.at("h")));
    throw ParseError("variety object needs 'h', 'affine' or 'homogeneous'");
}

inline Json point_to_json(const ProjPoint& p) {
    return Json::array({p.x().str(), p.y().str()});
}

inline Json tuple_to_json(const PointTuple& t) {
    Json a = Json::array();
    for (auto& p : t) a.push_back(point_to_json(p));
    return a;
}

inline Json point_set_to_json(const PointSet& s) {
    Json a = Json::array();
    for (auto& t : s) a.push_back(tuple_to_json(t));
    return a;
}

inline Json tower_report_to_json(const TowerReport& r, bool with_timings) {
    Json levels = Json::array();
    for (auto& lr : r.levels) {
        Json l;
        l["s"] = lr.s;
        l["multidegree"] = lr.multidegree;
        l["new_count"] = lr.new_points.size();
        l["new_points"] = point_set_to_json(lr.new_points);
        if (with_timings) l["time_ms"] = lr.time_ms;
        levels.push_back(l);
    }
    Json out;
    out["levels"] = levels;
    out["empirical_s0"] = r.empirical_s0;
    out["stabilized_in_window"] = r.stabilized_in_window;
    if (r.forward_only_warning)
        out["warning"] = "irreducibility not established; V may be only forward-invariant";
    if (r.budget_truncated) {
        out["budget_truncated"] = true;
        out["budget_error"] = r.budget_error;
    }
    if (r.torus_s1) out["torus_s1_bound"] = *r.torus_s1;
    out["caveat"] = r.caveat;
    out["height_bound"] = r.height_bound.str();
    out["max_level"] = r.max_level;
    return out;
}

inline Json cancellation_report_to_json(const CancellationReport& r) {
    Json pairs = Json::array();
    for (auto& p : r.pairs) {
        Json e;
        e["a"] = point_to_json(p.a);
        e["b"] = point_to_json(p.b);
        e["first_collision"] = p.first_collision;
        e["merge_index"] = p.merge_index;
        pairs.push_back(e);
    }
    Json out;
    out["pairs"] = pairs;
    out["colliding_pair_count"] = r.pairs.size();
    out["empirical_N"] = r.empirical_N;
    out["height_bound"] = r.height_bound.str();
    out["n_max"] = r.n_max;
    return out;
}

// ---- files and digests ------------------------------------------------------

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::string fnv1a64_hex(const std::string& data) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline Json load_json_file(const std::string& path) {
    try {
        return Json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace pdyn

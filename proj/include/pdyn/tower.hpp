#pragma once

#include <chrono>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdyn/hypersurface.hpp"
#include "pdyn/ratmap.hpp"

namespace pdyn {

struct SearchConfig {
    Int height_bound = 10;  // H: max |num|, |den| per affine coordinate
    long max_level = 4;     // s_max for towers
    long cancel_max = 4;    // n_max for cancellation scans
    int threads = 1;

    void validate() const {
        if (height_bound < 1) throw Error(ErrorKind::Input, "BadConfig", "height bound must be >= 1");
        if (max_level < 0) throw Error(ErrorKind::Input, "BadConfig", "max_level must be >= 0");
        if (cancel_max < 0) throw Error(ErrorKind::Input, "BadConfig", "cancel_max must be >= 0");
        if (threads < 1) throw Error(ErrorKind::Input, "BadConfig", "threads must be >= 1");
    }
};

// Level s of the preimage tower: f^-s(V) as a squarefree hypersurface.
inline Hypersurface tower_level(const Hypersurface& V, const SplitMap& f, long s) {
    if (s < 0) throw Error(ErrorKind::Input, "BadLevel", "level must be >= 0");
    if (s == 0) return V;
    return pullback(V, f.iterated(static_cast<unsigned long>(s)));
}

namespace detail {

// Specialization of h at a prefix of point values for pairs 0..n-2; the
// result is a binary form in the last pair.
inline BinForm specialize_prefix(const Hypersurface& W, const std::vector<ProjPoint>& prefix) {
    const int n = W.n();
    long an = W.multidegree()[n - 1];
    std::vector<Rat> c(an + 1, Rat(0));
    for (auto& [e, coef] : W.poly().terms()) {
        Rat t = coef;
        for (int i = 0; i + 1 < n; ++i) {
            const ProjPoint& p = prefix[i];
            for (int k = 0; k < e[2 * i]; ++k) t *= Rat(p.x());
            for (int k = 0; k < e[2 * i + 1]; ++k) t *= Rat(p.y());
            if (t == 0) break;
        }
        if (t != 0) c[e[2 * (n - 1)]] += t;
    }
    return BinForm(std::move(c));
}

inline std::set<ProjPoint> form_root_points(const BinForm& form) {
    std::set<ProjPoint> out;
    FormRoots roots = form_rational_roots(form);
    for (auto& [r, mult] : roots.affine) out.insert(ProjPoint::from_affine(r));
    if (roots.infinity_multiplicity > 0) out.insert(ProjPoint::infinity());
    return out;
}

// All (n-1)-tuples over the height-bounded point list, odometer order.
inline std::vector<std::vector<ProjPoint>> prefix_tuples(const std::vector<ProjPoint>& pts,
                                                         int count) {
    std::vector<std::vector<ProjPoint>> out;
    if (count == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<std::size_t> idx(count, 0);
    while (true) {
        std::vector<ProjPoint> tup;
        tup.reserve(count);
        for (int i = 0; i < count; ++i) tup.push_back(pts[idx[i]]);
        out.push_back(std::move(tup));
        int i = 0;
        while (i < count && ++idx[i] == pts.size()) idx[i++] = 0;
        if (i == count) break;
    }
    return out;
}

}  // namespace detail

// All rational points of W whose first n-1 coordinates have height <= H;
// the last coordinate is solved exactly (any height). When a specialized
// fiber degenerates to the whole line, that coordinate is swept up to H as
// well. Exhaustive mode is budgeted for n <= 3.
inline PointSet rational_points(const Hypersurface& W, const Int& H) {
    if (H < 1) throw Error(ErrorKind::Input, "BadHeight", "height bound must be >= 1");
    PointSet out;
    const int n = W.n();
    if (n == 1) {
        BinForm f{[&] {
            long a = W.multidegree()[0];
            std::vector<Rat> c(a + 1, Rat(0));
            for (auto& [e, coef] : W.poly().terms()) c[e[0]] = coef;
            return c;
        }()};
        for (const ProjPoint& p : detail::form_root_points(f)) out.insert({p});
        return out;
    }
    if (n > 3)
        throw BudgetExceeded("exhaustive rational point search is budgeted for n <= 3; "
                             "use the fiber interface for larger n");
    std::vector<ProjPoint> pts = projective_points_up_to_height(H);
    double fibers = std::pow(static_cast<double>(pts.size()), n - 1);
    if (fibers > 5e6) throw BudgetExceeded("too many fibers at this height bound");
    for (auto& prefix : detail::prefix_tuples(pts, n - 1)) {
        BinForm fiber = detail::specialize_prefix(W, prefix);
        if (fiber.is_zero()) {
            for (const ProjPoint& t : pts) {
                PointTuple tup = prefix;
                tup.push_back(t);
                out.insert(std::move(tup));
            }
            continue;
        }
        for (const ProjPoint& t : detail::form_root_points(fiber)) {
            PointTuple tup = prefix;
            tup.push_back(t);
            out.insert(std::move(tup));
        }
    }
    return out;
}

// Fiber mode: solve the last coordinate over caller-supplied prefixes.
inline PointSet rational_points_on_fibers(const Hypersurface& W,
                                          const std::vector<std::vector<ProjPoint>>& prefixes,
                                          const Int& sweep_height) {
    PointSet out;
    std::vector<ProjPoint> sweep;
    for (auto& prefix : prefixes) {
        if (static_cast<int>(prefix.size()) != W.n() - 1)
            throw Error(ErrorKind::Input, "BadPrefix", "prefix arity must be n-1");
        BinForm fiber = detail::specialize_prefix(W, prefix);
        if (fiber.is_zero()) {
            if (sweep.empty()) sweep = projective_points_up_to_height(sweep_height);
            for (const ProjPoint& t : sweep) {
                PointTuple tup = prefix;
                tup.push_back(t);
                out.insert(std::move(tup));
            }
            continue;
        }
        for (const ProjPoint& t : detail::form_root_points(fiber)) {
            PointTuple tup = prefix;
            tup.push_back(t);
            out.insert(std::move(tup));
        }
    }
    return out;
}

struct LevelReport {
    long s = 0;
    std::vector<long> multidegree;
    PointSet new_points;
    double time_ms = 0;
};

struct TowerReport {
    std::vector<LevelReport> levels;
    long empirical_s0 = 0;
    bool stabilized_in_window = false;
    bool forward_only_warning = false;
    bool budget_truncated = false;  // a level hit the degree/point budget
    std::string budget_error;
    std::string caveat;
    Int height_bound;
    long max_level = 0;
    std::optional<long> torus_s1;  // attached when the exceptional case applies
};

namespace detail {

// Points of the level-s tower with bounded prefix, found by pushing the
// prefix forward through f^s, solving the base fiber, and pulling the last
// coordinate back through s preimage steps. Avoids any contact with the
// high-degree level polynomial.
inline PointSet level_points_by_chains(const Hypersurface& V, const SplitMap& f, long s,
                                       const std::vector<ProjPoint>& pts, int threads) {
    const int n = V.n();
    const RatMap1& last = f.component(n - 1);
    auto prefixes = prefix_tuples(pts, n - 1);
    auto solve_range = [&](std::size_t lo, std::size_t hi) {
        PointSet chunk;
        for (std::size_t pi = lo; pi < hi; ++pi) {
            const auto& prefix = prefixes[pi];
            // forward image of the prefix under f^s, coordinatewise
            std::vector<ProjPoint> forward = prefix;
            for (long step = 0; step < s; ++step)
                for (int i = 0; i + 1 < n; ++i) forward[i] = f.component(i).evaluate(forward[i]);
            std::vector<ProjPoint> base_prefix = forward;
            BinForm fiber = specialize_prefix(V, base_prefix);
            std::set<ProjPoint> targets;
            bool degenerate = fiber.is_zero();
            if (!degenerate) targets = form_root_points(fiber);
            if (degenerate) {
                for (const ProjPoint& t : pts) {
                    PointTuple tup = prefix;
                    tup.push_back(t);
                    chunk.insert(std::move(tup));
                }
                continue;
            }
            // pull the targets back through s preimage steps of the last map
            for (long step = 0; step < s; ++step) {
                std::set<ProjPoint> prev;
                for (const ProjPoint& t : targets) {
                    auto pre = point_preimages(last, t);
                    prev.insert(pre.begin(), pre.end());
                }
                targets = std::move(prev);
                if (targets.empty()) break;
            }
            for (const ProjPoint& t : targets) {
                PointTuple tup = prefix;
                tup.push_back(t);
                chunk.insert(std::move(tup));
            }
        }
        return chunk;
    };
    if (threads <= 1 || prefixes.size() < 64) return solve_range(0, prefixes.size());
    std::vector<std::future<PointSet>> futs;
    std::size_t per = (prefixes.size() + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        std::size_t lo = t * per, hi = std::min(prefixes.size(), lo + per);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, solve_range, lo, hi));
    }
    PointSet out;
    for (auto& fu : futs) {
        PointSet chunk = fu.get();
        out.insert(chunk.begin(), chunk.end());
    }
    return out;
}

}  // namespace detail

// The Theorem-1.1 harness: per-level new rational points and the empirical
// stabilization index, each new point certified by forward iteration.
inline TowerReport stabilization_report(const Hypersurface& V, const SplitMap& f,
                                        const SearchConfig& cfg) {
    cfg.validate();
    if (V.n() != f.n())
        throw Error(ErrorKind::Input, "ArityMismatch", "variety and map have different n");
    InvarianceVerdict verdict = is_invariant(V, f, false);
    if (verdict == InvarianceVerdict::NotInvariant)
        throw NotInvariant("stabilization_report requires a forward-invariant V");
    TowerReport report;
    report.forward_only_warning = verdict == InvarianceVerdict::ForwardOnly;
    report.height_bound = cfg.height_bound;
    report.max_level = cfg.max_level;
    report.caveat = "searched prefix heights <= " + cfg.height_bound.str() + " and levels <= " +
                    std::to_string(cfg.max_level) + "; points beyond either window are not seen";

    std::vector<ProjPoint> pts = projective_points_up_to_height(cfg.height_bound);
    if (V.n() > 1) {
        double fibers = std::pow(static_cast<double>(pts.size()), V.n() - 1);
        if (fibers > 5e6) throw BudgetExceeded("too many fibers at this height bound");
    }

    Hypersurface level = V;
    PointSet previous;
    for (long s = 0; s <= cfg.max_level; ++s) {
        auto t0 = std::chrono::steady_clock::now();
        PointSet found;
        try {
            if (s > 0) level = pullback(level, f);  // equal, as sets, to tower_level(V, f, s)
            found = detail::level_points_by_chains(V, f, s, pts, cfg.threads);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::Budget) throw;
            // budget exhausted mid-tower: return what was computed
            report.budget_truncated = true;
            report.budget_error = e.what();
            report.caveat += "; truncated at level " + std::to_string(s) + " by the budget";
            break;
        }
        LevelReport lr;
        lr.s = s;
        lr.multidegree = level.multidegree();
        for (const PointTuple& x : found)
            if (!previous.count(x)) lr.new_points.insert(x);
        // certification by forward iteration: lands in V at step s and at
        // no earlier step
        for (const PointTuple& x : lr.new_points) {
            PointTuple cur = x;
            for (long j = 0; j < s; ++j) {
                if (V.contains(cur))
                    throw Error(ErrorKind::Internal, "Certification",
                                "new level-" + std::to_string(s) + " point already lands at step " +
                                    std::to_string(j));
                cur = f.evaluate(cur);
            }
            if (!V.contains(cur))
                throw Error(ErrorKind::Internal, "Certification",
                            "reported point misses V after s steps");
        }
        previous.insert(found.begin(), found.end());
        auto t1 = std::chrono::steady_clock::now();
        lr.time_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        report.levels.push_back(std::move(lr));
    }
    report.empirical_s0 = 0;
    for (auto& lr : report.levels)
        if (lr.s >= 1 && !lr.new_points.empty()) report.empirical_s0 = lr.s;
    report.stabilized_in_window = report.empirical_s0 < cfg.max_level;
    return report;
}

struct CollidingPair {
    ProjPoint a, b;
    long first_collision = 0;  // witness index (= merge index here)
    long merge_index = 0;      // min s with f^s(a) = f^s(b)
};

struct CancellationReport {
    std::vector<CollidingPair> pairs;
    long empirical_N = 0;
    Int height_bound;
    long n_max = 0;
};

// Orbit-collision scan over all height-bounded rational points: group by
// the exact value of f^(n_max), then compute merge indices within groups.
inline CancellationReport cancellation_report(const RatMap1& f, const SearchConfig& cfg) {
    cfg.validate();
    if (f.degree() < 2) throw PreconditionFailed("cancellation needs deg f >= 2");
    std::vector<ProjPoint> pts = projective_points_up_to_height(cfg.height_bound);
    const long N = cfg.cancel_max;
    std::vector<std::vector<ProjPoint>> orbits(pts.size());
    std::map<ProjPoint, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        orbits[i].reserve(N + 1);
        orbits[i].push_back(pts[i]);
        for (long k = 0; k < N; ++k) orbits[i].push_back(f.evaluate(orbits[i].back()));
        buckets[orbits[i].back()].push_back(i);
    }
    CancellationReport out;
    out.height_bound = cfg.height_bound;
    out.n_max = N;
    for (auto& [val, members] : buckets) {
        for (std::size_t ai = 0; ai < members.size(); ++ai)
            for (std::size_t bi = ai + 1; bi < members.size(); ++bi) {
                const auto& oa = orbits[members[ai]];
                const auto& ob = orbits[members[bi]];
                long merge = N;
                while (merge > 0 && oa[merge - 1] == ob[merge - 1]) --merge;
                // merge == 0 would mean the points coincide
                if (merge == 0)
                    throw Error(ErrorKind::Internal, "DuplicatePoint", "point list not unique");
                CollidingPair pair;
                pair.a = oa[0];
                pair.b = ob[0];
                pair.merge_index = merge;
                pair.first_collision = merge;
                out.pairs.push_back(pair);
                out.empirical_N = std::max(out.empirical_N, merge);
            }
    }
    return out;
}

// The introduction's equivalence: the diagonal tower of (g, g) stabilizes
// at the same index where orbit collisions of g merge, under one shared
// budget.
inline bool diagonal_tower_equivalence(const RatMap1& g, const SearchConfig& cfg) {
    if (g.degree() < 2) throw PreconditionFailed("diagonal equivalence needs deg g >= 2");
    MultiPoly h(4);
    h.add_term({1, 0, 0, 1}, Rat(1));
    h.add_term({0, 1, 1, 0}, Rat(-1));
    Hypersurface diag = Hypersurface::make(2, h);
    SearchConfig tower_cfg = cfg;
    tower_cfg.max_level = cfg.max_level;
    TowerReport tr = stabilization_report(diag, SplitMap({g, g}), tower_cfg);
    SearchConfig cancel_cfg = cfg;
    cancel_cfg.cancel_max = cfg.max_level;  // matched windows
    CancellationReport cr = cancellation_report(g, cancel_cfg);
    return tr.empirical_s0 == cr.empirical_N;
}

// Two-budget variant; refuses unmatched windows outright.
inline bool diagonal_tower_equivalence(const RatMap1& g, const SearchConfig& tower_cfg,
                                       const SearchConfig& cancel_cfg) {
    if (tower_cfg.height_bound != cancel_cfg.height_bound)
        throw MismatchedBudgets("height bounds differ between tower and cancellation scans");
    if (tower_cfg.max_level != cancel_cfg.cancel_max)
        throw MismatchedBudgets("level window differs from collision window");
    SearchConfig merged = tower_cfg;
    merged.cancel_max = cancel_cfg.cancel_max;
    return diagonal_tower_equivalence(g, merged);
}

}  // namespace pdyn

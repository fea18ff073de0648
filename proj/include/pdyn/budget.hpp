#pragma once

#include <cstdlib>
#include <string>

#include "pdyn/errors.hpp"

namespace pdyn {

// Monomial budget: no operation may build a polynomial with more monomials
// than this. PDYN_MONOMIAL_BUDGET overrides the default.
inline long monomial_budget() {
    static long cached = [] {
        if (const char* env = std::getenv("PDYN_MONOMIAL_BUDGET")) {
            try {
                long v = std::stol(env);
                if (v > 0) return v;
            } catch (...) {
            }
        }
        return 1000000L;
    }();
    return cached;
}

inline void check_monomial_budget(long predicted, const std::string& where) {
    if (predicted > monomial_budget())
        throw DegreeOverflow(where + ": predicted " + std::to_string(predicted) +
                             " monomials exceeds budget " + std::to_string(monomial_budget()));
}

}  // namespace pdyn

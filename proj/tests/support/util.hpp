#pragma once

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "dsat/clause.hpp"

namespace dsat::testutil {

inline std::vector<Lit> lits(std::initializer_list<int> xs) {
    std::vector<Lit> v;
    for (int x : xs) v.push_back(Lit::from_dimacs(x));
    return v;
}

// sorted DIMACS view, convenient for set comparisons
inline std::vector<int> dimacs(std::span<const Lit> ls) {
    std::vector<int> v;
    for (Lit l : ls) v.push_back(l.to_dimacs());
    std::sort(v.begin(), v.end());
    return v;
}

inline std::vector<int> dimacs(const std::vector<Lit>& ls) {
    return dimacs(std::span<const Lit>(ls));
}

} // namespace dsat::testutil

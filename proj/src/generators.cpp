#include "dsat/generators.hpp"

#include <random>
#include <stdexcept>

namespace dsat {

Formula generate_pigeonhole(int holes) {
    if (holes < 1) throw std::invalid_argument("pigeonhole: holes must be >= 1");
    const int pigeons = holes + 1;
    Formula f(pigeons * holes);
    auto var = [&](int p, int h) { return p * holes + h + 1; };

    // each pigeon gets some hole
    for (int p = 0; p < pigeons; ++p) {
        std::vector<Lit> cl;
        for (int h = 0; h < holes; ++h) cl.emplace_back(var(p, h), false);
        f.add_clause(std::move(cl));
    }
    // no hole hosts two pigeons
    for (int h = 0; h < holes; ++h)
        for (int p1 = 0; p1 < pigeons; ++p1)
            for (int p2 = p1 + 1; p2 < pigeons; ++p2)
                f.add_clause({Lit(var(p1, h), true), Lit(var(p2, h), true)});
    return f;
}

Formula generate_random_3cnf(int num_vars, int num_clauses,
                             std::uint64_t seed) {
    if (num_vars < 3)
        throw std::invalid_argument("random 3-cnf: need at least 3 variables");
    Formula f(num_vars);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick_var(1, num_vars);
    std::uniform_int_distribution<int> pick_sign(0, 1);
    for (int i = 0; i < num_clauses; ++i) {
        int a = pick_var(rng);
        int b = pick_var(rng);
        while (b == a) b = pick_var(rng);
        int c = pick_var(rng);
        while (c == a || c == b) c = pick_var(rng);
        f.add_clause({Lit(a, pick_sign(rng) != 0), Lit(b, pick_sign(rng) != 0),
                      Lit(c, pick_sign(rng) != 0)});
    }
    return f;
}

} // namespace dsat

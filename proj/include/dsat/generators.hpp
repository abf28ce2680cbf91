#pragma once

#include <cstdint>

#include "dsat/formula.hpp"

namespace dsat {

// Pigeonhole principle php(holes+1, holes): n+1 pigeons into n holes.
// Variable (p*holes + h + 1) means pigeon p sits in hole h. UNSAT for all
// holes >= 1.
Formula generate_pigeonhole(int holes);

// Uniform random 3-CNF: each clause picks three distinct variables and
// independent signs. Duplicate literals cannot occur; duplicate clauses may.
Formula generate_random_3cnf(int num_vars, int num_clauses,
                             std::uint64_t seed);

} // namespace dsat

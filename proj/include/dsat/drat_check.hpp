#pragma once

#include <iosfwd>
#include <string>

#include "dsat/formula.hpp"

namespace dsat {

struct DratCheckResult {
    bool verified = false;
    std::string error; // first failing line, empty on success
    long additions = 0;
    long deletions = 0;
};

// RUP replay of a plain-text DRAT file: every addition must be refutable by
// unit propagation over the accumulated clause set, deletions must name an
// existing clause, and the proof must derive the empty clause. Independent
// of the solver (own propagation machinery over explicit clause lists).
DratCheckResult check_drat(const Formula& formula, std::istream& proof);
DratCheckResult check_drat_file(const Formula& formula,
                                const std::string& proof_path);

} // namespace dsat

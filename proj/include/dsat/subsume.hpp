#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dsat/clause.hpp"

namespace dsat {

// Exact membership of the current resolvent sigma_i of an asserting-clause
// derivation. A variable's flag is set while its (falsified) literal is in
// the resolvent and cleared the moment it is resolved on; this is what makes
// the constant-time counter test below exact. Cleanup/minimization marking
// lives elsewhere (Solver keeps a separate sticky mark array).
struct ResolventState {
    std::vector<char> in_resolvent; // indexed by var
    int path_count = 0;             // literals at the conflict level
    int below_level = 0;            // literals below the conflict level

    explicit ResolventState(int num_vars = 0)
        : in_resolvent(static_cast<std::size_t>(num_vars) + 1, 0) {}

    bool contains(Var v) const { return in_resolvent[v] != 0; }
    int size() const { return path_count + below_level; }
};

// A deferred (clause, literal) strengthening produced during conflict
// analysis and applied after backjumping.
struct StrengtheningRequest {
    ClauseId clause_id = kNoClause;
    Lit remove_literal;    // the implied-literal occurrence in the clause
    int step = 0;          // derivation step i at which it was detected
    int resolvent_size = 0; // |sigma_i| recorded at detection
};

// One resolution step of an asserting clause derivation. Reason literals are
// snapshotted at use time so the log stays valid after strengthening.
struct DerivationStep {
    Lit pivot;             // literal of sigma_{i-1} resolved on
    ClauseId reason_id = kNoClause;
    std::vector<Lit> reason_lits;
    std::vector<Lit> resolvent_lits; // sigma_i, sorted
};

struct DerivationLog {
    ClauseId conflict_id = kNoClause;
    std::vector<Lit> conflict_lits;
    std::vector<DerivationStep> steps; // steps[i-1] produced sigma_i

    // C_sigma_i: the clauses of the formula used to derive sigma_i
    // (the conflict clause plus the first i reasons); |C_sigma_i| = i + 1.
    std::vector<std::pair<ClauseId, std::span<const Lit>>>
    clauses_used(int i) const;
};

// Constant-counter subsumption test of the on-the-fly scheme: during the
// pass over the reason clause, n counts its literals already present in
// sigma_{i-1}; the reason is subsumed by sigma_i iff n >= |sigma_{i-1}| - 1.
// `pivot` is the literal of the resolvent being resolved on; the reason
// clause contains its negation, which is the literal removed on success.
std::optional<StrengtheningRequest> check_otf(const Clause& reason_clause,
                                              Lit pivot,
                                              const ResolventState& resolvent);

// The quadratic general formulation: for every step i, checks sigma_i
// against every clause used so far. Test-mode oracle; never touches solver
// state. Returns (step, clause id) pairs.
std::vector<std::pair<int, ClauseId>>
general_subsumption(const DerivationLog& log);

// F-subsumption modulo unit propagation: true iff asserting the negation of
// every literal of `candidate` into `clauses` and propagating to fixpoint
// derives the empty clause. `candidate` must be a proper subset of `c`.
bool is_subsumed_modulo_up(std::span<const std::vector<Lit>> clauses,
                           std::span<const Lit> c,
                           std::span<const Lit> candidate);

// Convenience: plain unit-propagation refutation check used by oracles.
// Asserts `assumptions` and propagates `clauses` to fixpoint; true iff a
// conflict is reached.
bool up_refutes(std::span<const std::vector<Lit>> clauses,
                std::span<const Lit> assumptions);

} // namespace dsat

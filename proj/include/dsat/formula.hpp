#pragma once

#include <unordered_map>
#include <vector>

#include "dsat/clause.hpp"

namespace dsat {

class Formula {
  public:
    Formula() = default;
    explicit Formula(int num_vars) : num_vars_(num_vars) {}

    int num_vars() const { return num_vars_; }
    void set_num_vars(int n) { num_vars_ = n; }

    bool trivially_unsat() const { return trivially_unsat_; }
    void mark_trivially_unsat() { trivially_unsat_ = true; }

    int tautologies_dropped() const { return tautologies_dropped_; }

    std::size_t num_clauses() const { return clauses_.size(); }
    const std::vector<Clause>& clauses() const { return clauses_; }
    const Clause& clause(ClauseId id) const { return clauses_.at(id - 1); }

    // Normalizes (dedups) the literals; tautologies are dropped, the empty
    // clause flags the formula trivially unsatisfiable. Returns the id of
    // the added clause, or kNoClause when it was dropped.
    ClauseId add_clause(std::vector<Lit> lits);

    // Per-literal clause-id lists; built on demand for the general-mode
    // subsumption oracle, not maintained by the solver.
    std::vector<std::vector<ClauseId>> build_occurrence_index() const;

  private:
    std::vector<Clause> clauses_;
    int num_vars_ = 0;
    int tautologies_dropped_ = 0;
    bool trivially_unsat_ = false;
};

// true iff the assignment (indexed by var, 1-based) satisfies every clause
bool satisfies(const Formula& f, const std::vector<bool>& model);

} // namespace dsat

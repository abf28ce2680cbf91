#include <algorithm>
#include <set>
#include <stdexcept>

#include "dsat/clause.hpp"
#include "dsat/formula.hpp"

namespace dsat {

Resolvent resolve(Lit x, const Clause& ci, const Clause& cj) {
    if (!ci.contains(x))
        throw std::logic_error("resolve: pivot not in first clause");
    if (!cj.contains(~x))
        throw std::logic_error("resolve: pivot negation not in second clause");

    std::set<Lit> merged;
    for (Lit l : ci)
        if (l != x) merged.insert(l);
    for (Lit l : cj)
        if (l != ~x) merged.insert(l);

    Resolvent r;
    r.lits.assign(merged.begin(), merged.end());
    for (Lit l : r.lits)
        if (merged.count(~l)) {
            r.tautological = true;
            break;
        }
    return r;
}

bool subsumes(std::span<const Lit> c1, std::span<const Lit> c2) {
    for (Lit l : c1)
        if (std::find(c2.begin(), c2.end(), l) == c2.end()) return false;
    return true;
}

bool subsumes(const Clause& c1, const Clause& c2) {
    return subsumes(c1.lits(), c2.lits());
}

ClauseId Formula::add_clause(std::vector<Lit> lits) {
    std::sort(lits.begin(), lits.end());
    lits.erase(std::unique(lits.begin(), lits.end()), lits.end());

    for (std::size_t i = 0; i + 1 < lits.size(); ++i)
        if (lits[i + 1] == ~lits[i]) { // complementary pair: adjacent after sort
            ++tautologies_dropped_;
            return kNoClause;
        }

    if (lits.empty()) {
        trivially_unsat_ = true;
        return kNoClause;
    }

    for (Lit l : lits)
        if (l.var() > num_vars_) num_vars_ = l.var();

    ClauseId id = static_cast<ClauseId>(clauses_.size() + 1);
    clauses_.emplace_back(id, std::move(lits));
    return id;
}

std::vector<std::vector<ClauseId>> Formula::build_occurrence_index() const {
    std::vector<std::vector<ClauseId>> occ(2 * num_vars_);
    for (const Clause& c : clauses_) {
        if (c.deleted()) continue;
        for (Lit l : c) occ[l.index()].push_back(c.id());
    }
    return occ;
}

bool satisfies(const Formula& f, const std::vector<bool>& model) {
    for (const Clause& c : f.clauses()) {
        if (c.deleted()) continue;
        bool sat = false;
        for (Lit l : c)
            if (model[l.var()] != l.negative()) {
                sat = true;
                break;
            }
        if (!sat) return false;
    }
    return !f.trivially_unsat();
}

} // namespace dsat

#include "dsat/subsume.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace dsat {

std::vector<std::pair<ClauseId, std::span<const Lit>>>
DerivationLog::clauses_used(int i) const {
    std::vector<std::pair<ClauseId, std::span<const Lit>>> used;
    used.emplace_back(conflict_id, std::span<const Lit>(conflict_lits));
    for (int j = 0; j < i && j < static_cast<int>(steps.size()); ++j)
        used.emplace_back(steps[j].reason_id,
                          std::span<const Lit>(steps[j].reason_lits));
    return used;
}

std::optional<StrengtheningRequest>
check_otf(const Clause& reason_clause, Lit pivot,
          const ResolventState& resolvent) {
    Lit implied = ~pivot;
    int n = 0;
    for (Lit l : reason_clause) {
        if (l == implied) continue;
        if (resolvent.contains(l.var())) ++n;
    }
    if (n < resolvent.size() - 1) return std::nullopt;
    StrengtheningRequest req;
    req.clause_id = reason_clause.id();
    req.remove_literal = implied;
    req.resolvent_size = resolvent.size() - 1 + static_cast<int>(
                             reason_clause.size()) - 1 - n; // |sigma_i|
    return req;
}

std::vector<std::pair<int, ClauseId>>
general_subsumption(const DerivationLog& log) {
    std::vector<std::pair<int, ClauseId>> found;
    for (int i = 1; i <= static_cast<int>(log.steps.size()); ++i) {
        std::span<const Lit> sigma = log.steps[i - 1].resolvent_lits;
        for (auto& [id, lits] : log.clauses_used(i))
            if (subsumes(sigma, lits)) found.emplace_back(i, id);
    }
    return found;
}

bool up_refutes(std::span<const std::vector<Lit>> clauses,
                std::span<const Lit> assumptions) {
    // naive closure: repeated scans until fixpoint; oracle-grade only
    std::unordered_map<Var, bool> value; // true == positive literal holds
    for (Lit l : assumptions) {
        auto [it, fresh] = value.emplace(l.var(), !l.negative());
        if (!fresh && it->second != !l.negative()) return true;
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& c : clauses) {
            int unassigned = 0;
            Lit unit;
            bool sat = false;
            for (Lit l : c) {
                auto it = value.find(l.var());
                if (it == value.end()) {
                    ++unassigned;
                    unit = l;
                } else if (it->second != l.negative()) {
                    sat = true;
                    break;
                }
            }
            if (sat) continue;
            if (unassigned == 0) return true; // falsified clause
            if (unassigned == 1) {
                value.emplace(unit.var(), !unit.negative());
                changed = true;
            }
        }
    }
    return false;
}

bool is_subsumed_modulo_up(std::span<const std::vector<Lit>> clauses,
                           std::span<const Lit> c,
                           std::span<const Lit> candidate) {
    if (candidate.size() >= c.size() || !subsumes(candidate, c))
        throw std::logic_error(
            "is_subsumed_modulo_up: candidate must be a proper subset");
    std::vector<Lit> negated;
    negated.reserve(candidate.size());
    for (Lit l : candidate) negated.push_back(~l);
    return up_refutes(clauses, negated);
}

} // namespace dsat

#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "dsat/lit.hpp"

namespace dsat {

using ClauseId = std::uint32_t;
constexpr ClauseId kNoClause = 0; // ids are 1-based

class Clause {
  public:
    Clause() = default;
    Clause(ClauseId id, std::vector<Lit> lits, bool learnt = false)
        : lits_(std::move(lits)), id_(id), learnt_(learnt) {}

    ClauseId id() const { return id_; }
    bool learnt() const { return learnt_; }
    bool deleted() const { return deleted_; }
    void mark_deleted() { deleted_ = true; }

    double activity() const { return activity_; }
    void set_activity(double a) { activity_ = a; }

    std::size_t size() const { return lits_.size(); }
    bool empty() const { return lits_.empty(); }
    Lit operator[](std::size_t i) const { return lits_[i]; }
    Lit& operator[](std::size_t i) { return lits_[i]; }
    std::span<const Lit> lits() const { return lits_; }

    auto begin() const { return lits_.begin(); }
    auto end() const { return lits_.end(); }

    bool contains(Lit l) const {
        return std::find(lits_.begin(), lits_.end(), l) != lits_.end();
    }

    // Removes one literal in place; the clause keeps its id.
    void remove_literal(Lit l) {
        lits_.erase(std::find(lits_.begin(), lits_.end(), l));
    }

    void swap_positions(std::size_t i, std::size_t j) {
        std::swap(lits_[i], lits_[j]);
    }

    // Canonical form used by tests and clause algebra: sorted literals.
    std::vector<Lit> sorted_lits() const {
        std::vector<Lit> v(lits_.begin(), lits_.end());
        std::sort(v.begin(), v.end());
        return v;
    }

  private:
    std::vector<Lit> lits_;
    ClauseId id_ = kNoClause;
    double activity_ = 0.0;
    bool learnt_ = false;
    bool deleted_ = false;
};

struct Resolvent {
    std::vector<Lit> lits; // sorted, deduplicated
    bool tautological = false;
};

// eta[x, ci, cj]: union of both clauses minus the complementary pivot pair.
// x must occur in ci and ~x in cj.
Resolvent resolve(Lit x, const Clause& ci, const Clause& cj);

// true iff every literal of c1 occurs in c2
bool subsumes(const Clause& c1, const Clause& c2);
bool subsumes(std::span<const Lit> c1, std::span<const Lit> c2);

} // namespace dsat

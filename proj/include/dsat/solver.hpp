#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dsat/clause.hpp"
#include "dsat/drat.hpp"
#include "dsat/formula.hpp"
#include "dsat/subsume.hpp"

namespace dsat {

enum class DsMode { Off, OnTheFly, GeneralOracle };

struct RestartPolicy {
    enum class Kind { Luby, Geometric };
    Kind kind = Kind::Luby;
    int luby_base = 128;
    int geo_init = 100;
    double geo_factor = 1.5;
};

struct SolverConfig {
    DsMode ds_mode = DsMode::OnTheFly;
    RestartPolicy restart;
    double var_decay = 0.95;
    double clause_decay = 0.999;
    bool phase_saving = true;
    std::uint64_t seed = 0; // recorded in run records; search is deterministic
    std::uint64_t conflict_budget = 0;    // 0 = unlimited
    std::uint64_t propagation_budget = 0; // 0 = unlimited
    double time_budget_s = 0.0;           // 0 = unlimited
    // test instrumentation: keep per-conflict derivation logs and
    // strengthening/minimization records (GeneralOracle mode forces it)
    bool log_derivations = false;
    std::size_t max_logged_conflicts = 100000;
    bool check_invariants = false; // full-scan trail checks after propagation
};

struct Stats {
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t restarts = 0;
    std::uint64_t learnt_clauses = 0;
    std::uint64_t db_reductions = 0;
    std::uint64_t subsumed_original = 0;
    std::uint64_t subsumed_learnt = 0;
    std::uint64_t literals_removed = 0;
    std::uint64_t stale_requests = 0;
    double cpu_seconds = 0.0;
    double wall_seconds = 0.0;
};

enum class Verdict { Sat, Unsat, Unknown };

std::string to_string(Verdict v);

struct SolveOutcome {
    Verdict verdict = Verdict::Unknown;
    std::vector<bool> model; // indexed by var, valid when Sat
    Stats stats;
};

// i-th element of the Luby restart sequence (1,1,2,1,1,2,4,...), i >= 1
std::uint64_t luby(std::uint64_t i);

struct AnalysisResult {
    std::vector<Lit> asserting_clause; // asserting literal first
    std::vector<Lit> derived_clause;   // sigma_k before minimization
    int backjump_level = 0;
    int derivation_length = 0;
    std::vector<StrengtheningRequest> strengthening_requests;
};

// Per-conflict instrumentation record (log_derivations mode).
struct ConflictRecord {
    DerivationLog log;
    std::vector<StrengtheningRequest> otf_detections;
    std::vector<Lit> derived_clause;
    std::vector<Lit> minimized_clause;
    int backjump_level = 0;
    std::vector<Lit> trail_snapshot; // assignment at conflict time
};

// Applied strengthening with enough context to re-derive it (test mode).
struct StrengtheningEvent {
    std::size_t conflict_index = 0; // into conflict_records()
    int step = 0;
    ClauseId clause_id = kNoClause;
    bool learnt = false;
    Lit removed_literal;
    std::vector<Lit> before_lits;
    std::vector<Lit> after_lits;
};

class Solver {
  public:
    explicit Solver(SolverConfig config = {});

    void load(const Formula& f);
    SolveOutcome solve();

    // appends a clause to the database (watches attached); ids never reused
    ClauseId add_clause(std::vector<Lit> lits, bool learnt = false);

    // proof sink must outlive the solver; call before solve()
    void set_proof(DratWriter* proof) { proof_ = proof; }

    const Stats& stats() const { return stats_; }
    const SolverConfig& config() const { return config_; }

    // -- pieces exposed for unit tests and the replay command --
    int decision_level() const { return static_cast<int>(trail_lim_.size()); }
    int num_vars() const { return num_vars_; }
    Value value_of(Lit l) const;
    Value value_of_var(Var v) const { return assigns_[v]; }
    int level_of(Var v) const { return level_[v]; }
    ClauseId reason_of(Var v) const { return reason_[v]; }
    const std::vector<Lit>& trail() const { return trail_; }
    const Clause& clause(ClauseId id) const { return db_[id - 1]; }

    void assign(Lit l, int level, ClauseId reason);
    ClauseId propagate(); // kNoClause when no conflict
    Lit decide();
    void new_decision(Lit l); // push a level and assign (replay/tests)
    void backjump(int target_level);
    AnalysisResult analyze(ClauseId conflict);
    std::vector<Lit> minimize(const std::vector<Lit>& clause);
    int compute_backjump_level(const std::vector<Lit>& clause) const;
    int apply_strengthenings(const std::vector<StrengtheningRequest>& requests);
    void reduce_db();
    bool all_assigned() const;
    bool unsat() const { return unsat_; }

    // full-scan debug checks; throws std::logic_error on violation
    void check_invariants() const;

    const std::vector<ConflictRecord>& conflict_records() const {
        return conflict_records_;
    }
    const std::vector<StrengtheningEvent>& strengthening_events() const {
        return strengthening_events_;
    }

  private:
    struct Watch {
        ClauseId clause;
        Lit blocker;
    };

    Clause& clause_mut(ClauseId id) { return db_[id - 1]; }
    void attach_watches(ClauseId id);
    void detach_watches(ClauseId id);
    void remove_clause(ClauseId id, bool log_proof);
    bool clause_locked(const Clause& c) const;
    void unassign_to(std::size_t trail_size);
    void bump_var(Var v);
    void bump_clause(Clause& c);
    void decay_activities();
    bool lit_redundant(Lit l, std::vector<Var>& to_clear);
    std::uint64_t restart_limit() const;
    bool budget_exhausted() const;
    std::vector<Lit> strengthen_clause(ClauseId id, Lit remove);

    SolverConfig config_;
    Stats stats_;
    DratWriter* proof_ = nullptr;

    int num_vars_ = 0;
    std::vector<Clause> db_; // id == index + 1; ids are never reused
    std::vector<ClauseId> learnts_;
    std::vector<std::vector<Watch>> watches_; // by false-literal index
    std::vector<Value> assigns_;              // by var
    std::vector<int> level_;
    std::vector<ClauseId> reason_;
    std::vector<char> phase_; // saved polarity, 1 = negative
    std::vector<double> activity_;
    double var_inc_ = 1.0;
    double cla_inc_ = 1.0;
    std::vector<Lit> trail_;
    std::vector<std::size_t> trail_lim_;
    std::size_t qhead_ = 0;
    bool last_conflict_logged_ = false;
    bool unsat_ = false;
    bool loaded_ = false;
    // unit clauses (input or strengthened-to-unit); re-asserted by the solve
    // loop because a backjump can unassign a unit enqueued above level 0
    std::vector<std::pair<Lit, ClauseId>> units_;

    // analysis scratch (sized once per load)
    ResolventState resolvent_;
    std::vector<char> mark_; // sticky "touched this analysis" flag, by var
    std::vector<Var> to_clear_;
    std::vector<char> redundant_cache_; // 0 unknown, 1 removable, 2 failed

    double max_learnts_ = 0.0;

    std::vector<ConflictRecord> conflict_records_;
    std::vector<StrengtheningEvent> strengthening_events_;
};

} // namespace dsat

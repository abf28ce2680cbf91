#include "dsat/solver.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <cmath>
#include <ctime>
#include <stdexcept>

namespace dsat {

namespace {

void require(bool cond, const char* what) {
    if (!cond) throw std::logic_error(what);
}

} // namespace

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Sat: return "SAT";
        case Verdict::Unsat: return "UNSAT";
        default: return "UNKNOWN";
    }
}

std::uint64_t luby(std::uint64_t i) {
    require(i >= 1, "luby: index must be >= 1");
    while (true) {
        std::uint64_t k = 1;
        while (((1ull << k) - 1) < i) ++k; // smallest k with 2^k-1 >= i
        if (((1ull << k) - 1) == i) return 1ull << (k - 1);
        i -= (1ull << (k - 1)) - 1;
    }
}

Solver::Solver(SolverConfig config) : config_(config) {
    require(config_.var_decay > 0.0 && config_.var_decay <= 1.0,
            "SolverConfig: var_decay must be in (0,1]");
    require(config_.clause_decay > 0.0 && config_.clause_decay <= 1.0,
            "SolverConfig: clause_decay must be in (0,1]");
    if (config_.ds_mode == DsMode::GeneralOracle) config_.log_derivations = true;
}

void Solver::load(const Formula& f) {
    require(!loaded_, "Solver::load: already loaded");
    loaded_ = true;
    num_vars_ = f.num_vars();
    watches_.assign(2 * static_cast<std::size_t>(num_vars_), {});
    assigns_.assign(num_vars_ + 1, Value::Undef);
    level_.assign(num_vars_ + 1, 0);
    reason_.assign(num_vars_ + 1, kNoClause);
    phase_.assign(num_vars_ + 1, 1); // default polarity false
    activity_.assign(num_vars_ + 1, 0.0);
    resolvent_ = ResolventState(num_vars_);
    mark_.assign(num_vars_ + 1, 0);
    redundant_cache_.assign(num_vars_ + 1, 0);

    if (f.trivially_unsat()) unsat_ = true;
    for (const Clause& c : f.clauses()) {
        std::vector<Lit> lits(c.begin(), c.end());
        add_clause(std::move(lits), false);
    }
    max_learnts_ = std::max(100.0, static_cast<double>(db_.size()) / 3.0);
}

ClauseId Solver::add_clause(std::vector<Lit> lits, bool learnt) {
    ClauseId id = static_cast<ClauseId>(db_.size() + 1);
    db_.emplace_back(id, std::move(lits), learnt);
    Clause& c = db_.back();
    if (learnt) {
        learnts_.push_back(id);
        ++stats_.learnt_clauses;
        bump_clause(c);
    }
    if (c.size() == 1) units_.push_back({c[0], id});
    if (c.size() >= 2) attach_watches(id);
    return id;
}

void Solver::attach_watches(ClauseId id) {
    const Clause& c = clause(id);
    watches_[(~c[0]).index()].push_back({id, c[1]});
    watches_[(~c[1]).index()].push_back({id, c[0]});
}

void Solver::detach_watches(ClauseId id) {
    const Clause& c = clause(id);
    for (int i = 0; i < 2; ++i) {
        auto& wl = watches_[(~c[i]).index()];
        wl.erase(std::find_if(wl.begin(), wl.end(),
                              [&](const Watch& w) { return w.clause == id; }));
    }
}

Value Solver::value_of(Lit l) const {
    Value v = assigns_[l.var()];
    if (v == Value::Undef) return v;
    return (v == Value::True) != l.negative() ? Value::True : Value::False;
}

void Solver::assign(Lit l, int level, ClauseId reason) {
    require(assigns_[l.var()] == Value::Undef,
            "Solver::assign: variable already assigned");
    assigns_[l.var()] = l.negative() ? Value::False : Value::True;
    level_[l.var()] = level;
    reason_[l.var()] = reason;
    trail_.push_back(l);
}

void Solver::new_decision(Lit l) {
    require(value_of(l) == Value::Undef,
            "Solver::new_decision: variable already assigned");
    trail_lim_.push_back(trail_.size());
    assign(l, decision_level(), kNoClause);
    ++stats_.decisions;
}

ClauseId Solver::propagate() {
    while (qhead_ < trail_.size()) {
        Lit p = trail_[qhead_++]; // p just became true
        ++stats_.propagations;
        auto& wl = watches_[p.index()];
        std::size_t j = 0;
        for (std::size_t i = 0; i < wl.size(); ++i) {
            Watch w = wl[i];
            if (value_of(w.blocker) == Value::True) {
                wl[j++] = w;
                continue;
            }
            Clause& c = clause_mut(w.clause);
            Lit false_lit = ~p;
            if (c[0] == false_lit) c.swap_positions(0, 1);
            if (value_of(c[0]) == Value::True) {
                wl[j++] = {w.clause, c[0]};
                continue;
            }
            bool moved = false;
            for (std::size_t k = 2; k < c.size(); ++k)
                if (value_of(c[k]) != Value::False) {
                    c.swap_positions(1, k);
                    watches_[(~c[1]).index()].push_back({w.clause, c[0]});
                    moved = true;
                    break;
                }
            if (moved) continue;
            wl[j++] = {w.clause, c[0]};
            if (value_of(c[0]) == Value::False) { // conflict
                for (++i; i < wl.size(); ++i) wl[j++] = wl[i];
                wl.resize(j);
                qhead_ = trail_.size();
                return w.clause;
            }
            assign(c[0], decision_level(), w.clause);
        }
        wl.resize(j);
    }
    return kNoClause;
}

bool Solver::all_assigned() const {
    return trail_.size() == static_cast<std::size_t>(num_vars_);
}

Lit Solver::decide() {
    require(!all_assigned(), "Solver::decide: all variables assigned");
    Var best = 0;
    for (Var v = 1; v <= num_vars_; ++v)
        if (assigns_[v] == Value::Undef &&
            (best == 0 || activity_[v] > activity_[best]))
            best = v; // ties break toward the lowest id
    bool negative = config_.phase_saving ? phase_[best] != 0 : true;
    return Lit(best, negative);
}

void Solver::unassign_to(std::size_t trail_size) {
    while (trail_.size() > trail_size) {
        Lit l = trail_.back();
        trail_.pop_back();
        phase_[l.var()] = l.negative() ? 1 : 0;
        assigns_[l.var()] = Value::Undef;
        reason_[l.var()] = kNoClause;
    }
    if (qhead_ > trail_.size()) qhead_ = trail_.size();
}

void Solver::backjump(int target_level) {
    require(target_level >= 0 && target_level < decision_level(),
            "Solver::backjump: target level must be below the current level");
    unassign_to(trail_lim_[target_level]);
    trail_lim_.resize(target_level);
    qhead_ = trail_.size();
}

void Solver::bump_var(Var v) {
    activity_[v] += var_inc_;
    if (activity_[v] > 1e100) {
        for (Var u = 1; u <= num_vars_; ++u) activity_[u] *= 1e-100;
        var_inc_ *= 1e-100;
    }
}

void Solver::bump_clause(Clause& c) {
    c.set_activity(c.activity() + cla_inc_);
    if (c.activity() > 1e20) {
        for (ClauseId id : learnts_) {
            Clause& lc = clause_mut(id);
            lc.set_activity(lc.activity() * 1e-20);
        }
        cla_inc_ *= 1e-20;
    }
}

void Solver::decay_activities() {
    var_inc_ /= config_.var_decay;
    cla_inc_ /= config_.clause_decay;
}

AnalysisResult Solver::analyze(ClauseId conflict_id) {
    require(decision_level() >= 1,
            "Solver::analyze: conflict at level 0 is root UNSAT");
    const int m = decision_level();
    const bool logging = config_.log_derivations &&
                         conflict_records_.size() < config_.max_logged_conflicts;
    last_conflict_logged_ = logging;

    resolvent_.path_count = 0;
    resolvent_.below_level = 0;
    std::vector<Lit> below; // resolvent literals below the conflict level
    std::vector<Lit> fresh; // scratch: literals merged in the current step

    auto merge = [&](Lit q) { // q: false literal entering the resolvent
        Var v = q.var();
        resolvent_.in_resolvent[v] = 1;
        if (!mark_[v]) {
            mark_[v] = 1;
            to_clear_.push_back(v);
        }
        bump_var(v);
        if (level_[v] >= m) {
            ++resolvent_.path_count;
        } else {
            below.push_back(q);
            ++resolvent_.below_level;
        }
        if (logging) fresh.push_back(q);
    };

    ConflictRecord rec;
    std::vector<Lit> res_lits; // explicit resolvent, maintained when logging
    {
        Clause& confl = clause_mut(conflict_id);
        for (Lit q : confl) merge(q);
        if (confl.learnt()) bump_clause(confl);
        if (logging) {
            rec.log.conflict_id = conflict_id;
            rec.log.conflict_lits.assign(confl.begin(), confl.end());
            std::sort(rec.log.conflict_lits.begin(),
                      rec.log.conflict_lits.end());
            res_lits = rec.log.conflict_lits;
            rec.trail_snapshot = trail_;
        }
    }

    AnalysisResult result;
    std::size_t index = trail_.size();
    int step = 0;
    Lit uip;
    while (true) {
        do {
            --index;
        } while (!resolvent_.contains(trail_[index].var()));
        Lit p = trail_[index]; // true on the trail, ~p is in the resolvent
        if (resolvent_.path_count == 1) {
            uip = p;
            break;
        }
        require(reason_[p.var()] != kNoClause,
                "Solver::analyze: pivot without a reason");
        Clause& reason_c = clause_mut(reason_[p.var()]);
        ++step;

        // single pass over the reason: merge new literals and count n, the
        // literals shared with sigma_{i-1} (the on-the-fly counter test)
        const int prev_size = resolvent_.size();
        int n = 0;
        fresh.clear();
        for (Lit q : reason_c) {
            if (q == p) continue;
            if (resolvent_.contains(q.var()))
                ++n;
            else
                merge(q);
        }
        if (reason_c.learnt()) bump_clause(reason_c);

        resolvent_.in_resolvent[p.var()] = 0; // exact membership: pivot out
        --resolvent_.path_count;

        if (n >= prev_size - 1 && config_.ds_mode != DsMode::Off) {
            StrengtheningRequest req;
            req.clause_id = reason_c.id();
            req.remove_literal = p;
            req.step = step;
            req.resolvent_size = resolvent_.size();
            result.strengthening_requests.push_back(req);
        }

        if (logging) {
            DerivationStep ds;
            ds.pivot = ~p;
            ds.reason_id = reason_c.id();
            ds.reason_lits.assign(reason_c.begin(), reason_c.end());
            std::sort(ds.reason_lits.begin(), ds.reason_lits.end());
            res_lits.erase(
                std::find(res_lits.begin(), res_lits.end(), ~p));
            res_lits.insert(res_lits.end(), fresh.begin(), fresh.end());
            std::sort(res_lits.begin(), res_lits.end());
            ds.resolvent_lits = res_lits;
            rec.log.steps.push_back(std::move(ds));
        }
    }

    result.derivation_length = step;
    result.derived_clause.reserve(below.size() + 1);
    result.derived_clause.push_back(~uip);
    result.derived_clause.insert(result.derived_clause.end(), below.begin(),
                                 below.end());

    result.asserting_clause = minimize(result.derived_clause);
    result.backjump_level = compute_backjump_level(result.asserting_clause);

    // clear exact-membership and sticky marks together
    for (Var v : to_clear_) {
        resolvent_.in_resolvent[v] = 0;
        mark_[v] = 0;
    }
    to_clear_.clear();
    resolvent_.path_count = 0;
    resolvent_.below_level = 0;

    if (logging) {
        rec.otf_detections = result.strengthening_requests;
        rec.derived_clause = result.derived_clause;
        rec.minimized_clause = result.asserting_clause;
        rec.backjump_level = result.backjump_level;
        conflict_records_.push_back(std::move(rec));
    }
    return result;
}

bool Solver::lit_redundant(Lit l, std::vector<Var>& cache_touched) {
    Var v = l.var();
    if (level_[v] == 0) return true;
    if (redundant_cache_[v] != 0) return redundant_cache_[v] == 1;
    ClauseId r = reason_[v];
    if (r == kNoClause) { // decision
        redundant_cache_[v] = 2;
        cache_touched.push_back(v);
        return false;
    }
    for (Lit q : clause(r)) {
        if (q == ~l) continue; // the implied literal itself
        if (mark_[q.var()]) continue;
        if (!lit_redundant(q, cache_touched)) {
            redundant_cache_[v] = 2;
            cache_touched.push_back(v);
            return false;
        }
    }
    redundant_cache_[v] = 1;
    cache_touched.push_back(v);
    return true;
}

std::vector<Lit> Solver::minimize(const std::vector<Lit>& cl) {
    std::vector<Var> marked_here;
    for (Lit l : cl)
        if (!mark_[l.var()]) {
            mark_[l.var()] = 1;
            marked_here.push_back(l.var());
        }

    std::vector<Var> cache_touched;
    std::vector<Lit> out;
    out.push_back(cl[0]); // asserting literal always stays
    for (std::size_t i = 1; i < cl.size(); ++i) {
        Var v = cl[i].var();
        if (reason_[v] == kNoClause || !lit_redundant(cl[i], cache_touched))
            out.push_back(cl[i]);
    }

    for (Var v : cache_touched) redundant_cache_[v] = 0;
    for (Var v : marked_here) mark_[v] = 0;
    return out;
}

int Solver::compute_backjump_level(const std::vector<Lit>& cl) const {
    require(!cl.empty(), "compute_backjump_level: empty clause");
    require(value_of(cl[0]) == Value::False,
            "compute_backjump_level: clause must be falsified");
    int m = level_[cl[0].var()];
    int best = 0;
    for (std::size_t i = 1; i < cl.size(); ++i) {
        require(value_of(cl[i]) == Value::False,
                "compute_backjump_level: clause must be falsified");
        require(level_[cl[i].var()] < m,
                "compute_backjump_level: clause is not asserting");
        best = std::max(best, level_[cl[i].var()]);
    }
    return best;
}

std::vector<Lit> Solver::strengthen_clause(ClauseId id, Lit remove) {
    Clause& c = clause_mut(id);
    std::vector<Lit> old_lits(c.begin(), c.end());
    if (c.size() >= 2) detach_watches(id);
    c.remove_literal(remove);

    if (proof_) {
        std::vector<Lit> new_lits(c.begin(), c.end());
        proof_->add(new_lits); // add the stronger clause first
        proof_->del(old_lits);
    }
    ++stats_.literals_removed;
    if (c.learnt())
        ++stats_.subsumed_learnt;
    else
        ++stats_.subsumed_original;

    if (c.empty()) {
        unsat_ = true;
        return old_lits;
    }
    if (c.size() == 1) {
        Value v = value_of(c[0]);
        if (v == Value::False)
            throw std::logic_error("strengthen_clause: clause falsified");
        units_.push_back({c[0], id});
        if (v == Value::Undef) assign(c[0], decision_level(), id);
        return old_lits;
    }

    // re-watch: prefer satisfied/unassigned literals; a genuinely unit
    // clause is enqueued before watches settle
    auto rank = [&](Lit l) -> long {
        switch (value_of(l)) {
            case Value::True: return 1L << 40;
            case Value::Undef: return 1L << 30;
            default: return level_[l.var()];
        }
    };
    std::size_t b0 = 0;
    for (std::size_t k = 1; k < c.size(); ++k)
        if (rank(c[k]) > rank(c[b0])) b0 = k;
    c.swap_positions(0, b0);
    std::size_t b1 = 1;
    for (std::size_t k = 2; k < c.size(); ++k)
        if (rank(c[k]) > rank(c[b1])) b1 = k;
    c.swap_positions(1, b1);
    if (value_of(c[0]) == Value::Undef && value_of(c[1]) == Value::False)
        assign(c[0], decision_level(), id); // became unit here and now
    attach_watches(id);
    return old_lits;
}

int Solver::apply_strengthenings(
    const std::vector<StrengtheningRequest>& requests) {
    int applied = 0;
    for (const StrengtheningRequest& req : requests) {
        if (req.clause_id == kNoClause || req.clause_id > db_.size()) {
            ++stats_.stale_requests;
            continue;
        }
        const Clause& c = clause(req.clause_id);
        if (c.deleted() || !c.contains(req.remove_literal)) {
            ++stats_.stale_requests;
            continue;
        }
        bool learnt = c.learnt();
        std::vector<Lit> before = strengthen_clause(req.clause_id,
                                                    req.remove_literal);
        ++applied;
        if (config_.log_derivations && last_conflict_logged_) {
            StrengtheningEvent ev;
            ev.conflict_index =
                conflict_records_.empty() ? 0 : conflict_records_.size() - 1;
            ev.step = req.step;
            ev.clause_id = req.clause_id;
            ev.learnt = learnt;
            ev.removed_literal = req.remove_literal;
            ev.before_lits = std::move(before);
            const Clause& after = clause(req.clause_id);
            ev.after_lits.assign(after.begin(), after.end());
            strengthening_events_.push_back(std::move(ev));
        }
        if (unsat_) break;
    }
    return applied;
}

bool Solver::clause_locked(const Clause& c) const {
    for (Lit l : c)
        if (value_of(l) == Value::True && reason_[l.var()] == c.id())
            return true;
    return false;
}

void Solver::reduce_db() {
    std::vector<ClauseId> live;
    for (ClauseId id : learnts_)
        if (!clause(id).deleted()) live.push_back(id);
    std::stable_sort(live.begin(), live.end(), [&](ClauseId a, ClauseId b) {
        return clause(a).activity() < clause(b).activity();
    });
    std::size_t target = live.size() / 2;
    std::size_t removed = 0;
    for (ClauseId id : live) {
        if (removed >= target) break;
        const Clause& c = clause(id);
        if (c.size() <= 2 || clause_locked(c)) continue;
        remove_clause(id, true);
        ++removed;
    }
    learnts_.erase(std::remove_if(learnts_.begin(), learnts_.end(),
                                  [&](ClauseId id) {
                                      return clause(id).deleted();
                                  }),
                   learnts_.end());
    ++stats_.db_reductions;
}

void Solver::remove_clause(ClauseId id, bool log_proof) {
    Clause& c = clause_mut(id);
    if (c.size() >= 2) detach_watches(id);
    if (log_proof && proof_) {
        std::vector<Lit> lits(c.begin(), c.end());
        proof_->del(lits);
    }
    c.mark_deleted();
}

std::uint64_t Solver::restart_limit() const {
    if (config_.restart.kind == RestartPolicy::Kind::Luby)
        return luby(stats_.restarts + 1) *
               static_cast<std::uint64_t>(config_.restart.luby_base);
    return static_cast<std::uint64_t>(
        config_.restart.geo_init *
        std::pow(config_.restart.geo_factor,
                 static_cast<double>(stats_.restarts)));
}

bool Solver::budget_exhausted() const {
    if (config_.conflict_budget && stats_.conflicts >= config_.conflict_budget)
        return true;
    if (config_.propagation_budget &&
        stats_.propagations >= config_.propagation_budget)
        return true;
    return false;
}

SolveOutcome Solver::solve() {
    require(loaded_, "Solver::solve: no formula loaded");
    const std::clock_t cpu0 = std::clock();
    const auto wall0 = std::chrono::steady_clock::now();

    auto finish = [&](Verdict v) {
        SolveOutcome out;
        out.verdict = v;
        if (v == Verdict::Sat) {
            out.model.assign(num_vars_ + 1, false);
            for (Var x = 1; x <= num_vars_; ++x)
                out.model[x] = assigns_[x] == Value::True;
        }
        stats_.cpu_seconds = static_cast<double>(std::clock() - cpu0) /
                             CLOCKS_PER_SEC;
        stats_.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          wall0)
                .count();
        if (proof_) proof_->flush();
        out.stats = stats_;
        return out;
    };
    auto time_out = [&] {
        return config_.time_budget_s > 0.0 &&
               std::chrono::duration<double>(
                   std::chrono::steady_clock::now() - wall0)
                       .count() >= config_.time_budget_s;
    };

    if (unsat_) {
        if (proof_) proof_->add_empty();
        return finish(Verdict::Unsat);
    }
    std::uint64_t conflicts_since_restart = 0;
    while (true) {
        for (auto [l, id] : units_) {
            if (value_of(l) == Value::True) continue;
            if (value_of(l) == Value::False && decision_level() > 0)
                backjump(0);
            if (value_of(l) == Value::False) {
                if (proof_) proof_->add_empty();
                unsat_ = true;
                return finish(Verdict::Unsat);
            }
            assign(l, decision_level(), id);
        }
        ClauseId confl = propagate();
        if (confl != kNoClause) {
            ++stats_.conflicts;
            ++conflicts_since_restart;
            if (decision_level() == 0) {
                if (proof_) proof_->add_empty();
                unsat_ = true;
                return finish(Verdict::Unsat);
            }
            AnalysisResult res = analyze(confl);
            if (proof_) proof_->add(res.asserting_clause);

            std::vector<Lit> learnt = res.asserting_clause;
            if (learnt.size() >= 2) {
                // position 1 holds a literal of the backjump level
                std::size_t hi = 1;
                for (std::size_t i = 2; i < learnt.size(); ++i)
                    if (level_[learnt[i].var()] > level_[learnt[hi].var()])
                        hi = i;
                std::swap(learnt[1], learnt[hi]);
            }
            Lit asserting = learnt[0];
            ClauseId learnt_id = add_clause(std::move(learnt), true);

            backjump(res.backjump_level);
            if (config_.ds_mode == DsMode::OnTheFly)
                apply_strengthenings(res.strengthening_requests);
            if (unsat_) {
                return finish(Verdict::Unsat); // strengthened to empty
            }
            if (value_of(asserting) == Value::Undef)
                assign(asserting, decision_level(), learnt_id);
            decay_activities();

            if (budget_exhausted() ||
                (stats_.conflicts % 256 == 0 && time_out()))
                return finish(Verdict::Unknown);
        } else {
            if (config_.check_invariants) check_invariants();
            if (conflicts_since_restart >= restart_limit()) {
                ++stats_.restarts;
                conflicts_since_restart = 0;
                if (decision_level() > 0) backjump(0);
                continue;
            }
            if (learnts_.size() >= static_cast<std::size_t>(max_learnts_)) {
                reduce_db();
                max_learnts_ *= 1.3;
                continue;
            }
            if (all_assigned()) {
                assert([&] {
                    for (const Clause& c : db_) {
                        if (c.deleted()) continue;
                        bool sat = false;
                        for (Lit l : c) sat = sat || value_of(l) == Value::True;
                        if (!sat) return false;
                    }
                    return true;
                }());
                return finish(Verdict::Sat);
            }
            if (time_out()) return finish(Verdict::Unknown);
            new_decision(decide());
        }
    }
}

void Solver::check_invariants() const {
    std::vector<std::size_t> pos(num_vars_ + 1, 0);
    for (std::size_t i = 0; i < trail_.size(); ++i) pos[trail_[i].var()] = i;

    for (const Clause& c : db_) {
        if (c.deleted()) continue;
        int undef = 0;
        bool sat = false;
        for (Lit l : c) {
            Value v = value_of(l);
            if (v == Value::True) sat = true;
            if (v == Value::Undef) ++undef;
        }
        if (!sat && undef == 0)
            throw std::logic_error("invariant: falsified clause not reported");
        if (!sat && undef == 1)
            throw std::logic_error("invariant: unit clause not propagated");
    }

    for (std::size_t i = 0; i < trail_.size(); ++i) {
        Lit l = trail_[i];
        ClauseId r = reason_[l.var()];
        if (r == kNoClause) continue;
        const Clause& c = clause(r);
        int true_count = 0;
        for (Lit q : c) {
            if (q == l) {
                ++true_count;
                continue;
            }
            if (value_of(q) != Value::False)
                throw std::logic_error(
                    "invariant: reason clause literal not false");
            if (level_[q.var()] > level_[l.var()])
                throw std::logic_error(
                    "invariant: reason literal above implied level");
            if (pos[q.var()] > i)
                throw std::logic_error(
                    "invariant: explanation follows implied literal");
        }
        if (true_count != 1 || !c.contains(l))
            throw std::logic_error(
                "invariant: reason clause must contain the implied literal");
    }
}

} // namespace dsat

#include "dsat/drat_check.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <vector>

#include "dsat/lit.hpp"

namespace dsat {

namespace {

// Self-contained clause database with two-watched-literal propagation.
// Deliberately shares no code with the solver.
class Replayer {
  public:
    explicit Replayer(int num_vars) { grow(num_vars); }

    void grow(int num_vars) {
        if (num_vars <= num_vars_) return;
        num_vars_ = num_vars;
        value_.resize(num_vars_ + 1, Value::Undef);
        watches_.resize(2 * static_cast<std::size_t>(num_vars_));
    }

    void add_clause(const std::vector<Lit>& lits) {
        int idx = static_cast<int>(clauses_.size());
        clauses_.push_back({lits, true});
        index_[key(lits)].push_back(idx);
        if (lits.size() >= 2) {
            watch(lits[0], idx);
            watch(lits[1], idx);
        } else if (lits.size() == 1) {
            units_.push_back(idx);
        } else {
            has_empty_ = true;
        }
    }

    bool delete_clause(const std::vector<Lit>& lits) {
        auto it = index_.find(key(lits));
        if (it == index_.end()) return false;
        for (int idx : it->second)
            if (clauses_[idx].active) {
                clauses_[idx].active = false;
                return true;
            }
        return false;
    }

    // Reverse unit propagation: assert the negation of every literal of
    // `lits`, propagate, succeed iff a conflict appears. State is unwound
    // before returning.
    bool rup(const std::vector<Lit>& lits) {
        bool conflict = has_empty_;
        std::size_t mark = trail_.size();
        for (int idx : units_) {
            if (!clauses_[idx].active) continue;
            if (conflict) break;
            conflict = !enqueue(clauses_[idx].lits[0]);
        }
        for (Lit l : lits) {
            if (conflict) break;
            conflict = !enqueue(~l);
        }
        if (!conflict) conflict = propagate();
        while (trail_.size() > mark) {
            value_[trail_.back().var()] = Value::Undef;
            trail_.pop_back();
        }
        qhead_ = 0;
        return conflict;
    }

  private:
    struct Entry {
        std::vector<Lit> lits;
        bool active;
    };

    static std::vector<int> key(const std::vector<Lit>& lits) {
        std::vector<int> k;
        k.reserve(lits.size());
        for (Lit l : lits) k.push_back(l.to_dimacs());
        std::sort(k.begin(), k.end());
        return k;
    }

    void watch(Lit l, int idx) { watches_[(~l).index()].push_back(idx); }

    Value value_of(Lit l) const {
        Value v = value_[l.var()];
        if (v == Value::Undef) return v;
        return (v == Value::True) != l.negative() ? Value::True : Value::False;
    }

    bool enqueue(Lit l) {
        Value v = value_of(l);
        if (v == Value::False) return false;
        if (v == Value::Undef) {
            value_[l.var()] = l.negative() ? Value::False : Value::True;
            trail_.push_back(l);
        }
        return true;
    }

    bool propagate() {
        while (qhead_ < trail_.size()) {
            Lit p = trail_[qhead_++]; // p just became true
            auto& wl = watches_[p.index()];
            std::size_t j = 0;
            for (std::size_t i = 0; i < wl.size(); ++i) {
                int idx = wl[i];
                Entry& e = clauses_[idx];
                if (!e.active) continue; // lazy removal
                Lit false_lit = ~p;
                if (e.lits[0] == false_lit) std::swap(e.lits[0], e.lits[1]);
                if (value_of(e.lits[0]) == Value::True) {
                    wl[j++] = idx;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < e.lits.size(); ++k)
                    if (value_of(e.lits[k]) != Value::False) {
                        std::swap(e.lits[1], e.lits[k]);
                        watch(e.lits[1], idx);
                        moved = true;
                        break;
                    }
                if (moved) continue;
                wl[j++] = idx;
                if (!enqueue(e.lits[0])) { // unit or conflict
                    for (++i; i < wl.size(); ++i) wl[j++] = wl[i];
                    wl.resize(j);
                    return true;
                }
            }
            wl.resize(j);
        }
        return false;
    }

    int num_vars_ = 0;
    std::vector<Entry> clauses_;
    std::vector<int> units_;
    std::map<std::vector<int>, std::vector<int>> index_;
    std::vector<std::vector<int>> watches_; // by index of the false literal
    std::vector<Value> value_;
    std::vector<Lit> trail_;
    std::size_t qhead_ = 0;
    bool has_empty_ = false;
};

} // namespace

DratCheckResult check_drat(const Formula& formula, std::istream& proof) {
    DratCheckResult res;
    Replayer db(formula.num_vars());
    if (formula.trivially_unsat()) {
        res.verified = true;
        return res;
    }
    for (const Clause& c : formula.clauses()) {
        std::vector<Lit> lits(c.begin(), c.end());
        db.add_clause(lits);
    }

    std::string line;
    int lineno = 0;
    bool refuted = false;
    while (std::getline(proof, line)) {
        ++lineno;
        if (line.empty() || line[0] == 'c') continue;
        std::istringstream ls(line);
        std::string first;
        ls >> first;
        bool deletion = (first == "d");
        std::vector<Lit> lits;
        long n;
        if (!deletion) {
            n = std::stol(first);
            if (n != 0) lits.push_back(Lit::from_dimacs(static_cast<int>(n)));
        }
        bool terminated = !deletion && std::stol(first) == 0;
        while (ls >> n) {
            if (n == 0) {
                terminated = true;
                break;
            }
            int v = static_cast<int>(n < 0 ? -n : n);
            db.grow(v);
            lits.push_back(Lit::from_dimacs(static_cast<int>(n)));
        }
        if (!terminated) {
            res.error = "line " + std::to_string(lineno) + ": missing 0";
            return res;
        }
        if (deletion) {
            ++res.deletions;
            if (!db.delete_clause(lits)) {
                res.error = "line " + std::to_string(lineno) +
                            ": deletion of unknown clause";
                return res;
            }
        } else {
            ++res.additions;
            if (!db.rup(lits)) {
                res.error =
                    "line " + std::to_string(lineno) + ": clause is not RUP";
                return res;
            }
            db.add_clause(lits);
            if (lits.empty()) {
                refuted = true;
                break;
            }
        }
    }
    if (!refuted) {
        res.error = "proof does not derive the empty clause";
        return res;
    }
    res.verified = true;
    return res;
}

DratCheckResult check_drat_file(const Formula& formula,
                                const std::string& proof_path) {
    std::ifstream in(proof_path);
    if (!in) {
        DratCheckResult res;
        res.error = "cannot open " + proof_path;
        return res;
    }
    return check_drat(formula, in);
}

} // namespace dsat

#include <doctest.h>

#include <string>

#include "dsat/dimacs.hpp"
#include "dsat/generators.hpp"
#include "dsat/solver.hpp"
#include "support/oracle.hpp"
#include "support/util.hpp"

using namespace dsat;
using testutil::dimacs;
using testutil::lits;

namespace {

const std::string kFixtureDir = DSAT_FIXTURE_DIR;

ClauseId run_script(Solver& s, const Formula& f,
                    std::initializer_list<int> decisions) {
    for (const Clause& c : f.clauses())
        if (c.size() == 1 && s.value_of(c[0]) == Value::Undef)
            s.assign(c[0], 0, c.id());
    ClauseId confl = s.propagate();
    for (int d : decisions) {
        if (confl != kNoClause) break;
        s.new_decision(Lit::from_dimacs(d));
        confl = s.propagate();
    }
    return confl;
}

} // namespace

TEST_CASE("worked example: full first-UIP derivation") {
    Formula f = parse_dimacs_file(kFixtureDir + "/example1.cnf");
    SolverConfig cfg;
    cfg.log_derivations = true;
    Solver s(cfg);
    s.load(f);
    ClauseId confl = run_script(s, f, {15, 11, 12, 14, 16});
    REQUIRE(confl == 8);
    AnalysisResult res = s.analyze(confl);

    CHECK(res.derivation_length == 7);
    CHECK(dimacs(res.derived_clause) ==
          std::vector<int>{-12, -11, -6, -1});
    CHECK(res.derived_clause[0].to_dimacs() == -1); // the UIP literal
    CHECK(dimacs(res.asserting_clause) == dimacs(res.derived_clause));
    CHECK(res.backjump_level == 3);

    REQUIRE(res.strengthening_requests.size() == 1);
    const StrengtheningRequest& req = res.strengthening_requests[0];
    CHECK(req.step == 3);
    CHECK(req.clause_id == 5);
    CHECK(req.remove_literal.to_dimacs() == 7);
    CHECK(req.resolvent_size == 3);

    REQUIRE(s.conflict_records().size() == 1);
    const ConflictRecord& rec = s.conflict_records().back();
    CHECK(rec.log.conflict_id == 8);
    REQUIRE(rec.log.steps.size() == 7);
    std::vector<int> pivots, reasons;
    for (const DerivationStep& st : rec.log.steps) {
        pivots.push_back(st.pivot.to_dimacs());
        reasons.push_back(static_cast<int>(st.reason_id));
    }
    CHECK(pivots == std::vector<int>{-9, -8, -7, -5, -4, -3, -2});
    CHECK(reasons == std::vector<int>{7, 6, 5, 4, 3, 2, 1});
    CHECK(dimacs(rec.log.steps[0].resolvent_lits) ==
          std::vector<int>{-8, -7, -5});
    CHECK(dimacs(rec.log.steps[1].resolvent_lits) ==
          std::vector<int>{-7, -6, -5});
    CHECK(dimacs(rec.log.steps[2].resolvent_lits) ==
          std::vector<int>{-6, -5, -4});
    CHECK(dimacs(rec.log.steps[6].resolvent_lits) ==
          std::vector<int>{-12, -11, -6, -1});
}

TEST_CASE("analyze at level 0 is a contract violation") {
    Formula f = parse_dimacs_string("p cnf 2 3\n1 0\n-1 2 0\n-1 -2 0\n");
    Solver s(SolverConfig{});
    s.load(f);
    ClauseId confl = run_script(s, f, {});
    REQUIRE(confl != kNoClause);
    CHECK_THROWS_AS(s.analyze(confl), std::logic_error);
}

TEST_CASE("immediate UIP: one-step derivation") {
    // deciding -1 propagates 2 from clause 1 and falsifies clause 2
    Formula f = parse_dimacs_string("p cnf 2 2\n1 2 0\n1 -2 0\n");
    Solver s(SolverConfig{});
    s.load(f);
    ClauseId confl = run_script(s, f, {-1});
    REQUIRE(confl == 2);
    AnalysisResult res = s.analyze(confl);
    CHECK(res.derivation_length == 1);
    CHECK(dimacs(res.asserting_clause) == std::vector<int>{1});
    CHECK(res.backjump_level == 0);
    // the lone resolution already subsumes clause 1
    REQUIRE(res.strengthening_requests.size() == 1);
    CHECK(res.strengthening_requests[0].clause_id == 1);
    CHECK(res.strengthening_requests[0].remove_literal.to_dimacs() == 2);
}

TEST_CASE("conflict under a single decision asserts its negation") {
    Formula f = parse_dimacs_string("p cnf 2 2\n-1 2 0\n-1 -2 0\n");
    Solver s(SolverConfig{});
    s.load(f);
    ClauseId confl = run_script(s, f, {1});
    REQUIRE(confl == 2);
    AnalysisResult res = s.analyze(confl);
    CHECK(dimacs(res.asserting_clause) == std::vector<int>{-1});
    CHECK(res.asserting_clause[0].to_dimacs() == -1);
    CHECK(res.backjump_level == 0);
}

TEST_CASE("minimize removes a literal explained by the clause") {
    Formula f = parse_dimacs_string("p cnf 3 1\n-1 2 0\n");
    Solver s(SolverConfig{});
    s.load(f);
    s.new_decision(Lit::from_dimacs(1));
    REQUIRE(s.propagate() == kNoClause);
    REQUIRE(s.value_of(Lit::from_dimacs(2)) == Value::True);
    std::vector<Lit> out = s.minimize(lits({3, -1, -2}));
    CHECK(dimacs(out) == std::vector<int>{-1, 3});
    CHECK(out[0].to_dimacs() == 3); // asserting literal stays first
}

TEST_CASE("minimize keeps literals blocked by an outside decision") {
    Formula f = parse_dimacs_string("p cnf 4 1\n-1 -4 2 0\n");
    Solver s(SolverConfig{});
    s.load(f);
    s.new_decision(Lit::from_dimacs(1));
    s.new_decision(Lit::from_dimacs(4));
    REQUIRE(s.propagate() == kNoClause);
    // reason(2) mentions the decision 4, which the clause does not contain
    std::vector<Lit> out = s.minimize(lits({3, -2, -1}));
    CHECK(dimacs(out) == std::vector<int>{-2, -1, 3});
}

TEST_CASE("compute_backjump_level") {
    Formula f = parse_dimacs_file(kFixtureDir + "/example1.cnf");
    Solver s(SolverConfig{});
    s.load(f);
    ClauseId confl = run_script(s, f, {15, 11, 12, 14, 16});
    REQUIRE(confl == 8);
    // levels of -1, -11, -12, -6 are 5, 2, 3, 3
    CHECK(s.compute_backjump_level(lits({-1, -11, -12, -6})) == 3);
    CHECK(s.compute_backjump_level(lits({-1, -11})) == 2);
    // two conflict-level literals: not asserting
    CHECK_THROWS_AS(s.compute_backjump_level(lits({-9, -8})),
                    std::logic_error);
    // satisfied literal: not falsified
    CHECK_THROWS_AS(s.compute_backjump_level(lits({9, -11})),
                    std::logic_error);
}

TEST_CASE("minimized clauses stay asserting and implied (random corpus)") {
    int conflicts_seen = 0;
    int proper_shrinks = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        Formula f = generate_random_3cnf(12, 51, seed);
        SolverConfig cfg;
        cfg.log_derivations = true;
        Solver s(cfg);
        s.load(f);
        s.solve();
        for (const ConflictRecord& rec : s.conflict_records()) {
            ++conflicts_seen;
            REQUIRE_FALSE(rec.minimized_clause.empty());
            CHECK(rec.minimized_clause[0] == rec.derived_clause[0]);
            for (Lit l : rec.minimized_clause) {
                bool in_derived = false;
                for (Lit d : rec.derived_clause) in_derived |= d == l;
                CHECK(in_derived);
                // falsified under the conflict-time assignment
                bool falsified = false;
                for (Lit t : rec.trail_snapshot) falsified |= t == ~l;
                CHECK(falsified);
            }
            if (rec.minimized_clause.size() < rec.derived_clause.size())
                ++proper_shrinks;
            CHECK(oracle::implies_clause(f, rec.minimized_clause));
        }
    }
    CHECK(conflicts_seen > 100);
    CHECK(proper_shrinks > 0); // minimization must actually fire somewhere
}

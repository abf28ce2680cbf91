#include "dsat/commands.hpp"

#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "dsat/dimacs.hpp"
#include "dsat/drat.hpp"

namespace dsat {

std::optional<DsMode> parse_ds_mode(const std::string& s) {
    if (s == "off") return DsMode::Off;
    if (s == "otf") return DsMode::OnTheFly;
    if (s == "general") return DsMode::GeneralOracle;
    return std::nullopt;
}

std::string ds_mode_name(DsMode m) {
    switch (m) {
        case DsMode::Off: return "off";
        case DsMode::OnTheFly: return "otf";
        default: return "general";
    }
}

std::optional<RestartPolicy> parse_restart(const std::string& s) {
    RestartPolicy p;
    auto colon = s.find(':');
    std::string kind = s.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : s.substr(colon + 1);
    try {
        if (kind == "luby") {
            p.kind = RestartPolicy::Kind::Luby;
            if (!arg.empty()) p.luby_base = std::stoi(arg);
            if (p.luby_base < 1) return std::nullopt;
        } else if (kind == "geo") {
            p.kind = RestartPolicy::Kind::Geometric;
            if (!arg.empty()) p.geo_factor = std::stod(arg);
            if (p.geo_factor <= 1.0) return std::nullopt;
        } else {
            return std::nullopt;
        }
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return p;
}

std::string run_record_header() {
    return "instance,mode,verdict,cpu_s,conflicts,decisions,propagations,"
           "subsumed_orig,subsumed_learnt,literals_removed,seed";
}

std::string to_csv(const RunRecord& r) {
    std::ostringstream os;
    os << r.instance << ',' << r.mode << ',' << r.verdict << ','
       << std::setprecision(6) << std::fixed << r.cpu_s << ',' << r.conflicts
       << ',' << r.decisions << ',' << r.propagations << ',' << r.subsumed_orig
       << ',' << r.subsumed_learnt << ',' << r.literals_removed << ','
       << r.seed;
    return os.str();
}

std::optional<RunRecord> parse_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    if (fields.size() != 11) return std::nullopt;
    try {
        RunRecord r;
        r.instance = fields[0];
        r.mode = fields[1];
        r.verdict = fields[2];
        r.cpu_s = std::stod(fields[3]);
        r.conflicts = std::stoull(fields[4]);
        r.decisions = std::stoull(fields[5]);
        r.propagations = std::stoull(fields[6]);
        r.subsumed_orig = std::stoull(fields[7]);
        r.subsumed_learnt = std::stoull(fields[8]);
        r.literals_removed = std::stoull(fields[9]);
        r.seed = std::stoull(fields[10]);
        return r;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

namespace {

std::string verdict_word(Verdict v) {
    switch (v) {
        case Verdict::Sat: return "SATISFIABLE";
        case Verdict::Unsat: return "UNSATISFIABLE";
        default: return "UNKNOWN";
    }
}

void print_stats(const Stats& s, std::ostream& out) {
    out << "c conflicts        : " << s.conflicts << '\n'
        << "c decisions        : " << s.decisions << '\n'
        << "c propagations     : " << s.propagations << '\n'
        << "c restarts         : " << s.restarts << '\n'
        << "c learnt clauses   : " << s.learnt_clauses << '\n'
        << "c db reductions    : " << s.db_reductions << '\n'
        << "c subsumed orig    : " << s.subsumed_original << '\n'
        << "c subsumed learnt  : " << s.subsumed_learnt << '\n'
        << "c literals removed : " << s.literals_removed << '\n'
        << "c stale requests   : " << s.stale_requests << '\n'
        << "c cpu seconds      : " << s.cpu_seconds << '\n'
        << "c wall seconds     : " << s.wall_seconds << '\n';
}

nlohmann::json stats_json(const Stats& s) {
    return {{"conflicts", s.conflicts},
            {"decisions", s.decisions},
            {"propagations", s.propagations},
            {"restarts", s.restarts},
            {"learnt_clauses", s.learnt_clauses},
            {"db_reductions", s.db_reductions},
            {"subsumed_original", s.subsumed_original},
            {"subsumed_learnt", s.subsumed_learnt},
            {"literals_removed", s.literals_removed},
            {"stale_requests", s.stale_requests},
            {"cpu_seconds", s.cpu_seconds},
            {"wall_seconds", s.wall_seconds}};
}

RunRecord record_from(const std::string& instance, DsMode mode,
                      const SolveOutcome& outcome, std::uint64_t seed) {
    RunRecord r;
    r.instance = instance;
    r.mode = ds_mode_name(mode);
    r.verdict = to_string(outcome.verdict);
    r.cpu_s = outcome.stats.cpu_seconds;
    r.conflicts = outcome.stats.conflicts;
    r.decisions = outcome.stats.decisions;
    r.propagations = outcome.stats.propagations;
    r.subsumed_orig = outcome.stats.subsumed_original;
    r.subsumed_learnt = outcome.stats.subsumed_learnt;
    r.literals_removed = outcome.stats.literals_removed;
    r.seed = seed;
    return r;
}

} // namespace

int solve_command(const SolveOptions& opts, std::ostream& out,
                  std::ostream& err) {
    Formula f;
    try {
        f = parse_dimacs_file(opts.path);
    } catch (const std::exception& e) {
        err << "error: " << opts.path << ": " << e.what() << '\n';
        return kExitError;
    }

    Solver solver(opts.config);
    DratWriter proof;
    if (!opts.proof_path.empty()) {
        if (!proof.open(opts.proof_path)) {
            err << "error: cannot open proof file " << opts.proof_path << '\n';
            return kExitError;
        }
        solver.set_proof(&proof);
    }
    solver.load(f);
    SolveOutcome outcome = solver.solve();

    print_stats(outcome.stats, out);
    if (proof.incomplete()) out << "c proof incomplete (sink I/O failure)\n";
    if (opts.stats_json) out << stats_json(outcome.stats).dump() << '\n';

    out << "s " << verdict_word(outcome.verdict) << '\n';
    if (outcome.verdict == Verdict::Sat) {
        out << 'v';
        for (Var x = 1; x <= f.num_vars(); ++x)
            out << ' ' << (outcome.model[x] ? x : -x);
        out << " 0\n";
        return kExitSat;
    }
    return outcome.verdict == Verdict::Unsat ? kExitUnsat : kExitUnknown;
}

int bench_command(const BenchOptions& opts, std::ostream& csv,
                  std::ostream& out, std::ostream& err) {
    std::ifstream manifest(opts.manifest_path);
    if (!manifest) {
        err << "error: cannot open manifest " << opts.manifest_path << '\n';
        return kExitError;
    }
    std::vector<std::string> instances;
    std::string line;
    while (std::getline(manifest, line)) {
        if (line.empty() || line[0] == '#') continue;
        instances.push_back(line);
    }

    csv << run_record_header() << '\n';
    std::map<std::string, double> total_cpu;
    std::map<std::string, int> faster;
    for (const std::string& inst : instances) {
        std::vector<RunRecord> rows;
        for (DsMode mode : opts.modes) {
            SolverConfig cfg = opts.config;
            cfg.ds_mode = mode;
            RunRecord r;
            try {
                Formula f = parse_dimacs_file(inst);
                Solver solver(cfg);
                solver.load(f);
                r = record_from(inst, mode, solver.solve(), cfg.seed);
            } catch (const std::exception& e) {
                err << "error: " << inst << " (" << ds_mode_name(mode)
                    << "): " << e.what() << '\n';
                r.instance = inst;
                r.mode = ds_mode_name(mode);
                r.verdict = "UNKNOWN";
                r.seed = cfg.seed;
            }
            csv << to_csv(r) << '\n';
            total_cpu[r.mode] += r.cpu_s;
            rows.push_back(r);
        }
        if (rows.size() == 2) {
            faster[rows[rows[0].cpu_s <= rows[1].cpu_s ? 0 : 1].mode] += 1;
        }
    }

    out << "c instances: " << instances.size() << '\n';
    for (auto& [mode, cpu] : total_cpu)
        out << "c total cpu (" << mode << "): " << cpu << " s\n";
    for (auto& [mode, n] : faster)
        out << "c faster (" << mode << "): " << n << " instances\n";
    return 0;
}

int replay_command(const ReplayOptions& opts, std::ostream& out,
                   std::ostream& err) {
    Formula f;
    try {
        f = parse_dimacs_file(opts.cnf_path);
    } catch (const std::exception& e) {
        err << "error: " << opts.cnf_path << ": " << e.what() << '\n';
        return kExitError;
    }
    std::ifstream script(opts.script_path);
    if (!script) {
        err << "error: cannot open script " << opts.script_path << '\n';
        return kExitError;
    }
    std::vector<Lit> decisions;
    long n;
    int position = 0;
    while (script >> n) {
        ++position;
        if (n == 0 || std::abs(n) > f.num_vars()) {
            err << "error: decision " << position << ": literal " << n
                << " out of range\n";
            return kExitError;
        }
        decisions.push_back(Lit::from_dimacs(static_cast<int>(n)));
    }

    SolverConfig cfg;
    cfg.ds_mode = DsMode::OnTheFly;
    cfg.log_derivations = true;
    Solver solver(cfg);
    solver.load(f);
    if (f.trivially_unsat()) {
        out << "conflict at level 0\n";
        return 0;
    }

    // root units first, then the scripted decisions
    ClauseId confl = kNoClause;
    for (const Clause& c : f.clauses())
        if (c.size() == 1 && solver.value_of(c[0]) == Value::Undef)
            solver.assign(c[0], 0, c.id());
    confl = solver.propagate();

    std::size_t next = 0;
    while (confl == kNoClause && next < decisions.size()) {
        Lit d = decisions[next++];
        if (solver.value_of(d) != Value::Undef) {
            err << "error: decision " << next << ": variable " << d.var()
                << " already assigned\n";
            return kExitError;
        }
        solver.new_decision(d);
        confl = solver.propagate();
    }

    if (confl == kNoClause) {
        out << "no conflict\ntrail";
        for (Lit l : solver.trail()) out << ' ' << l.to_dimacs();
        out << '\n';
        return 0;
    }
    if (solver.decision_level() == 0) {
        out << "conflict at level 0\n";
        return 0;
    }

    AnalysisResult res = solver.analyze(confl);
    const ConflictRecord& rec = solver.conflict_records().back();
    out << "conflict clause " << rec.log.conflict_id << " level "
        << solver.decision_level() << '\n';
    int i = 0;
    for (const DerivationStep& s : rec.log.steps) {
        out << "step " << ++i << " pivot " << s.pivot.to_dimacs() << " reason "
            << s.reason_id << " resolvent";
        for (Lit l : s.resolvent_lits) out << ' ' << l.to_dimacs();
        out << '\n';
    }
    out << "asserting";
    for (Lit l : res.derived_clause) out << ' ' << l.to_dimacs();
    out << '\n';
    out << "minimized";
    for (Lit l : res.asserting_clause) out << ' ' << l.to_dimacs();
    out << '\n';
    out << "backjump " << res.backjump_level << '\n';
    for (const StrengtheningRequest& req : res.strengthening_requests)
        out << "subsume step " << req.step << " clause " << req.clause_id
            << " remove " << req.remove_literal.to_dimacs() << '\n';
    return 0;
}

} // namespace dsat

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "dsat/commands.hpp"
#include "dsat/dimacs.hpp"
#include "dsat/drat_check.hpp"
#include "dsat/generators.hpp"

namespace {

struct CommonFlags {
    std::string ds = "otf";
    std::string restart = "luby:32";
    std::uint64_t seed = 0;
    std::uint64_t conflict_budget = 0;
    double time_budget = 0.0;
};

void add_common(CLI::App* cmd, CommonFlags& fl) {
    cmd->add_option("--ds", fl.ds, "dynamic subsumption mode: off|otf");
    cmd->add_option("--restart", fl.restart,
                    "restart policy: luby:<base> or geo:<factor>");
    cmd->add_option("--seed", fl.seed, "seed recorded in stats/CSV");
    cmd->add_option("--conflict-budget", fl.conflict_budget,
                    "stop with UNKNOWN after this many conflicts");
    cmd->add_option("--time-budget", fl.time_budget,
                    "stop with UNKNOWN after this many seconds");
}

bool fill_config(const CommonFlags& fl, dsat::SolverConfig& cfg,
                 std::ostream& err) {
    auto ds = dsat::parse_ds_mode(fl.ds);
    if (!ds) {
        err << "error: unknown ds mode '" << fl.ds << "'\n";
        return false;
    }
    auto restart = dsat::parse_restart(fl.restart);
    if (!restart) {
        err << "error: bad restart policy '" << fl.restart << "'\n";
        return false;
    }
    cfg.ds_mode = *ds;
    cfg.restart = *restart;
    cfg.seed = fl.seed;
    cfg.conflict_budget = fl.conflict_budget;
    cfg.time_budget_s = fl.time_budget;
    return true;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"dsat: CDCL SAT solver with dynamic clause subsumption"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "solve a DIMACS CNF instance");
    std::string solve_path, proof_path;
    bool stats_json = false;
    CommonFlags solve_flags;
    solve->add_option("instance", solve_path, "DIMACS CNF file")->required();
    solve->add_option("--proof", proof_path, "write a DRAT proof here");
    solve->add_flag("--stats-json", stats_json, "print stats as JSON");
    add_common(solve, solve_flags);

    // bench
    auto* bench = app.add_subcommand("bench", "run a manifest of instances");
    std::string manifest_path, csv_path, modes_arg = "off,otf";
    CommonFlags bench_flags;
    bench->add_option("manifest", manifest_path,
                      "file listing one CNF path per line")
        ->required();
    bench->add_option("--out", csv_path, "CSV output path (default stdout)");
    bench->add_option("--modes", modes_arg, "comma-separated ds modes to run");
    add_common(bench, bench_flags);

    // replay
    auto* replay =
        app.add_subcommand("replay", "replay a decision script to a conflict");
    std::string replay_cnf, replay_script;
    replay->add_option("instance", replay_cnf, "DIMACS CNF file")->required();
    replay->add_option("script", replay_script,
                       "decision script, one literal per line")
        ->required();

    // gen
    auto* gen = app.add_subcommand("gen", "generate benchmark instances");
    auto* gen_php = gen->add_subcommand("php", "pigeonhole php(n+1,n)");
    int holes = 5;
    std::string gen_out;
    gen_php->add_option("holes", holes, "number of holes")->required();
    gen_php->add_option("-o,--out", gen_out, "output path (default stdout)");
    auto* gen_rand = gen->add_subcommand("rand3", "uniform random 3-CNF");
    int rand_vars = 20, rand_clauses = 0;
    double rand_ratio = 4.26;
    std::uint64_t rand_seed = 1;
    gen_rand->add_option("vars", rand_vars, "number of variables")->required();
    gen_rand->add_option("--clauses", rand_clauses,
                         "number of clauses (overrides --ratio)");
    gen_rand->add_option("--ratio", rand_ratio, "clause/variable ratio");
    gen_rand->add_option("--seed", rand_seed, "generator seed");
    gen_rand->add_option("-o,--out", gen_out, "output path (default stdout)");
    gen->require_subcommand(1);

    // check
    auto* check = app.add_subcommand("check", "verify a DRAT proof");
    std::string check_cnf, check_proof;
    check->add_option("instance", check_cnf, "DIMACS CNF file")->required();
    check->add_option("proof", check_proof, "DRAT proof file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) {
            dsat::SolveOptions opts;
            opts.path = solve_path;
            opts.proof_path = proof_path;
            opts.stats_json = stats_json;
            if (!fill_config(solve_flags, opts.config, std::cerr))
                return dsat::kExitError;
            return dsat::solve_command(opts, std::cout, std::cerr);
        }
        if (bench->parsed()) {
            dsat::BenchOptions opts;
            opts.manifest_path = manifest_path;
            if (!fill_config(bench_flags, opts.config, std::cerr))
                return dsat::kExitError;
            opts.modes.clear();
            std::stringstream ms(modes_arg);
            std::string tok;
            while (std::getline(ms, tok, ',')) {
                auto m = dsat::parse_ds_mode(tok);
                if (!m) {
                    std::cerr << "error: unknown ds mode '" << tok << "'\n";
                    return dsat::kExitError;
                }
                opts.modes.push_back(*m);
            }
            if (!csv_path.empty()) {
                std::ofstream csv(csv_path);
                if (!csv) {
                    std::cerr << "error: cannot open " << csv_path << '\n';
                    return dsat::kExitError;
                }
                return dsat::bench_command(opts, csv, std::cout, std::cerr);
            }
            return dsat::bench_command(opts, std::cout, std::cout, std::cerr);
        }
        if (replay->parsed()) {
            dsat::ReplayOptions opts;
            opts.cnf_path = replay_cnf;
            opts.script_path = replay_script;
            return dsat::replay_command(opts, std::cout, std::cerr);
        }
        if (gen->parsed()) {
            dsat::Formula f;
            if (gen_php->parsed()) {
                f = dsat::generate_pigeonhole(holes);
            } else {
                int m = rand_clauses > 0
                            ? rand_clauses
                            : static_cast<int>(rand_ratio * rand_vars + 0.5);
                f = dsat::generate_random_3cnf(rand_vars, m, rand_seed);
            }
            if (gen_out.empty()) {
                dsat::write_dimacs(f, std::cout);
            } else {
                std::ofstream out(gen_out);
                if (!out) {
                    std::cerr << "error: cannot open " << gen_out << '\n';
                    return dsat::kExitError;
                }
                dsat::write_dimacs(f, out);
            }
            return 0;
        }
        if (check->parsed()) {
            dsat::Formula f = dsat::parse_dimacs_file(check_cnf);
            dsat::DratCheckResult res = dsat::check_drat_file(f, check_proof);
            if (res.verified) {
                std::cout << "s VERIFIED (" << res.additions << " additions, "
                          << res.deletions << " deletions)\n";
                return 0;
            }
            std::cout << "s NOT VERIFIED: " << res.error << '\n';
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return dsat::kExitError;
    }
    return dsat::kExitError;
}

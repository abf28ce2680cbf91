#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dsat/solver.hpp"

namespace dsat {

// SAT-competition style exit codes
inline constexpr int kExitSat = 10;
inline constexpr int kExitUnsat = 20;
inline constexpr int kExitUnknown = 0;
inline constexpr int kExitError = 1;

std::optional<DsMode> parse_ds_mode(const std::string& s);
std::optional<RestartPolicy> parse_restart(const std::string& s);
std::string ds_mode_name(DsMode m);

struct RunRecord {
    std::string instance;
    std::string mode;
    std::string verdict;
    double cpu_s = 0.0;
    std::uint64_t conflicts = 0;
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0;
    std::uint64_t subsumed_orig = 0;
    std::uint64_t subsumed_learnt = 0;
    std::uint64_t literals_removed = 0;
    std::uint64_t seed = 0;
};

std::string run_record_header();
std::string to_csv(const RunRecord& r);
std::optional<RunRecord> parse_csv_row(const std::string& line);

struct SolveOptions {
    std::string path;
    SolverConfig config;
    std::string proof_path; // empty = proof logging off
    bool stats_json = false;
};

int solve_command(const SolveOptions& opts, std::ostream& out,
                  std::ostream& err);

struct BenchOptions {
    std::string manifest_path;
    std::vector<DsMode> modes = {DsMode::Off, DsMode::OnTheFly};
    SolverConfig config; // ds_mode field is overridden per run
};

// Writes CSV rows to `csv`, a human summary to `out`. Per-instance failures
// become UNKNOWN rows and the run continues.
int bench_command(const BenchOptions& opts, std::ostream& csv,
                  std::ostream& out, std::ostream& err);

struct ReplayOptions {
    std::string cnf_path;
    std::string script_path; // one integer literal per line
};

int replay_command(const ReplayOptions& opts, std::ostream& out,
                   std::ostream& err);

} // namespace dsat

#include "dsat/dimacs.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace dsat {

namespace {

bool is_integer(const std::string& tok) {
    std::size_t i = (tok[0] == '-') ? 1 : 0;
    if (i == tok.size()) return false;
    for (; i < tok.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
    return true;
}

} // namespace

Formula parse_dimacs(std::istream& in) {
    Formula f;
    bool saw_header = false;
    int declared_vars = 0;
    std::vector<Lit> cur;
    bool in_clause = false;
    int lineno = 0;
    int clause_line = 0;

    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == 'c') continue;
        if (line[0] == 'p') {
            if (saw_header) throw ParseError(lineno, "duplicate header");
            std::istringstream hs(line);
            std::string p, fmt;
            long nv = -1, nc = -1;
            hs >> p >> fmt >> nv >> nc;
            if (hs.fail() || fmt != "cnf" || nv < 0 || nc < 0)
                throw ParseError(lineno, "malformed header: " + line);
            declared_vars = static_cast<int>(nv);
            f.set_num_vars(declared_vars);
            saw_header = true;
            continue;
        }

        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) {
            if (!saw_header) throw ParseError(lineno, "clause before header");
            if (!is_integer(tok))
                throw ParseError(lineno, "non-integer token '" + tok + "'");
            long n = std::stol(tok);
            if (n == 0) {
                f.add_clause(std::move(cur));
                cur.clear();
                in_clause = false;
            } else {
                if (n > declared_vars || n < -declared_vars)
                    throw ParseError(lineno, "literal " + tok +
                                                 " out of range (header "
                                                 "declares " +
                                                 std::to_string(declared_vars) +
                                                 " variables)");
                if (!in_clause) clause_line = lineno;
                in_clause = true;
                cur.push_back(Lit::from_dimacs(static_cast<int>(n)));
            }
        }
    }
    if (in_clause)
        throw ParseError(clause_line, "unterminated clause (missing 0)");
    if (!saw_header) throw ParseError(lineno, "missing 'p cnf' header");
    // header var count wins over the clause maximum (unused vars are allowed)
    if (declared_vars > f.num_vars()) f.set_num_vars(declared_vars);
    return f;
}

Formula parse_dimacs_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_dimacs(in);
}

Formula parse_dimacs_string(const std::string& text) {
    std::istringstream in(text);
    return parse_dimacs(in);
}

void write_dimacs(const Formula& f, std::ostream& out) {
    std::size_t n = f.trivially_unsat() ? 1 : 0;
    for (const Clause& c : f.clauses())
        if (!c.deleted()) ++n;
    out << "p cnf " << f.num_vars() << ' ' << n << '\n';
    for (const Clause& c : f.clauses()) {
        if (c.deleted()) continue;
        for (Lit l : c) out << l.to_dimacs() << ' ';
        out << "0\n";
    }
    if (f.trivially_unsat()) out << "0\n";
}

} // namespace dsat

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "dsat/formula.hpp"

namespace dsat {

class ParseError : public std::runtime_error {
  public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

Formula parse_dimacs(std::istream& in);
Formula parse_dimacs_file(const std::string& path);
Formula parse_dimacs_string(const std::string& text);

void write_dimacs(const Formula& f, std::ostream& out);

} // namespace dsat

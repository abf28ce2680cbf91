#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace dsat {

using Var = int; // 1-based, matching DIMACS

enum class Value : std::uint8_t { False = 0, True = 1, Undef = 2 };

inline Value operator!(Value v) {
    if (v == Value::Undef) return Value::Undef;
    return v == Value::True ? Value::False : Value::True;
}

// A literal over a 1-based variable. Encoded as 2*(var-1)+sign so it can
// index watch lists directly.
class Lit {
  public:
    Lit() = default;
    Lit(Var v, bool negative) : code_((v - 1) * 2 + (negative ? 1 : 0)) {
        if (v < 1) throw std::invalid_argument("Lit: variable must be >= 1");
    }

    static Lit from_dimacs(int n) {
        if (n == 0) throw std::invalid_argument("Lit: 0 is not a literal");
        return n > 0 ? Lit(n, false) : Lit(-n, true);
    }

    Var var() const { return code_ / 2 + 1; }
    bool negative() const { return code_ & 1; }
    int index() const { return code_; }
    int to_dimacs() const { return negative() ? -var() : var(); }

    Lit operator~() const {
        Lit l;
        l.code_ = code_ ^ 1;
        return l;
    }

    bool operator==(const Lit&) const = default;
    auto operator<=>(const Lit&) const = default;

  private:
    int code_ = 0;
};

inline std::string to_string(Lit l) { return std::to_string(l.to_dimacs()); }

} // namespace dsat

template <> struct std::hash<dsat::Lit> {
    std::size_t operator()(dsat::Lit l) const noexcept {
        return std::hash<int>()(l.index());
    }
};

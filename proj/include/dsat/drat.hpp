#pragma once

#include <fstream>
#include <span>
#include <string>

#include "dsat/lit.hpp"

namespace dsat {

// Plain-text DRAT sink. Disabled instances swallow every call, so the solve
// path never branches on proof logging.
class DratWriter {
  public:
    DratWriter() = default; // disabled

    bool open(const std::string& path) {
        out_.open(path);
        enabled_ = static_cast<bool>(out_);
        return enabled_;
    }

    bool enabled() const { return enabled_; }
    bool incomplete() const { return incomplete_; }

    void add(std::span<const Lit> lits) { emit("", lits); }
    void del(std::span<const Lit> lits) { emit("d ", lits); }
    void add_empty() { emit("", {}); }

    void flush() {
        if (enabled_) out_.flush();
    }

  private:
    void emit(const char* prefix, std::span<const Lit> lits) {
        if (!enabled_) return;
        out_ << prefix;
        for (Lit l : lits) out_ << l.to_dimacs() << ' ';
        out_ << "0\n";
        if (!out_) incomplete_ = true; // solve continues, proof unusable
    }

    std::ofstream out_;
    bool enabled_ = false;
    bool incomplete_ = false;
};

} // namespace dsat

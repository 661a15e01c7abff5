#include "ipl/interp.hpp"

#include <cctype>
#include <ostream>
#include <sstream>

namespace ipl {

std::optional<TraceLevel> parse_trace_level(const std::string& s) {
    if (s == "off") return TraceLevel::off;
    if (s == "calls") return TraceLevel::calls;
    if (s == "cells") return TraceLevel::cells;
    if (s == "full") return TraceLevel::full;
    return std::nullopt;
}

const char* trace_level_name(TraceLevel t) {
    switch (t) {
    case TraceLevel::off: return "off";
    case TraceLevel::calls: return "calls";
    case TraceLevel::cells: return "cells";
    case TraceLevel::full: return "full";
    }
    return "?";
}

Instruction decode(const Machine& m, SymbolRef at) {
    const Cell& c = m.cell(at);
    if (c.p > 7)
        throw MachineError(Fault::decode, "cell " + m.name(at) + ": P=" + std::to_string(c.p) + " out of range");
    if (c.q > 2)
        throw MachineError(Fault::decode, "cell " + m.name(at) + ": Q=" + std::to_string(c.q) + " out of range");
    return {c.p, c.q, c.symb, c.link};
}

static bool looks_like_j(const std::string& n) {
    if (n.size() < 2 || n[0] != 'J') return false;
    for (std::size_t i = 1; i < n.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(n[i]))) return false;
    return true;
}

void Vm::unwind() {
    SymbolRef h1 = mem.H(1);
    while (mem.depth(h1) > frames_.back().depth) mem.restore(h1);
    routines_.resize(frames_.back().routines);
    frames_.pop_back();
}

Vm::Vm(MachineConfig config, const JTable* jt) : mem(config), jt_(jt ? jt : &standard_jtable()) {}

void Vm::attach_trace(TraceLevel level, std::ostream* sink) {
    level_ = sink ? level : TraceLevel::off;
    sink_ = sink;
}

void Vm::note(const std::string& line) {
    if (sink_) *sink_ << line << '\n';
}

SymbolRef Vm::resolve(int q, SymbolRef symb) const {
    for (int i = 0; i < q; ++i) {
        if (!mem.live(symb))
            throw MachineError(Fault::no_cell, "operand " + mem.name(symb) + " names no cell (Q=" +
                                                   std::to_string(q) + ")");
        symb = mem.cell(symb).symb;
    }
    return symb;
}

std::string Vm::h1_chain() const {
    const Cell& h1 = mem.cell(mem.H(1));
    std::string out = mem.name(h1.symb);
    for (auto it = h1.pushdown.rbegin(); it != h1.pushdown.rend(); ++it)
        out += " <- " + mem.name(it->symb);
    return out;
}

void Vm::fail(const MachineError& e, SymbolRef at) {
    if (e.located) throw e;
    std::ostringstream os;
    os << e.what() << " [cell " << mem.name(at) << ", cycle " << mem.cycles << ", H1 " << h1_chain() << "]";
    MachineError out(e.fault(), os.str());
    out.located = true;
    throw out;
}

void Vm::call(SymbolRef routine) {
    mem.preserve(mem.H(1));
    mem.cell(mem.H(1)).symb = routine;
    routines_.push_back(routine);
    if (level_ != TraceLevel::off)
        note("CALL " + mem.name(routine) + " depth=" + std::to_string(mem.depth(mem.H(1))));
}

StepOutcome Vm::advance(SymbolRef next) {
    SymbolRef h1 = mem.H(1);
    std::size_t base = frames_.empty() ? 0 : frames_.back().depth;
    StepOutcome out = StepOutcome::continued;
    while (next == mem.terminator() || next.blank()) {
        if (mem.depth(h1) <= base) {
            mem.cell(h1).symb = mem.terminator();
            return StepOutcome::halted;
        }
        if (level_ != TraceLevel::off && !routines_.empty())
            note("RETURN " + mem.name(routines_.back()) + " depth=" + std::to_string(mem.depth(h1)));
        if (!routines_.empty()) routines_.pop_back();
        mem.restore(h1);
        out = StepOutcome::routine_returned;
        if (mem.depth(h1) == base)
            return out;
        next = mem.cell(mem.cell(h1).symb).link;
    }
    mem.cell(h1).symb = next;
    return out;
}

StepOutcome Vm::step() {
    if (mem.halted) return StepOutcome::halted;
    SymbolRef at = mem.cell(mem.H(1)).symb;
    try {
        if (at.blank() || at == mem.terminator())
            throw MachineError(Fault::undefined_symbol, "H1 holds no instruction");
        if (!mem.live(at))
            throw MachineError(Fault::undefined_symbol, "instruction cell " + mem.name(at) + " is undefined");
        Instruction in = decode(mem, at);
        ++mem.cycles;
        StepOutcome out = StepOutcome::continued;
        bool entered = false;
        bool cells = level_ == TraceLevel::cells || level_ == TraceLevel::full;
        SymbolRef next = in.link;
        SymbolRef v = resolve(in.q, in.symb);
        switch (in.p) {
        case 0: {
            const std::string n = mem.name(v);
            if (const JEntry* j = jt_->find(n)) {
                j->run(*this);
                if (mem.halted) {
                    out = StepOutcome::halted;
                    next = SymbolRef{};
                }
            } else if (mem.live(v)) {
                call(v);
                entered = true;
            } else if (looks_like_j(n)) {
                throw MachineError(Fault::unimplemented, "unimplemented J-function " + n);
            } else {
                throw MachineError(Fault::undefined_symbol, "execute: " + n + " is neither a routine nor a primitive");
            }
            break;
        }
        case 1:
            mem.push(v);
            break;
        case 2:
            mem.cell(v).symb = mem.arg(0);
            mem.pop();
            if (cells) note("  SET " + mem.name(v) + " " + mem.name(mem.cell(v).symb));
            break;
        case 3:
            mem.restore(v);
            if (cells) note("  RESTORE " + mem.name(v));
            break;
        case 4:
            mem.preserve(v);
            if (cells) note("  PRESERVE " + mem.name(v));
            break;
        case 5:
            mem.cell(mem.H(0)).symb = v;
            break;
        case 6:
            mem.cell(v).symb = mem.cell(mem.H(0)).symb;
            if (cells) note("  SET " + mem.name(v) + " " + mem.name(mem.cell(v).symb));
            break;
        case 7:
            if (!mem.h5_plus()) next = v;
            break;
        }
        if (level_ == TraceLevel::full) {
            std::ostringstream os;
            os << 'C' << mem.cycles << " H1=" << mem.name(at) << ' ' << in.p << in.q << ' ' << mem.name(in.symb)
               << " -> H0=" << mem.name(mem.cell(mem.H(0)).symb);
            note(os.str());
        }
        if (out == StepOutcome::halted) return out;
        if (entered) return out;
        StepOutcome adv = advance(next);
        return adv == StepOutcome::continued ? out : adv;
    } catch (const MachineError& e) {
        fail(e, at);
    }
}

SymbolRef Vm::eval(SymbolRef entry, std::optional<SymbolRef> input, std::optional<std::uint64_t> budget) {
    if (input) mem.push(*input);
    const std::string n = mem.name(entry);
    if (const JEntry* j = jt_->find(n)) {
        ++mem.cycles;
        j->run(*this);
        return mem.cell(mem.H(0)).symb;
    }
    if (!mem.live(entry)) {
        if (looks_like_j(n))
            throw MachineError(Fault::unimplemented, "unimplemented J-function " + n);
        throw MachineError(Fault::undefined_symbol, "eval: " + n + " is neither a routine nor a primitive");
    }
    SymbolRef h1 = mem.H(1);
    std::size_t base = mem.depth(h1);
    std::uint64_t start = mem.cycles;
    frames_.push_back({base, routines_.size()});
    try {
        call(entry);
        while (mem.depth(h1) > base) {
            if (budget && mem.cycles - start >= *budget)
                throw MachineError(Fault::budget, "cycle budget of " + std::to_string(*budget) + " exceeded in " + n);
            if (mem.halted) break;
            step();
        }
    } catch (...) {
        unwind();
        throw;
    }
    unwind();
    return mem.cell(mem.H(0)).symb;
}

}  // namespace ipl

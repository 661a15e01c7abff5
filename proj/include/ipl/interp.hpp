#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ipl/memory.hpp"

namespace ipl {

class Vm;

enum class TraceLevel { off, calls, cells, full };

std::optional<TraceLevel> parse_trace_level(const std::string& s);
const char* trace_level_name(TraceLevel t);

struct Instruction {
    int p = 0;
    int q = 0;
    SymbolRef symb;
    SymbolRef link;
};

enum class StepOutcome { continued, routine_returned, halted };

struct JEntry {
    std::string name;
    std::string title;
    std::string inputs;
    std::string outputs;
    std::string h5;
    std::function<void(Vm&)> run;
};

// The J-function table is plain data: a name -> primitive map.
class JTable {
public:
    void add(JEntry e);
    const JEntry* find(const std::string& name) const;
    std::vector<const JEntry*> entries() const;  // ordered by number
    std::size_t size() const { return table_.size(); }
    std::string listing() const;

private:
    std::map<std::string, JEntry> table_;
};

const JTable& standard_jtable();

Instruction decode(const Machine& m, SymbolRef at);

class Vm {
public:
    explicit Vm(MachineConfig config = {}, const JTable* jt = nullptr);

    Machine mem;

    const JTable& jtable() const { return *jt_; }

    SymbolRef resolve(int q, SymbolRef symb) const;
    StepOutcome step();
    SymbolRef eval(SymbolRef entry, std::optional<SymbolRef> input = std::nullopt,
                   std::optional<std::uint64_t> budget = std::nullopt);
    SymbolRef eval(const std::string& entry) { return eval(mem.intern(entry)); }

    void attach_trace(TraceLevel level, std::ostream* sink);
    TraceLevel trace_level() const { return level_; }

    std::string h1_chain() const;
    std::size_t eval_depth() const { return frames_.size(); }

    // generator contexts opened by J17 and closed by J19
    std::vector<SymbolRef> generators;

private:
    void call(SymbolRef routine);
    StepOutcome advance(SymbolRef next);
    void note(const std::string& line);
    [[noreturn]] void fail(const MachineError& e, SymbolRef at);
    void unwind();

    struct Frame {
        std::size_t depth;
        std::size_t routines;
    };

    const JTable* jt_;
    TraceLevel level_ = TraceLevel::off;
    std::ostream* sink_ = nullptr;
    std::vector<Frame> frames_;
    std::vector<SymbolRef> routines_;
};

}  // namespace ipl

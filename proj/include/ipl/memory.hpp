#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ipl {

// A symbol is an index into the machine's name table. Index 0 is the blank symbol.
struct SymbolRef {
    std::uint32_t id = 0;

    bool blank() const { return id == 0; }
    friend bool operator==(SymbolRef a, SymbolRef b) { return a.id == b.id; }
    friend bool operator!=(SymbolRef a, SymbolRef b) { return a.id != b.id; }
    friend bool operator<(SymbolRef a, SymbolRef b) { return a.id < b.id; }
};

enum class SymbolKind { regional, internal };

enum class Fault {
    empty_name,
    no_cell,
    dead_cell,
    double_release,
    control_release,
    duplicate_cell,
    stack_underflow,
    list_cycle,
    out_of_memory,
    decode,
    undefined_symbol,
    unimplemented,
    operand_shape,
    budget,
    load,
};

const char* fault_name(Fault f);

class MachineError : public std::runtime_error {
public:
    MachineError(Fault f, const std::string& msg) : std::runtime_error(msg), fault_(f) {}
    Fault fault() const { return fault_; }

    // set once the interpreter has appended cell/cycle/H1 context
    bool located = false;

private:
    Fault fault_;
};

struct Snapshot {
    std::uint8_t p = 0;
    std::uint8_t q = 0;
    SymbolRef symb;
    SymbolRef link;

    friend bool operator==(const Snapshot&, const Snapshot&) = default;
};

struct Cell {
    enum class State : std::uint8_t { absent, live, free };

    std::uint8_t p = 0;
    std::uint8_t q = 0;
    SymbolRef symb;
    SymbolRef link;
    std::vector<Snapshot> pushdown;
    State state = State::absent;

    Snapshot contents() const { return {p, q, symb, link}; }
    void set(const Snapshot& s) {
        p = s.p;
        q = s.q;
        symb = s.symb;
        link = s.link;
    }
};

struct MachineConfig {
    std::size_t free_cells = 1024;
    bool expand = true;
    std::size_t expansion = 4096;
};

class Machine {
public:
    explicit Machine(MachineConfig config = {});

    Machine(const Machine&) = delete;
    Machine& operator=(const Machine&) = delete;
    Machine(Machine&&) = default;
    Machine& operator=(Machine&&) = default;

    // symbols
    SymbolRef intern(std::string_view text);
    std::optional<SymbolRef> lookup(std::string_view text) const;
    const std::string& name(SymbolRef s) const;
    SymbolKind kind(SymbolRef s) const;
    SymbolRef fresh_internal();
    std::size_t symbol_count() const { return names_.size(); }

    // cells
    bool live(SymbolRef s) const;
    bool on_free_list(SymbolRef s) const;
    Cell& cell(SymbolRef s);
    const Cell& cell(SymbolRef s) const;
    Cell& define(SymbolRef s);
    SymbolRef allocate();
    void release(SymbolRef s);
    void preserve(SymbolRef s);
    void restore(SymbolRef s);
    std::size_t depth(SymbolRef s) const { return cell(s).pushdown.size(); }
    std::vector<SymbolRef> walk(SymbolRef head) const;

    std::size_t free_count() const { return free_count_; }
    std::size_t live_count() const { return live_count_; }
    std::size_t expansions() const { return expansions_; }
    const MachineConfig& config() const { return config_; }

    std::string dump() const;

    // control and working cells
    SymbolRef H(int i) const { return h_[i]; }
    SymbolRef W(int i) const { return w_[i]; }
    SymbolRef terminator() const { return term_; }
    SymbolRef plus() const { return plus_; }
    SymbolRef minus() const { return minus_; }
    bool is_control(SymbolRef s) const;

    // H0 is the communication stack: (0) is its symbol, (1) the snapshot below it, ...
    void push(SymbolRef s);
    SymbolRef pop();
    SymbolRef arg(std::size_t k) const;
    std::size_t h0_depth() const { return depth(h_[0]); }

    bool h5_plus() const;
    void set_h5(bool plus);

    std::uint64_t cycles = 0;
    bool halted = false;

private:
    void grow(std::size_t n);
    Cell& slot(SymbolRef s);

    MachineConfig config_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::vector<Cell> cells_;
    std::uint64_t next_internal_ = 1;
    std::size_t free_count_ = 0;
    std::size_t live_count_ = 0;
    std::size_t expansions_ = 0;
    SymbolRef h_[6];
    SymbolRef w_[10];
    SymbolRef term_, plus_, minus_;
};

}  // namespace ipl

template <>
struct std::hash<ipl::SymbolRef> {
    std::size_t operator()(ipl::SymbolRef s) const noexcept { return s.id; }
};

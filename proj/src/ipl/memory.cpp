#include "ipl/memory.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace ipl {

const char* fault_name(Fault f) {
    switch (f) {
    case Fault::empty_name: return "empty name";
    case Fault::no_cell: return "no cell";
    case Fault::dead_cell: return "dead cell";
    case Fault::double_release: return "double release";
    case Fault::control_release: return "control cell release";
    case Fault::duplicate_cell: return "duplicate cell";
    case Fault::stack_underflow: return "stack underflow";
    case Fault::list_cycle: return "list cycle";
    case Fault::out_of_memory: return "out of memory";
    case Fault::decode: return "decode error";
    case Fault::undefined_symbol: return "undefined symbol";
    case Fault::unimplemented: return "unimplemented J-function";
    case Fault::operand_shape: return "wrong operand shape";
    case Fault::budget: return "cycle budget exceeded";
    case Fault::load: return "load error";
    }
    return "?";
}

Machine::Machine(MachineConfig config) : config_(config) {
    names_.emplace_back("-");
    cells_.emplace_back();
    term_ = intern("0");
    plus_ = intern("PLUS");
    minus_ = intern("MINUS");
    for (int i = 0; i < 6; ++i) {
        h_[i] = intern("H" + std::to_string(i));
        define(h_[i]).link = term_;
    }
    for (int i = 0; i < 10; ++i) {
        w_[i] = intern("W" + std::to_string(i));
        define(w_[i]).link = term_;
    }
    cell(h_[5]).symb = plus_;
    cell(h_[3]).symb = term_;
    grow(config_.free_cells);
    expansions_ = 0;
}

SymbolRef Machine::intern(std::string_view text) {
    if (text.empty())
        throw MachineError(Fault::empty_name, "intern: empty symbol name");
    auto it = index_.find(std::string(text));
    if (it != index_.end())
        return SymbolRef{it->second};
    auto id = static_cast<std::uint32_t>(names_.size());
    names_.emplace_back(text);
    index_.emplace(names_.back(), id);
    return SymbolRef{id};
}

std::optional<SymbolRef> Machine::lookup(std::string_view text) const {
    if (text == "-")
        return SymbolRef{};
    auto it = index_.find(std::string(text));
    if (it == index_.end())
        return std::nullopt;
    return SymbolRef{it->second};
}

const std::string& Machine::name(SymbolRef s) const {
    return names_.at(s.id);
}

SymbolKind Machine::kind(SymbolRef s) const {
    const std::string& n = name(s);
    return n.size() > 2 && n[0] == '9' && n[1] == '-' ? SymbolKind::internal : SymbolKind::regional;
}

SymbolRef Machine::fresh_internal() {
    for (;;) {
        std::string n = "9-" + std::to_string(next_internal_++);
        if (!index_.count(n))
            return intern(n);
    }
}

Cell& Machine::slot(SymbolRef s) {
    if (cells_.size() <= s.id)
        cells_.resize(std::max<std::size_t>(s.id + 1, cells_.size() * 2));
    return cells_[s.id];
}

bool Machine::live(SymbolRef s) const {
    return s.id < cells_.size() && cells_[s.id].state == Cell::State::live;
}

bool Machine::on_free_list(SymbolRef s) const {
    return s.id < cells_.size() && cells_[s.id].state == Cell::State::free;
}

bool Machine::is_control(SymbolRef s) const {
    for (auto h : h_)
        if (h == s) return true;
    for (auto w : w_)
        if (w == s) return true;
    return false;
}

Cell& Machine::cell(SymbolRef s) {
    if (s.id < cells_.size()) {
        Cell& c = cells_[s.id];
        if (c.state == Cell::State::live)
            return c;
        if (c.state == Cell::State::free)
            throw MachineError(Fault::dead_cell, "cell " + name(s) + " is on the free list");
    }
    throw MachineError(Fault::no_cell, "symbol " + name(s) + " names no cell");
}

const Cell& Machine::cell(SymbolRef s) const {
    return const_cast<Machine*>(this)->cell(s);
}

Cell& Machine::define(SymbolRef s) {
    if (s.blank())
        throw MachineError(Fault::empty_name, "define: blank symbol");
    Cell& c = slot(s);
    if (c.state != Cell::State::absent)
        throw MachineError(Fault::duplicate_cell, "cell " + name(s) + " already exists");
    c = Cell{};
    c.state = Cell::State::live;
    ++live_count_;
    return c;
}

void Machine::grow(std::size_t n) {
    Cell& h2 = cell(h_[2]);
    SymbolRef head = h2.link;
    for (std::size_t i = 0; i < n; ++i) {
        SymbolRef s = fresh_internal();
        Cell& c = slot(s);
        c = Cell{};
        c.state = Cell::State::free;
        c.link = head;
        head = s;
    }
    cell(h_[2]).link = head;
    free_count_ += n;
    ++expansions_;
}

SymbolRef Machine::allocate() {
    if (free_count_ == 0) {
        if (!config_.expand || config_.expansion == 0)
            throw MachineError(Fault::out_of_memory, "allocate: free list H2 is empty");
        grow(config_.expansion);
    }
    Cell& h2 = cell(h_[2]);
    SymbolRef s = h2.link;
    Cell& c = cells_[s.id];
    h2.link = c.link;
    c = Cell{};
    c.state = Cell::State::live;
    c.link = term_;
    --free_count_;
    ++live_count_;
    return s;
}

void Machine::release(SymbolRef s) {
    if (on_free_list(s))
        throw MachineError(Fault::double_release, "release: cell " + name(s) + " is already free");
    if (is_control(s))
        throw MachineError(Fault::control_release, "release: " + name(s) + " is a control cell");
    Cell& c = cell(s);
    Cell& h2 = cells_[h_[2].id];
    c = Cell{};
    c.state = Cell::State::free;
    c.link = h2.link;
    h2.link = s;
    ++free_count_;
    --live_count_;
}

void Machine::preserve(SymbolRef s) {
    Cell& c = cell(s);
    c.pushdown.push_back(c.contents());
}

void Machine::restore(SymbolRef s) {
    Cell& c = cell(s);
    if (c.pushdown.empty())
        throw MachineError(Fault::stack_underflow, "stack underflow restoring " + name(s));
    c.set(c.pushdown.back());
    c.pushdown.pop_back();
}

std::vector<SymbolRef> Machine::walk(SymbolRef head) const {
    std::vector<SymbolRef> out;
    std::unordered_set<std::uint32_t> seen{head.id};
    SymbolRef at = cell(head).link;
    while (at != term_) {
        if (!seen.insert(at.id).second)
            throw MachineError(Fault::list_cycle, "cycle in list " + name(head) + " at cell " + name(at));
        if (at.blank())
            throw MachineError(Fault::dead_cell, "list " + name(head) + " has a blank link");
        const Cell& c = cell(at);
        out.push_back(c.symb);
        at = c.link;
    }
    return out;
}

void Machine::push(SymbolRef s) {
    preserve(h_[0]);
    cells_[h_[0].id].symb = s;
}

SymbolRef Machine::pop() {
    Cell& c = cells_[h_[0].id];
    if (c.pushdown.empty())
        throw MachineError(Fault::stack_underflow, "stack underflow popping H0");
    SymbolRef s = c.symb;
    restore(h_[0]);
    return s;
}

SymbolRef Machine::arg(std::size_t k) const {
    const Cell& c = cells_[h_[0].id];
    if (k >= c.pushdown.size())
        throw MachineError(Fault::stack_underflow,
                           "H0 holds " + std::to_string(c.pushdown.size()) + " inputs, needed (" +
                               std::to_string(k) + ")");
    return k == 0 ? c.symb : c.pushdown[c.pushdown.size() - k].symb;
}

bool Machine::h5_plus() const {
    return cells_[h_[5].id].symb == plus_;
}

void Machine::set_h5(bool plus) {
    cells_[h_[5].id].symb = plus ? plus_ : minus_;
}

std::string Machine::dump() const {
    std::vector<std::pair<std::string, const Cell*>> rows;
    for (std::size_t i = 1; i < cells_.size(); ++i)
        if (cells_[i].state == Cell::State::live)
            rows.emplace_back(names_[i], &cells_[i]);
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::ostringstream os;
    for (auto& [n, c] : rows) {
        os << n << "  " << int(c->p) << ' ' << int(c->q) << ' ' << name(c->symb) << ' ' << name(c->link);
        if (!c->pushdown.empty())
            os << "  [depth=" << c->pushdown.size() << ']';
        os << '\n';
    }
    return os.str();
}

}  // namespace ipl

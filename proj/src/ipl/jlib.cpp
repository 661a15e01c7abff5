#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "ipl/interp.hpp"
#include "ipl/jlib.hpp"

namespace ipl {

static int j_number(const std::string& name) {
    return std::stoi(name.substr(1));
}

void JTable::add(JEntry e) {
    std::string n = e.name;
    table_[n] = std::move(e);
}

const JEntry* JTable::find(const std::string& name) const {
    auto it = table_.find(name);
    return it == table_.end() ? nullptr : &it->second;
}

std::vector<const JEntry*> JTable::entries() const {
    std::vector<const JEntry*> out;
    for (auto& [k, v] : table_) out.push_back(&v);
    std::sort(out.begin(), out.end(),
              [](const JEntry* a, const JEntry* b) { return j_number(a->name) < j_number(b->name); });
    return out;
}

std::string JTable::listing() const {
    std::ostringstream os;
    for (const JEntry* e : entries())
        os << e->name << "  " << e->title << "  " << e->inputs << " -> " << e->outputs << "  " << e->h5 << '\n';
    return os.str();
}

namespace {

bool is_list(const Machine& m, SymbolRef s) {
    return !s.blank() && s != m.terminator() && m.live(s);
}

// sublists and description lists are internal symbols naming live cells
bool is_local_list(const Machine& m, SymbolRef s) {
    return is_list(m, s) && m.kind(s) == SymbolKind::internal;
}

SymbolRef need_list(const Machine& m, SymbolRef s, const char* who) {
    if (!is_list(m, s))
        throw MachineError(Fault::operand_shape, std::string(who) + ": " + m.name(s) + " is not a list");
    return s;
}

SymbolRef last_cell(const Machine& m, SymbolRef head) {
    std::unordered_set<std::uint32_t> seen{head.id};
    SymbolRef at = head;
    for (;;) {
        SymbolRef nx = m.cell(at).link;
        if (nx == m.terminator() || nx.blank()) return at;
        if (!seen.insert(nx.id).second)
            throw MachineError(Fault::list_cycle, "cycle in list " + m.name(head) + " at cell " + m.name(nx));
        at = nx;
    }
}

void erase_structure(Machine& m, SymbolRef head, bool deep) {
    std::vector<SymbolRef> cells{head};
    std::unordered_set<std::uint32_t> seen{head.id};
    SymbolRef at = m.cell(head).link;
    while (at != m.terminator() && !at.blank()) {
        if (!seen.insert(at.id).second)
            throw MachineError(Fault::list_cycle, "cycle in list " + m.name(head) + " at cell " + m.name(at));
        cells.push_back(at);
        at = m.cell(at).link;
    }
    std::vector<SymbolRef> subs;
    if (deep) {
        SymbolRef d = m.cell(head).symb;
        if (is_local_list(m, d)) subs.push_back(d);
        for (std::size_t i = 1; i < cells.size(); ++i) {
            SymbolRef e = m.cell(cells[i]).symb;
            if (is_local_list(m, e)) subs.push_back(e);
        }
    }
    for (SymbolRef c : cells) m.release(c);
    for (SymbolRef s : subs)
        if (m.live(s)) erase_structure(m, s, true);
}

SymbolRef copy_structure(Machine& m, SymbolRef head, std::vector<std::uint32_t>& path) {
    if (std::find(path.begin(), path.end(), head.id) != path.end())
        throw MachineError(Fault::list_cycle, "J74: list structure is cyclic at " + m.name(head));
    path.push_back(head.id);
    SymbolRef src_desc = m.cell(head).symb;
    SymbolRef copy = m.allocate();
    m.cell(copy).symb = is_local_list(m, src_desc) ? copy_structure(m, src_desc, path) : src_desc;
    SymbolRef tail = copy;
    std::unordered_set<std::uint32_t> seen{head.id};
    SymbolRef at = m.cell(head).link;
    while (at != m.terminator() && !at.blank()) {
        if (!seen.insert(at.id).second)
            throw MachineError(Fault::list_cycle, "J74: cycle in list " + m.name(head) + " at cell " + m.name(at));
        SymbolRef e = m.cell(at).symb;
        std::uint8_t p = m.cell(at).p, q = m.cell(at).q;
        SymbolRef next = m.cell(at).link;
        if (is_local_list(m, e)) e = copy_structure(m, e, path);
        SymbolRef c = m.allocate();
        Cell& cc = m.cell(c);
        cc.p = p;
        cc.q = q;
        cc.symb = e;
        m.cell(tail).link = c;
        tail = c;
        at = next;
    }
    path.pop_back();
    return copy;
}

// description list: alternating attribute, value cells hanging off the head's SYMB
std::optional<SymbolRef> find_attribute(const Machine& m, SymbolRef list, SymbolRef attr) {
    SymbolRef d = m.cell(list).symb;
    if (!is_list(m, d)) return std::nullopt;
    auto items = m.walk(d);
    if (items.size() % 2)
        throw MachineError(Fault::operand_shape, "description list of " + m.name(list) + " has odd length");
    for (std::size_t i = 0; i < items.size(); i += 2)
        if (items[i] == attr) return items[i + 1];
    return std::nullopt;
}

void set_attribute(Machine& m, SymbolRef list, SymbolRef attr, SymbolRef value) {
    SymbolRef d = m.cell(list).symb;
    if (!is_list(m, d)) {
        d = m.allocate();
        m.cell(d).symb = m.terminator();
        m.cell(list).symb = d;
    }
    std::unordered_set<std::uint32_t> seen{d.id};
    SymbolRef at = m.cell(d).link;
    SymbolRef tail = d;
    while (at != m.terminator() && !at.blank()) {
        if (!seen.insert(at.id).second)
            throw MachineError(Fault::list_cycle, "cycle in description list of " + m.name(list));
        SymbolRef v = m.cell(at).link;
        if (v == m.terminator() || v.blank())
            throw MachineError(Fault::operand_shape, "description list of " + m.name(list) + " has odd length");
        if (m.cell(at).symb == attr) {
            m.cell(v).symb = value;
            return;
        }
        tail = v;
        at = m.cell(v).link;
    }
    SymbolRef a = m.allocate();
    SymbolRef v = m.allocate();
    m.cell(a).symb = attr;
    m.cell(a).link = v;
    m.cell(v).symb = value;
    m.cell(tail).link = a;
}

bool erase_attribute(Machine& m, SymbolRef list, SymbolRef attr) {
    SymbolRef d = m.cell(list).symb;
    if (!is_list(m, d)) return false;
    SymbolRef prev = d;
    SymbolRef at = m.cell(d).link;
    while (at != m.terminator() && !at.blank()) {
        SymbolRef v = m.cell(at).link;
        if (v == m.terminator() || v.blank())
            throw MachineError(Fault::operand_shape, "description list of " + m.name(list) + " has odd length");
        SymbolRef next = m.cell(v).link;
        if (m.cell(at).symb == attr) {
            m.cell(prev).link = next;
            m.release(at);
            m.release(v);
            return true;
        }
        prev = v;
        at = next;
    }
    return false;
}

void preserve_w(Machine& m, int n) {
    for (int i = 0; i <= n; ++i) m.preserve(m.W(i));
}

void restore_w(Machine& m, int n) {
    for (int i = 0; i <= n; ++i) m.restore(m.W(i));
}

void move_w(Machine& m, int n) {
    std::vector<SymbolRef> args;
    for (int i = 0; i <= n; ++i) args.push_back(m.arg(i));
    for (int i = 0; i <= n; ++i) {
        m.cell(m.W(i)).symb = args[i];
        m.pop();
    }
}

void run_subprocess(Vm& vm, SymbolRef sub) {
    if (vm.jtable().find(vm.mem.name(sub)) == nullptr && !vm.mem.live(sub))
        throw MachineError(Fault::operand_shape, "generator subprocess " + vm.mem.name(sub) + " is not a routine");
    vm.eval(sub);
}

JTable build() {
    JTable t;
    auto add = [&](std::string name, std::string title, std::string in, std::string out, std::string h5,
                   std::function<void(Vm&)> fn) {
        t.add(JEntry{std::move(name), std::move(title), std::move(in), std::move(out), std::move(h5), std::move(fn)});
    };

    add("J0", "no operation", "-", "-", "unchanged", [](Vm&) {});
    add("J1", "execute (0)", "(0)=process", "per process", "per process", [](Vm& vm) {
        SymbolRef p = vm.mem.pop();
        vm.eval(p);
    });
    add("J2", "test (0) = (1)", "(0) (1)", "-", "plus if identical symbols", [](Vm& vm) {
        bool same = vm.mem.arg(0) == vm.mem.arg(1);
        vm.mem.pop();
        vm.mem.pop();
        vm.mem.set_h5(same);
    });
    add("J3", "set H5 minus", "-", "-", "minus", [](Vm& vm) { vm.mem.set_h5(false); });
    add("J4", "set H5 plus", "-", "-", "plus", [](Vm& vm) { vm.mem.set_h5(true); });
    add("J5", "reverse H5", "-", "-", "reversed", [](Vm& vm) { vm.mem.set_h5(!vm.mem.h5_plus()); });
    add("J6", "reverse (0) and (1)", "(0) (1)", "(0)=old (1), (1)=old (0)", "unchanged", [](Vm& vm) {
        SymbolRef a = vm.mem.pop();
        SymbolRef b = vm.mem.pop();
        vm.mem.push(a);
        vm.mem.push(b);
    });
    add("J7", "halt", "-", "-", "unchanged", [](Vm& vm) { vm.mem.halted = true; });
    add("J8", "discard (0)", "(0)", "-", "unchanged", [](Vm& vm) { vm.mem.pop(); });
    add("J9", "erase cell (0)", "(0)=cell", "-", "unchanged", [](Vm& vm) {
        SymbolRef c = vm.mem.pop();
        vm.mem.release(c);
    });
    add("J10", "find value of attribute (0) of (1)", "(0)=attribute (1)=list", "(0)=value if found",
        "plus if found, minus otherwise", [](Vm& vm) {
            SymbolRef attr = vm.mem.pop();
            SymbolRef list = need_list(vm.mem, vm.mem.pop(), "J10");
            auto v = find_attribute(vm.mem, list, attr);
            if (v) vm.mem.push(*v);
            vm.mem.set_h5(v.has_value());
        });
    add("J11", "assign (1) as value of attribute (0) of (2)", "(0)=attribute (1)=value (2)=list", "-",
        "unchanged", [](Vm& vm) {
            SymbolRef attr = vm.mem.pop();
            SymbolRef value = vm.mem.pop();
            SymbolRef list = need_list(vm.mem, vm.mem.pop(), "J11");
            set_attribute(vm.mem, list, attr, value);
        });
    add("J14", "erase attribute (0) of (1)", "(0)=attribute (1)=list", "-", "plus if it was present",
        [](Vm& vm) {
            SymbolRef attr = vm.mem.pop();
            SymbolRef list = need_list(vm.mem, vm.mem.pop(), "J14");
            vm.mem.set_h5(erase_attribute(vm.mem, list, attr));
        });
    add("J17", "generator setup", "(0)=subprocess", "-", "unchanged", [](Vm& vm) {
        SymbolRef sub = vm.mem.pop();
        preserve_w(vm.mem, 9);
        vm.generators.push_back(sub);
    });
    add("J18", "execute generator subprocess on (0)", "(0)=element", "per subprocess", "set by subprocess",
        [](Vm& vm) {
            if (vm.generators.empty())
                throw MachineError(Fault::operand_shape, "J18 outside a generator");
            run_subprocess(vm, vm.generators.back());
        });
    add("J19", "generator cleanup", "-", "-", "unchanged", [](Vm& vm) {
        if (vm.generators.empty())
            throw MachineError(Fault::operand_shape, "J19 outside a generator");
        vm.generators.pop_back();
        restore_w(vm.mem, 9);
    });
    for (int n = 0; n <= 9; ++n) {
        std::string range = n == 0 ? "W0" : "W0-W" + std::to_string(n);
        std::string args = n == 0 ? "(0)" : "(0)-(" + std::to_string(n) + ")";
        add("J2" + std::to_string(n), "move " + args + " into " + range, args, "-", "unchanged",
            [n](Vm& vm) { move_w(vm.mem, n); });
        add("J3" + std::to_string(n), "restore " + range, "-", "-", "unchanged",
            [n](Vm& vm) { restore_w(vm.mem, n); });
        add("J4" + std::to_string(n), "preserve " + range, "-", "-", "unchanged",
            [n](Vm& vm) { preserve_w(vm.mem, n); });
        add("J5" + std::to_string(n), "preserve " + range + " then move " + args + " into them", args, "-",
            "unchanged", [n](Vm& vm) {
                preserve_w(vm.mem, n);
                move_w(vm.mem, n);
            });
    }
    add("J60", "locate next cell after (0)", "(0)=cell", "(0)=next cell, or input if none",
        "plus if found, minus at end", [](Vm& vm) {
            SymbolRef c = vm.mem.arg(0);
            if (!vm.mem.live(c))
                throw MachineError(Fault::operand_shape, "J60: " + vm.mem.name(c) + " is not a cell");
            SymbolRef nx = vm.mem.cell(c).link;
            bool found = nx != vm.mem.terminator() && !nx.blank();
            if (found) vm.mem.cell(vm.mem.H(0)).symb = nx;
            vm.mem.set_h5(found);
        });
    add("J64", "insert (0) at front of list (1)", "(0)=symbol (1)=list", "-", "unchanged", [](Vm& vm) {
        SymbolRef s = vm.mem.pop();
        SymbolRef list = need_list(vm.mem, vm.mem.pop(), "J64");
        SymbolRef c = vm.mem.allocate();
        vm.mem.cell(c).symb = s;
        vm.mem.cell(c).link = vm.mem.cell(list).link;
        vm.mem.cell(list).link = c;
    });
    add("J65", "insert (0) at end of list (1)", "(0)=symbol (1)=list", "-", "unchanged", [](Vm& vm) {
        SymbolRef s = vm.mem.pop();
        SymbolRef list = need_list(vm.mem, vm.mem.pop(), "J65");
        SymbolRef tail = last_cell(vm.mem, list);
        SymbolRef c = vm.mem.allocate();
        vm.mem.cell(c).symb = s;
        vm.mem.cell(tail).link = c;
    });
    add("J71", "erase list (0)", "(0)=list", "-", "unchanged", [](Vm& vm) {
        SymbolRef list = need_list(vm.mem, vm.mem.pop(), "J71");
        erase_structure(vm.mem, list, false);
    });
    add("J72", "erase list structure (0)", "(0)=list", "-", "unchanged", [](Vm& vm) {
        SymbolRef list = need_list(vm.mem, vm.mem.pop(), "J72");
        erase_structure(vm.mem, list, true);
    });
    add("J74", "copy list structure (0)", "(0)=list", "(0)=copy", "unchanged", [](Vm& vm) {
        SymbolRef list = need_list(vm.mem, vm.mem.arg(0), "J74");
        std::vector<std::uint32_t> path;
        SymbolRef copy = copy_structure(vm.mem, list, path);
        vm.mem.cell(vm.mem.H(0)).symb = copy;
    });
    add("J90", "create blank list", "-", "(0)=new list", "unchanged", [](Vm& vm) {
        SymbolRef c = vm.mem.allocate();
        vm.mem.cell(c).symb = vm.mem.terminator();
        vm.mem.push(c);
    });
    add("J100", "generate symbols of list (1) for subprocess (0)", "(0)=subprocess (1)=list", "-",
        "plus if every element was generated, minus if stopped", [](Vm& vm) {
            SymbolRef sub = vm.mem.pop();
            SymbolRef list = need_list(vm.mem, vm.mem.pop(), "J100");
            generate(vm, list, sub);
        });
    add("J130", "test if (0) is a list", "(0)", "-", "plus if (0) names a live cell", [](Vm& vm) {
        SymbolRef s = vm.mem.pop();
        vm.mem.set_h5(is_list(vm.mem, s));
    });
    return t;
}

}  // namespace

bool generate(Vm& vm, SymbolRef list, SymbolRef subprocess) {
    Machine& m = vm.mem;
    preserve_w(m, 9);
    vm.generators.push_back(subprocess);
    std::unordered_set<std::uint32_t> seen{list.id};
    SymbolRef at = m.cell(list).link;
    bool complete = true;
    while (at != m.terminator() && !at.blank()) {
        if (!seen.insert(at.id).second)
            throw MachineError(Fault::list_cycle, "J100: cycle in list " + m.name(list) + " at cell " + m.name(at));
        SymbolRef next = m.cell(at).link;
        m.push(m.cell(at).symb);
        run_subprocess(vm, subprocess);
        if (!m.h5_plus()) {
            complete = false;
            break;
        }
        at = next;
    }
    vm.generators.pop_back();
    restore_w(m, 9);
    m.set_h5(complete);
    return complete;
}

SymbolRef copy_list(Machine& m, SymbolRef head) {
    need_list(m, head, "J74");
    std::vector<std::uint32_t> path;
    return copy_structure(m, head, path);
}

void erase_list(Machine& m, SymbolRef head, bool deep) {
    need_list(m, head, deep ? "J72" : "J71");
    erase_structure(m, head, deep);
}

std::optional<SymbolRef> find_value(const Machine& m, SymbolRef list, SymbolRef attr) {
    return find_attribute(m, need_list(m, list, "J10"), attr);
}

void set_value(Machine& m, SymbolRef list, SymbolRef attr, SymbolRef value) {
    set_attribute(m, need_list(m, list, "J11"), attr, value);
}

SymbolRef make_list(Machine& m, const std::vector<SymbolRef>& items) {
    SymbolRef head = m.allocate();
    m.cell(head).symb = m.terminator();
    SymbolRef tail = head;
    for (SymbolRef s : items) {
        SymbolRef c = m.allocate();
        m.cell(c).symb = s;
        m.cell(tail).link = c;
        tail = c;
    }
    return head;
}

const JTable& standard_jtable() {
    static const JTable table = build();
    return table;
}

}  // namespace ipl

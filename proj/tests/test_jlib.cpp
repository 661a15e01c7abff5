#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ipl/interp.hpp"
#include "ipl/jlib.hpp"
#include "ipl/loader.hpp"
#include "lists.hpp"

using namespace ipl;

namespace {

std::vector<std::string> names(const Machine& m, const std::vector<SymbolRef>& v) {
    std::vector<std::string> out;
    for (SymbolRef s : v) out.push_back(m.name(s));
    return out;
}

SymbolRef abc(Machine& m) {
    return make_list(m, {m.intern("A"), m.intern("B"), m.intern("C")});
}

}  // namespace

TEST(JTable, ListingAndOrder) {
    const JTable& jt = standard_jtable();
    std::string l = jt.listing();
    EXPECT_NE(l.find("J74  "), std::string::npos);
    EXPECT_NE(l.find("J100  "), std::string::npos);
    EXPECT_EQ(l, standard_jtable().listing());
    auto e = jt.entries();
    for (std::size_t i = 1; i < e.size(); ++i)
        EXPECT_LT(std::stoi(e[i - 1]->name.substr(1)), std::stoi(e[i]->name.substr(1)));
    EXPECT_EQ(jt.find("J151"), nullptr);
    // row shape: name, title, inputs -> outputs, H5 effect
    EXPECT_NE(l.find("J2  test (0) = (1)  (0) (1) -> -  plus if identical symbols\n"), std::string::npos) << l;
}

TEST(JFunctions, EqualityTest) {
    Vm vm;
    Machine& m = vm.mem;
    SymbolRef a = m.intern("A"), b = m.intern("B");
    m.push(a);
    m.push(a);
    vm.eval(m.intern("J2"));
    EXPECT_TRUE(m.h5_plus());
    EXPECT_EQ(m.h0_depth(), 0u);
    m.push(a);
    m.push(b);
    vm.eval(m.intern("J2"));
    EXPECT_FALSE(m.h5_plus());
}

TEST(JFunctions, CopyFreshCells) {
    Vm vm;
    Machine& m = vm.mem;
    SymbolRef src = abc(m);
    m.push(src);
    vm.eval(m.intern("J74"));
    SymbolRef copy = m.arg(0);
    EXPECT_NE(copy, src);
    EXPECT_EQ(names(m, m.walk(copy)), (std::vector<std::string>{"A", "B", "C"}));

    SymbolRef empty = make_list(m, {});
    SymbolRef ec = copy_list(m, empty);
    EXPECT_NE(ec, empty);
    EXPECT_TRUE(m.walk(ec).empty());
}

TEST(JFunctions, Generate) {
    JTable jt = standard_jtable();
    std::vector<std::string> seen;
    std::string stop_at;
    jt.add({"J901", "collect (0)", "(0)", "-", "minus at the stop symbol", [&](Vm& vm) {
                seen.push_back(vm.mem.name(vm.mem.pop()));
                vm.mem.set_h5(seen.back() != stop_at);
            }});
    Vm vm({}, &jt);
    Machine& m = vm.mem;
    SymbolRef l = abc(m);
    EXPECT_TRUE(generate(vm, l, m.intern("J901")));
    EXPECT_EQ(seen, (std::vector<std::string>{"A", "B", "C"}));

    seen.clear();
    stop_at = "B";
    m.push(l);
    m.push(m.intern("J901"));
    vm.eval(m.intern("J100"));
    EXPECT_FALSE(m.h5_plus());
    EXPECT_EQ(seen, (std::vector<std::string>{"A", "B"}));
}

TEST(JFunctions, GeneratorPreservesWorkingCells) {
    JTable jt = standard_jtable();
    jt.add({"J902", "clobber W0-W9", "(0)", "-", "plus", [](Vm& vm) {
                SymbolRef x = vm.mem.pop();
                for (int i = 0; i < 10; ++i) vm.mem.cell(vm.mem.W(i)).symb = x;
                vm.mem.set_h5(true);
            }});
    Vm vm({}, &jt);
    Machine& m = vm.mem;
    for (int i = 0; i < 10; ++i) m.cell(m.W(i)).symb = m.intern("K" + std::to_string(i));
    generate(vm, abc(m), m.intern("J902"));
    for (int i = 0; i < 10; ++i) {
        EXPECT_EQ(m.name(m.cell(m.W(i)).symb), "K" + std::to_string(i));
        EXPECT_EQ(m.depth(m.W(i)), 0u);
    }
}

TEST(JFunctions, ExplicitGeneratorFamily) {
    // J17 setup, J18 per element, J19 cleanup, driven by hand
    JTable jt = standard_jtable();
    std::vector<std::string> seen;
    jt.add({"J903", "collect (0)", "(0)", "-", "plus", [&](Vm& vm) {
                seen.push_back(vm.mem.name(vm.mem.pop()));
                vm.mem.set_h5(true);
            }});
    Vm vm({}, &jt);
    Machine& m = vm.mem;
    m.cell(m.W(3)).symb = m.intern("KEEP");
    m.push(m.intern("J903"));
    vm.eval(m.intern("J17"));
    EXPECT_EQ(vm.generators.size(), 1u);
    for (const char* s : {"X", "Y"}) {
        m.push(m.intern(s));
        vm.eval(m.intern("J18"));
    }
    m.cell(m.W(3)).symb = m.intern("LOST");
    vm.eval(m.intern("J19"));
    EXPECT_TRUE(vm.generators.empty());
    EXPECT_EQ(seen, (std::vector<std::string>{"X", "Y"}));
    EXPECT_EQ(m.name(m.cell(m.W(3)).symb), "KEEP");
}

TEST(JFunctions, Erase) {
    Machine m;
    SymbolRef l = abc(m);
    std::size_t before = m.free_count();
    erase_list(m, l, false);
    EXPECT_EQ(m.free_count(), before + 4);
    EXPECT_THROW(m.walk(l), MachineError);
    EXPECT_THROW(erase_list(m, l, false), MachineError);

    SymbolRef e = make_list(m, {});
    before = m.free_count();
    erase_list(m, e, false);
    EXPECT_EQ(m.free_count(), before + 1);
}

TEST(JFunctions, DescriptionList) {
    Vm vm;
    Machine& m = vm.mem;
    SymbolRef l = abc(m);
    SymbolRef type = m.intern("TYPE"), thm = m.intern("THEOREM");
    EXPECT_FALSE(find_value(m, l, type));
    m.push(l);
    m.push(type);
    vm.eval(m.intern("J10"));
    EXPECT_FALSE(m.h5_plus());
    EXPECT_EQ(m.h0_depth(), 0u);

    set_value(m, l, type, m.intern("AXIOM"));
    set_value(m, l, type, thm);
    EXPECT_EQ(m.walk(m.cell(l).symb).size(), 2u);
    m.push(l);
    m.push(type);
    vm.eval(m.intern("J10"));
    EXPECT_TRUE(m.h5_plus());
    EXPECT_EQ(m.pop(), thm);

    m.push(l);
    m.push(type);
    vm.eval(m.intern("J14"));
    EXPECT_TRUE(m.h5_plus());
    EXPECT_FALSE(find_value(m, l, type));
}

TEST(JFunctions, LocateAndInsert) {
    Vm vm;
    Machine& m = vm.mem;
    load_text(m, R"(
(START 00 J90)      ; new list
(      40 W0)
(      60 W0)       ; W0 = list, still in H0
(      10 B)
(      00 J65)      ; (B)
(      11 W0)
(      10 A)
(      00 J64)      ; (A B)
(      11 W0)
(      11 W0)
(      00 J60)      ; first cell
(      00 J60)      ; second cell
(      00 J60)      ; none: H5 minus
(      30 W0 0)
)");
    vm.eval("START");
    EXPECT_FALSE(m.h5_plus());
    SymbolRef last = m.pop();
    EXPECT_EQ(m.name(m.cell(last).symb), "B");
    SymbolRef list = m.pop();
    EXPECT_EQ(names(m, m.walk(list)), (std::vector<std::string>{"A", "B"}));
}

TEST(JFunctions, WorkingCellBlocks) {
    Vm vm;
    Machine& m = vm.mem;
    m.cell(m.W(0)).symb = m.intern("OLD0");
    m.cell(m.W(1)).symb = m.intern("OLD1");
    m.push(m.intern("Y"));
    m.push(m.intern("X"));
    vm.eval(m.intern("J51"));  // preserve W0,W1 then W0 = X, W1 = Y
    EXPECT_EQ(m.name(m.cell(m.W(0)).symb), "X");
    EXPECT_EQ(m.name(m.cell(m.W(1)).symb), "Y");
    EXPECT_EQ(m.h0_depth(), 0u);
    vm.eval(m.intern("J31"));
    EXPECT_EQ(m.name(m.cell(m.W(0)).symb), "OLD0");
    EXPECT_EQ(m.name(m.cell(m.W(1)).symb), "OLD1");
}

TEST(JFunctions, IsListTest) {
    Vm vm;
    Machine& m = vm.mem;
    m.push(abc(m));
    vm.eval(m.intern("J130"));
    EXPECT_TRUE(m.h5_plus());
    m.push(m.intern("A"));
    vm.eval(m.intern("J130"));
    EXPECT_FALSE(m.h5_plus());
    EXPECT_EQ(m.h0_depth(), 0u);
}

// randomized properties

TEST(ListProperties, CopyIsEqualDisjointIndependent) {
    std::mt19937 rng(11);
    for (int round = 0; round < 200; ++round) {
        Machine m;
        SymbolRef src = lists::random_list(m, rng, 3);
        std::string before = lists::render(m, src);
        SymbolRef copy = copy_list(m, src);
        EXPECT_EQ(lists::render(m, copy), before);
        auto a = lists::cells(m, src), b = lists::cells(m, copy);
        for (std::uint32_t c : b) EXPECT_FALSE(a.count(c));
        lists::mutate(m, copy, rng);
        EXPECT_EQ(lists::render(m, src), before);
    }
}

TEST(ListProperties, GenerateMatchesWalk) {
    std::mt19937 rng(12);
    JTable jt = standard_jtable();
    std::vector<SymbolRef> seen;
    jt.add({"J904", "collect (0)", "(0)", "-", "plus", [&](Vm& vm) {
                seen.push_back(vm.mem.pop());
                vm.mem.set_h5(true);
            }});
    for (int round = 0; round < 200; ++round) {
        Vm vm({}, &jt);
        SymbolRef l = lists::random_list(vm.mem, rng, 3);
        seen.clear();
        generate(vm, l, vm.mem.intern("J904"));
        EXPECT_EQ(seen, vm.mem.walk(l));
    }
}

TEST(ListProperties, EraseConservation) {
    std::mt19937 rng(13);
    for (int round = 0; round < 200; ++round) {
        Machine m;
        SymbolRef l = lists::random_list(m, rng, 3);
        bool deep = round % 2;
        std::size_t cells = deep ? lists::cells(m, l).size() : m.walk(l).size() + 1;
        std::size_t before = m.free_count();
        erase_list(m, l, deep);
        EXPECT_EQ(m.free_count() - before, cells);
    }
}

#pragma once

#include <optional>
#include <vector>

#include "ipl/interp.hpp"

namespace ipl {

// Host-side entry points for the list primitives. The J-table wraps these.

// J100 body: feeds each element of list to subprocess; stops when it leaves H5 minus.
bool generate(Vm& vm, SymbolRef list, SymbolRef subprocess);

// J74 body: deep copy including sublists and description lists.
SymbolRef copy_list(Machine& m, SymbolRef head);

// J71 (deep=false) and J72 (deep=true).
void erase_list(Machine& m, SymbolRef head, bool deep);

std::optional<SymbolRef> find_value(const Machine& m, SymbolRef list, SymbolRef attr);
void set_value(Machine& m, SymbolRef list, SymbolRef attr, SymbolRef value);

SymbolRef make_list(Machine& m, const std::vector<SymbolRef>& items);

}  // namespace ipl

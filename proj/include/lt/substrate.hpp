#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "ipl/interp.hpp"
#include "lt/formula.hpp"

namespace lt {

// Formulas live on the IPL machine as list structures; matching runs the MATCH
// routine from ltmatch.liplv, so its cost shows up on the cycle counter H3.
class Substrate {
public:
    explicit Substrate(ipl::MachineConfig config = {});

    ipl::Vm& vm() { return vm_; }
    const ipl::Vm& vm() const { return vm_; }

    // Long-lived structures (store entries, rule sides).
    ipl::SymbolRef encode(const Formula& f);
    // Structures for goals; returned to the free list by release_temporaries().
    ipl::SymbolRef encode_temporary(const Formula& f);
    void release_temporaries();

    Formula decode(ipl::SymbolRef s) const;

    // Every pattern variable binds. Counts one match attempt.
    std::optional<Substitution> match(const Formula& pattern, const Formula& subject);

    std::uint64_t cycles() const { return vm_.mem.cycles; }
    std::uint64_t attempts() const { return attempts_; }
    void count_attempts(std::uint64_t n) { attempts_ += n; }

private:
    struct Slot {
        ipl::SymbolRef head;
        Formula keep;
    };
    using Cache = std::unordered_map<const Node*, Slot>;

    ipl::SymbolRef build(const Formula& f, Cache& cache, bool temporary);
    ipl::SymbolRef lookup(const Formula& f);

    ipl::Vm vm_;
    ipl::SymbolRef match_, bindings_;
    ipl::SymbolRef conn_[6];
    Cache persistent_, temporary_;
    std::vector<ipl::SymbolRef> temp_heads_;
    std::unordered_map<std::uint32_t, Formula> decoded_;
    std::uint64_t attempts_ = 0;
};

}  // namespace lt

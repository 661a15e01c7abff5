#include "lt/substrate.hpp"

#include "ipl/jlib.hpp"
#include "ipl/loader.hpp"
#include "lt/corpus.hpp"

namespace lt {

using ipl::SymbolRef;

Substrate::Substrate(ipl::MachineConfig config) : vm_(config) {
    ipl::load_text(vm_.mem, embedded_file("ltmatch.liplv"));
    match_ = vm_.mem.intern("MATCH");
    bindings_ = vm_.mem.intern("LTB");
    conn_[static_cast<int>(Op::neg)] = vm_.mem.intern("NOT");
    conn_[static_cast<int>(Op::imp)] = vm_.mem.intern("IMP");
    conn_[static_cast<int>(Op::dis)] = vm_.mem.intern("OR");
    conn_[static_cast<int>(Op::conj)] = vm_.mem.intern("AND");
    conn_[static_cast<int>(Op::equiv)] = vm_.mem.intern("EQV");
}

SymbolRef Substrate::build(const Formula& f, Cache& cache, bool temporary) {
    ipl::Machine& m = vm_.mem;
    if (f->op == Op::var) return m.intern(std::string(1, f->name));
    auto it = cache.find(f.get());
    if (it != cache.end()) return it->second.head;
    std::vector<SymbolRef> items{conn_[static_cast<int>(f->op)], build(f->a, cache, temporary)};
    if (f->b) items.push_back(build(f->b, cache, temporary));
    SymbolRef head = ipl::make_list(m, items);
    cache.emplace(f.get(), Slot{head, f});
    decoded_[head.id] = f;
    if (temporary) temp_heads_.push_back(head);
    return head;
}

SymbolRef Substrate::encode(const Formula& f) {
    return build(f, persistent_, false);
}

SymbolRef Substrate::lookup(const Formula& f) {
    auto it = persistent_.find(f.get());
    if (it != persistent_.end()) return it->second.head;
    return build(f, temporary_, true);
}

SymbolRef Substrate::encode_temporary(const Formula& f) {
    return lookup(f);
}

void Substrate::release_temporaries() {
    for (SymbolRef h : temp_heads_) {
        decoded_.erase(h.id);
        ipl::erase_list(vm_.mem, h, false);
    }
    temp_heads_.clear();
    temporary_.clear();
}

Formula Substrate::decode(SymbolRef s) const {
    auto it = decoded_.find(s.id);
    if (it != decoded_.end()) return it->second;
    const std::string& n = vm_.mem.name(s);
    if (n.size() != 1) throw std::runtime_error("decode: " + n + " is not a formula");
    return var(n[0]);
}

std::optional<Substitution> Substrate::match(const Formula& pattern, const Formula& subject) {
    ipl::Machine& m = vm_.mem;
    ++attempts_;
    SymbolRef p = lookup(pattern);
    SymbolRef s = lookup(subject);
    SymbolRef d = m.cell(bindings_).symb;
    if (m.live(d)) ipl::erase_list(m, d, false);
    m.cell(bindings_).symb = m.terminator();
    m.push(s);
    m.push(p);
    vm_.eval(match_);
    if (!m.h5_plus()) return std::nullopt;
    Substitution sig;
    d = m.cell(bindings_).symb;
    if (m.live(d)) {
        auto items = m.walk(d);
        for (std::size_t i = 0; i + 1 < items.size(); i += 2)
            sig[m.name(items[i])[0]] = decode(items[i + 1]);
    }
    return sig;
}

}  // namespace lt

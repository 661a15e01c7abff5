#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ipl/memory.hpp"

namespace ipl {

struct Card {
    std::string name;  // empty for an unnamed card
    int p = 0;
    int q = 0;
    std::string symb;  // "-" is blank
    std::string link;  // empty or "-" means the next card
    int line = 0;
};

struct CardError {
    int line = 0;
    std::string message;
};

struct CardFile {
    std::vector<Card> cards;
    std::vector<CardError> errors;

    bool ok() const { return errors.empty(); }
};

CardFile parse_cards(const std::string& text);

class LoadError : public MachineError {
public:
    LoadError(std::vector<CardError> errs);
    const std::vector<CardError>& errors() const { return errors_; }

private:
    std::vector<CardError> errors_;
};

struct LoadReport {
    std::size_t cells = 0;
    std::vector<std::string> names;     // every cell name bound, in card order
    std::vector<std::string> externals; // referenced symbols that name no cell
};

// Unnamed cards take the name of the last named card plus "+k".
LoadReport load(Machine& m, const CardFile& cards);
LoadReport load_text(Machine& m, const std::string& text);
LoadReport load_file(Machine& m, const std::string& path);

std::string dump_region(const Machine& m, const std::string& prefix);

}  // namespace ipl

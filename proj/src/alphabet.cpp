#include "worldbench/alphabet.hpp"

#include "worldbench/errors.hpp"

namespace wb {

Alphabet::Alphabet(std::vector<std::string> letters) : letters_(std::move(letters)) {
    if (letters_.empty()) {
        throw ConfigError("alphabet must contain at least one letter");
    }
    for (Symbol i = 0; i < letters_.size(); ++i) {
        const auto& letter = letters_[i];
        if (letter.empty()) {
            throw ConfigError("alphabet letters must be nonempty");
        }
        if (!index_.emplace(letter, i).second) {
            throw ConfigError("duplicate alphabet letter '" + letter + "'");
        }
    }
}

std::optional<Symbol> Alphabet::find(std::string_view letter) const {
    auto it = index_.find(letter);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

MeaningOfLife::MeaningOfLife(const Alphabet& sigma, const std::vector<std::string>& good,
                             const std::vector<std::string>& bad)
    : good_(sigma.size(), 0), bad_(sigma.size(), 0) {
    for (const auto& letter : good) {
        auto idx = sigma.find(letter);
        if (!idx) throw ConfigError("good letter '" + letter + "' is not in sigma");
        good_[*idx] = 1;
    }
    for (const auto& letter : bad) {
        auto idx = sigma.find(letter);
        if (!idx) throw ConfigError("bad letter '" + letter + "' is not in sigma");
        bad_[*idx] = 1;
    }
}

int MeaningOfLife::value_of(Symbol view) const {
    bool g = good_.at(view);
    bool b = bad_.at(view);
    if (g == b) return 0;  // neutral, including letters in both subsets
    return g ? 1 : -1;
}

}  // namespace wb

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wb {

// Index of a letter within its alphabet. Letter order is canonical: it fixes
// indices, tree child order, and the policy enumeration order.
using Symbol = std::uint32_t;

// Index of a world or policy state.
using State = std::uint32_t;

class Alphabet {
public:
    Alphabet() = default;
    explicit Alphabet(std::vector<std::string> letters);

    std::size_t size() const { return letters_.size(); }
    const std::string& letter(Symbol i) const { return letters_.at(i); }
    const std::vector<std::string>& letters() const { return letters_; }
    std::optional<Symbol> find(std::string_view letter) const;

    bool operator==(const Alphabet& other) const { return letters_ == other.letters_; }

private:
    std::vector<std::string> letters_;
    std::map<std::string, Symbol, std::less<>> index_;
};

// The good/bad letter subsets over a sigma alphabet. A letter in both
// subsets is neutral, exactly as if it were in neither.
class MeaningOfLife {
public:
    MeaningOfLife() = default;
    MeaningOfLife(const Alphabet& sigma, const std::vector<std::string>& good,
                  const std::vector<std::string>& bad);

    // +1 for effective-good, -1 for effective-bad, 0 otherwise.
    int value_of(Symbol view) const;

    bool is_good(Symbol view) const { return good_.at(view); }
    bool is_bad(Symbol view) const { return bad_.at(view); }
    std::size_t sigma_size() const { return good_.size(); }

    bool operator==(const MeaningOfLife& other) const = default;

private:
    std::vector<char> good_;
    std::vector<char> bad_;
};

}  // namespace wb

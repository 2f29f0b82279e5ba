#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bnalg {

// Row-major linearization of a multi-index over per-position cardinalities.
// The last position varies fastest. Every module shares this convention, so
// flattenings and minor enumeration are bit-exact reproducible.
class StateSpace {
public:
    StateSpace() = default;
    explicit StateSpace(std::vector<int> cards) : cards_(std::move(cards)) {}

    const std::vector<int>& cards() const { return cards_; }
    std::size_t rank() const { return cards_.size(); }

    std::size_t cell_count() const {
        std::size_t n = 1;
        for (int c : cards_) n *= static_cast<std::size_t>(c);
        return n;
    }

    std::size_t linear_index(std::span<const int> multi) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < cards_.size(); ++i) {
            idx = idx * static_cast<std::size_t>(cards_[i]) + static_cast<std::size_t>(multi[i]);
        }
        return idx;
    }

    std::vector<int> multi_index(std::size_t linear) const {
        std::vector<int> multi(cards_.size());
        for (std::size_t i = cards_.size(); i-- > 0;) {
            multi[i] = static_cast<int>(linear % static_cast<std::size_t>(cards_[i]));
            linear /= static_cast<std::size_t>(cards_[i]);
        }
        return multi;
    }

    // Advances a multi-index in row-major order; returns false after the last.
    bool next(std::vector<int>& multi) const {
        for (std::size_t i = cards_.size(); i-- > 0;) {
            if (++multi[i] < cards_[i]) return true;
            multi[i] = 0;
        }
        return false;
    }

    bool operator==(const StateSpace& other) const = default;

private:
    std::vector<int> cards_;
};

}  // namespace bnalg

// consistency.hpp -- the set of codes still compatible with the feedback

#pragma once

#include "mastermind/codes.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace mastermind {

/// A guess together with the response the codemaker gave for it.
struct PlayedMove
{
    Code guess;
    Response response;

    bool operator==(const PlayedMove &) const noexcept = default;
};

/// Codes consistent with every move in `history`, in lexicographic order.
///
/// Values are immutable; filtering returns a new set.
class ConsistentSet
{
public:
    ConsistentSet(Alphabet alphabet, std::vector<Code> codes,
                  std::vector<PlayedMove> history = {});

    const Alphabet &alphabet() const noexcept { return alphabet_; }
    std::span<const Code> codes() const noexcept { return codes_; }
    const std::vector<PlayedMove> &history() const noexcept { return history_; }

    std::size_t size() const noexcept { return codes_.size(); }
    bool empty() const noexcept { return codes_.empty(); }
    const Code &operator[](std::size_t i) const noexcept { return codes_[i]; }

    bool contains(const Code &code) const;

private:
    Alphabet alphabet_;
    std::vector<Code> codes_;
    std::vector<PlayedMove> history_;
};

/// True iff `candidate` would have produced every recorded response.
bool is_consistent(const Code &candidate, std::span<const PlayedMove> history);

/// Members whose response against `move.guess` equals `move.response`.
/// An empty result is legal and means the feedback was contradictory.
ConsistentSet filter_consistent(const ConsistentSet &set, const PlayedMove &move);

/// The whole space with an empty history.
ConsistentSet initial_set(const Alphabet &alphabet,
                          std::size_t budget = kDefaultSpaceBudget);

} // namespace mastermind

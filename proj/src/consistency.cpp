#include "mastermind/consistency.hpp"

#include <algorithm>
#include <stdexcept>

namespace mastermind {

ConsistentSet::ConsistentSet(Alphabet alphabet, std::vector<Code> codes,
                             std::vector<PlayedMove> history)
  : alphabet_(alphabet), codes_(std::move(codes)), history_(std::move(history))
{
    for (std::size_t i = 0; i < codes_.size(); ++i)
    {
        if (codes_[i].length() != alphabet_.ell() ||
            codes_[i].kappa() != alphabet_.kappa())
            throw std::invalid_argument("code " + codes_[i].str() +
                                        " does not belong to the alphabet");
        if (i > 0 && !(codes_[i - 1] < codes_[i]))
            throw std::invalid_argument(
                "consistent set must be strictly lexicographically ordered");
    }
}

bool ConsistentSet::contains(const Code &code) const
{
    return std::binary_search(codes_.begin(), codes_.end(), code);
}

bool is_consistent(const Code &candidate, std::span<const PlayedMove> history)
{
    return std::all_of(history.begin(), history.end(), [&](const PlayedMove &m) {
        return respond(candidate, m.guess) == m.response;
    });
}

ConsistentSet filter_consistent(const ConsistentSet &set, const PlayedMove &move)
{
    const Alphabet &alphabet = set.alphabet();
    if (move.guess.length() != alphabet.ell() ||
        move.guess.kappa() != alphabet.kappa())
        throw std::invalid_argument("guess " + move.guess.str() +
                                    " does not belong to the alphabet");

    std::vector<Code> kept;
    for (const Code &c : set.codes())
        if (respond(c, move.guess) == move.response)
            kept.push_back(c);

    std::vector<PlayedMove> history = set.history();
    history.push_back(move);
    return ConsistentSet(alphabet, std::move(kept), std::move(history));
}

ConsistentSet initial_set(const Alphabet &alphabet, std::size_t budget)
{
    return ConsistentSet(alphabet, enumerate_space(alphabet, budget));
}

} // namespace mastermind

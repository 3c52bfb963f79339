// engine.hpp -- one game of a strategy against an honest codemaker

#pragma once

#include "mastermind/codes.hpp"
#include "mastermind/consistency.hpp"
#include "mastermind/strategies.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace mastermind {

inline constexpr int kDefaultMaxMoves = 15;

/// What the codebreaker knew when it made one move.
struct MoveTelemetry
{
    int move_index = 0;               ///< 1-based
    std::size_t set_size_before = 0;  ///< |F| when the move was chosen
    std::size_t top_set_size = 0;     ///< size of the pool the move was drawn from
    bool secret_in_top = false;
    double draw_probability = 0.0;    ///< 1/top_set_size if the secret was in the pool
    Code guess;
    Response response;

    bool operator==(const MoveTelemetry &) const = default;
};

struct GameRecord
{
    Alphabet alphabet{6, 4};
    Code secret;
    StrategyKind strategy = StrategyKind::Entropy;
    Code first_move;
    std::vector<MoveTelemetry> moves;
    std::uint64_t seed = 0;
    bool deterministic = false;
    int max_moves = kDefaultMaxMoves;

    int n_moves() const noexcept { return int(moves.size()); }
    bool solved() const noexcept
    {
        return !moves.empty() && moves.back().response.is_win(alphabet.ell());
    }
};

/// A game that could not be completed. Carries the partial record.
class GameError : public std::runtime_error
{
public:
    GameError(const std::string &what, GameRecord partial)
      : std::runtime_error(what), partial_(std::move(partial))
    {
    }
    const GameRecord &partial() const noexcept { return partial_; }

private:
    GameRecord partial_;
};

struct PlayOptions
{
    int max_moves = kDefaultMaxMoves;
    bool deterministic = false;
    PoolCache *cache = nullptr;
    /// Full space to start from; enumerated per game when null.
    const ConsistentSet *initial = nullptr;
};

/// Plays `first`, then lets `strategy` choose every further move from the
/// consistent set until the secret is hit.
///
/// The rng is seeded from `seed`. Throws `GameError` when `max_moves` is
/// exceeded or the consistent set becomes empty.
GameRecord play_game(const Code &secret, StrategyKind strategy, const Code &first,
                     std::uint64_t seed, const PlayOptions &options = {});

struct ReplayResult
{
    bool ok = false;
    std::optional<int> first_divergent_move; ///< 1-based, when !ok
    std::string reason;

    explicit operator bool() const noexcept { return ok; }
};

/// Re-simulates the game from its stored seed and checks that every move and
/// telemetry row matches.
ReplayResult replay_check(const GameRecord &record);

nlohmann::json to_json(const GameRecord &record);
GameRecord game_record_from_json(const nlohmann::json &j);

} // namespace mastermind

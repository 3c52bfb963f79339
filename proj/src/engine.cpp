#include "mastermind/engine.hpp"

#include <algorithm>

namespace mastermind {

GameRecord play_game(const Code &secret, StrategyKind strategy, const Code &first,
                     std::uint64_t seed, const PlayOptions &options)
{
    const Alphabet alphabet(secret.kappa(), secret.length());
    if (first.kappa() != secret.kappa() || first.length() != secret.length())
        throw std::invalid_argument("first move " + first.str() +
                                    " does not match the secret's dimensions");
    if (options.max_moves < 1)
        throw std::invalid_argument("max_moves must be at least 1");

    GameRecord record;
    record.alphabet = alphabet;
    record.secret = secret;
    record.strategy = strategy;
    record.first_move = first;
    record.seed = seed;
    record.deterministic = options.deterministic;
    record.max_moves = options.max_moves;

    const SelectionOptions selection{
        options.deterministic ? TieBreak::Lexicographic : TieBreak::Uniform, {},
        options.cache};
    Rng rng(seed);

    ConsistentSet set = options.initial && options.initial->alphabet() == alphabet
                            ? *options.initial
                            : initial_set(alphabet);

    // The opening move is fixed, so its pool is itself.
    Code guess = first;
    std::size_t pool_size = 1;
    bool secret_in_pool = first == secret;

    for (;;)
    {
        if (record.n_moves() == options.max_moves)
            throw GameError("game for secret " + secret.str() + " with strategy " +
                                std::string(strategy_name(strategy)) +
                                " exceeded " + std::to_string(options.max_moves) +
                                " moves",
                            record);

        MoveTelemetry t;
        t.move_index = record.n_moves() + 1;
        t.set_size_before = set.size();
        t.top_set_size = pool_size;
        t.secret_in_top = secret_in_pool;
        t.draw_probability = secret_in_pool ? 1.0 / double(pool_size) : 0.0;
        t.guess = guess;
        t.response = respond(guess, secret);
        record.moves.push_back(t);
        if (t.response.is_win(alphabet.ell()))
            return record;

        set = filter_consistent(set, {guess, t.response});
        if (set.empty())
            throw GameError("consistent set became empty for secret " +
                                secret.str() + "; the codemaker is honest, so "
                                "this is an internal error",
                            record);

        const std::vector<Code> pool = candidate_pool(set, strategy, selection);
        pool_size = pool.size();
        secret_in_pool = std::binary_search(pool.begin(), pool.end(), secret);
        guess = draw(pool, rng, selection.tie_break);
    }
}

ReplayResult replay_check(const GameRecord &record)
{
    ReplayResult result;
    GameRecord again;
    try
    {
        again = play_game(record.secret, record.strategy, record.first_move,
                          record.seed,
                          {record.max_moves, record.deterministic, nullptr, nullptr});
    }
    catch (const std::exception &e)
    {
        result.first_divergent_move = 1;
        result.reason = e.what();
        return result;
    }

    const std::size_t n = std::min(record.moves.size(), again.moves.size());
    for (std::size_t i = 0; i < n; ++i)
    {
        if (!(record.moves[i] == again.moves[i]))
        {
            result.first_divergent_move = int(i) + 1;
            result.reason = "move " + std::to_string(i + 1) + " differs: recorded " +
                            record.moves[i].guess.str() + " " +
                            record.moves[i].response.str() + ", replayed " +
                            again.moves[i].guess.str() + " " +
                            again.moves[i].response.str();
            return result;
        }
    }
    if (record.moves.size() != again.moves.size())
    {
        result.first_divergent_move = int(n) + 1;
        result.reason = "recorded " + std::to_string(record.moves.size()) +
                        " moves, replay played " + std::to_string(again.moves.size());
        return result;
    }
    result.ok = true;
    return result;
}

nlohmann::json to_json(const GameRecord &record)
{
    nlohmann::json moves = nlohmann::json::array();
    for (const MoveTelemetry &m : record.moves)
    {
        moves.push_back({
            {"move_index", m.move_index},
            {"set_size_before", m.set_size_before},
            {"top_set_size", m.top_set_size},
            {"secret_in_top", m.secret_in_top},
            {"draw_probability", m.draw_probability},
            {"guess", m.guess.str()},
            {"response", {{"black", m.response.black}, {"white", m.response.white}}},
        });
    }
    return {
        {"kappa", record.alphabet.kappa()},
        {"ell", record.alphabet.ell()},
        {"secret", record.secret.str()},
        {"strategy", std::string(strategy_name(record.strategy))},
        {"first_move", record.first_move.str()},
        {"n_moves", record.n_moves()},
        {"seed", record.seed},
        {"deterministic", record.deterministic},
        {"max_moves", record.max_moves},
        {"moves", std::move(moves)},
    };
}

GameRecord game_record_from_json(const nlohmann::json &j)
{
    GameRecord r;
    r.alphabet = Alphabet(j.at("kappa").get<int>(), j.at("ell").get<int>());
    r.secret = parse_code(j.at("secret").get<std::string>(), r.alphabet);
    r.strategy = parse_strategy(j.at("strategy").get<std::string>());
    r.first_move = parse_code(j.at("first_move").get<std::string>(), r.alphabet);
    r.seed = j.at("seed").get<std::uint64_t>();
    r.deterministic = j.value("deterministic", false);
    r.max_moves = j.value("max_moves", kDefaultMaxMoves);
    for (const auto &m : j.at("moves"))
    {
        MoveTelemetry t;
        t.move_index = m.at("move_index").get<int>();
        t.set_size_before = m.at("set_size_before").get<std::size_t>();
        t.top_set_size = m.at("top_set_size").get<std::size_t>();
        t.secret_in_top = m.at("secret_in_top").get<bool>();
        t.draw_probability = m.at("draw_probability").get<double>();
        t.guess = parse_code(m.at("guess").get<std::string>(), r.alphabet);
        t.response = {m.at("response").at("black").get<int>(),
                      m.at("response").at("white").get<int>()};
        r.moves.push_back(t);
    }
    if (j.contains("n_moves") && j.at("n_moves").get<int>() != r.n_moves())
        throw std::invalid_argument("n_moves does not match the move list");
    return r;
}

} // namespace mastermind

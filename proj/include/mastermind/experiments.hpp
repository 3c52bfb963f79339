// experiments.hpp -- batch runs, aggregation and pairwise comparison

#pragma once

#include "mastermind/codes.hpp"
#include "mastermind/engine.hpp"
#include "mastermind/strategies.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace mastermind {

/// A multiset of secrets covering the space: every code at least once and at
/// most twice.
struct InstanceSet
{
    Alphabet alphabet{6, 4};
    std::vector<Code> codes;
    std::uint64_t seed = 0;
};

/// All codes once plus `size - kappa^ell` distinct extra codes, shuffled.
/// Throws `std::invalid_argument` unless `kappa^ell <= size <= 2 kappa^ell`.
InstanceSet generate_instance_set(const Alphabet &alphabet, std::size_t size,
                                  std::uint64_t seed);

/// Instance file: a `# kappa=<k> ell=<l> seed=<s>` header, then one code per line.
void write_instance_file(const std::filesystem::path &path, const InstanceSet &set);
InstanceSet read_instance_file(const std::filesystem::path &path);

struct StrategyRun
{
    StrategyKind kind = StrategyKind::Entropy;
    FirstMove first_move;
    std::string label; ///< filled in by run_experiment when empty
};

enum class RunMode
{
    FullSpace, ///< every code of the space, `reps` times
    Instances, ///< the secrets of an instance set, once each
};

struct ExperimentConfig
{
    Alphabet alphabet{6, 4};
    std::vector<StrategyRun> strategies;
    RunMode mode = RunMode::FullSpace;
    int reps = 10;
    std::optional<InstanceSet> instances;
    std::uint64_t seed = 1;
    bool deterministic = false;
    int max_moves = kDefaultMaxMoves;
    unsigned threads = 0; ///< 0: hardware concurrency capped by MM_THREADS
};

struct PerMoveStats
{
    int move = 0;
    std::size_t games = 0; ///< games that reached this move
    double mean_set_size = 0.0;
    double sd_set_size = 0.0;
    double frac_secret_in_top = 0.0;
    double mean_draw_prob = 0.0;
    double mean_top_set_size = 0.0;
};

struct StrategySummary
{
    std::string label;
    StrategyKind kind = StrategyKind::Entropy;
    std::string first_move;
    std::size_t games = 0;
    double mean = 0.0;
    double sem = 0.0;
    double sd = 0.0;
    double median = 0.0;
    int max = 0;
    long total_score = 0;
    std::map<int, std::size_t> histogram; ///< moves -> games
    std::vector<PerMoveStats> per_move;   ///< indexed from move 1

    const PerMoveStats *at_move(int move) const;
};

struct MoveDiff
{
    int move = 0;
    std::size_t count_a = 0;
    std::size_t count_b = 0;
    long count_diff = 0; ///< count_a - count_b
    long score_diff = 0; ///< count_diff * move
};

struct PairComparison
{
    std::string a;
    std::string b;
    std::vector<MoveDiff> diffs;
    long total_score_a = 0;
    long total_score_b = 0;
    double p_value = 1.0; ///< paired signed-rank test on per-game move counts
};

struct RunSummary
{
    std::vector<StrategySummary> strategies;
    std::vector<PairComparison> pairs;

    const StrategySummary &strategy(const std::string &label) const;
    const PairComparison &pair(const std::string &a, const std::string &b) const;
};

struct StrategyGames
{
    StrategyRun run;
    std::vector<GameRecord> records;
};

struct ExperimentResult
{
    std::vector<StrategyGames> games;
    RunSummary summary;
};

/// Raised when a game fails; names the offending secret, strategy and seed.
class ExperimentError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Per-strategy statistics. Per-move rows only count games still running at
/// that move. Throws `std::invalid_argument` on an empty or mixed input.
StrategySummary summarize(const std::string &label, std::span<const GameRecord> records);

/// Move-count differences and significance for two runs over the same
/// secrets in the same order. Throws `std::invalid_argument` otherwise.
PairComparison compare(const std::string &label_a, std::span<const GameRecord> a,
                       const std::string &label_b, std::span<const GameRecord> b);

/// Summaries of every strategy and comparisons of every pair.
RunSummary aggregate(std::span<const StrategyGames> games);

/// Plays every secret in scope for every strategy. Secrets and their order
/// are identical across strategies; each game draws from its own stream,
/// split from the master seed by strategy label and game index.
ExperimentResult run_experiment(
    ExperimentConfig config,
    const std::function<void(std::size_t done, std::size_t total)> &progress = {});

/// Worker count: `requested` if nonzero, else hardware concurrency; capped
/// by the MM_THREADS environment variable.
unsigned worker_count(unsigned requested = 0);

/// Seed of game `index` for the strategy labeled `label`.
std::uint64_t game_seed(std::uint64_t master, const std::string &label,
                        std::size_t index);

nlohmann::json to_json(const RunSummary &summary);

/// summary.json, games.jsonl, permove.csv, hist.csv and diff.csv.
void write_outputs(const std::filesystem::path &dir, const ExperimentResult &result,
                   const ExperimentConfig &config);

void write_games_jsonl(const std::filesystem::path &path,
                       std::span<const StrategyGames> games);
/// Records grouped by their "label" field (the strategy name when absent),
/// in order of first appearance.
std::vector<StrategyGames> read_games_jsonl(const std::filesystem::path &path);

void write_diff_csv(const std::filesystem::path &path,
                    std::span<const PairComparison> pairs);

/// "entropy: mean 4.413 ± 0.006, max 6, median 4, total 57189 (12960 games)"
std::string one_line_summary(const StrategySummary &s);

} // namespace mastermind

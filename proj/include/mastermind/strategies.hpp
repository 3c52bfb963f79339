// strategies.hpp -- partition scoring and next-move selection

#pragma once

#include "mastermind/codes.hpp"
#include "mastermind/consistency.hpp"
#include "mastermind/rng.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mastermind {

enum class StrategyKind
{
    Random,
    MinWorst,
    ExpectedSize,
    MostParts,
    Entropy,
    Plus,
    Plus2,
    Plus2Swapped,
};

/// Stable identifier used on the command line and in the HTTP API,
/// e.g. "most-parts".
std::string_view strategy_name(StrategyKind kind) noexcept;

/// Inverse of `strategy_name`; throws `std::invalid_argument` for unknown ids.
StrategyKind parse_strategy(std::string_view name);

/// Every strategy, in declaration order.
std::span<const StrategyKind> all_strategies() noexcept;

/// True for the four strategies that assign a single score per candidate.
bool is_base_scorer(StrategyKind kind) noexcept;

/// How one candidate splits the consistent set: for each response, the
/// number of other members that would answer it if the candidate were the
/// secret. The candidate itself is never counted.
class PartitionTable
{
public:
    PartitionTable(Code candidate, int ell, std::vector<std::uint32_t> counts);

    const Code &candidate() const noexcept { return candidate_; }
    std::uint32_t count(Response r) const;
    std::uint32_t total() const noexcept { return total_; }

    /// Number of nonempty partitions.
    int parts() const noexcept;

    /// Size of the largest partition.
    std::uint32_t largest() const noexcept;

    /// Nonempty cells ordered by (black, white).
    std::vector<std::pair<Response, std::uint32_t>> entries() const;

    /// Raw counts indexed by `Response::slot`.
    std::span<const std::uint32_t> slots() const noexcept { return counts_; }

private:
    Code candidate_;
    int ell_;
    std::vector<std::uint32_t> counts_;
    std::uint32_t total_ = 0;
};

/// Partition table of a single candidate. Throws `std::invalid_argument` if
/// the set is empty.
PartitionTable partition_table(const Code &candidate, const ConsistentSet &set);

/// Partition tables of every member of the set, in set order.
std::vector<PartitionTable> partition_tables(const ConsistentSet &set);

struct ScoringOptions
{
    /// Logarithm base for the entropy score. Argmax does not depend on it.
    double entropy_log_base = std::numbers::e;
};

/// Score of one candidate under a base scorer (MinWorst, ExpectedSize,
/// MostParts or Entropy).
///
/// ExpectedSize weighs each cell by the prior of its response, estimated
/// from the partition tables of all members of the set, so evaluating it
/// costs a full pass over the set.
double score(const Code &candidate, const ConsistentSet &set, StrategyKind kind,
             const ScoringOptions &options = {});

/// Scores of every member and the subset attaining the optimum (the minimum
/// for MinWorst and ExpectedSize, the maximum for MostParts and Entropy).
/// Entropy ties are resolved up to `kEntropyTieTolerance`.
struct ScoredSet
{
    StrategyKind kind;
    std::vector<double> scores; ///< aligned with the set's codes
    std::vector<Code> top;      ///< lexicographic order
    double best = 0.0;
};

inline constexpr double kEntropyTieTolerance = 1e-10;

ScoredSet top_scorers(const ConsistentSet &set, StrategyKind kind,
                      const ScoringOptions &options = {});

/// Memo of candidate pools keyed by the content of the consistent set.
///
/// Pools are a pure function of the set and the strategy, so the cache is
/// shared across games. Thread-safe.
class PoolCache
{
public:
    explicit PoolCache(std::size_t min_set_size = 32,
                       std::size_t max_entries = 200000)
      : min_set_size_(min_set_size), max_entries_(max_entries)
    {
    }

    std::optional<std::vector<Code>> find(const ConsistentSet &set,
                                          StrategyKind kind) const;
    void insert(const ConsistentSet &set, StrategyKind kind,
                std::vector<Code> pool);

    bool eligible(const ConsistentSet &set) const noexcept
    {
        return set.size() >= min_set_size_;
    }
    std::size_t size() const;

private:
    struct Key
    {
        StrategyKind kind;
        std::vector<std::uint32_t> ranks;
        bool operator==(const Key &) const = default;
    };
    struct KeyHash
    {
        std::size_t operator()(const Key &k) const noexcept;
    };
    static Key make_key(const ConsistentSet &set, StrategyKind kind);

    std::size_t min_set_size_;
    std::size_t max_entries_;
    mutable std::mutex mutex_;
    std::unordered_map<Key, std::vector<Code>, KeyHash> map_;
};

enum class TieBreak
{
    Uniform,       ///< uniform draw from the pool using the game's rng
    Lexicographic, ///< first pool member; consumes no randomness
};

struct SelectionOptions
{
    TieBreak tie_break = TieBreak::Uniform;
    ScoringOptions scoring{};
    PoolCache *cache = nullptr;
};

/// The codes the next guess is drawn from:
///
/// - Random: the whole set.
/// - base scorers: their top scorers.
/// - Plus: Entropy top ∩ MostParts top, or their union when disjoint.
/// - Plus2: the Entropy top scorers with the best MostParts score.
/// - Plus2Swapped: the MostParts top scorers with the best Entropy score.
///
/// The pool is always a nonempty subset of the set, in lexicographic order.
/// Throws `std::invalid_argument` if the set is empty.
std::vector<Code> candidate_pool(const ConsistentSet &set, StrategyKind kind,
                                 const SelectionOptions &options = {});

/// Picks a member of `pool` according to `tie_break`.
Code draw(std::span<const Code> pool, Rng &rng, TieBreak tie_break);

Code next_move(const ConsistentSet &set, StrategyKind kind, Rng &rng,
               const SelectionOptions &options = {});
Code next_move_plus(const ConsistentSet &set, Rng &rng,
                    const SelectionOptions &options = {});
Code next_move_plus2(const ConsistentSet &set, Rng &rng,
                     const SelectionOptions &options = {});

/// Opening move rule.
///
/// - AbcaStyle cycles through the first `ell/2 + 1` letters (ABCA for ell 4).
/// - AbcdStyle uses the first `ell` distinct letters and needs `kappa >= ell`.
/// - Explicit plays a validated literal.
class FirstMove
{
public:
    enum class Policy { AbcaStyle, AbcdStyle, Explicit };

    FirstMove() = default;
    static FirstMove abca_style() { return FirstMove(Policy::AbcaStyle, {}); }
    static FirstMove abcd_style() { return FirstMove(Policy::AbcdStyle, {}); }
    static FirstMove literal(std::string code)
    {
        return FirstMove(Policy::Explicit, std::move(code));
    }

    /// Accepts "abca-style", "abcd-style" or a literal code.
    static FirstMove parse(std::string_view text);

    Policy policy() const noexcept { return policy_; }
    const std::string &text() const noexcept { return literal_; }
    std::string str() const;

    /// Resolves the policy; throws `std::invalid_argument` when it cannot be
    /// applied to the alphabet.
    Code resolve(const Alphabet &alphabet) const;

private:
    FirstMove(Policy p, std::string s) : policy_(p), literal_(std::move(s)) {}

    Policy policy_ = Policy::AbcaStyle;
    std::string literal_;
};

inline Code first_move(const Alphabet &alphabet, const FirstMove &policy)
{
    return policy.resolve(alphabet);
}

} // namespace mastermind

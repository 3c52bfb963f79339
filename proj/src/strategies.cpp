#include "mastermind/strategies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <stdexcept>

namespace mastermind {

namespace {

constexpr std::array<StrategyKind, 8> kAllStrategies = {
    StrategyKind::Random,    StrategyKind::MinWorst, StrategyKind::ExpectedSize,
    StrategyKind::MostParts, StrategyKind::Entropy,  StrategyKind::Plus,
    StrategyKind::Plus2,     StrategyKind::Plus2Swapped,
};

int slot_count(int ell) { return (ell + 1) * (ell + 1); }

// Row i holds the partition counts of member i against all other members.
struct PartitionMatrix
{
    std::size_t n = 0;
    int slots = 0;
    std::vector<std::uint32_t> cells;

    std::span<const std::uint32_t> row(std::size_t i) const
    {
        return {cells.data() + i * slots, std::size_t(slots)};
    }
};

PartitionMatrix build_matrix(const ConsistentSet &set)
{
    const int ell = set.alphabet().ell();
    PartitionMatrix m;
    m.n = set.size();
    m.slots = slot_count(ell);
    m.cells.assign(m.n * m.slots, 0);
    auto codes = set.codes();
    for (std::size_t i = 0; i < m.n; ++i)
    {
        for (std::size_t j = i + 1; j < m.n; ++j)
        {
            const int s = respond(codes[i], codes[j]).slot(ell);
            ++m.cells[i * m.slots + s];
            ++m.cells[j * m.slots + s];
        }
    }
    return m;
}

std::uint32_t worst_of(std::span<const std::uint32_t> row)
{
    return *std::max_element(row.begin(), row.end());
}

int parts_of(std::span<const std::uint32_t> row)
{
    return int(std::count_if(row.begin(), row.end(),
                             [](std::uint32_t c) { return c > 0; }));
}

double entropy_of(std::span<const std::uint32_t> row, double log_base)
{
    std::uint64_t total = 0;
    for (auto c : row)
        total += c;
    if (total == 0)
        return 0.0;
    double h = 0.0;
    for (auto c : row)
    {
        if (c == 0)
            continue;
        const double p = double(c) / double(total);
        h -= p * std::log(p);
    }
    return h / std::log(log_base);
}

// Column sums of the partition matrix: how often each response occurs over
// all ordered pairs of distinct members.
std::vector<std::uint64_t> response_priors(const PartitionMatrix &m)
{
    std::vector<std::uint64_t> cols(m.slots, 0);
    for (std::size_t i = 0; i < m.n; ++i)
    {
        auto row = m.row(i);
        for (int s = 0; s < m.slots; ++s)
            cols[s] += row[s];
    }
    return cols;
}

std::uint64_t weighted_size(std::span<const std::uint32_t> row,
                            const std::vector<std::uint64_t> &cols)
{
    std::uint64_t num = 0;
    for (std::size_t s = 0; s < row.size(); ++s)
        num += cols[s] * row[s];
    return num;
}

void require_base_scorer(StrategyKind kind)
{
    if (!is_base_scorer(kind))
        throw std::invalid_argument(std::string(strategy_name(kind)) +
                                    " does not assign per-candidate scores");
}

void require_nonempty(const ConsistentSet &set)
{
    if (set.empty())
        throw std::invalid_argument("consistent set is empty");
}

// Members of `pool` (a sorted subset of the set) whose score is optimal.
// `values` is aligned with the set.
std::vector<Code> best_of(const ConsistentSet &set, std::span<const Code> pool,
                          const std::vector<double> &values, bool maximize,
                          double tolerance)
{
    std::vector<std::size_t> idx;
    idx.reserve(pool.size());
    auto codes = set.codes();
    auto it = codes.begin();
    for (const Code &c : pool)
    {
        it = std::lower_bound(it, codes.end(), c);
        idx.push_back(std::size_t(it - codes.begin()));
    }
    double best = values[idx.front()];
    for (auto i : idx)
        best = maximize ? std::max(best, values[i]) : std::min(best, values[i]);
    std::vector<Code> out;
    for (auto i : idx)
        if (std::abs(values[i] - best) <= tolerance)
            out.push_back(codes[i]);
    return out;
}

ScoredSet scored_from_matrix(const ConsistentSet &set, const PartitionMatrix &m,
                             StrategyKind kind, const ScoringOptions &options)
{
    ScoredSet out{kind, std::vector<double>(m.n, 0.0), {}, 0.0};
    bool maximize = false;
    double tolerance = 0.0;

    switch (kind)
    {
    case StrategyKind::MinWorst:
        for (std::size_t i = 0; i < m.n; ++i)
            out.scores[i] = double(worst_of(m.row(i)));
        break;
    case StrategyKind::MostParts:
        maximize = true;
        for (std::size_t i = 0; i < m.n; ++i)
            out.scores[i] = double(parts_of(m.row(i)));
        break;
    case StrategyKind::Entropy:
        maximize = true;
        tolerance = kEntropyTieTolerance;
        for (std::size_t i = 0; i < m.n; ++i)
            out.scores[i] = entropy_of(m.row(i), options.entropy_log_base);
        break;
    case StrategyKind::ExpectedSize: {
        // Compare integer numerators; the common denominator only rescales.
        auto cols = response_priors(m);
        std::uint64_t grand = 0;
        for (auto c : cols)
            grand += c;
        std::vector<double> numerators(m.n);
        for (std::size_t i = 0; i < m.n; ++i)
        {
            const std::uint64_t num = weighted_size(m.row(i), cols);
            numerators[i] = double(num);
            out.scores[i] = grand ? double(num) / double(grand) : 0.0;
        }
        out.top = best_of(set, set.codes(), numerators, false, 0.0);
        const std::size_t i0 =
            std::size_t(std::lower_bound(set.codes().begin(), set.codes().end(),
                                         out.top.front()) -
                        set.codes().begin());
        out.best = out.scores[i0];
        return out;
    }
    default:
        require_base_scorer(kind);
    }

    out.top = best_of(set, set.codes(), out.scores, maximize, tolerance);
    out.best = maximize ? *std::max_element(out.scores.begin(), out.scores.end())
                        : *std::min_element(out.scores.begin(), out.scores.end());
    return out;
}

std::vector<Code> compute_pool(const ConsistentSet &set, StrategyKind kind,
                               const ScoringOptions &options)
{
    if (kind == StrategyKind::Random)
        return {set.codes().begin(), set.codes().end()};

    const PartitionMatrix m = build_matrix(set);
    if (is_base_scorer(kind))
        return scored_from_matrix(set, m, kind, options).top;

    const ScoredSet entropy = scored_from_matrix(set, m, StrategyKind::Entropy, options);
    const ScoredSet parts = scored_from_matrix(set, m, StrategyKind::MostParts, options);

    switch (kind)
    {
    case StrategyKind::Plus: {
        std::vector<Code> both;
        std::set_intersection(entropy.top.begin(), entropy.top.end(),
                              parts.top.begin(), parts.top.end(),
                              std::back_inserter(both));
        if (!both.empty())
            return both;
        std::set_union(entropy.top.begin(), entropy.top.end(), parts.top.begin(),
                       parts.top.end(), std::back_inserter(both));
        return both;
    }
    case StrategyKind::Plus2:
        return best_of(set, entropy.top, parts.scores, true, 0.0);
    case StrategyKind::Plus2Swapped:
        return best_of(set, parts.top, entropy.scores, true, kEntropyTieTolerance);
    default:
        throw std::logic_error("unhandled strategy");
    }
}

} // namespace

std::string_view strategy_name(StrategyKind kind) noexcept
{
    switch (kind)
    {
    case StrategyKind::Random: return "random";
    case StrategyKind::MinWorst: return "min-worst";
    case StrategyKind::ExpectedSize: return "expected-size";
    case StrategyKind::MostParts: return "most-parts";
    case StrategyKind::Entropy: return "entropy";
    case StrategyKind::Plus: return "plus";
    case StrategyKind::Plus2: return "plus2";
    case StrategyKind::Plus2Swapped: return "plus2-swapped";
    }
    return "?";
}

StrategyKind parse_strategy(std::string_view name)
{
    for (StrategyKind k : kAllStrategies)
        if (strategy_name(k) == name)
            return k;
    throw std::invalid_argument("unknown strategy \"" + std::string(name) + "\"");
}

std::span<const StrategyKind> all_strategies() noexcept { return kAllStrategies; }

bool is_base_scorer(StrategyKind kind) noexcept
{
    return kind == StrategyKind::MinWorst || kind == StrategyKind::ExpectedSize ||
           kind == StrategyKind::MostParts || kind == StrategyKind::Entropy;
}

PartitionTable::PartitionTable(Code candidate, int ell,
                               std::vector<std::uint32_t> counts)
  : candidate_(candidate), ell_(ell), counts_(std::move(counts))
{
    if (counts_.size() != std::size_t(slot_count(ell)))
        throw std::invalid_argument("partition table has the wrong number of cells");
    for (auto c : counts_)
        total_ += c;
}

std::uint32_t PartitionTable::count(Response r) const
{
    if (r.black < 0 || r.white < 0 || r.black + r.white > ell_)
        return 0;
    return counts_[r.slot(ell_)];
}

int PartitionTable::parts() const noexcept { return parts_of(counts_); }

std::uint32_t PartitionTable::largest() const noexcept { return worst_of(counts_); }

std::vector<std::pair<Response, std::uint32_t>> PartitionTable::entries() const
{
    std::vector<std::pair<Response, std::uint32_t>> out;
    for (int s = 0; s < int(counts_.size()); ++s)
        if (counts_[s] > 0)
            out.emplace_back(Response::from_slot(s, ell_), counts_[s]);
    return out;
}

PartitionTable partition_table(const Code &candidate, const ConsistentSet &set)
{
    require_nonempty(set);
    const int ell = set.alphabet().ell();
    std::vector<std::uint32_t> counts(slot_count(ell), 0);
    for (const Code &m : set.codes())
        if (m != candidate)
            ++counts[respond(m, candidate).slot(ell)];
    return PartitionTable(candidate, ell, std::move(counts));
}

std::vector<PartitionTable> partition_tables(const ConsistentSet &set)
{
    require_nonempty(set);
    const PartitionMatrix m = build_matrix(set);
    std::vector<PartitionTable> out;
    out.reserve(m.n);
    for (std::size_t i = 0; i < m.n; ++i)
    {
        auto row = m.row(i);
        out.emplace_back(set[i], set.alphabet().ell(),
                         std::vector<std::uint32_t>(row.begin(), row.end()));
    }
    return out;
}

double score(const Code &candidate, const ConsistentSet &set, StrategyKind kind,
             const ScoringOptions &options)
{
    require_base_scorer(kind);
    const PartitionTable table = partition_table(candidate, set);
    switch (kind)
    {
    case StrategyKind::MinWorst: return double(table.largest());
    case StrategyKind::MostParts: return double(table.parts());
    case StrategyKind::Entropy: return entropy_of(table.slots(), options.entropy_log_base);
    default: break;
    }
    auto cols = response_priors(build_matrix(set));
    std::uint64_t grand = 0;
    for (auto c : cols)
        grand += c;
    return grand ? double(weighted_size(table.slots(), cols)) / double(grand) : 0.0;
}

ScoredSet top_scorers(const ConsistentSet &set, StrategyKind kind,
                      const ScoringOptions &options)
{
    require_base_scorer(kind);
    require_nonempty(set);
    return scored_from_matrix(set, build_matrix(set), kind, options);
}

PoolCache::Key PoolCache::make_key(const ConsistentSet &set, StrategyKind kind)
{
    Key k{kind, {}};
    k.ranks.reserve(set.size());
    for (const Code &c : set.codes())
        k.ranks.push_back(std::uint32_t(c.rank()));
    return k;
}

std::size_t PoolCache::KeyHash::operator()(const Key &k) const noexcept
{
    std::uint64_t h = mix64(std::uint64_t(k.kind));
    for (auto r : k.ranks)
        h = mix64(h ^ r);
    return std::size_t(h);
}

std::optional<std::vector<Code>> PoolCache::find(const ConsistentSet &set,
                                                 StrategyKind kind) const
{
    const Key key = make_key(set, kind);
    std::lock_guard lock(mutex_);
    auto it = map_.find(key);
    if (it == map_.end())
        return std::nullopt;
    return it->second;
}

void PoolCache::insert(const ConsistentSet &set, StrategyKind kind,
                       std::vector<Code> pool)
{
    Key key = make_key(set, kind);
    std::lock_guard lock(mutex_);
    if (map_.size() < max_entries_)
        map_.emplace(std::move(key), std::move(pool));
}

std::size_t PoolCache::size() const
{
    std::lock_guard lock(mutex_);
    return map_.size();
}

std::vector<Code> candidate_pool(const ConsistentSet &set, StrategyKind kind,
                                 const SelectionOptions &options)
{
    require_nonempty(set);
    PoolCache *cache = options.cache;
    if (cache && cache->eligible(set) && kind != StrategyKind::Random)
    {
        if (auto hit = cache->find(set, kind))
            return *std::move(hit);
        auto pool = compute_pool(set, kind, options.scoring);
        cache->insert(set, kind, pool);
        return pool;
    }
    return compute_pool(set, kind, options.scoring);
}

Code draw(std::span<const Code> pool, Rng &rng, TieBreak tie_break)
{
    if (pool.empty())
        throw std::invalid_argument("cannot draw from an empty pool");
    if (tie_break == TieBreak::Lexicographic)
        return pool.front();
    return pool[rng.uniform_index(pool.size())];
}

Code next_move(const ConsistentSet &set, StrategyKind kind, Rng &rng,
               const SelectionOptions &options)
{
    if (kind == StrategyKind::Plus)
        return next_move_plus(set, rng, options);
    if (kind == StrategyKind::Plus2)
        return next_move_plus2(set, rng, options);
    return draw(candidate_pool(set, kind, options), rng, options.tie_break);
}

Code next_move_plus(const ConsistentSet &set, Rng &rng, const SelectionOptions &options)
{
    return draw(candidate_pool(set, StrategyKind::Plus, options), rng,
                options.tie_break);
}

Code next_move_plus2(const ConsistentSet &set, Rng &rng,
                     const SelectionOptions &options)
{
    return draw(candidate_pool(set, StrategyKind::Plus2, options), rng,
                options.tie_break);
}

FirstMove FirstMove::parse(std::string_view text)
{
    if (text == "abca-style" || text == "ABCA-style")
        return abca_style();
    if (text == "abcd-style" || text == "ABCD-style")
        return abcd_style();
    if (text.empty())
        throw std::invalid_argument("first move must not be empty");
    return literal(std::string(text));
}

std::string FirstMove::str() const
{
    switch (policy_)
    {
    case Policy::AbcaStyle: return "abca-style";
    case Policy::AbcdStyle: return "abcd-style";
    case Policy::Explicit: return literal_;
    }
    return literal_;
}

Code FirstMove::resolve(const Alphabet &alphabet) const
{
    const int ell = alphabet.ell();
    std::vector<int> symbols(ell);
    switch (policy_)
    {
    case Policy::AbcaStyle: {
        const int cycle = std::min(alphabet.kappa(), ell / 2 + 1);
        for (int i = 0; i < ell; ++i)
            symbols[i] = i % cycle;
        return Code(alphabet, symbols);
    }
    case Policy::AbcdStyle:
        if (alphabet.kappa() < ell)
            throw std::invalid_argument("abcd-style first move needs at least " +
                                        std::to_string(ell) + " colors");
        for (int i = 0; i < ell; ++i)
            symbols[i] = i;
        return Code(alphabet, symbols);
    case Policy::Explicit:
        return parse_code(literal_, alphabet);
    }
    throw std::logic_error("unhandled first-move policy");
}

} // namespace mastermind

#include "mastermind/experiments.hpp"

#include "mastermind/rng.hpp"
#include "mastermind/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

namespace mastermind {

namespace {

void shuffle(std::vector<std::size_t> &v, Rng &rng)
{
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.uniform_index(i)]);
}

std::string format_double(double v, int precision)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << v;
    return os.str();
}

std::string csv_double(double v)
{
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

std::ofstream open_out(const std::filesystem::path &path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    return out;
}

void assign_labels(std::vector<StrategyRun> &runs, const Alphabet &alphabet)
{
    std::map<StrategyKind, int> uses;
    for (const auto &r : runs)
        ++uses[r.kind];
    std::set<std::string> seen;
    for (auto &r : runs)
    {
        if (r.label.empty())
        {
            r.label = std::string(strategy_name(r.kind));
            if (uses[r.kind] > 1)
                r.label += "@" + r.first_move.resolve(alphabet).str();
        }
        if (!seen.insert(r.label).second)
            throw std::invalid_argument("duplicate strategy label \"" + r.label + "\"");
    }
}

} // namespace

InstanceSet generate_instance_set(const Alphabet &alphabet, std::size_t size,
                                  std::uint64_t seed)
{
    const std::size_t n = alphabet.space_size();
    if (size < n || size > 2 * n)
        throw std::invalid_argument("instance set size " + std::to_string(size) +
                                    " must lie in [" + std::to_string(n) + ", " +
                                    std::to_string(2 * n) + "]");

    const std::vector<Code> space = enumerate_space(alphabet);
    Rng rng(seed);

    // distinct extras: a partial Fisher-Yates over the space indices
    std::vector<std::size_t> pick(n);
    std::iota(pick.begin(), pick.end(), 0);
    const std::size_t extra = size - n;
    for (std::size_t i = 0; i < extra; ++i)
        std::swap(pick[i], pick[i + rng.uniform_index(n - i)]);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    order.insert(order.end(), pick.begin(), pick.begin() + std::ptrdiff_t(extra));
    shuffle(order, rng);

    InstanceSet out{alphabet, {}, seed};
    out.codes.reserve(size);
    for (std::size_t i : order)
        out.codes.push_back(space[i]);
    return out;
}

void write_instance_file(const std::filesystem::path &path, const InstanceSet &set)
{
    auto out = open_out(path);
    out << "# kappa=" << set.alphabet.kappa() << " ell=" << set.alphabet.ell()
        << " seed=" << set.seed << "\n";
    for (const Code &c : set.codes)
        out << c.str() << "\n";
}

InstanceSet read_instance_file(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot read instance file " + path.string());

    std::string line;
    std::getline(in, line);
    int kappa = 0, ell = 0;
    unsigned long long seed = 0;
    if (std::sscanf(line.c_str(), "# kappa=%d ell=%d seed=%llu", &kappa, &ell, &seed) != 3)
        throw std::invalid_argument(path.string() +
                                    ": expected header '# kappa=<k> ell=<l> seed=<s>'");

    InstanceSet set{Alphabet(kappa, ell), {}, seed};
    std::size_t lineno = 1;
    while (std::getline(in, line))
    {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        try
        {
            set.codes.push_back(parse_code(line, set.alphabet));
        }
        catch (const std::invalid_argument &e)
        {
            throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                        ": " + e.what());
        }
    }

    std::vector<int> seen(set.alphabet.space_size(), 0);
    for (const Code &c : set.codes)
        if (++seen[c.rank()] > 2)
            throw std::invalid_argument(path.string() + ": " + c.str() +
                                        " appears more than twice");
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw std::invalid_argument(path.string() +
                                    ": instance set does not cover the whole space");
    return set;
}

const PerMoveStats *StrategySummary::at_move(int move) const
{
    if (move < 1 || std::size_t(move) > per_move.size())
        return nullptr;
    return &per_move[std::size_t(move) - 1];
}

const StrategySummary &RunSummary::strategy(const std::string &label) const
{
    for (const auto &s : strategies)
        if (s.label == label)
            return s;
    throw std::out_of_range("no strategy labeled \"" + label + "\"");
}

const PairComparison &RunSummary::pair(const std::string &a, const std::string &b) const
{
    for (const auto &p : pairs)
        if (p.a == a && p.b == b)
            return p;
    throw std::out_of_range("no comparison of \"" + a + "\" with \"" + b + "\"");
}

StrategySummary summarize(const std::string &label, std::span<const GameRecord> records)
{
    if (records.empty())
        throw std::invalid_argument("cannot summarize an empty run");

    StrategySummary s;
    s.label = label;
    s.kind = records.front().strategy;
    s.first_move = records.front().first_move.str();
    s.games = records.size();

    const Alphabet alphabet = records.front().alphabet;
    std::vector<double> moves;
    moves.reserve(records.size());
    int longest = 0;
    for (const GameRecord &r : records)
    {
        if (!(r.alphabet == alphabet))
            throw std::invalid_argument("records mix game dimensions");
        moves.push_back(r.n_moves());
        ++s.histogram[r.n_moves()];
        s.total_score += r.n_moves();
        longest = std::max(longest, r.n_moves());
    }
    const stats::Summary m = stats::mean_sem(moves);
    s.mean = m.mean;
    s.sem = m.sem;
    s.sd = m.sd;
    s.median = m.median;
    s.max = int(m.max);

    for (int k = 1; k <= longest; ++k)
    {
        PerMoveStats row;
        row.move = k;
        std::vector<double> sizes;
        double in_top = 0.0, draw = 0.0, top = 0.0;
        for (const GameRecord &r : records)
        {
            if (r.n_moves() < k)
                continue;
            const MoveTelemetry &t = r.moves[std::size_t(k) - 1];
            sizes.push_back(double(t.set_size_before));
            in_top += t.secret_in_top ? 1.0 : 0.0;
            draw += t.draw_probability;
            top += double(t.top_set_size);
        }
        row.games = sizes.size();
        const stats::Summary sz = stats::mean_sem(sizes);
        row.mean_set_size = sz.mean;
        row.sd_set_size = sz.sd;
        row.frac_secret_in_top = in_top / double(row.games);
        row.mean_draw_prob = draw / double(row.games);
        row.mean_top_set_size = top / double(row.games);
        s.per_move.push_back(row);
    }
    return s;
}

PairComparison compare(const std::string &label_a, std::span<const GameRecord> a,
                       const std::string &label_b, std::span<const GameRecord> b)
{
    if (a.size() != b.size() || a.empty())
        throw std::invalid_argument("cannot pair " + std::to_string(a.size()) +
                                    " games of " + label_a + " with " +
                                    std::to_string(b.size()) + " games of " + label_b);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i].alphabet == b[i].alphabet) || a[i].secret != b[i].secret)
            throw std::invalid_argument("runs " + label_a + " and " + label_b +
                                        " are not paired: game " + std::to_string(i) +
                                        " has secrets " + a[i].secret.str() + " and " +
                                        b[i].secret.str());

    PairComparison p;
    p.a = label_a;
    p.b = label_b;
    std::map<int, std::size_t> ha, hb;
    std::vector<double> ma, mb;
    int longest = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        ++ha[a[i].n_moves()];
        ++hb[b[i].n_moves()];
        p.total_score_a += a[i].n_moves();
        p.total_score_b += b[i].n_moves();
        ma.push_back(a[i].n_moves());
        mb.push_back(b[i].n_moves());
        longest = std::max({longest, a[i].n_moves(), b[i].n_moves()});
    }
    for (int k = 1; k <= longest; ++k)
    {
        MoveDiff d;
        d.move = k;
        d.count_a = ha[k];
        d.count_b = hb[k];
        d.count_diff = long(d.count_a) - long(d.count_b);
        d.score_diff = d.count_diff * k;
        p.diffs.push_back(d);
    }
    p.p_value = stats::wilcoxon_signed_rank(ma, mb);
    return p;
}

RunSummary aggregate(std::span<const StrategyGames> games)
{
    RunSummary out;
    for (const StrategyGames &g : games)
        out.strategies.push_back(summarize(g.run.label, g.records));
    for (std::size_t i = 0; i < games.size(); ++i)
        for (std::size_t j = i + 1; j < games.size(); ++j)
            out.pairs.push_back(compare(games[i].run.label, games[i].records,
                                        games[j].run.label, games[j].records));
    return out;
}

unsigned worker_count(unsigned requested)
{
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    if (const char *env = std::getenv("MM_THREADS"))
    {
        const int cap = std::atoi(env);
        if (cap > 0)
            n = std::min(n, unsigned(cap));
    }
    return n;
}

std::uint64_t game_seed(std::uint64_t master, const std::string &label,
                        std::size_t index)
{
    return split_seed(split_seed(master, label), std::uint64_t(index));
}

ExperimentResult run_experiment(
    ExperimentConfig config,
    const std::function<void(std::size_t, std::size_t)> &progress)
{
    if (config.strategies.empty())
        throw std::invalid_argument("no strategies to run");
    assign_labels(config.strategies, config.alphabet);

    const ConsistentSet initial = initial_set(config.alphabet);
    std::vector<Code> secrets;
    if (config.mode == RunMode::FullSpace)
    {
        if (config.reps < 1)
            throw std::invalid_argument("reps must be at least 1");
        for (int r = 0; r < config.reps; ++r)
            secrets.insert(secrets.end(), initial.codes().begin(), initial.codes().end());
    }
    else
    {
        if (!config.instances)
            throw std::invalid_argument("instance mode needs an instance set");
        if (!(config.instances->alphabet == config.alphabet))
            throw std::invalid_argument("instance set dimensions do not match the run");
        secrets = config.instances->codes;
    }

    std::vector<Code> openings;
    for (const StrategyRun &s : config.strategies)
        openings.push_back(s.first_move.resolve(config.alphabet));

    ExperimentResult result;
    for (const StrategyRun &s : config.strategies)
        result.games.push_back({s, std::vector<GameRecord>(secrets.size())});

    PoolCache cache;
    const std::size_t total = secrets.size() * config.strategies.size();
    std::atomic<std::size_t> next{0}, done{0};
    std::atomic<bool> failed{false};
    std::mutex error_mutex, progress_mutex;
    std::string error;

    auto worker = [&] {
        for (;;)
        {
            const std::size_t job = next.fetch_add(1);
            if (job >= total || failed)
                return;
            const std::size_t si = job / secrets.size();
            const std::size_t gi = job % secrets.size();
            const StrategyRun &run = config.strategies[si];
            const std::uint64_t seed = game_seed(config.seed, run.label, gi);
            try
            {
                result.games[si].records[gi] = play_game(
                    secrets[gi], run.kind, openings[si], seed,
                    {config.max_moves, config.deterministic, &cache, &initial});
            }
            catch (const std::exception &e)
            {
                std::lock_guard lock(error_mutex);
                if (!failed.exchange(true))
                    error = "game failed (secret " + secrets[gi].str() + ", strategy " +
                            run.label + ", seed " + std::to_string(seed) + "): " + e.what();
                return;
            }
            const std::size_t d = ++done;
            if (progress)
            {
                std::lock_guard lock(progress_mutex);
                progress(d, total);
            }
        }
    };

    const unsigned n_workers = std::min<std::size_t>(worker_count(config.threads), total);
    if (n_workers <= 1)
        worker();
    else
    {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n_workers; ++i)
            pool.emplace_back(worker);
        for (auto &t : pool)
            t.join();
    }
    if (failed)
        throw ExperimentError(error);

    result.summary = aggregate(result.games);
    return result;
}

nlohmann::json to_json(const RunSummary &summary)
{
    nlohmann::json strategies = nlohmann::json::array();
    for (const StrategySummary &s : summary.strategies)
    {
        nlohmann::json hist = nlohmann::json::object();
        for (auto [k, v] : s.histogram)
            hist[std::to_string(k)] = v;
        nlohmann::json per_move = nlohmann::json::array();
        for (const PerMoveStats &m : s.per_move)
            per_move.push_back({{"move", m.move},
                                {"games", m.games},
                                {"mean_set_size", m.mean_set_size},
                                {"sd_set_size", m.sd_set_size},
                                {"frac_secret_in_top", m.frac_secret_in_top},
                                {"mean_draw_prob", m.mean_draw_prob},
                                {"mean_top_set_size", m.mean_top_set_size}});
        strategies.push_back({{"label", s.label},
                              {"strategy", std::string(strategy_name(s.kind))},
                              {"first_move", s.first_move},
                              {"games", s.games},
                              {"mean", s.mean},
                              {"sem", s.sem},
                              {"sd", s.sd},
                              {"median", s.median},
                              {"max", s.max},
                              {"total_score", s.total_score},
                              {"histogram", hist},
                              {"per_move", per_move}});
    }
    nlohmann::json pairs = nlohmann::json::array();
    for (const PairComparison &p : summary.pairs)
    {
        nlohmann::json diffs = nlohmann::json::array();
        for (const MoveDiff &d : p.diffs)
            diffs.push_back({{"move", d.move},
                             {"count_a", d.count_a},
                             {"count_b", d.count_b},
                             {"count_diff", d.count_diff},
                             {"score_diff", d.score_diff}});
        pairs.push_back({{"a", p.a},
                         {"b", p.b},
                         {"total_score_a", p.total_score_a},
                         {"total_score_b", p.total_score_b},
                         {"p_value", p.p_value},
                         {"diffs", diffs}});
    }
    return {{"strategies", strategies}, {"pairs", pairs}};
}

void write_games_jsonl(const std::filesystem::path &path,
                       std::span<const StrategyGames> games)
{
    auto out = open_out(path);
    for (const StrategyGames &g : games)
        for (const GameRecord &r : g.records)
        {
            nlohmann::json j = to_json(r);
            j["label"] = g.run.label;
            out << j.dump() << "\n";
        }
}

std::vector<StrategyGames> read_games_jsonl(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot read " + path.string());
    std::vector<StrategyGames> out;
    std::map<std::string, std::size_t> index;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line))
    {
        ++lineno;
        if (line.empty())
            continue;
        try
        {
            const nlohmann::json j = nlohmann::json::parse(line);
            GameRecord r = game_record_from_json(j);
            const std::string label =
                j.value("label", std::string(strategy_name(r.strategy)));
            auto [it, fresh] = index.emplace(label, out.size());
            if (fresh)
                out.push_back({{r.strategy, FirstMove::literal(r.first_move.str()), label}, {}});
            out[it->second].records.push_back(std::move(r));
        }
        catch (const std::exception &e)
        {
            throw std::invalid_argument(path.string() + ":" + std::to_string(lineno) +
                                        ": " + e.what());
        }
    }
    return out;
}

void write_diff_csv(const std::filesystem::path &path,
                    std::span<const PairComparison> pairs)
{
    auto out = open_out(path);
    out << "strategy_a,strategy_b,move,count_a,count_b,count_diff,score_diff\n";
    for (const PairComparison &p : pairs)
        for (const MoveDiff &d : p.diffs)
            out << p.a << ',' << p.b << ',' << d.move << ',' << d.count_a << ','
                << d.count_b << ',' << d.count_diff << ',' << d.score_diff << "\n";
}

void write_outputs(const std::filesystem::path &dir, const ExperimentResult &result,
                   const ExperimentConfig &config)
{
    std::filesystem::create_directories(dir);

    nlohmann::json summary = to_json(result.summary);
    summary["config"] = {
        {"kappa", config.alphabet.kappa()},
        {"ell", config.alphabet.ell()},
        {"mode", config.mode == RunMode::FullSpace ? "full-space" : "instances"},
        {"reps", config.mode == RunMode::FullSpace ? config.reps : 1},
        {"seed", config.seed},
        {"deterministic", config.deterministic},
        {"max_moves", config.max_moves},
    };
    if (config.instances)
        summary["config"]["instance_seed"] = config.instances->seed;
    open_out(dir / "summary.json") << summary.dump(2) << "\n";

    write_games_jsonl(dir / "games.jsonl", result.games);

    auto permove = open_out(dir / "permove.csv");
    permove << "strategy,move,mean_set_size,sd_set_size,frac_secret_in_top,mean_draw_prob\n";
    for (const StrategySummary &s : result.summary.strategies)
        for (const PerMoveStats &m : s.per_move)
            permove << s.label << ',' << m.move << ',' << csv_double(m.mean_set_size)
                    << ',' << csv_double(m.sd_set_size) << ','
                    << csv_double(m.frac_secret_in_top) << ','
                    << csv_double(m.mean_draw_prob) << "\n";

    auto hist = open_out(dir / "hist.csv");
    hist << "strategy,moves,count\n";
    for (const StrategySummary &s : result.summary.strategies)
        for (auto [k, v] : s.histogram)
            hist << s.label << ',' << k << ',' << v << "\n";

    write_diff_csv(dir / "diff.csv", result.summary.pairs);
}

std::string one_line_summary(const StrategySummary &s)
{
    std::ostringstream os;
    os << s.label << ": mean " << format_double(s.mean, 3) << " ± "
       << format_double(s.sem, 3) << ", max " << s.max << ", median "
       << format_double(s.median, 1) << ", total " << s.total_score << " ("
       << s.games << " games)";
    return os.str();
}

} // namespace mastermind

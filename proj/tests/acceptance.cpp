// Acceptance run: reproduces the headline experiments and prints one
// PASS/FAIL line per criterion. Exit status is the number of failures.

#include "mastermind/experiments.hpp"
#include "mastermind/rng.hpp"
#include "mastermind/stats.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>

using namespace mastermind;
namespace fs = std::filesystem;

namespace {

int failures = 0;
int property_failures = 0;
bool in_properties = false;

void report(bool ok, const std::string &name, const std::string &detail)
{
    if (in_properties)
    {
        std::cout << "  " << (ok ? "ok   " : "FAIL ") << name << ": " << detail << std::endl;
        property_failures += !ok;
        return;
    }
    std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << std::endl;
    failures += !ok;
}

std::string fmt(const char *f, double a, double b = 0, double c = 0, double d = 0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c, d);
    return buf;
}

bool in(double v, double lo, double hi) { return v >= lo && v <= hi; }

double elapsed(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExperimentResult run(const ExperimentConfig &config, const std::string &out_dir)
{
    ExperimentResult r = run_experiment(config);
    write_outputs(out_dir, r, config);
    return r;
}

double frac_at(const StrategySummary &s, int move)
{
    const PerMoveStats *p = s.at_move(move);
    return p ? p->frac_secret_in_top : 0.0;
}

// ---------------------------------------------------------------- properties

Response naive_respond(const std::string &g, const std::string &s)
{
    std::vector<bool> gu(g.size()), su(s.size());
    int black = 0, white = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i] == s[i])
        {
            ++black;
            gu[i] = su[i] = true;
        }
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < s.size() && !gu[i]; ++j)
            if (!su[j] && g[i] == s[j])
            {
                su[j] = true;
                gu[i] = true;
                ++white;
            }
    return {black, white};
}

double enumeration_p(const std::vector<double> &a, const std::vector<double> &b)
{
    std::vector<double> d;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i])
            d.push_back(a[i] - b[i]);
    const std::size_t n = d.size();
    if (n == 0)
        return 1.0;
    std::vector<double> rank(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        double less = 0, equal = 0;
        for (std::size_t j = 0; j < n; ++j)
        {
            less += std::abs(d[j]) < std::abs(d[i]);
            equal += std::abs(d[j]) == std::abs(d[i]);
        }
        rank[i] = less + (equal + 1) / 2;
    }
    double w = 0;
    for (std::size_t i = 0; i < n; ++i)
        w += d[i] > 0 ? rank[i] : 0;
    std::size_t lo = 0, hi = 0;
    for (std::size_t mask = 0; mask < (std::size_t(1) << n); ++mask)
    {
        double s = 0;
        for (std::size_t i = 0; i < n; ++i)
            s += (mask >> i & 1) ? rank[i] : 0;
        lo += s <= w + 1e-9;
        hi += s >= w - 1e-9;
    }
    return std::min(1.0, 2.0 * double(std::min(lo, hi)) / double(std::size_t(1) << n));
}

ConsistentSet random_position(Rng &rng, const ConsistentSet &space)
{
    const Code secret = space[rng.uniform_index(space.size())];
    ConsistentSet f = space;
    const int moves = 1 + int(rng.uniform_index(3));
    for (int i = 0; i < moves && f.size() > 1; ++i)
    {
        const Code g = f[rng.uniform_index(f.size())];
        if (g == secret)
            break;
        f = filter_consistent(f, {g, respond(g, secret)});
    }
    return f;
}

void property_suite()
{
    {
        const auto space = enumerate_space(Alphabet(3, 3));
        std::size_t bad = 0;
        for (const auto &a : space)
            for (const auto &b : space)
                bad += !(respond(a, b) == respond(b, a)) ||
                       !(respond(a, b) == naive_respond(a.str(), b.str()));
        report(bad == 0, "property respond",
               std::to_string(space.size() * space.size()) + " pairs at 3x3, " +
                   std::to_string(bad) + " disagreements");
    }

    const auto space = initial_set(Alphabet(6, 4));
    PoolCache cache;
    PlayOptions opts;
    opts.cache = &cache;
    opts.initial = &space;
    const auto strategies = all_strategies();
    {
        Rng rng(1000);
        std::size_t lost = 0, not_strict = 0, games = 0;
        for (int i = 0; i < 1000; ++i)
        {
            const Code secret = space[rng.uniform_index(space.size())];
            const StrategyKind k = strategies[std::size_t(i) % strategies.size()];
            const GameRecord g =
                play_game(secret, k, first_move(space.alphabet(), FirstMove::abca_style()),
                          rng.next(), opts);
            ++games;
            ConsistentSet f = space;
            for (std::size_t m = 0; m < g.moves.size(); ++m)
            {
                lost += !f.contains(secret);
                if (m > 0 && g.moves[m].set_size_before >= g.moves[m - 1].set_size_before)
                    ++not_strict;
                f = filter_consistent(f, {g.moves[m].guess, g.moves[m].response});
            }
            lost += !(g.moves.back().guess == secret);
        }
        report(lost == 0, "property secret preservation",
               std::to_string(games) + " games, " + std::to_string(lost) + " losses");
        report(not_strict == 0, "property strict |F| decrease",
               std::to_string(not_strict) + " non-decreasing steps");
    }
    {
        Rng rng(500);
        std::size_t bad = 0, totals = 0, base = 0;
        ScoringOptions log2;
        log2.entropy_log_base = 2.0;
        for (int i = 0; i < 500; ++i)
        {
            const auto f = random_position(rng, space);
            const auto e = top_scorers(f, StrategyKind::Entropy).top;
            const auto p2 = candidate_pool(f, StrategyKind::Plus2);
            bad += !std::includes(e.begin(), e.end(), p2.begin(), p2.end());
            base += !(top_scorers(f, StrategyKind::Entropy, log2).top == e);
            for (const auto &t : partition_tables(f))
                totals += t.total() != f.size() - 1;
        }
        report(bad == 0, "property plus2 within entropy top",
               "500 positions, " + std::to_string(bad) + " violations");
        report(totals == 0, "property partition totals",
               std::to_string(totals) + " tables not summing to |F|-1");
        report(base == 0, "property entropy base invariance",
               std::to_string(base) + " top sets changed under log2");
    }
    {
        Rng rng(100);
        std::size_t bad = 0;
        for (int i = 0; i < 100; ++i)
        {
            const Code secret = space[rng.uniform_index(space.size())];
            const StrategyKind k = strategies[std::size_t(i) % strategies.size()];
            PlayOptions o;
            o.deterministic = i % 2;
            bad += !replay_check(play_game(secret, k, parse_code("ABCA", space.alphabet()),
                                           rng.next(), o))
                        .ok;
        }
        report(bad == 0, "property replay", "100 games, " + std::to_string(bad) + " mismatches");
    }
    {
        Rng rng(10);
        std::size_t bad = 0, cases = 0;
        for (int n = 1; n <= 10; ++n)
            for (int t = 0; t < 50; ++t)
            {
                std::vector<double> a(n), b(n);
                for (int i = 0; i < n; ++i)
                {
                    a[i] = double(2 + rng.uniform_index(6));
                    b[i] = double(2 + rng.uniform_index(6));
                }
                ++cases;
                bad += std::abs(stats::wilcoxon_signed_rank_exact(a, b) - enumeration_p(a, b)) >
                       1e-12;
            }
        report(bad == 0, "property wilcoxon exact",
               std::to_string(cases) + " samples n<=10, " + std::to_string(bad) +
                   " disagreements with enumeration");
    }
}

} // namespace

int main()
{
    const fs::path out_root = fs::current_path() / "acceptance_out";

    // ------------------------------------------------------------ 6 colors
    ExperimentConfig c6;
    c6.alphabet = Alphabet(6, 4);
    for (StrategyKind k : {StrategyKind::Entropy, StrategyKind::MostParts, StrategyKind::Plus,
                           StrategyKind::Plus2})
        c6.strategies.push_back({k, FirstMove::literal("ABCA"), ""});
    c6.reps = 10;
    c6.seed = 1;
    auto t0 = std::chrono::steady_clock::now();
    const auto r6 = run(c6, (out_root / "k6").string());
    const double secs6 = elapsed(t0);
    const auto &e6 = r6.summary.strategy("entropy");
    const auto &m6 = r6.summary.strategy("most-parts");
    const auto &p6 = r6.summary.strategy("plus");
    const auto &q6 = r6.summary.strategy("plus2");

    // ------------------------------------------------------------ 8 colors
    ExperimentConfig c8;
    c8.alphabet = Alphabet(8, 4);
    for (StrategyKind k : {StrategyKind::Entropy, StrategyKind::MostParts, StrategyKind::Plus2})
        c8.strategies.push_back({k, FirstMove::literal("ABCD"), ""});
    c8.mode = RunMode::Instances;
    c8.instances = read_instance_file(fs::path(MM_SOURCE_DIR) / "data/instances_k8_l4.txt");
    c8.seed = 1;
    t0 = std::chrono::steady_clock::now();
    const auto r8 = run(c8, (out_root / "k8").string());
    const double secs8 = elapsed(t0);
    const auto &e8 = r8.summary.strategy("entropy");
    const auto &m8 = r8.summary.strategy("most-parts");
    const auto &q8 = r8.summary.strategy("plus2");

    for (const auto *s : {&e6, &m6, &p6, &q6, &e8, &m8, &q8})
        std::cout << "  " << one_line_summary(*s) << "\n";

    report(in(e6.mean, 4.39, 4.44) && e6.max == 6 && in(m6.mean, 4.38, 4.43) && m6.max <= 7 &&
               secs6 < 120,
           "6x4 averages",
           fmt("entropy %.3f max %.0f, most-parts %.3f max %.0f", e6.mean, e6.max, m6.mean,
               m6.max) +
               fmt(", %.1f s", secs6));

    report(in(double(e6.total_score), 56900, 57500) && in(double(m6.total_score), 56800, 57400),
           "6x4 total score",
           fmt("entropy %.0f, most-parts %.0f", double(e6.total_score),
               double(m6.total_score)));

    {
        const double f3 = e6.at_move(3)->mean_set_size, f4 = e6.at_move(4)->mean_set_size;
        bool ordered = true;
        std::ostringstream worst;
        const int common = int(std::min(e6.per_move.size(), m6.per_move.size()));
        for (int k = 1; k <= common; ++k)
            if (e6.at_move(k)->mean_set_size > m6.at_move(k)->mean_set_size)
            {
                ordered = false;
                worst << " move " << k;
            }
        report(in(f3, 21, 25) && in(f4, 2.8, 3.4) && ordered, "6x4 consistent set sizes",
               fmt("entropy |F| before move 3 %.2f, before move 4 %.3f", f3, f4) +
                   ", entropy <= most-parts at moves 1-" + std::to_string(common) +
                   (ordered ? "" : " violated at" + worst.str()));
    }

    {
        const double e2 = frac_at(e6, 2), m2 = frac_at(m6, 2);
        const double e5 = frac_at(e6, 5), m5 = frac_at(m6, 5);
        report(in(e2, 0.09, 0.14) && in(m2, 0.33, 0.40) && e5 >= 0.95 && m5 >= 0.95,
               "6x4 secret among top scorers",
               fmt("move 2: entropy %.4f most-parts %.4f; move 5: entropy %.4f most-parts %.4f",
                   e2, m2, e5, m5));
    }

    {
        const double p = r6.summary.pair("entropy", "most-parts").p_value;
        report(p > 0.1, "6x4 entropy vs most-parts significance", fmt("p = %.4f", p));
    }

    report(in(e8.mean, 5.09, 5.18) && in(m8.mean, 5.12, 5.21) && e8.max <= 8 && m8.max <= 8 &&
               e8.mean < m8.mean && secs8 < 900,
           "8x4 averages",
           fmt("entropy %.3f max %.0f, most-parts %.3f max %.0f", e8.mean, e8.max, m8.mean,
               m8.max) +
               fmt(", %.1f s", secs8));

    report(in(p6.mean, 4.37, 4.43) && in(q6.mean, 4.38, 4.44) && p6.max == 6 && q6.max == 6 &&
               q8.mean <= m8.mean,
           "plus and plus2 averages",
           fmt("6x4 plus %.3f max %.0f, plus2 %.3f max %.0f", p6.mean, p6.max, q6.mean,
               q6.max) +
               fmt("; 8x4 plus2 %.3f vs most-parts %.3f", q8.mean, m8.mean));

    {
        bool ok = true;
        std::ostringstream d;
        for (int k = 3; k <= 5; ++k)
        {
            const double q = frac_at(q6, k), m = frac_at(m6, k);
            ok = ok && q >= m - 0.02;
            d << fmt("move %.0f plus2 %.4f most-parts %.4f; ", k, q, m);
        }
        report(ok, "plus2 top-scorer fractions", d.str());
    }

    in_properties = true;
    property_suite();
    in_properties = false;
    report(property_failures == 0, "property suite",
           std::to_string(property_failures) + " properties failed");

    std::cout << (failures ? std::to_string(failures) + " criteria failed"
                           : std::string("all criteria passed"))
              << std::endl;
    return failures;
}

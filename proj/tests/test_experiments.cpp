#include "mastermind/experiments.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>

using namespace mastermind;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string &name)
{
    const fs::path p = fs::temp_directory_path() / ("mm_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string first_line(const fs::path &p)
{
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

ExperimentConfig small_config()
{
    ExperimentConfig c;
    c.alphabet = Alphabet(3, 3);
    c.strategies = {{StrategyKind::Entropy, FirstMove::abca_style(), ""},
                    {StrategyKind::MostParts, FirstMove::abca_style(), ""}};
    c.reps = 3;
    c.seed = 17;
    c.threads = 1;
    return c;
}

} // namespace

TEST_CASE("instance set multiplicities")
{
    const Alphabet a(8, 4);
    const auto set = generate_instance_set(a, 5000, 2011);
    REQUIRE(set.codes.size() == 5000);
    std::map<Code, int> count;
    for (const auto &c : set.codes)
        ++count[c];
    CHECK(count.size() == 4096);
    int singles = 0, doubles = 0;
    for (auto &[c, n] : count)
    {
        singles += n == 1;
        doubles += n == 2;
    }
    CHECK(singles == 4096 - 904);
    CHECK(doubles == 904);
    CHECK_FALSE(std::is_sorted(set.codes.begin(), set.codes.end()));

    const Alphabet small(3, 2);
    auto perm = generate_instance_set(small, 9, 1).codes;
    std::sort(perm.begin(), perm.end());
    CHECK(perm == enumerate_space(small));

    auto twice = generate_instance_set(small, 18, 1).codes;
    std::sort(twice.begin(), twice.end());
    for (std::size_t i = 0; i < 18; i += 2)
        CHECK(twice[i] == twice[i + 1]);

    CHECK_THROWS_AS(generate_instance_set(small, 8, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_instance_set(small, 19, 1), std::invalid_argument);
}

TEST_CASE("instance files")
{
    const auto dir = scratch("instances");
    const auto set = generate_instance_set(Alphabet(4, 3), 100, 5);
    write_instance_file(dir / "i.txt", set);
    CHECK(first_line(dir / "i.txt") == "# kappa=4 ell=3 seed=5");
    const auto back = read_instance_file(dir / "i.txt");
    CHECK(back.codes == set.codes);
    CHECK(back.seed == 5);
    CHECK(back.alphabet == Alphabet(4, 3));

    {
        std::ofstream bad(dir / "bad.txt");
        bad << "# kappa=3 ell=2 seed=1\nAA\nAB\n";
    }
    CHECK_THROWS_AS(read_instance_file(dir / "bad.txt"), std::invalid_argument);

    const auto shipped = read_instance_file(fs::path(MM_SOURCE_DIR) / "data/instances_k8_l4.txt");
    CHECK(shipped.codes.size() == 5000);
    CHECK(shipped.alphabet == Alphabet(8, 4));
}

TEST_CASE("run summary invariants")
{
    const auto r = run_experiment(small_config());
    REQUIRE(r.games.size() == 2);
    CHECK(r.games[0].run.label == "entropy");
    CHECK(r.games[1].run.label == "most-parts");
    for (const auto &s : r.summary.strategies)
    {
        CHECK(s.games == 81);
        std::size_t games = 0;
        long score = 0;
        for (auto &[k, n] : s.histogram)
        {
            games += n;
            score += k * long(n);
        }
        CHECK(games == s.games);
        CHECK(score == s.total_score);
        CHECK(s.per_move.front().games == 81);
        CHECK(s.per_move.front().mean_set_size == 27);
        for (std::size_t k = 1; k < s.per_move.size(); ++k)
            CHECK(s.per_move[k].games <= s.per_move[k - 1].games);
    }
    for (std::size_t i = 0; i < 81; ++i)
        CHECK(r.games[0].records[i].secret == r.games[1].records[i].secret);

    const auto &p = r.summary.pair("entropy", "most-parts");
    long sum = 0;
    for (const auto &d : p.diffs)
    {
        sum += d.count_diff;
        CHECK(d.score_diff == d.count_diff * d.move);
    }
    CHECK(sum == 0);
    CHECK(p.total_score_a == r.summary.strategy("entropy").total_score);
}

TEST_CASE("reproducibility and seed isolation")
{
    auto c = small_config();
    const auto a = run_experiment(c);
    c.threads = 3;
    const auto b = run_experiment(c);
    CHECK(to_json(a.summary) == to_json(b.summary));
    for (std::size_t i = 0; i < a.games[0].records.size(); ++i)
        CHECK(a.games[0].records[i].moves == b.games[0].records[i].moves);

    // adding a strategy leaves the games of the others untouched
    c.strategies.push_back({StrategyKind::Plus2, FirstMove::abca_style(), ""});
    const auto d = run_experiment(c);
    for (std::size_t i = 0; i < a.games[1].records.size(); ++i)
        CHECK(a.games[1].records[i].moves == d.games[1].records[i].moves);

    c.seed = 18;
    const auto e = run_experiment(c);
    int differ = 0;
    for (std::size_t i = 0; i < a.games[0].records.size(); ++i)
        differ += !(a.games[0].records[i].moves == e.games[0].records[i].moves);
    CHECK(differ > 0);
}

TEST_CASE("compare rejects unpaired runs")
{
    const auto r = run_experiment(small_config());
    auto shuffled = r.games[1].records;
    std::rotate(shuffled.begin(), shuffled.begin() + 1, shuffled.end());
    CHECK_THROWS_AS(compare("a", r.games[0].records, "b", shuffled), std::invalid_argument);
    std::vector<GameRecord> shorter(r.games[1].records.begin(), r.games[1].records.end() - 1);
    CHECK_THROWS_AS(compare("a", r.games[0].records, "b", shorter), std::invalid_argument);

    const auto same = compare("a", r.games[0].records, "a2", r.games[0].records);
    CHECK(same.p_value == 1.0);
    for (const auto &d : same.diffs)
    {
        CHECK(d.count_diff == 0);
        CHECK(d.score_diff == 0);
    }
}

TEST_CASE("degenerate runs")
{
    ExperimentConfig c;
    c.alphabet = Alphabet(6, 4);
    c.strategies = {{StrategyKind::Entropy, FirstMove::abca_style(), ""}};
    c.mode = RunMode::Instances;
    c.instances = InstanceSet{Alphabet(6, 4), {parse_code("FEDC", Alphabet(6, 4))}, 0};
    const auto r = run_experiment(c);
    const auto &s = r.summary.strategy("entropy");
    CHECK(s.mean == s.max);
    CHECK(s.median == s.max);
    CHECK(s.sem == 0);

    c.instances = InstanceSet{Alphabet(6, 4), {parse_code("ABCA", Alphabet(6, 4))}, 0};
    const auto one = run_experiment(c).summary.strategy("entropy");
    CHECK(one.histogram == std::map<int, std::size_t>{{1, 1}});
    CHECK(one.total_score == 1);

    c.instances.reset();
    CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
    c.strategies.clear();
    CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
}

TEST_CASE("duplicate strategies get distinct labels")
{
    auto c = small_config();
    c.strategies = {{StrategyKind::Entropy, FirstMove::abca_style(), ""},
                    {StrategyKind::Entropy, FirstMove::abcd_style(), ""}};
    const auto r = run_experiment(c);
    CHECK(r.games[0].run.label != r.games[1].run.label);
}

TEST_CASE("engine failures name the game")
{
    auto c = small_config();
    c.strategies = {{StrategyKind::Random, FirstMove::abca_style(), ""}};
    c.max_moves = 1;
    try
    {
        run_experiment(c);
        FAIL("expected an ExperimentError");
    }
    catch (const ExperimentError &e)
    {
        const std::string what = e.what();
        CHECK(what.find("secret") != std::string::npos);
        CHECK(what.find("random") != std::string::npos);
        CHECK(what.find("seed") != std::string::npos);
    }
}

TEST_CASE("output files")
{
    const auto dir = scratch("outputs");
    const auto c = small_config();
    const auto r = run_experiment(c);
    write_outputs(dir, r, c);
    CHECK(first_line(dir / "permove.csv") ==
          "strategy,move,mean_set_size,sd_set_size,frac_secret_in_top,mean_draw_prob");
    CHECK(first_line(dir / "hist.csv") == "strategy,moves,count");
    CHECK(first_line(dir / "diff.csv") ==
          "strategy_a,strategy_b,move,count_a,count_b,count_diff,score_diff");

    std::ifstream js(dir / "summary.json");
    const auto j = nlohmann::json::parse(js);
    CHECK(j["strategies"].size() == 2);
    CHECK(j["pairs"].size() == 1);
    CHECK(j["config"]["kappa"] == 3);

    const auto back = read_games_jsonl(dir / "games.jsonl");
    REQUIRE(back.size() == 2);
    CHECK(back[0].run.label == "entropy");
    REQUIRE(back[0].records.size() == 81);
    for (std::size_t i = 0; i < 81; ++i)
        CHECK(back[0].records[i].moves == r.games[0].records[i].moves);
    CHECK(to_json(aggregate(back)) == to_json(r.summary));

    CHECK(one_line_summary(r.summary.strategies[0]).rfind("entropy: mean ", 0) == 0);
}

TEST_CASE("move-two top-scorer fractions over one pass of the 6x4 space")
{
    ExperimentConfig c;
    c.strategies = {{StrategyKind::Entropy, FirstMove::abca_style(), ""},
                    {StrategyKind::MostParts, FirstMove::abca_style(), ""}};
    c.reps = 1;
    const auto r = run_experiment(c);
    // summed top-set sizes over first responses, from the brute-force oracle
    CHECK(r.summary.strategy("entropy").at_move(2)->frac_secret_in_top ==
          doctest::Approx(154.0 / 1295));
    CHECK(r.summary.strategy("most-parts").at_move(2)->frac_secret_in_top ==
          doctest::Approx(472.0 / 1295));
    CHECK(r.summary.strategy("entropy").at_move(2)->games == 1295);
}

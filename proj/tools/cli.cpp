#include "cli.hpp"

#include "mastermind/advisor_http.hpp"
#include "mastermind/engine.hpp"
#include "mastermind/experiments.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace mastermind::cli {

namespace {

struct GameFlags
{
    int kappa = 6;
    int ell = 4;
    std::vector<std::string> strategies{"entropy"};
    std::vector<std::string> first_moves{"abca-style"};
    std::uint64_t seed = 1;
    bool deterministic = false;
};

void add_game_flags(CLI::App *cmd, GameFlags &f, bool many_strategies)
{
    cmd->add_option("--kappa", f.kappa, "number of colors")->capture_default_str();
    cmd->add_option("--ell", f.ell, "code length")->capture_default_str();
    if (many_strategies)
    {
        cmd->add_option("--strategy", f.strategies,
                        "strategies: random, min-worst, expected-size, most-parts, "
                        "entropy, plus, plus2, plus2-swapped")
            ->delimiter(',')
            ->capture_default_str();
        cmd->add_option("--first-move", f.first_moves,
                        "abca-style, abcd-style or a literal code; one for all "
                        "strategies or one per strategy")
            ->delimiter(',')
            ->capture_default_str();
    }
    else
    {
        cmd->add_option("--strategy", f.strategies[0], "strategy id")->capture_default_str();
        cmd->add_option("--first-move", f.first_moves[0],
                        "abca-style, abcd-style or a literal code")
            ->capture_default_str();
    }
    cmd->add_option("--seed", f.seed, "random seed")->capture_default_str();
    cmd->add_flag("--deterministic", f.deterministic,
                  "break ties lexicographically instead of at random");
}

void print_pair(std::ostream &out, const PairComparison &p)
{
    out << p.a << " vs " << p.b << ": total " << p.total_score_a << " vs "
        << p.total_score_b << ", Wilcoxon p = " << std::setprecision(4) << p.p_value
        << "\n";
}

int cmd_run(const GameFlags &f, const std::string &mode, int reps,
            const std::string &instances, int max_moves, const std::string &out_dir,
            bool kappa_set, bool ell_set, bool quiet, std::ostream &out)
{
    ExperimentConfig config;
    config.seed = f.seed;
    config.deterministic = f.deterministic;
    config.max_moves = max_moves;
    config.reps = reps;

    const bool instance_mode = mode == "instances" || (mode.empty() && !instances.empty());
    if (!mode.empty() && mode != "instances" && mode != "full-space")
        throw std::invalid_argument("--mode must be full-space or instances");
    if (instance_mode)
    {
        if (instances.empty())
            throw std::invalid_argument("instance mode needs --instances FILE");
        config.instances = read_instance_file(instances);
        config.mode = RunMode::Instances;
        const Alphabet &a = config.instances->alphabet;
        if ((kappa_set && a.kappa() != f.kappa) || (ell_set && a.ell() != f.ell))
            throw std::invalid_argument("instance file is for kappa=" +
                                        std::to_string(a.kappa()) +
                                        " ell=" + std::to_string(a.ell()));
        config.alphabet = a;
    }
    else
    {
        if (!instances.empty())
            throw std::invalid_argument("--instances only applies to --mode instances");
        config.alphabet = Alphabet(f.kappa, f.ell);
        config.mode = RunMode::FullSpace;
    }

    if (f.first_moves.size() != 1 && f.first_moves.size() != f.strategies.size())
        throw std::invalid_argument("give one --first-move, or one per strategy");
    for (std::size_t i = 0; i < f.strategies.size(); ++i)
    {
        StrategyRun run;
        run.kind = parse_strategy(f.strategies[i]);
        run.first_move =
            FirstMove::parse(f.first_moves.size() == 1 ? f.first_moves[0] : f.first_moves[i]);
        run.first_move.resolve(config.alphabet);
        config.strategies.push_back(run);
    }

    const ExperimentResult result = run_experiment(config);
    if (!out_dir.empty())
        write_outputs(out_dir, result, config);

    for (const StrategySummary &s : result.summary.strategies)
        out << one_line_summary(s) << "\n";
    if (!quiet)
        for (const PairComparison &p : result.summary.pairs)
            print_pair(out, p);
    return 0;
}

const StrategyGames &pick(const std::vector<StrategyGames> &groups,
                          const std::string &label, const std::string &file)
{
    if (label.empty())
    {
        if (groups.size() != 1)
        {
            std::string labels;
            for (const auto &g : groups)
                labels += " " + g.run.label;
            throw std::invalid_argument(file + " holds several strategies (" + labels +
                                        " ); choose one with --strategy-a/--strategy-b");
        }
        return groups.front();
    }
    for (const auto &g : groups)
        if (g.run.label == label)
            return g;
    throw std::invalid_argument(file + " has no strategy labeled " + label);
}

int cmd_compare(const std::string &file_a, const std::string &file_b,
                const std::string &label_a, const std::string &label_b,
                const std::string &diff_out, std::ostream &out)
{
    const auto groups_a = read_games_jsonl(file_a);
    const auto groups_b = read_games_jsonl(file_b);
    if (groups_a.empty() || groups_b.empty())
        throw std::invalid_argument("no games to compare");
    const StrategyGames &a = pick(groups_a, label_a, file_a);
    const StrategyGames &b = pick(groups_b, label_b, file_b);

    const PairComparison p = compare(a.run.label, a.records, b.run.label, b.records);
    out << "move,count_a,count_b,count_diff,score_diff\n";
    for (const MoveDiff &d : p.diffs)
        out << d.move << ',' << d.count_a << ',' << d.count_b << ',' << d.count_diff << ','
            << d.score_diff << "\n";
    print_pair(out, p);
    if (!diff_out.empty())
        write_diff_csv(diff_out, std::vector<PairComparison>{p});
    return 0;
}

int cmd_replay(const std::string &file, std::ostream &out)
{
    std::size_t total = 0, ok = 0;
    for (const StrategyGames &g : read_games_jsonl(file))
        for (const GameRecord &r : g.records)
        {
            ++total;
            const ReplayResult res = replay_check(r);
            if (res)
                ++ok;
            else
                out << "mismatch: " << g.run.label << " secret " << r.secret.str()
                    << " seed " << r.seed << " at move " << res.first_divergent_move.value_or(0)
                    << ": " << res.reason << "\n";
        }
    out << ok << "/" << total << " games replayed identically\n";
    return ok == total ? 0 : 1;
}

advisor::Server *g_server = nullptr;

int cmd_serve(const advisor::ServerOptions &options, int ttl_seconds, std::ostream &out)
{
    advisor::SessionStore store{std::chrono::seconds(ttl_seconds)};
    advisor::Server server(store, options);
    const int port = server.bind();
    if (port < 0)
    {
        out << "cannot bind " << options.host << ":" << options.port << "\n";
        return 1;
    }
    out << "advisor listening on http://" << options.host << ":" << port << "\n" << std::flush;
    g_server = &server;
    std::signal(SIGINT, [](int) {
        if (g_server)
            g_server->stop();
    });
    const bool ok = server.listen();
    g_server = nullptr;
    return ok ? 0 : 1;
}

bool parse_feedback(const std::string &line, Response &r)
{
    std::string text = line;
    for (char &c : text)
        if (c == '-' || c == ',')
            c = ' ';
    std::istringstream is(text);
    std::string extra;
    return bool(is >> r.black >> r.white) && !(is >> extra);
}

void print_suggestion(const advisor::Session &s, std::ostream &out)
{
    out << "Guess " << s.history().size() << ": " << s.suggestion()->str() << "   ("
        << s.remaining() << " candidates remain)\n";
}

} // namespace

int play_terminal(const advisor::SessionParams &params, std::istream &in, std::ostream &out)
{
    advisor::Session session("terminal", params);
    const int ell = params.alphabet.ell();
    out << "Mastermind advisor: " << params.alphabet.kappa() << " colors (A-"
        << char('A' + params.alphabet.kappa() - 1) << "), " << ell << " pegs, strategy "
        << strategy_name(params.strategy) << "\n"
        << "Enter feedback as \"black white\", or 'undo' / 'quit'.\n";
    print_suggestion(session, out);

    std::string line;
    for (;;)
    {
        out << "> " << std::flush;
        if (!std::getline(in, line))
            return 1;
        if (line == "quit" || line == "q")
            return 1;
        if (line == "undo" || line == "u")
        {
            if (!session.undo())
                out << "nothing to undo\n";
            else
                print_suggestion(session, out);
            continue;
        }
        if (session.state() == advisor::SessionState::Contradiction)
        {
            out << "no consistent codes remain — check your pegs; type 'undo' to "
                   "retract the last feedback\n";
            continue;
        }

        Response r;
        if (!parse_feedback(line, r))
        {
            out << "enter two numbers: black pegs, then white pegs\n";
            continue;
        }
        try
        {
            session.submit(r);
        }
        catch (const advisor::IllegalFeedback &e)
        {
            out << e.what() << "; try again\n";
            continue;
        }

        switch (session.state())
        {
        case advisor::SessionState::Solved:
            out << "Solved in " << session.history().size() << " moves: "
                << session.history().back().suggestion.str() << "\n";
            return 0;
        case advisor::SessionState::Contradiction:
            out << "no consistent codes remain — check your pegs; type 'undo' to "
                   "retract the last feedback\n";
            break;
        case advisor::SessionState::AwaitingFeedback:
            print_suggestion(session, out);
            break;
        }
    }
}

int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out,
        std::ostream &err)
{
    CLI::App app{"Mastermind strategy laboratory", "mastermind"};
    app.require_subcommand(1);

    // run
    GameFlags run_flags;
    std::string mode, instances, out_dir;
    int reps = 10, max_moves = kDefaultMaxMoves;
    bool quiet = false;
    auto *run_cmd = app.add_subcommand("run", "play every secret with one or more strategies");
    add_game_flags(run_cmd, run_flags, true);
    run_cmd->add_option("--mode", mode, "full-space or instances");
    run_cmd->add_option("--reps", reps, "repetitions of the full space")->capture_default_str();
    run_cmd->add_option("--instances", instances, "instance file (instance mode)");
    run_cmd->add_option("--max-moves", max_moves, "rows on the board")->capture_default_str();
    run_cmd->add_option("--out-dir", out_dir, "where to write summary.json and CSVs");
    run_cmd->add_flag("--quiet", quiet, "omit pairwise comparisons");

    // compare
    std::string cmp_a, cmp_b, label_a, label_b, diff_out;
    auto *cmp_cmd = app.add_subcommand("compare", "paired comparison of two runs");
    cmp_cmd->add_option("games_a", cmp_a, "games.jsonl of run A")->required();
    cmp_cmd->add_option("games_b", cmp_b, "games.jsonl of run B")->required();
    cmp_cmd->add_option("--strategy-a", label_a, "label to take from A");
    cmp_cmd->add_option("--strategy-b", label_b, "label to take from B");
    cmp_cmd->add_option("--out", diff_out, "write diff.csv here");

    // gen-instances
    int gen_kappa = 8, gen_ell = 4;
    std::size_t gen_size = 5000;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto *gen_cmd = app.add_subcommand("gen-instances", "generate an instance file");
    gen_cmd->add_option("--kappa", gen_kappa)->capture_default_str();
    gen_cmd->add_option("--ell", gen_ell)->capture_default_str();
    gen_cmd->add_option("--size", gen_size)->capture_default_str();
    gen_cmd->add_option("--seed", gen_seed)->capture_default_str();
    gen_cmd->add_option("--out", gen_out, "output file")->required();

    // play
    GameFlags play_flags;
    auto *play_cmd = app.add_subcommand("play", "interactive advisor in the terminal");
    add_game_flags(play_cmd, play_flags, false);

    // serve
    advisor::ServerOptions serve_options;
    std::string static_dir;
    int ttl = 3600;
    auto *serve_cmd = app.add_subcommand("serve", "advisor HTTP API");
    serve_cmd->add_option("--host", serve_options.host)->capture_default_str();
    serve_cmd->add_option("--port", serve_options.port)->capture_default_str();
    serve_cmd->add_option("--static-dir", static_dir, "serve a web UI from this directory");
    serve_cmd->add_option("--ttl", ttl, "idle session lifetime in seconds")->capture_default_str();
    serve_cmd->add_option("--budget", serve_options.budget, "largest code space allowed")
        ->capture_default_str();

    // replay
    std::string replay_file;
    auto *replay_cmd = app.add_subcommand("replay", "re-simulate recorded games");
    replay_cmd->add_option("--games", replay_file, "games.jsonl")->required();

    std::vector<const char *> argv;
    for (const auto &a : args)
        argv.push_back(a.c_str());
    try
    {
        app.parse(int(argv.size()), argv.data());
    }
    catch (const CLI::ParseError &e)
    {
        return app.exit(e, out, err);
    }

    try
    {
        if (*run_cmd)
            return cmd_run(run_flags, mode, reps, instances, max_moves, out_dir,
                           run_cmd->count("--kappa") > 0, run_cmd->count("--ell") > 0,
                           quiet, out);
        if (*cmp_cmd)
            return cmd_compare(cmp_a, cmp_b, label_a, label_b, diff_out, out);
        if (*gen_cmd)
        {
            write_instance_file(gen_out, generate_instance_set(Alphabet(gen_kappa, gen_ell),
                                                               gen_size, gen_seed));
            out << "wrote " << gen_size << " codes to " << gen_out << "\n";
            return 0;
        }
        if (*play_cmd)
        {
            advisor::SessionParams p;
            p.alphabet = Alphabet(play_flags.kappa, play_flags.ell);
            p.strategy = parse_strategy(play_flags.strategies[0]);
            p.first_move = FirstMove::parse(play_flags.first_moves[0]);
            p.seed = play_flags.seed;
            p.deterministic = play_flags.deterministic;
            return play_terminal(p, in, out);
        }
        if (*serve_cmd)
        {
            if (!static_dir.empty())
                serve_options.static_dir = static_dir;
            return cmd_serve(serve_options, ttl, out);
        }
        if (*replay_cmd)
            return cmd_replay(replay_file, out);
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace mastermind::cli

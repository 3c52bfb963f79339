#include "mastermind/advisor.hpp"

#include <algorithm>
#include <charconv>
#include <random>

namespace mastermind::advisor {

std::string_view state_name(SessionState state) noexcept
{
    switch (state)
    {
    case SessionState::AwaitingFeedback: return "awaiting-feedback";
    case SessionState::Solved: return "solved";
    case SessionState::Contradiction: return "contradiction";
    }
    return "?";
}

Session::Session(std::string id, SessionParams params)
  : id_(std::move(id)), params_(std::move(params)), rng_(params_.seed)
{
    const Code first = params_.first_move.resolve(params_.alphabet);
    sets_.push_back(initial_set(params_.alphabet, params_.budget));
    rng_states_.push_back(rng_.state());
    history_.push_back({first, std::nullopt});
}

std::optional<Code> Session::suggestion() const
{
    if (state_ != SessionState::AwaitingFeedback)
        return std::nullopt;
    return history_.back().suggestion;
}

void Session::submit(Response feedback)
{
    const int ell = params_.alphabet.ell();
    if (state_ != SessionState::AwaitingFeedback)
        throw StateError("session is " + std::string(state_name(state_)) +
                         "; no suggestion is awaiting feedback");
    if (!feedback.is_legal(ell))
        throw IllegalFeedback("feedback " + std::to_string(feedback.black) + " black, " +
                              std::to_string(feedback.white) + " white is impossible for " +
                              std::to_string(ell) + " pegs");

    HistoryEntry &pending = history_.back();
    pending.feedback = feedback;
    sets_.push_back(filter_consistent(sets_.back(), {pending.suggestion, feedback}));

    if (feedback.is_win(ell))
        state_ = SessionState::Solved;
    else if (sets_.back().empty())
        state_ = SessionState::Contradiction;
    else
        suggest();
}

void Session::suggest()
{
    rng_states_.push_back(rng_.state());
    const SelectionOptions options{params_.deterministic ? TieBreak::Lexicographic
                                                         : TieBreak::Uniform};
    history_.push_back({next_move(sets_.back(), params_.strategy, rng_, options),
                        std::nullopt});
}

bool Session::can_undo() const noexcept { return sets_.size() > 1; }

bool Session::undo()
{
    if (!can_undo())
        return false;
    if (state_ == SessionState::AwaitingFeedback)
    {
        // drop the suggestion that followed the retracted feedback
        history_.pop_back();
        rng_.restore(rng_states_.back());
        rng_states_.pop_back();
    }
    sets_.pop_back();
    history_.back().feedback.reset();
    state_ = SessionState::AwaitingFeedback;
    return true;
}

nlohmann::json Session::view() const
{
    nlohmann::json history = nlohmann::json::array();
    for (const HistoryEntry &h : history_)
    {
        nlohmann::json e = {{"suggestion", h.suggestion.str()}};
        if (h.feedback)
        {
            e["black"] = h.feedback->black;
            e["white"] = h.feedback->white;
        }
        history.push_back(std::move(e));
    }
    auto s = suggestion();
    return {
        {"id", id_},
        {"kappa", params_.alphabet.kappa()},
        {"ell", params_.alphabet.ell()},
        {"strategy", std::string(strategy_name(params_.strategy))},
        {"suggestion", s ? nlohmann::json(s->str()) : nlohmann::json(nullptr)},
        {"remaining", remaining()},
        {"state", std::string(state_name(state_))},
        {"can_undo", can_undo()},
        {"history", std::move(history)},
    };
}

SessionStore::SessionStore(std::chrono::seconds ttl, std::size_t capacity,
                           std::function<Clock::time_point()> now)
  : ttl_(ttl), capacity_(std::max<std::size_t>(capacity, 1)), now_(std::move(now)),
    id_rng_(std::random_device{}() ^ (std::uint64_t(std::random_device{}()) << 32))
{
}

std::string SessionStore::new_id()
{
    static constexpr char hex[] = "0123456789abcdef";
    const std::uint64_t x = mix64(id_rng_.next() ^ ++counter_);
    std::string id(16, '0');
    for (int i = 0; i < 16; ++i)
        id[i] = hex[(x >> (4 * i)) & 0xf];
    return id;
}

void SessionStore::expire_locked(Clock::time_point now)
{
    for (auto it = sessions_.begin(); it != sessions_.end();)
    {
        if (now - it->second->last_used > ttl_)
        {
            lru_.erase(it->second->lru);
            it = sessions_.erase(it);
        }
        else
            ++it;
    }
    while (sessions_.size() > capacity_)
    {
        sessions_.erase(lru_.back());
        lru_.pop_back();
    }
}

nlohmann::json SessionStore::create(const SessionParams &params)
{
    std::unique_lock lock(mutex_);
    std::string id = new_id();
    while (sessions_.count(id))
        id = new_id();
    lock.unlock();

    // building the session enumerates the space; keep it outside the store lock
    auto entry = std::make_shared<Entry>();
    entry->session = std::make_unique<Session>(id, params);
    nlohmann::json view = entry->session->view();

    lock.lock();
    const auto now = now_();
    entry->last_used = now;
    lru_.push_front(id);
    entry->lru = lru_.begin();
    sessions_.emplace(id, std::move(entry));
    expire_locked(now);
    return view;
}

bool SessionStore::with_session(const std::string &id,
                                const std::function<void(Session &)> &fn)
{
    std::shared_ptr<Entry> entry;
    {
        std::lock_guard lock(mutex_);
        const auto now = now_();
        expire_locked(now);
        auto it = sessions_.find(id);
        if (it == sessions_.end())
            return false;
        entry = it->second;
        entry->last_used = now;
        lru_.splice(lru_.begin(), lru_, entry->lru);
    }
    std::lock_guard session_lock(entry->mutex);
    fn(*entry->session);
    return true;
}

std::size_t SessionStore::size() const
{
    std::lock_guard lock(mutex_);
    return sessions_.size();
}

namespace {

ApiResponse error(int status, const std::string &message)
{
    return {status, {{"error", message}}};
}

int int_field(const nlohmann::json &j, const char *name)
{
    if (!j.contains(name))
        throw std::invalid_argument(std::string("missing field \"") + name + "\"");
    if (!j.at(name).is_number_integer())
        throw std::invalid_argument(std::string("field \"") + name +
                                    "\" must be an integer");
    return j.at(name).get<int>();
}

SessionParams parse_params(const nlohmann::json &j, std::size_t budget)
{
    SessionParams p;
    p.budget = budget;
    const int kappa = j.contains("kappa") ? int_field(j, "kappa") : 6;
    const int ell = j.contains("ell") ? int_field(j, "ell") : 4;
    p.alphabet = Alphabet(kappa, ell);
    if (j.contains("strategy"))
    {
        if (!j.at("strategy").is_string())
            throw std::invalid_argument("field \"strategy\" must be a string");
        p.strategy = parse_strategy(j.at("strategy").get<std::string>());
    }
    if (j.contains("first_move") && !j.at("first_move").is_null())
    {
        if (!j.at("first_move").is_string())
            throw std::invalid_argument("field \"first_move\" must be a string");
        p.first_move = FirstMove::parse(j.at("first_move").get<std::string>());
    }
    p.first_move.resolve(p.alphabet);
    if (j.contains("seed") && !j.at("seed").is_null())
    {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
            throw std::invalid_argument("field \"seed\" must be an integer");
        p.seed = j.at("seed").get<std::uint64_t>();
    }
    else
        p.seed = std::random_device{}();
    if (j.contains("deterministic"))
        p.deterministic = j.at("deterministic").get<bool>();
    return p;
}

nlohmann::json parse_body(std::string_view body)
{
    if (body.empty())
        return nlohmann::json::object();
    nlohmann::json j = nlohmann::json::parse(body);
    if (!j.is_object())
        throw std::invalid_argument("request body must be a JSON object");
    return j;
}

} // namespace

ApiResponse handle_request(SessionStore &store, std::string_view method,
                           std::string_view path, std::string_view body,
                           std::size_t budget)
{
    constexpr std::string_view prefix = "/sessions";
    if (path.substr(0, prefix.size()) != prefix)
        return error(404, "no such endpoint");
    std::string_view rest = path.substr(prefix.size());
    if (!rest.empty() && rest.back() == '/')
        rest.remove_suffix(1);

    if (rest.empty())
    {
        if (method != "POST")
            return error(405, "use POST /sessions");
        try
        {
            return {201, store.create(parse_params(parse_body(body), budget))};
        }
        catch (const std::length_error &e)
        {
            return error(413, e.what());
        }
        catch (const std::exception &e)
        {
            return error(400, e.what());
        }
    }

    if (rest.front() != '/')
        return error(404, "no such endpoint");
    rest.remove_prefix(1);
    const auto slash = rest.find('/');
    const std::string id(rest.substr(0, slash));
    const std::string_view action =
        slash == std::string_view::npos ? std::string_view{} : rest.substr(slash + 1);

    ApiResponse out;
    bool found = false;
    if (action.empty())
    {
        if (method != "GET")
            return error(405, "use GET /sessions/{id}");
        found = store.with_session(id, [&](Session &s) { out = {200, s.view()}; });
    }
    else if (action == "feedback")
    {
        if (method != "POST")
            return error(405, "use POST /sessions/{id}/feedback");
        Response r;
        try
        {
            const nlohmann::json j = parse_body(body);
            r = {int_field(j, "black"), int_field(j, "white")};
        }
        catch (const std::exception &e)
        {
            return error(400, e.what());
        }
        found = store.with_session(id, [&](Session &s) {
            try
            {
                s.submit(r);
                out = {200, s.view()};
            }
            catch (const IllegalFeedback &e)
            {
                out = error(422, e.what());
            }
            catch (const StateError &e)
            {
                out = error(409, e.what());
            }
        });
    }
    else if (action == "undo")
    {
        if (method != "POST")
            return error(405, "use POST /sessions/{id}/undo");
        found = store.with_session(id, [&](Session &s) {
            out = s.undo() ? ApiResponse{200, s.view()}
                           : error(409, "no feedback to undo");
        });
    }
    else
        return error(404, "no such endpoint");

    if (!found)
        return error(404, "unknown or expired session " + id);
    return out;
}

} // namespace mastermind::advisor

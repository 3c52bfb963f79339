// advisor.hpp -- interactive sessions that suggest guesses from live feedback

#pragma once

#include "mastermind/codes.hpp"
#include "mastermind/consistency.hpp"
#include "mastermind/rng.hpp"
#include "mastermind/strategies.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace mastermind::advisor {

enum class SessionState { AwaitingFeedback, Solved, Contradiction };

/// "awaiting-feedback", "solved" or "contradiction".
std::string_view state_name(SessionState state) noexcept;

struct SessionParams
{
    Alphabet alphabet{6, 4};
    StrategyKind strategy = StrategyKind::Entropy;
    FirstMove first_move = FirstMove::abca_style();
    std::uint64_t seed = 1;
    bool deterministic = false;
    std::size_t budget = kDefaultSpaceBudget;
};

struct HistoryEntry
{
    Code suggestion;
    std::optional<Response> feedback;
};

/// Feedback that no secret can produce, e.g. `<3,1>` for four pegs.
class IllegalFeedback : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Operation not allowed in the session's current state.
class StateError : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// One advisor game. Not thread-safe; `SessionStore` serializes access.
///
/// The history always has one entry per suggestion; every entry but a
/// trailing pending one carries feedback.
class Session
{
public:
    /// Throws `std::invalid_argument` for unusable parameters and
    /// `std::length_error` when the space exceeds `params.budget`.
    Session(std::string id, SessionParams params);

    const std::string &id() const noexcept { return id_; }
    const SessionParams &params() const noexcept { return params_; }
    SessionState state() const noexcept { return state_; }
    std::size_t remaining() const noexcept { return sets_.back().size(); }
    const std::vector<HistoryEntry> &history() const noexcept { return history_; }
    const ConsistentSet &consistent_set() const noexcept { return sets_.back(); }

    /// The guess awaiting feedback, if any.
    std::optional<Code> suggestion() const;

    /// Applies feedback to the pending suggestion. Throws `IllegalFeedback`
    /// or `StateError`.
    void submit(Response feedback);

    /// Retracts the most recent feedback. Returns false if there is none.
    bool undo();

    bool can_undo() const noexcept;

    nlohmann::json view() const;

private:
    void suggest();

    std::string id_;
    SessionParams params_;
    SessionState state_ = SessionState::AwaitingFeedback;
    Rng rng_;
    std::vector<HistoryEntry> history_;
    // sets_[k] is the consistent set after k feedbacks
    std::vector<ConsistentSet> sets_;
    // rng_states_[k] is the rng state before suggestion k was drawn
    std::vector<std::string> rng_states_;
};

/// In-memory sessions with idle expiry and a capacity bound (least recently
/// used sessions are dropped first). Distinct sessions may be used
/// concurrently; calls on one session are serialized.
class SessionStore
{
public:
    using Clock = std::chrono::steady_clock;

    explicit SessionStore(std::chrono::seconds ttl = std::chrono::hours(1),
                          std::size_t capacity = 4096,
                          std::function<Clock::time_point()> now = Clock::now);

    /// Creates a session and returns its view.
    nlohmann::json create(const SessionParams &params);

    /// Runs `fn` on the session under its lock. Returns false if the id is
    /// unknown or expired.
    bool with_session(const std::string &id, const std::function<void(Session &)> &fn);

    std::size_t size() const;

private:
    struct Entry
    {
        std::mutex mutex;
        std::unique_ptr<Session> session;
        Clock::time_point last_used;
        std::list<std::string>::iterator lru;
    };

    void expire_locked(Clock::time_point now);
    std::string new_id();

    std::chrono::seconds ttl_;
    std::size_t capacity_;
    std::function<Clock::time_point()> now_;
    mutable std::mutex mutex_;
    std::unordered_map<std::string, std::shared_ptr<Entry>> sessions_;
    std::list<std::string> lru_; // most recent first
    Rng id_rng_;
    std::uint64_t counter_ = 0;
};

struct ApiResponse
{
    int status = 200;
    nlohmann::json body;
};

/// Routes one JSON API request:
///
///     POST /sessions                 {kappa, ell, strategy, first_move?, seed?}
///     POST /sessions/{id}/feedback   {black, white}
///     POST /sessions/{id}/undo
///     GET  /sessions/{id}
///
/// Errors carry `{"error": message}` with status 400 (bad parameters), 404
/// (unknown session), 409 (wrong state), 413 (space over budget) or 422
/// (impossible peg pair).
ApiResponse handle_request(SessionStore &store, std::string_view method,
                           std::string_view path, std::string_view body,
                           std::size_t budget = kDefaultSpaceBudget);

} // namespace mastermind::advisor

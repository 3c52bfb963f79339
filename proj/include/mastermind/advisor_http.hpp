// advisor_http.hpp -- HTTP front of the advisor API

#pragma once

#include "mastermind/advisor.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace mastermind::advisor {

struct ServerOptions
{
    std::string host = "127.0.0.1";
    int port = 8080; ///< 0 binds an ephemeral port
    std::optional<std::filesystem::path> static_dir;
    std::size_t budget = kDefaultSpaceBudget;
};

/// Serves `handle_request` over HTTP, plus optional static files at "/".
class Server
{
public:
    Server(SessionStore &store, ServerOptions options);
    ~Server();

    Server(const Server &) = delete;
    Server &operator=(const Server &) = delete;

    /// Binds the socket; returns the bound port or -1 on failure.
    int bind();

    /// Blocks serving requests until `stop` is called.
    bool listen();

    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace mastermind::advisor

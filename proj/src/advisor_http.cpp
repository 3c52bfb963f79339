#include "mastermind/advisor_http.hpp"

#include <httplib.h>

namespace mastermind::advisor {

struct Server::Impl
{
    Impl(SessionStore &s, ServerOptions o) : store(s), options(std::move(o)) {}

    SessionStore &store;
    ServerOptions options;
    httplib::Server http;
};

Server::Server(SessionStore &store, ServerOptions options)
  : impl_(std::make_unique<Impl>(store, std::move(options)))
{
    auto &http = impl_->http;
    Impl *impl = impl_.get();

    auto route = [impl](const httplib::Request &req, httplib::Response &res) {
        const ApiResponse out =
            handle_request(impl->store, req.method, req.path, req.body, impl->options.budget);
        res.status = out.status;
        res.set_content(out.body.dump(), "application/json");
    };

    http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"}});
    http.Post("/sessions", route);
    http.Post(R"(/sessions/([^/]+)/(feedback|undo))", route);
    http.Get(R"(/sessions/([^/]+))", route);
    http.Options(R"(/sessions.*)", [](const httplib::Request &, httplib::Response &res) {
        res.status = 204;
    });

    if (impl->options.static_dir)
        http.set_mount_point("/", impl->options.static_dir->string());
}

Server::~Server() { stop(); }

int Server::bind()
{
    if (impl_->options.port == 0)
        return impl_->http.bind_to_any_port(impl_->options.host);
    return impl_->http.bind_to_port(impl_->options.host, impl_->options.port)
               ? impl_->options.port
               : -1;
}

bool Server::listen() { return impl_->http.listen_after_bind(); }

void Server::stop()
{
    if (impl_)
        impl_->http.stop();
}

} // namespace mastermind::advisor

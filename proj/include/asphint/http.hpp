#pragma once

// HTTP+JSON binding of Service.
//
//   GET  /api/v1/exercises
//   GET  /api/v1/exercises/{id}
//   POST /api/v1/exercises/{id}/attempts

#include <asphint/service.hpp>

#include <httplib.h>

#include <string>

namespace asphint {

inline void mount(httplib::Server& server, Service& service) {
    auto send = [](httplib::Response& res, const Response& r) {
        res.status = r.status;
        res.set_content(r.body.dump(), "application/json");
    };
    server.Get("/api/v1/exercises", [&service, send](const httplib::Request&, httplib::Response& res) {
        send(res, service.list_exercises());
    });
    server.Get(R"(/api/v1/exercises/([^/]+))", [&service, send](const httplib::Request& req, httplib::Response& res) {
        send(res, service.get_exercise(req.matches[1]));
    });
    server.Post(R"(/api/v1/exercises/([^/]+)/attempts)",
                [&service, send](const httplib::Request& req, httplib::Response& res) {
                    send(res, service.post_attempt(req.matches[1], req.body));
                });
}

// Blocks until the server stops.
inline bool serve(Service& service, const std::string& host, int port) {
    httplib::Server server;
    mount(server, service);
    return server.listen(host, port);
}

}  // namespace asphint

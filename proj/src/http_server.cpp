#include <httplib.h>

#include "cnlasp/service.hpp"

namespace cnlasp {

struct HttpServer::Impl {
  explicit Impl(const Service& s) : service(s) {}
  const Service& service;
  httplib::Server server;
};

namespace {

void reply(httplib::Response& res, const Response& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

}  // namespace

HttpServer::HttpServer(const Service& s) : impl_(std::make_unique<Impl>(s)) {
  // httplib's default also sets SO_REUSEPORT, which lets a second server
  // bind a port that is already serving.
  impl_->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  });
  for (const char* op : {"parse", "verbalize", "roundtrip", "lookahead", "solve"}) {
    impl_->server.Post(std::string("/") + op, [this, op = std::string(op)](const httplib::Request& req,
                                                                           httplib::Response& res) {
      nlohmann::json body = nlohmann::json::parse(req.body, nullptr, false);
      if (body.is_discarded()) {
        reply(res, {400, {{"kind", "BadRequest"}, {"message", "request body is not JSON"}}});
        return;
      }
      reply(res, handle(impl_->service, op, body));
    });
  }
  impl_->server.Get("/lexicon", [this](const httplib::Request&, httplib::Response& res) {
    reply(res, handle(impl_->service, "lexicon", nlohmann::json::object()));
  });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int p = impl_->server.bind_to_any_port(host);
    if (p < 0) throw Error("PortInUse", "cannot bind " + host);
    return p;
  }
  if (!impl_->server.bind_to_port(host, port)) {
    throw Error("PortInUse", "cannot bind " + host + ":" + std::to_string(port));
  }
  return port;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() { impl_->server.stop(); }

}  // namespace cnlasp

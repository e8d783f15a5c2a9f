#pragma once

#include <memory>
#include <string>

#include <httplib.h>

#include "quilts/error.hpp"
#include "quilts/json_io.hpp"
#include "quilts/trial_service.hpp"

// HTTP binding of TrialService. Paths and bodies are listed in docs/api.md.

namespace quilts {

inline int http_status(Errc code) {
  switch (code) {
    case Errc::UnknownTrial:
    case Errc::UnknownParticipant:
    case Errc::NoMoreTrials: return 404;
    case Errc::ClickAfterEnd: return 409;
    case Errc::BadInput: return 400;
    default: return 500;
  }
}

inline Json to_json(const TrialView& v) {
  return Json{{"trialId", v.trialId},
              {"participant", v.participant},
              {"index", v.cell.index},
              {"session", v.cell.session},
              {"condition", v.cell.condition.name()},
              {"practice", v.cell.practice},
              {"treatment", v.cell.treatment},
              {"spec", to_json(v.cell.spec)},
              {"seed", v.cell.seed},
              {"source", ElementId::node(v.source).str()},
              {"destination", ElementId::node(v.destination).str()},
              {"remaining", v.remaining},
              {"timeoutMs", kTrialTimeout.count()},
              {"bundle", to_json(*v.bundle)}};
}

inline Json to_json(const ClickResponse& r) {
  return Json{{"trialId", r.trialId},
              {"result", to_string(r.result.outcome)},
              {"reason", to_string(r.result.cause)},
              {"highlight", r.highlight},
              {"elapsedMs", r.elapsedMs},
              {"status", to_string(r.status)}};
}

namespace http_detail {

inline void send(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

inline void send_error(httplib::Response& res, const Error& e, TrialService* svc = nullptr,
                       const std::string& trialId = {}) {
  Json body{{"error", to_string(e.code())}, {"message", e.what()}};
  if (svc && e.code() == Errc::ClickAfterEnd) {
    if (const auto o = svc->outcome(trialId)) body["status"] = to_string(*o);
  }
  send(res, http_status(e.code()), body);
}

template <class F>
void guarded(httplib::Response& res, F&& f, TrialService* svc = nullptr, const std::string& trialId = {}) {
  try {
    f();
  } catch (const Error& e) {
    send_error(res, e, svc, trialId);
  } catch (const std::exception& e) {
    send(res, 500, Json{{"error", "Internal"}, {"message", e.what()}});
  }
}

}  // namespace http_detail

// Registers the API routes on `server`. The service must outlive it.
inline void install_routes(httplib::Server& server, TrialService& svc) {
  using http_detail::guarded;
  using http_detail::send;

  server.Get("/api/health", [](const httplib::Request&, httplib::Response& res) {
    send(res, 200, Json{{"status", "ok"}});
  });

  server.Get(R"(/api/participants/(\d+)/next)", [&svc](const httplib::Request& req, httplib::Response& res) {
    guarded(res, [&] {
      const auto pid = std::stoull(req.matches[1].str());
      send(res, 200, to_json(svc.next(pid)));
    });
  });

  server.Post(R"(/api/trials/([A-Za-z0-9\-]+)/click)", [&svc](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1].str();
    guarded(
        res,
        [&] {
          const auto body = parse_json(req.body);
          if (!body.is_object() || !body.contains("element") || !body.at("element").is_string())
            throw Error(Errc::BadInput, "body must be {\"element\": \"n3\", \"clientTime\": <number>}");
          std::optional<double> clientTime;
          if (body.contains("clientTime") && body.at("clientTime").is_number())
            clientTime = body.at("clientTime").get<double>();
          send(res, 200, to_json(svc.click(id, body.at("element").get<std::string>(), clientTime)));
        },
        &svc, id);
  });

  server.Post(R"(/api/trials/([A-Za-z0-9\-]+)/abandon)", [&svc](const httplib::Request& req, httplib::Response& res) {
    const std::string id = req.matches[1].str();
    guarded(
        res,
        [&] {
          const auto r = svc.abandon(id);
          send(res, 200,
               Json{{"trialId", id}, {"status", to_string(r.outcome)}, {"accuracy", r.accuracy()},
                    {"elapsedMs", r.elapsedMs}});
        },
        &svc, id);
  });
}

}  // namespace quilts

#pragma once

#include <list>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <httplib.h>

#include "clustermod/catalog.hpp"
#include "clustermod/error.hpp"
#include "clustermod/export.hpp"
#include "clustermod/quiver_io.hpp"
#include "clustermod/seed.hpp"
#include "clustermod/word.hpp"

namespace clustermod {

// Invariant: replaying `history` (application order) from `base` gives `current`.
struct Session {
  std::string id;
  std::string base_name;  // catalog name, or "custom"
  ExchangeMatrix base;
  Seed current;
  std::vector<Token> history;
  std::mutex mutex;
};

struct Response {
  int status = 200;
  Json body;
};

// HTTP-independent handlers; `bind` attaches them to an httplib server.
class Service {
 public:
  explicit Service(std::size_t max_sessions = 256) : max_sessions_(max_sessions) {}

  // {"catalog": name} or {"quiver": <quiver json>}
  Response create_session(const std::string& body) {
    Json req;
    if (auto err = parse_body(body, req)) return *err;
    auto s = std::make_shared<Session>();
    try {
      if (req.contains("catalog") && req["catalog"].is_string()) {
        s->base_name = req["catalog"].get<std::string>();
        s->base = catalog_quiver(s->base_name);
      } else if (req.contains("quiver")) {
        s->base_name = "custom";
        s->base = quiver_from_json(req["quiver"]);
      } else {
        return error(400, "request needs \"catalog\" or \"quiver\"");
      }
    } catch (const InputError& e) {
      return error(req.contains("catalog") ? 404 : 400, e.what());
    }
    s->current = initial_seed(s->base, false);
    {
      std::lock_guard<std::mutex> lock(table_mutex_);
      s->id = "s" + std::to_string(++counter_);
      lru_.push_front(s->id);
      sessions_[s->id] = {s, lru_.begin()};
      while (sessions_.size() > max_sessions_) {
        sessions_.erase(lru_.back());
        lru_.pop_back();
      }
    }
    std::lock_guard<std::mutex> lock(s->mutex);
    return {201, state(*s, false)};
  }

  // {"k": int} and/or {"perm": "(0 1)"}; the mutation acts first when both are given.
  Response mutate(const std::string& id, const std::string& body) {
    Json req;
    if (auto err = parse_body(body, req)) return *err;
    auto s = find(id);
    if (!s) return error(404, "unknown session '" + id + "'");
    std::lock_guard<std::mutex> lock(s->mutex);
    const bool has_k = req.contains("k"), has_perm = req.contains("perm");
    if (!has_k && !has_perm) return error(400, "request needs \"k\" or \"perm\"");
    std::vector<Token> tokens;
    Seed next = s->current;
    try {
      if (has_k) {
        if (!req["k"].is_number_integer()) return error(400, "\"k\" must be an integer");
        const auto k = req["k"].get<std::int64_t>();
        if (k < 0 || k >= s->base.n()) return error(422, "vertex " + std::to_string(k) + " out of range");
        next = mutate_seed(next, static_cast<int>(k));
        tokens.push_back(Token::mutation(static_cast<int>(k)));
      }
      if (has_perm) {
        if (!req["perm"].is_string()) return error(400, "\"perm\" must be a cycle-notation string");
        auto p = Permutation::parse(req["perm"].get<std::string>(), s->base.n());
        next = permute_seed(next, p);
        tokens.push_back(Token::permutation(std::move(p)));
      }
    } catch (const FrozenMutation& e) {
      return error(422, e.what());
    } catch (const InvalidPermutation& e) {
      return error(422, e.what());
    } catch (const InputError& e) {
      return error(422, e.what());
    }
    s->current = std::move(next);
    s->history.insert(s->history.end(), tokens.begin(), tokens.end());
    return {200, state(*s, false)};
  }

  Response undo(const std::string& id) {
    auto s = find(id);
    if (!s) return error(404, "unknown session '" + id + "'");
    std::lock_guard<std::mutex> lock(s->mutex);
    if (s->history.empty()) return error(409, "nothing to undo");
    s->history.pop_back();
    Seed cur = initial_seed(s->base, false);
    for (const auto& t : s->history) cur = t.is_mutation() ? mutate_seed(cur, t.k) : permute_seed(cur, t.perm);
    s->current = std::move(cur);
    return {200, state(*s, false)};
  }

  Response get(const std::string& id, bool normalize = false) {
    auto s = find(id);
    if (!s) return error(404, "unknown session '" + id + "'");
    std::lock_guard<std::mutex> lock(s->mutex);
    return {200, state(*s, normalize)};
  }

  Response dot(const std::string& id) {
    auto s = find(id);
    if (!s) return error(404, "unknown session '" + id + "'");
    std::lock_guard<std::mutex> lock(s->mutex);
    return {200, Json{{"dot", quiver_dot(s->current.matrix)}}};
  }

  Response list_catalog() const {
    Json out = Json::array();
    for (const auto& e : catalog()) {
      Json q = to_json(e.matrix);
      q["name"] = e.name;
      q["description"] = e.description;
      out.push_back(q);
    }
    return {200, out};
  }

  std::size_t session_count() const {
    std::lock_guard<std::mutex> lock(table_mutex_);
    return sessions_.size();
  }

  void bind(httplib::Server& srv) {
    auto reply = [](httplib::Response& res, const Response& r) {
      res.status = r.status;
      res.set_content(r.body.dump(), "application/json");
    };
    srv.Post("/sessions", [this, reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, create_session(req.body));
    });
    srv.Post(R"(/sessions/([^/]+)/mutate)", [this, reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, mutate(req.matches[1], req.body));
    });
    srv.Post(R"(/sessions/([^/]+)/undo)", [this, reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, undo(req.matches[1]));
    });
    srv.Get(R"(/sessions/([^/]+)/dot)", [this, reply](const httplib::Request& req, httplib::Response& res) {
      reply(res, dot(req.matches[1]));
    });
    srv.Get(R"(/sessions/([^/]+))", [this, reply](const httplib::Request& req, httplib::Response& res) {
      const bool norm = req.has_param("normalize") && req.get_param_value("normalize") != "false" &&
                        req.get_param_value("normalize") != "0";
      reply(res, get(req.matches[1], norm));
    });
    srv.Get("/catalog", [this, reply](const httplib::Request&, httplib::Response& res) { reply(res, list_catalog()); });
  }

 private:
  static Response error(int status, const std::string& msg) { return {status, Json{{"error", msg}}}; }

  static std::optional<Response> parse_body(const std::string& body, Json& out) {
    try {
      out = Json::parse(body.empty() ? std::string("{}") : body);
    } catch (const Json::parse_error& e) {
      return error(400, std::string("malformed JSON: ") + e.what());
    }
    if (!out.is_object()) return error(400, "request body must be a JSON object");
    return std::nullopt;
  }

  std::shared_ptr<Session> find(const std::string& id) {
    std::lock_guard<std::mutex> lock(table_mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return nullptr;
    lru_.splice(lru_.begin(), lru_, it->second.second);
    return it->second.first;
  }

  static Json state(const Session& s, bool normalize) {
    MutationWord w(s.base.n());
    for (const auto& t : s.history) w.push_left(t);
    Json j = to_json(s.current.matrix);
    j["id"] = s.id;
    j["base"] = s.base_name;
    j["word"] = w.to_string();
    if (normalize) j["normalized_word"] = normalize_word(w).to_string();
    j["depth"] = s.history.size();
    j["c_matrix"] = s.current.c;
    const bool loop = s.current.matrix == s.base;
    j["is_loop"] = loop;
    j["loop_trivial"] = loop ? Json(s.current.c == identity_matrix(s.base.n())) : Json(nullptr);
    return j;
  }

  std::size_t max_sessions_;
  mutable std::mutex table_mutex_;
  std::list<std::string> lru_;  // most recently used first
  std::unordered_map<std::string, std::pair<std::shared_ptr<Session>, std::list<std::string>::iterator>> sessions_;
  std::uint64_t counter_ = 0;
};

}  // namespace clustermod

#include "argwf/service.hpp"

#include <fstream>
#include <sstream>

#include <httplib.h>

#include "argwf/explain.hpp"
#include "argwf/io.hpp"
#include "argwf/solver.hpp"

namespace argwf::service {

using io::json;

namespace {

Reply json_reply(int status, const json& body, std::uint64_t revision = 0) {
  return {status, io::canonical_dump(body, -1), "application/json", revision};
}

Reply error_reply(int status, const std::string& code, const std::string& message, std::uint64_t revision = 0) {
  json body = {{"error", code}, {"message", message}};
  if (revision) body["revision"] = revision;
  return json_reply(status, body, revision);
}

Reply not_found(const std::string& id) { return error_reply(404, "not_found", "unknown problem id '" + id + "'"); }

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("$: invalid JSON: ") + e.what());
  }
}

json explanations_json(const ProblemInstance& inst, const Schedule& sched, json& out) {
  auto capped = cap_explanations(explain(inst, sched));
  json items = json::array();
  for (const auto& e : capped.items) items.push_back(io::explanation_to_json(inst, e));
  out["explanations"] = items;
  out["suppressed"] = capped.suppressed;
  return items;
}

bool has_assignment(const Schedule& sched) {
  for (const auto& route : sched.routes)
    if (!route.empty()) return true;
  return false;
}

}  // namespace

Service::Service(ServiceOptions options) : options_(std::move(options)) {
  if (options_.snapshot_dir) load_snapshots();
}

std::optional<Service::Entry> Service::lookup(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(id);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void Service::store(const std::string& id, const Entry& entry) {
  entries_[id] = entry;
  if (!options_.snapshot_dir) return;
  const json doc = {{"problem", io::problem_to_json(entry.problem)},
                    {"schedule", io::schedule_to_json(entry.problem, entry.schedule)},
                    {"revision", entry.revision}};
  std::filesystem::create_directories(*options_.snapshot_dir);
  const auto path = *options_.snapshot_dir / (id + ".json");
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    out << io::canonical_dump(doc) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

void Service::load_snapshots() {
  if (!std::filesystem::is_directory(*options_.snapshot_dir)) return;
  for (const auto& file : std::filesystem::directory_iterator(*options_.snapshot_dir)) {
    if (file.path().extension() != ".json") continue;
    std::ifstream in(file.path());
    std::stringstream text;
    text << in.rdbuf();
    const json doc = json::parse(text.str());
    Entry entry;
    entry.problem = io::problem_from_json(doc.at("problem"));
    entry.schedule = io::schedule_from_json(entry.problem, doc.at("schedule"), "$.schedule");
    entry.revision = doc.at("revision").get<std::uint64_t>();
    const std::string id = file.path().stem().string();
    entries_[id] = std::move(entry);
    if (id.size() > 1 && id[0] == 'p') {
      try {
        next_id_ = std::max<std::uint64_t>(next_id_, std::stoull(id.substr(1)) + 1);
      } catch (const std::exception&) {
      }
    }
  }
}

Reply Service::create_problem(const std::string& body) {
  Entry entry;
  try {
    const json doc = parse_body(body);
    if (!doc.is_object()) throw InputError("$: expected object");
    for (auto it = doc.begin(); it != doc.end(); ++it)
      if (it.key() != "problem" && it.key() != "schedule") throw InputError("$." + it.key() + ": unknown field");
    if (!doc.contains("problem")) throw InputError("$.problem: missing required field");
    entry.problem = io::problem_from_json(doc.at("problem"));
    entry.schedule = doc.contains("schedule")
                         ? io::schedule_from_json(entry.problem, doc.at("schedule"), "$.schedule")
                         : Schedule::empty_for(entry.problem);
    const auto problems = structural_problems(entry.problem, entry.schedule);
    if (!problems.empty()) throw InputError("$.schedule: " + problems.front());
  } catch (const InputError& e) {
    return error_reply(422, "invalid_input", e.what());
  }

  std::string id;
  {
    std::lock_guard lock(mutex_);
    id = "p" + std::to_string(next_id_++);
    store(id, entry);
  }
  return json_reply(201,
                    {{"id", id},
                     {"revision", entry.revision},
                     {"problem", io::problem_to_json(entry.problem)},
                     {"schedule", io::schedule_to_json(entry.problem, entry.schedule)}},
                    entry.revision);
}

Reply Service::get_problem(const std::string& id) const {
  const auto entry = lookup(id);
  if (!entry) return not_found(id);
  return json_reply(200,
                    {{"id", id},
                     {"revision", entry->revision},
                     {"problem", io::problem_to_json(entry->problem)},
                     {"schedule", io::schedule_to_json(entry->problem, entry->schedule)}},
                    entry->revision);
}

Reply Service::put_schedule(const std::string& id, const std::string& body) {
  auto entry = lookup(id);
  if (!entry) return not_found(id);
  Schedule sched;
  try {
    sched = io::schedule_from_json(entry->problem, parse_body(body));
    const auto problems = structural_problems(entry->problem, sched);
    if (!problems.empty()) throw InputError("$: " + problems.front());
  } catch (const InputError& e) {
    return error_reply(422, "invalid_input", e.what(), entry->revision);
  }
  std::uint64_t revision = 0;
  {
    std::lock_guard lock(mutex_);
    Entry& current = entries_.at(id);
    current.schedule = sched;
    revision = ++current.revision;
    store(id, current);
  }
  return json_reply(200, {{"id", id}, {"revision", revision}, {"schedule", io::schedule_to_json(entry->problem, sched)}},
                    revision);
}

Reply Service::validate(const std::string& id) const {
  const auto entry = lookup(id);
  if (!entry) return not_found(id);
  json out = {{"id", id}, {"revision", entry->revision}};
  explanations_json(entry->problem, entry->schedule, out);
  return json_reply(200, out, entry->revision);
}

Reply Service::optimize(const std::string& id, const std::string& mode) const {
  const auto entry = lookup(id);
  if (!entry) return not_found(id);
  const auto& inst = entry->problem;
  const std::uint64_t rev = entry->revision;
  if (mode != "local" && mode != "exact")
    return error_reply(422, "invalid_input", "mode must be 'exact' or 'local'", rev);

  const SearchControl control = SearchControl::with_timeout(options_.optimize_budget);
  try {
    json out = {{"id", id}, {"revision", rev}, {"mode", mode}};
    if (mode == "exact") {
      const SolveResult r = brute_force(inst, control);
      out["schedule"] = io::schedule_to_json(inst, r.schedule);
      out["cost"] = io::cost_to_json(inst, r.cost);
      out["trace"] = json::array();
      return json_reply(200, out, rev);
    }
    std::optional<Schedule> seed;
    if (has_assignment(entry->schedule)) seed = entry->schedule;
    const LocalSearchResult r = local_search(inst, seed, control);
    json trace = json::array();
    for (const auto& mv : r.trace) trace.push_back(io::move_to_json(inst, mv));
    out["schedule"] = io::schedule_to_json(inst, r.schedule);
    out["cost"] = io::cost_to_json(inst, r.cost);
    out["trace"] = trace;
    if (r.cancelled) {
      out["error"] = "timeout";
      out["message"] = "optimization deadline reached; returning the partial trace";
      return json_reply(422, out, rev);
    }
    return json_reply(200, out, rev);
  } catch (const CancelledError& e) {
    return json_reply(422, {{"error", "timeout"}, {"message", e.what()}, {"revision", rev}, {"trace", json::array()}},
                      rev);
  } catch (const InfeasibleError& e) {
    return error_reply(422, "infeasible", e.what(), rev);
  } catch (const BoundExceededError& e) {
    return error_reply(422, "bound_exceeded", e.what(), rev);
  } catch (const InputError& e) {
    return error_reply(422, "invalid_input", e.what(), rev);
  }
}

Reply Service::apply_move(const std::string& id, const std::string& body) {
  const auto entry = lookup(id);
  if (!entry) return not_found(id);
  const auto& inst = entry->problem;

  std::uint64_t client_revision = 0;
  MoveSuggestion move;
  try {
    const json doc = parse_body(body);
    if (!doc.is_object()) throw InputError("$: expected object");
    for (auto it = doc.begin(); it != doc.end(); ++it)
      if (it.key() != "revision" && it.key() != "move") throw InputError("$." + it.key() + ": unknown field");
    if (!doc.contains("revision") || !doc["revision"].is_number_unsigned())
      throw InputError("$.revision: expected non-negative integer");
    if (!doc.contains("move")) throw InputError("$.move: missing required field");
    client_revision = doc["revision"].get<std::uint64_t>();
    move = io::move_from_json(inst, doc["move"], "$.move");
  } catch (const InputError& e) {
    return error_reply(422, "invalid_input", e.what(), entry->revision);
  }
  if (client_revision != entry->revision)
    return error_reply(409, "stale_revision",
                       "revision " + std::to_string(client_revision) + " is stale; current is " +
                           std::to_string(entry->revision),
                       entry->revision);

  Schedule next;
  try {
    next = argwf::apply_move(entry->schedule, move);
  } catch (const ConflictError& e) {
    return error_reply(409, "conflict", e.what(), entry->revision);
  }

  std::uint64_t revision = 0;
  {
    std::lock_guard lock(mutex_);
    Entry& current = entries_.at(id);
    if (current.revision != client_revision)
      return error_reply(409, "stale_revision", "schedule changed concurrently", current.revision);
    current.schedule = next;
    revision = ++current.revision;
    store(id, current);
  }
  json out = {{"id", id}, {"revision", revision}, {"schedule", io::schedule_to_json(inst, next)}};
  explanations_json(inst, next, out);
  out["cost"] = io::cost_to_json(inst, cost_report(inst, next));
  return json_reply(200, out, revision);
}

Reply Service::af(const std::string& id, const std::string& kind, const std::string& format) const {
  const auto entry = lookup(id);
  if (!entry) return not_found(id);
  const auto af_kind = af_kind_from_string(kind);
  if (!af_kind) return error_reply(404, "not_found", "unknown AF kind '" + kind + "'", entry->revision);
  if (format != "dot" && format != "json")
    return error_reply(422, "invalid_input", "format must be 'dot' or 'json'", entry->revision);
  try {
    const io::AfView view = io::af_view(entry->problem, entry->schedule, *af_kind);
    if (format == "dot") return {200, io::af_dot(entry->problem, view), "text/vnd.graphviz", entry->revision};
    return json_reply(200,
                      {{"id", id},
                       {"revision", entry->revision},
                       {"kind", kind},
                       {"graph", io::af_to_json(entry->problem, view.graph, view.extension)}},
                      entry->revision);
  } catch (const InputError& e) {
    return error_reply(422, "invalid_input", e.what(), entry->revision);
  }
}

Reply Service::cost(const std::string& id) const {
  const auto entry = lookup(id);
  if (!entry) return not_found(id);
  return json_reply(200,
                    {{"id", id},
                     {"revision", entry->revision},
                     {"cost", io::cost_to_json(entry->problem, cost_report(entry->problem, entry->schedule))}},
                    entry->revision);
}

Reply Service::openapi() {
  auto op = [](const char* summary, std::initializer_list<const char*> codes) {
    json responses = json::object();
    for (const char* c : codes) responses[c] = {{"description", c}};
    return json{{"summary", summary}, {"responses", responses}};
  };
  const json id_param = {{"name", "id"}, {"in", "path"}, {"required", true}, {"schema", {{"type", "string"}}}};
  json paths = {
      {"/problems", {{"post", op("Create a problem, optionally with a schedule", {"201", "422"})}}},
      {"/problems/{id}",
       {{"get", op("Problem, current schedule and revision", {"200", "404"})}, {"parameters", {id_param}}}},
      {"/problems/{id}/schedule",
       {{"put", op("Replace the current schedule", {"200", "404", "422"})}, {"parameters", {id_param}}}},
      {"/problems/{id}/validate",
       {{"post", op("Explanations for the current schedule", {"200", "404"})}, {"parameters", {id_param}}}},
      {"/problems/{id}/optimize",
       {{"post", op("Optimize (query mode=exact|local); result is not stored", {"200", "404", "422"})},
        {"parameters",
         {id_param,
          {{"name", "mode"}, {"in", "query"}, {"schema", {{"type", "string"}, {"enum", {"exact", "local"}}}}}}}}},
      {"/problems/{id}/moves",
       {{"post", op("Apply a move given the client's revision", {"200", "404", "409", "422"})},
        {"parameters", {id_param}}}},
      {"/problems/{id}/af/{kind}",
       {{"get", op("Argumentation framework as DOT or JSON (query format=dot|json)", {"200", "404", "422"})},
        {"parameters",
         {id_param,
          {{"name", "kind"},
           {"in", "path"},
           {"required", true},
           {"schema",
            {{"type", "string"},
             {"enum", {"feasibility", "efficiency", "individual", "skills", "instrument", "job-instrument"}}}}}}}}},
      {"/problems/{id}/cost", {{"get", op("Cost report", {"200", "404"})}, {"parameters", {id_param}}}},
  };
  return json_reply(200, {{"openapi", "3.0.3"},
                          {"info", {{"title", "argwf scheduling service"}, {"version", "1.0.0"}}},
                          {"paths", paths}});
}

void Service::mount(httplib::Server& server) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, PUT, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"},
                              {"Access-Control-Expose-Headers", "X-Revision"}});
  auto send = [](httplib::Response& res, const Reply& r) {
    res.status = r.status;
    if (r.revision) res.set_header("X-Revision", std::to_string(r.revision));
    res.set_content(r.body, r.content_type);
  };
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  server.Get("/spec", [send](const httplib::Request&, httplib::Response& res) { send(res, openapi()); });
  server.Post("/problems", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, create_problem(req.body));
  });
  server.Get(R"(/problems/([^/]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, get_problem(req.matches[1]));
  });
  server.Put(R"(/problems/([^/]+)/schedule)", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, put_schedule(req.matches[1], req.body));
  });
  server.Post(R"(/problems/([^/]+)/validate)", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, validate(req.matches[1]));
  });
  server.Post(R"(/problems/([^/]+)/optimize)", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, optimize(req.matches[1], req.has_param("mode") ? req.get_param_value("mode") : "local"));
  });
  server.Post(R"(/problems/([^/]+)/moves)", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, apply_move(req.matches[1], req.body));
  });
  server.Get(R"(/problems/([^/]+)/af/([^/]+))", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, af(req.matches[1], req.matches[2], req.has_param("format") ? req.get_param_value("format") : "json"));
  });
  server.Get(R"(/problems/([^/]+)/cost)", [this, send](const httplib::Request& req, httplib::Response& res) {
    send(res, cost(req.matches[1]));
  });
}

int serve(const std::string& host, int port, ServiceOptions options) {
  Service service(std::move(options));
  httplib::Server server;
  service.mount(server);
  return server.listen(host, port) ? 0 : 1;
}

}  // namespace argwf::service

#include "argwf/io.hpp"

#include <cmath>
#include <cstdio>
#include <initializer_list>
#include <functional>
#include <map>

#include "argwf/builders.hpp"

namespace argwf::io {

namespace {

void write(std::string& out, const json& v, int indent, int depth) {
  auto newline = [&](int level) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * level), ' ');
  };
  switch (v.type()) {
    case json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {  // std::map: keys already sorted
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        write(out, it.value(), indent, depth + 1);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out += ',';
        newline(depth + 1);
        write(out, v[k], indent, depth + 1);
      }
      newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float: {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6f", v.get<double>());
      std::string text = buf;
      if (text == "-0.000000") text = "0.000000";
      out += text;
      return;
    }
    default:
      out += v.dump();
  }
}

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw InputError(path + ": " + message);
}

const char* type_name(const json& v) { return v.type_name(); }

void expect_object(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path, std::string("expected object, got ") + type_name(v));
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed) known = known || it.key() == key;
    if (!known) fail(path + "." + it.key(), "unknown field");
  }
}

const json& required(const json& obj, const char* key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key, "missing required field");
  return *it;
}

const json* optional_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, std::string("expected number, got ") + type_name(v));
  return v.get<double>();
}

std::string text(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, std::string("expected string, got ") + type_name(v));
  return v.get<std::string>();
}

const json& array(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, std::string("expected array, got ") + type_name(v));
  return v;
}

std::size_t index_or_fail(const std::optional<std::size_t>& found, const std::string& path, const char* what,
                          const std::string& id) {
  if (!found) fail(path, std::string("unknown ") + what + " '" + id + "'");
  return *found;
}

std::set<std::size_t> id_set(const json& v, const std::string& path, const char* what,
                             const std::function<std::optional<std::size_t>(const std::string&)>& lookup) {
  std::set<std::size_t> out;
  const json& items = array(v, path);
  for (std::size_t k = 0; k < items.size(); ++k) {
    const std::string item_path = path + "[" + std::to_string(k) + "]";
    const std::string id = text(items[k], item_path);
    if (!out.insert(index_or_fail(lookup(id), item_path, what, id)).second)
      fail(item_path, std::string("duplicate ") + what + " '" + id + "'");
  }
  return out;
}

json id_list(const std::set<std::size_t>& items, const std::function<std::string(std::size_t)>& id) {
  json out = json::array();
  for (std::size_t k : items) out.push_back(id(k));
  return out;
}

json parse_text(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("$: invalid JSON: ") + e.what());
  }
}

std::string optional_id(const ProblemInstance& inst, OperatorIndex i) {
  return i == kNoOperator ? std::string() : inst.operators[i].id;
}

}  // namespace

std::string canonical_dump(const json& value, int indent) {
  std::string out;
  write(out, value, indent, 0);
  return out;
}

ProblemInstance problem_from_json(const json& doc) {
  expect_object(doc, "$");
  check_keys(doc, "$", {"alpha", "beta", "depot", "skills", "operators", "instruments", "jobs", "processing"});

  ProblemInstance inst;
  inst.alpha = number(required(doc, "alpha", "$"), "$.alpha");
  inst.beta = number(required(doc, "beta", "$"), "$.beta");
  if (const json* depot = optional_field(doc, "depot")) {
    array(*depot, "$.depot");
    if (depot->size() != 2) fail("$.depot", "expected [x, y]");
    inst.depot = {number((*depot)[0], "$.depot[0]"), number((*depot)[1], "$.depot[1]")};
  }
  if (const json* skills = optional_field(doc, "skills")) {
    array(*skills, "$.skills");
    for (std::size_t k = 0; k < skills->size(); ++k)
      inst.skills.push_back(text((*skills)[k], "$.skills[" + std::to_string(k) + "]"));
  }
  auto skill_lookup = [&](const std::string& id) { return inst.find_skill(id); };

  if (const json* tools = optional_field(doc, "instruments")) {
    array(*tools, "$.instruments");
    for (std::size_t t = 0; t < tools->size(); ++t) {
      const std::string path = "$.instruments[" + std::to_string(t) + "]";
      const json& item = (*tools)[t];
      expect_object(item, path);
      check_keys(item, path, {"id", "skills"});
      InstrumentSpec spec;
      spec.id = text(required(item, "id", path), path + ".id");
      if (const json* s = optional_field(item, "skills"))
        spec.required_skills = id_set(*s, path + ".skills", "skill", skill_lookup);
      inst.instruments.push_back(std::move(spec));
    }
  }
  auto tool_lookup = [&](const std::string& id) { return inst.find_instrument(id); };

  const json& ops = array(required(doc, "operators", "$"), "$.operators");
  for (std::size_t i = 0; i < ops.size(); ++i) {
    const std::string path = "$.operators[" + std::to_string(i) + "]";
    expect_object(ops[i], path);
    check_keys(ops[i], path, {"id", "skills"});
    OperatorSpec spec;
    spec.id = text(required(ops[i], "id", path), path + ".id");
    if (const json* s = optional_field(ops[i], "skills"))
      spec.skills = id_set(*s, path + ".skills", "skill", skill_lookup);
    inst.operators.push_back(std::move(spec));
  }

  const json& jobs = array(required(doc, "jobs", "$"), "$.jobs");
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const std::string path = "$.jobs[" + std::to_string(j) + "]";
    expect_object(jobs[j], path);
    check_keys(jobs[j], path, {"id", "x", "y", "skills", "instruments"});
    JobSpec spec;
    spec.id = text(required(jobs[j], "id", path), path + ".id");
    spec.location = {number(required(jobs[j], "x", path), path + ".x"),
                     number(required(jobs[j], "y", path), path + ".y")};
    if (const json* s = optional_field(jobs[j], "skills"))
      spec.required_skills = id_set(*s, path + ".skills", "skill", skill_lookup);
    if (const json* s = optional_field(jobs[j], "instruments"))
      spec.required_instruments = id_set(*s, path + ".instruments", "instrument", tool_lookup);
    inst.jobs.push_back(std::move(spec));
  }

  const json& rows = array(required(doc, "processing", "$"), "$.processing");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::string path = "$.processing[" + std::to_string(i) + "]";
    const json& row = array(rows[i], path);
    std::vector<double> values;
    for (std::size_t j = 0; j < row.size(); ++j) values.push_back(number(row[j], path + "[" + std::to_string(j) + "]"));
    inst.processing.push_back(std::move(values));
  }
  if (inst.jobs.empty() && inst.processing.empty()) inst.processing.assign(inst.operators.size(), {});

  const auto errors = validate_instance(inst);
  if (!errors.empty()) {
    std::string message = errors.front().path + ": " + errors.front().message;
    for (std::size_t k = 1; k < errors.size(); ++k) message += "; " + errors[k].path + ": " + errors[k].message;
    throw InputError(message);
  }
  return inst;
}

ProblemInstance parse_problem(const std::string& text) { return problem_from_json(parse_text(text)); }

json problem_to_json(const ProblemInstance& inst) {
  auto skill_id = [&](std::size_t s) { return inst.skills[s]; };
  auto tool_id = [&](std::size_t t) { return inst.instruments[t].id; };
  json doc = json::object();
  doc["alpha"] = inst.alpha;
  doc["beta"] = inst.beta;
  doc["depot"] = json::array({inst.depot.x, inst.depot.y});
  doc["skills"] = inst.skills;
  doc["operators"] = json::array();
  for (const auto& op : inst.operators)
    doc["operators"].push_back({{"id", op.id}, {"skills", id_list(op.skills, skill_id)}});
  doc["instruments"] = json::array();
  for (const auto& tool : inst.instruments)
    doc["instruments"].push_back({{"id", tool.id}, {"skills", id_list(tool.required_skills, skill_id)}});
  doc["jobs"] = json::array();
  for (const auto& job : inst.jobs)
    doc["jobs"].push_back({{"id", job.id},
                           {"x", job.location.x},
                           {"y", job.location.y},
                           {"skills", id_list(job.required_skills, skill_id)},
                           {"instruments", id_list(job.required_instruments, tool_id)}});
  doc["processing"] = json::array();
  for (const auto& row : inst.processing) {
    json values = json::array();
    for (double p : row) values.push_back(p);
    doc["processing"].push_back(std::move(values));
  }
  return doc;
}

std::string emit_problem(const ProblemInstance& inst) { return canonical_dump(problem_to_json(inst)) + "\n"; }

Schedule schedule_from_json(const ProblemInstance& inst, const json& doc, const std::string& path) {
  expect_object(doc, path);
  check_keys(doc, path, {"routes", "instruments"});
  Schedule sched = Schedule::empty_for(inst);

  const json& routes = required(doc, "routes", path);
  expect_object(routes, path + ".routes");
  for (auto it = routes.begin(); it != routes.end(); ++it) {
    const std::string op_path = path + ".routes." + it.key();
    const OperatorIndex i = index_or_fail(inst.find_operator(it.key()), op_path, "operator", it.key());
    const json& jobs = array(it.value(), op_path);
    for (std::size_t k = 0; k < jobs.size(); ++k) {
      const std::string job_path = op_path + "[" + std::to_string(k) + "]";
      const std::string id = text(jobs[k], job_path);
      sched.routes[i].push_back(index_or_fail(inst.find_job(id), job_path, "job", id));
    }
  }

  if (const json* tools = optional_field(doc, "instruments")) {
    expect_object(*tools, path + ".instruments");
    for (auto it = tools->begin(); it != tools->end(); ++it) {
      const std::string op_path = path + ".instruments." + it.key();
      const OperatorIndex i = index_or_fail(inst.find_operator(it.key()), op_path, "operator", it.key());
      sched.instruments[i] =
          id_set(it.value(), op_path, "instrument", [&](const std::string& id) { return inst.find_instrument(id); });
    }
  }
  return sched;
}

Schedule parse_schedule(const ProblemInstance& inst, const std::string& text) {
  return schedule_from_json(inst, parse_text(text));
}

json schedule_to_json(const ProblemInstance& inst, const Schedule& sched) {
  json routes = json::object();
  json tools = json::object();
  for (OperatorIndex i = 0; i < inst.operator_count(); ++i) {
    json jobs = json::array();
    if (i < sched.routes.size())
      for (JobIndex j : sched.routes[i]) jobs.push_back(inst.jobs[j].id);
    routes[inst.operators[i].id] = std::move(jobs);
    json held = json::array();
    if (i < sched.instruments.size())
      for (InstrumentIndex t : sched.instruments[i]) held.push_back(inst.instruments[t].id);
    tools[inst.operators[i].id] = std::move(held);
  }
  return {{"routes", std::move(routes)}, {"instruments", std::move(tools)}};
}

std::string emit_schedule(const ProblemInstance& inst, const Schedule& sched) {
  return canonical_dump(schedule_to_json(inst, sched)) + "\n";
}

std::string argument_label(const ProblemInstance& inst, const Argument& a) {
  switch (a.kind) {
    case ArgumentKind::OperatorJob:
      return "a(" + inst.operators[a.first].id + "," + inst.jobs[a.second].id + ")";
    case ArgumentKind::OperatorInstrument:
      return "a(" + inst.operators[a.first].id + "," + inst.instruments[a.second].id + ")";
    case ArgumentKind::JobInstrument:
      return "a(" + inst.jobs[a.first].id + "," + inst.instruments[a.second].id + ")";
  }
  return default_label(a);
}

json argument_to_json(const ProblemInstance& inst, const Argument& a) { return argument_label(inst, a); }

json move_to_json(const ProblemInstance& inst, const MoveSuggestion& move) {
  json out = {{"kind", to_string(move.kind)}, {"predicted_delta", move.predicted_delta}};
  switch (move.kind) {
    case MoveKind::RelocateInter:
      out["from_operator"] = inst.operators[move.from_operator].id;
      out["to_operator"] = inst.operators[move.to_operator].id;
      out["job"] = inst.jobs[move.job].id;
      out["position"] = move.position;
      break;
    case MoveKind::SwapInter:
      out["from_operator"] = inst.operators[move.from_operator].id;
      out["to_operator"] = inst.operators[move.to_operator].id;
      out["job"] = inst.jobs[move.job].id;
      out["other_job"] = inst.jobs[*move.other_job].id;
      break;
    case MoveKind::RelocateIntra:
      out["operator"] = inst.operators[move.from_operator].id;
      out["job"] = inst.jobs[move.job].id;
      out["position"] = move.position;
      break;
    case MoveKind::SwapIntra:
      out["operator"] = inst.operators[move.from_operator].id;
      out["job"] = inst.jobs[move.job].id;
      out["other_job"] = inst.jobs[*move.other_job].id;
      break;
    case MoveKind::MoveInstrument:
      out["instrument"] = inst.instruments[*move.instrument].id;
      out["from_operator"] = move.from_operator == kNoOperator ? json(nullptr) : json(optional_id(inst, move.from_operator));
      out["to_operator"] = inst.operators[move.to_operator].id;
      break;
  }
  return out;
}

MoveSuggestion move_from_json(const ProblemInstance& inst, const json& doc, const std::string& path) {
  expect_object(doc, path);
  const std::string kind_text = text(required(doc, "kind", path), path + ".kind");
  const auto kind = move_kind_from_string(kind_text);
  if (!kind) fail(path + ".kind", "unknown move kind '" + kind_text + "'");

  auto op = [&](const char* key) {
    const std::string p = path + "." + key;
    const std::string id = text(required(doc, key, path), p);
    return index_or_fail(inst.find_operator(id), p, "operator", id);
  };
  auto job = [&](const char* key) {
    const std::string p = path + "." + key;
    const std::string id = text(required(doc, key, path), p);
    return index_or_fail(inst.find_job(id), p, "job", id);
  };
  auto position = [&] {
    const json& v = required(doc, "position", path);
    if (!v.is_number_integer() || v.get<long long>() < 0) fail(path + ".position", "expected non-negative integer");
    return static_cast<std::size_t>(v.get<long long>());
  };

  MoveSuggestion move;
  move.kind = *kind;
  switch (*kind) {
    case MoveKind::RelocateInter:
      check_keys(doc, path, {"kind", "from_operator", "to_operator", "job", "position", "predicted_delta"});
      move.from_operator = op("from_operator");
      move.to_operator = op("to_operator");
      move.job = job("job");
      move.position = position();
      break;
    case MoveKind::SwapInter:
      check_keys(doc, path, {"kind", "from_operator", "to_operator", "job", "other_job", "predicted_delta"});
      move.from_operator = op("from_operator");
      move.to_operator = op("to_operator");
      move.job = job("job");
      move.other_job = job("other_job");
      break;
    case MoveKind::RelocateIntra:
      check_keys(doc, path, {"kind", "operator", "job", "position", "predicted_delta"});
      move.from_operator = move.to_operator = op("operator");
      move.job = job("job");
      move.position = position();
      break;
    case MoveKind::SwapIntra:
      check_keys(doc, path, {"kind", "operator", "job", "other_job", "predicted_delta"});
      move.from_operator = move.to_operator = op("operator");
      move.job = job("job");
      move.other_job = job("other_job");
      break;
    case MoveKind::MoveInstrument: {
      check_keys(doc, path, {"kind", "instrument", "from_operator", "to_operator", "predicted_delta"});
      const std::string p = path + ".instrument";
      const std::string id = text(required(doc, "instrument", path), p);
      move.instrument = index_or_fail(inst.find_instrument(id), p, "instrument", id);
      const json* from = optional_field(doc, "from_operator");
      move.from_operator = (from == nullptr || from->is_null()) ? kNoOperator : op("from_operator");
      move.to_operator = op("to_operator");
      break;
    }
  }
  if (const json* d = optional_field(doc, "predicted_delta")) move.predicted_delta = number(*d, path + ".predicted_delta");
  return move;
}

json explanation_to_json(const ProblemInstance& inst, const Explanation& e) {
  json out = {{"code", to_string(e.code)}, {"message", e.message}};
  if (e.witness) {
    const Witness& w = *e.witness;
    out["witness"] = {{"af", to_string(w.af)},
                      {"attack", w.attack},
                      {"attacker", w.attacker ? argument_to_json(inst, *w.attacker) : json(nullptr)},
                      {"target", argument_to_json(inst, w.target)}};
  } else {
    out["witness"] = nullptr;
  }
  out["suggestion"] = e.suggestion ? move_to_json(inst, *e.suggestion) : json(nullptr);
  out["delta"] = e.delta ? json(*e.delta) : json(nullptr);
  return out;
}

json cost_to_json(const ProblemInstance& inst, const CostReport& cost) {
  json per = json::object();
  for (OperatorIndex i = 0; i < cost.per_operator.size(); ++i) per[inst.operators[i].id] = cost.per_operator[i];
  json critical = json::array();
  for (OperatorIndex i : cost.critical_operators) critical.push_back(inst.operators[i].id);
  return {{"per_operator", std::move(per)}, {"makespan", cost.makespan}, {"critical_operators", std::move(critical)}};
}

json af_to_json(const ProblemInstance& inst, const ArgGraph& g, const std::vector<Argument>& extension) {
  json args = json::array();
  for (const Argument& a : g.arguments()) args.push_back(argument_label(inst, a));
  json attacks = json::array();
  for (const Attack& at : g.attack_relation())
    attacks.push_back(json::array({argument_label(inst, at.first), argument_label(inst, at.second)}));
  const std::set<Argument> members(extension.begin(), extension.end());
  json ext = json::array();
  for (const Argument& a : members) ext.push_back(argument_label(inst, a));
  return {{"arguments", std::move(args)}, {"attacks", std::move(attacks)}, {"extension", std::move(ext)}};
}

AfView af_view(const ProblemInstance& inst, const Schedule& sched, AfKind kind) {
  const auto problems = structural_problems(inst, sched);
  if (!problems.empty()) throw InputError("$: malformed schedule: " + problems.front());
  switch (kind) {
    case AfKind::Feasibility: return {feasibility_af(inst), schedule_extension(sched)};
    case AfKind::ExtendedCost: return {extended_cost_af(inst, sched), schedule_extension(sched)};
    case AfKind::Individual: return {individual_af(inst, sched), schedule_extension(sched)};
    case AfKind::Skills: return {skill_af(inst), schedule_extension(sched)};
    case AfKind::Instruments: return {instrument_feasibility_af(inst), instrument_extension(sched)};
    case AfKind::JobInstrument: return {job_instrument_af(inst, sched), requirement_extension(inst)};
  }
  throw InputError("unknown AF kind");
}

std::string af_dot(const ProblemInstance& inst, const AfView& view) {
  return to_dot(view.graph, view.extension, [&](const Argument& a) { return argument_label(inst, a); });
}

}  // namespace argwf::io

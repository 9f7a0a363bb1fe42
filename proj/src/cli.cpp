#include "argwf/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "argwf/explain.hpp"
#include "argwf/io.hpp"
#include "argwf/service.hpp"
#include "argwf/solver.hpp"

namespace argwf {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

ProblemInstance load_problem(const std::string& path) {
  try {
    return io::parse_problem(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Schedule load_schedule(const ProblemInstance& inst, const std::string& path) {
  try {
    return io::parse_schedule(inst, read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::size_t print_explanations(const ProblemInstance& inst, const Schedule& sched, std::ostream& out) {
  const auto all = explain(inst, sched);
  const std::size_t total = all.size();
  const auto capped = cap_explanations(all);
  for (const auto& e : capped.items) out << io::canonical_dump(io::explanation_to_json(inst, e), -1) << "\n";
  if (capped.suppressed > 0) out << io::canonical_dump(io::json{{"suppressed", capped.suppressed}}, -1) << "\n";
  return total;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Argumentation-based explanations for workforce schedules", "argwf"};
  app.require_subcommand(1);

  std::string problem_path;
  std::string schedule_path;
  std::string seed_path;
  std::string kind = "feasibility";
  std::string format = "dot";
  bool exact = false;
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string snapshot_dir;

  auto* validate = app.add_subcommand("validate", "Exit 0 iff the schedule has no explanations");
  auto* explain_cmd = app.add_subcommand("explain", "Print explanations as JSON lines");
  for (auto* cmd : {validate, explain_cmd}) {
    cmd->add_option("-p,--problem", problem_path, "Problem JSON")->required();
    cmd->add_option("-s,--schedule", schedule_path, "Schedule JSON")->required();
  }

  auto* optimize = app.add_subcommand("optimize", "Print an optimized schedule");
  optimize->add_option("-p,--problem", problem_path, "Problem JSON")->required();
  optimize->add_option("--seed", seed_path, "Seed schedule for local search");
  optimize->add_flag("--exact", exact, "Exhaustive search instead of local search");

  auto* cost = app.add_subcommand("cost", "Print the cost report");
  cost->add_option("-p,--problem", problem_path, "Problem JSON")->required();
  cost->add_option("-s,--schedule", schedule_path, "Schedule JSON")->required();

  auto* af = app.add_subcommand("af", "Export an argumentation framework");
  af->add_option("-p,--problem", problem_path, "Problem JSON")->required();
  af->add_option("-s,--schedule", schedule_path, "Schedule JSON (default: empty schedule)");
  af->add_option("--kind", kind, "AF kind")
      ->check(CLI::IsMember({"feasibility", "efficiency", "individual", "skills", "instrument", "job-instrument"}));
  af->add_option("--format", format, "Output format")->check(CLI::IsMember({"dot", "json"}));

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");
  serve->add_option("--port", port, "Port")->check(CLI::Range(1, 65535));
  serve->add_option("--host", host, "Bind address");
  serve->add_option("--snapshot-dir", snapshot_dir, "Directory for per-problem JSON snapshots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (validate->parsed() || explain_cmd->parsed()) {
      const auto inst = load_problem(problem_path);
      const auto sched = load_schedule(inst, schedule_path);
      const std::size_t total = print_explanations(inst, sched, out);
      return validate->parsed() && total > 0 ? kExitFindings : kExitOk;
    }
    if (optimize->parsed()) {
      const auto inst = load_problem(problem_path);
      Schedule result;
      if (exact) {
        result = brute_force(inst).schedule;
      } else {
        std::optional<Schedule> seed;
        if (!seed_path.empty()) seed = load_schedule(inst, seed_path);
        result = local_search(inst, seed).schedule;
      }
      out << io::emit_schedule(inst, result);
      return kExitOk;
    }
    if (cost->parsed()) {
      const auto inst = load_problem(problem_path);
      const auto sched = load_schedule(inst, schedule_path);
      out << io::canonical_dump(io::cost_to_json(inst, cost_report(inst, sched))) << "\n";
      return kExitOk;
    }
    if (af->parsed()) {
      const auto inst = load_problem(problem_path);
      const auto sched = schedule_path.empty() ? Schedule::empty_for(inst) : load_schedule(inst, schedule_path);
      const auto view = io::af_view(inst, sched, *af_kind_from_string(kind));
      if (format == "dot")
        out << io::af_dot(inst, view);
      else
        out << io::canonical_dump(io::af_to_json(inst, view.graph, view.extension)) << "\n";
      return kExitOk;
    }
    if (serve->parsed()) {
      service::ServiceOptions options;
      if (!snapshot_dir.empty()) options.snapshot_dir = snapshot_dir;
      err << "listening on " << host << ":" << port << "\n";
      return service::serve(host, port, options) == 0 ? kExitOk : kExitInput;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const BoundExceededError& e) {
    err << "bound exceeded: " << e.what() << "\n";
    return kExitBound;
  }
  return kExitInput;
}

}  // namespace argwf

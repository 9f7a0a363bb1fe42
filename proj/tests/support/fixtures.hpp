#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "argwf/io.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(ARGWF_FIXTURE_DIR) + "/" + name; }
inline std::string golden_path(const std::string& name) { return std::string(ARGWF_GOLDEN_DIR) + "/" + name; }

inline std::string read(const std::string& file) {
  std::ifstream in(file);
  std::stringstream text;
  text << in.rdbuf();
  return text.str();
}

inline argwf::ProblemInstance problem(const std::string& example) {
  return argwf::io::parse_problem(read(path(example + "_problem.json")));
}

inline argwf::Schedule schedule(const argwf::ProblemInstance& inst, const std::string& file) {
  return argwf::io::parse_schedule(inst, read(path(file)));
}

}  // namespace fixtures

#ifndef RELATOR_COMMANDS_HPP
#define RELATOR_COMMANDS_HPP

#include <json.hpp>

#include "relator/dsl.hpp"

namespace relator::commands {

// Exit codes: 0 success, 2 property absent / none found, 1 error.
constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kAbsent = 2;

constexpr const char* kSchema = "relator-lab/1";

struct Options {
  std::string command;  // classify | embed | kernel | eq | separate |
                        // subst | power | brown
  std::vector<std::string> args;
  int window = 3;
  int degree_bound = 5;
  int weight_bound = 4;
  bool oracle = false;  // brute-force certificate search
  bool timing = false;  // opt-in; reports are byte-stable without it
  std::string format = "text";  // text | machine
};

struct Outcome {
  nlohmann::json report;
  int exit_code = kOk;
};

Outcome run(const dsl::Document& doc, const Options& opts);

std::string render_text(const nlohmann::json& report);
std::string render(const nlohmann::json& report, const std::string& format);

}  // namespace relator::commands

#endif  // RELATOR_COMMANDS_HPP

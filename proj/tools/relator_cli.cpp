// Command-line front end; talks to the library through the C API only.

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relator/capi.h"

int main(int argc, char** argv) {
  CLI::App app{"relator: analysis of relative one-relator presentations"};
  app.require_subcommand(1);

  std::string file;
  int window = 3, degree_bound = 5, weight_bound = 4;
  bool oracle = false, timing = false;
  std::string format = "text";
  app.add_option("-f,--file", file, "presentation document")->required();
  app.add_option("--window", window, "level window (default 3)");
  app.add_option("--degree-bound", degree_bound,
                 "max permutation degree (default 5)");
  app.add_option("--weight-bound", weight_bound,
                 "oracle weight bound (default 4)");
  app.add_flag("--oracle", oracle, "brute-force certificate search");
  app.add_flag("--timing", timing, "include elapsed time in the report");
  app.add_option("--format", format, "text | machine");

  std::vector<std::string> args;
  struct Cmd {
    const char* name;
    const char* help;
    int nargs;  // -1: any
  };
  const Cmd cmds[] = {
      {"classify", "weight-certificate taxonomy of the relator skeleton", 0},
      {"embed", "rewrite into a strong presentation with a retraction", 0},
      {"kernel", "kernel collapse, free-product basis, verification", 0},
      {"eq", "decide equality of two words via normal forms", 2},
      {"separate", "search finite quotients separating a word", 1},
      {"subst", "substitute a relator for a letter: OUTER LETTER INNER", 3},
      {"power", "raise a relator to a power: RELATOR N", 2},
      {"brown", "finite generation of the weight kernel", -1},
  };
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    auto* opt = sub->add_option("args", args, "command arguments");
    if (c.nargs >= 0) opt->expected(c.nargs);
  }

  CLI11_PARSE(app, argc, argv);
  std::string command = app.get_subcommands()[0]->get_name();

  rl_document* doc = rl_parse_file(file.c_str());
  if (!doc) {
    std::fprintf(stderr, "error: %s\n", rl_last_error());
    return RL_ERROR;
  }

  nlohmann::json opts = {
      {"command", command},   {"args", args},
      {"window", window},     {"degree_bound", degree_bound},
      {"weight_bound", weight_bound}, {"oracle", oracle},
      {"timing", timing},     {"format", format},
  };
  rl_report* rep = rl_run(doc, opts.dump().c_str());
  if (!rep) {
    std::fprintf(stderr, "error: %s\n", rl_last_error());
    rl_document_free(doc);
    return RL_ERROR;
  }
  const char* text = rl_report_text(rep);
  if (!text) {
    std::fprintf(stderr, "error: %s\n", rl_last_error());
    rl_report_free(rep);
    rl_document_free(doc);
    return RL_ERROR;
  }
  std::fputs(text, stdout);
  int code = rl_report_exit_code(rep);
  rl_report_free(rep);
  rl_document_free(doc);
  return code;
}

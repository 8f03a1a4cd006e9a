#include "relator/capi.h"

#include <string>

#include "relator/commands.hpp"
#include "relator/dsl.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

}  // namespace

struct rl_document {
  relator::dsl::Document doc;
  std::string printed;
};

struct rl_report {
  relator::commands::Outcome outcome;
  std::string format = "text";
  std::string json_cache;
  std::string text_cache;
};

extern "C" {

const char* rl_version(void) { return "1.0.0"; }

const char* rl_last_error(void) { return g_last_error.c_str(); }

rl_document* rl_parse_document(const char* text) {
  if (!text) {
    set_error("null text");
    return nullptr;
  }
  try {
    auto* d = new rl_document{relator::dsl::parse_document(text), {}};
    set_error("");
    return d;
  } catch (const std::exception& ex) {
    set_error(ex.what());
    return nullptr;
  }
}

rl_document* rl_parse_file(const char* path) {
  if (!path) {
    set_error("null path");
    return nullptr;
  }
  try {
    auto* d = new rl_document{relator::dsl::parse_file(path), {}};
    set_error("");
    return d;
  } catch (const std::exception& ex) {
    set_error(ex.what());
    return nullptr;
  }
}

void rl_document_free(rl_document* doc) { delete doc; }

const char* rl_document_print(rl_document* doc) {
  if (!doc) {
    set_error("null document");
    return nullptr;
  }
  try {
    doc->printed = relator::dsl::print_document(doc->doc);
    set_error("");
    return doc->printed.c_str();
  } catch (const std::exception& ex) {
    set_error(ex.what());
    return nullptr;
  }
}

rl_report* rl_run(rl_document* doc, const char* options_json) {
  if (!doc || !options_json) {
    set_error("null document or options");
    return nullptr;
  }
  relator::commands::Options opts;
  try {
    auto j = nlohmann::json::parse(options_json);
    if (!j.contains("command")) throw relator::Error("options need a command");
    opts.command = j.at("command").get<std::string>();
    if (j.contains("args"))
      opts.args = j.at("args").get<std::vector<std::string>>();
    if (j.contains("window")) opts.window = j.at("window").get<int>();
    if (j.contains("degree_bound"))
      opts.degree_bound = j.at("degree_bound").get<int>();
    if (j.contains("weight_bound"))
      opts.weight_bound = j.at("weight_bound").get<int>();
    if (j.contains("oracle")) opts.oracle = j.at("oracle").get<bool>();
    if (j.contains("timing")) opts.timing = j.at("timing").get<bool>();
    if (j.contains("format")) opts.format = j.at("format").get<std::string>();
  } catch (const std::exception& ex) {
    set_error(std::string("bad options: ") + ex.what());
    return nullptr;
  }
  try {
    auto* rep = new rl_report;
    rep->outcome = relator::commands::run(doc->doc, opts);
    rep->format = opts.format;
    set_error("");
    return rep;
  } catch (const std::exception& ex) {
    set_error(ex.what());
    return nullptr;
  }
}

void rl_report_free(rl_report* rep) { delete rep; }

int rl_report_exit_code(const rl_report* rep) {
  return rep ? rep->outcome.exit_code : RL_ERROR;
}

const char* rl_report_json(rl_report* rep) {
  if (!rep) {
    set_error("null report");
    return nullptr;
  }
  rep->json_cache = rep->outcome.report.dump(2) + "\n";
  return rep->json_cache.c_str();
}

const char* rl_report_text(rl_report* rep) {
  if (!rep) {
    set_error("null report");
    return nullptr;
  }
  try {
    rep->text_cache =
        relator::commands::render(rep->outcome.report, rep->format);
    return rep->text_cache.c_str();
  } catch (const std::exception& ex) {
    set_error(ex.what());
    return nullptr;
  }
}

}  // extern "C"

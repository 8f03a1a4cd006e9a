#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <string>

#include "relator/capi.h"

#include <json.hpp>

using nlohmann::json;

static std::string fixture_path(const std::string& name) {
  const char* dir = std::getenv("RELATOR_FIXTURES");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

static const char* kCommutator =
    "group H = trivial\n"
    "letters x, y\n"
    "relator R = x y x^-1 y^-1\n"
    "word u = x y\n"
    "word v = y x\n";

TEST_CASE("version and error state") {
  CHECK(std::strlen(rl_version()) > 0);
  CHECK(rl_parse_document("group H = nonsense\n") == nullptr);
  CHECK(std::strlen(rl_last_error()) > 0);
  rl_document* doc = rl_parse_document(kCommutator);
  REQUIRE(doc != nullptr);
  CHECK(rl_last_error()[0] == '\0');  // cleared by success
  rl_document_free(doc);
}

TEST_CASE("parse, print, run classify") {
  rl_document* doc = rl_parse_document(kCommutator);
  REQUIRE(doc != nullptr);
  CHECK(std::string(rl_document_print(doc)).find("relator R") !=
        std::string::npos);

  rl_report* rep = rl_run(doc, R"({"command":"classify"})");
  REQUIRE(rep != nullptr);
  CHECK(rl_report_exit_code(rep) == 0);
  json j = json::parse(rl_report_json(rep));
  CHECK(j["schema"] == "relator-lab/1");
  CHECK(j["command"] == "classify");
  CHECK(j["class"] == "strong-unique-max-min");
  CHECK(!j.contains("elapsed_ms"));  // byte-stable unless timing is requested
  CHECK(std::string(rl_report_text(rep)).find("class") != std::string::npos);
  rl_report_free(rep);
  rl_document_free(doc);
}

TEST_CASE("eq command and exit code 2 for a refuted property") {
  rl_document* doc = rl_parse_document(kCommutator);
  REQUIRE(doc != nullptr);
  rl_report* eq = rl_run(doc, R"({"command":"eq","args":["u","v"]})");
  REQUIRE(eq != nullptr);
  CHECK(rl_report_exit_code(eq) == 0);
  CHECK(json::parse(rl_report_json(eq))["equal"] == true);
  rl_report_free(eq);

  rl_report* ne = rl_run(doc, R"({"command":"eq","args":["u","x"]})");
  REQUIRE(ne != nullptr);
  CHECK(rl_report_exit_code(ne) == 2);
  CHECK(json::parse(rl_report_json(ne))["equal"] == false);
  rl_report_free(ne);
  rl_document_free(doc);
}

TEST_CASE("reports are byte-stable across runs") {
  rl_document* doc = rl_parse_document(kCommutator);
  REQUIRE(doc != nullptr);
  const char* opts = R"({"command":"separate","args":["u"],"degree_bound":3})";
  rl_report* r1 = rl_run(doc, opts);
  rl_report* r2 = rl_run(doc, opts);
  REQUIRE(r1 != nullptr);
  REQUIRE(r2 != nullptr);
  CHECK(std::string(rl_report_json(r1)) == rl_report_json(r2));
  CHECK(std::string(rl_report_text(r1)) == rl_report_text(r2));
  rl_report_free(r1);
  rl_report_free(r2);
  rl_document_free(doc);
}

TEST_CASE("machine format renders indented JSON") {
  rl_document* doc = rl_parse_document(kCommutator);
  rl_report* rep = rl_run(doc, R"({"command":"classify","format":"machine"})");
  REQUIRE(rep != nullptr);
  CHECK(json::parse(rl_report_text(rep)) == json::parse(rl_report_json(rep)));
  rl_report_free(rep);
  rl_document_free(doc);
}

TEST_CASE("command failures report through the exit code") {
  rl_document* doc = rl_parse_document(kCommutator);
  rl_report* rep = rl_run(doc, R"({"command":"eq","args":["u"]})");
  REQUIRE(rep != nullptr);
  CHECK(rl_report_exit_code(rep) == 1);
  CHECK(json::parse(rl_report_json(rep)).contains("error"));
  rl_report_free(rep);

  CHECK(rl_run(doc, "not json") == nullptr);
  CHECK(std::strlen(rl_last_error()) > 0);
  CHECK(rl_run(nullptr, R"({"command":"classify"})") == nullptr);
  rl_document_free(doc);
}

TEST_CASE("parse_file resolves tables next to the document") {
  std::string text =
      "group H = table S3.tbl\n"
      "letters x\n"
      "relator R = x x\n";
  std::string path = fixture_path("s3doc_tmp.rel");
  {
    FILE* f = fopen(path.c_str(), "w");
    REQUIRE(f != nullptr);
    fputs(text.c_str(), f);
    fclose(f);
  }
  rl_document* doc = rl_parse_file(path.c_str());
  std::remove(path.c_str());
  REQUIRE(doc != nullptr);
  CHECK(std::string(rl_document_print(doc)).find("table") !=
        std::string::npos);
  rl_document_free(doc);
  CHECK(rl_parse_file("/nonexistent/x.rel") == nullptr);
}

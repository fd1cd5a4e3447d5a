// Rendering must be byte-deterministic: golden strings for the CSV layout
// (quoting, CRLF, the exactness flag, the kernel column), structural checks
// on the JSON (key order, values, round-trip), and the shared float
// formatter pinned to plain "%.12g" behavior.

#include <string>

#include "doctest.h"
#include "glnq/report.hpp"
#include "glnq/trace_engines.hpp"
#include "json.hpp"

using namespace glnq;

namespace {

TraceTableMeta meta_for(const Field& K, const std::string& engine) {
  TraceTableMeta m;
  m.n = 2;
  m.q = 4;
  m.ext_degree = 1;
  m.chi_index = 0;
  m.engine = engine;
  m.K = &K;
  return m;
}

}  // namespace

TEST_CASE("float formatting is plain %.12g") {
  CHECK(format_g12(0.0) == "0");
  CHECK(format_g12(1.0) == "1");
  CHECK(format_g12(-1.0) == "-1");
  CHECK(format_g12(0.5) == "0.5");
  CHECK(format_g12(-0.25) == "-0.25");
  CHECK(format_g12(1e-13) == "1e-13");
  CHECK(format_g12(123456789012345.0) == "1.23456789012e+14");
  CHECK(format_g12(0.8660254037844386) == "0.866025403784");
  CHECK(format_g12(1.0 / 3.0) == "0.333333333333");
}

TEST_CASE("trace CSV golden layout") {
  const Field& F4 = Field::get(2, 2);
  const CycloContext& ring = trace_ring(F4);

  std::vector<TraceRecord> rows(3);
  rows[0].u_dlog = 0;
  rows[0].u = F4.exp(0);
  rows[0].value = Cyclo::from_int(ring, 1);
  rows[1].u_dlog = 1;
  rows[1].u = F4.exp(1);
  rows[1].value = Cyclo::from_int(ring, -3);
  rows[2].u_dlog = 2;
  rows[2].u = F4.exp(2);
  rows[2].value = Cyclo::root(ring, 0, 1);  // not an integer

  std::string csv = render_trace_csv(meta_for(F4, "direct"), rows);
  auto z = rows[2].value.to_complex();
  std::string want =
      "u_dlog,u,value_re,value_im,is_exact_integer,exact_value\r\n"
      "0,\"[1,0]\",1,0,true,1\r\n"
      "1,\"[0,1]\",-3,0,true,-3\r\n"
      "2,\"[1,1]\"," +
      format_g12(z.real()) + "," + format_g12(z.imag()) + ",false,\r\n";
  CHECK(csv == want);
  // rendering twice gives the identical bytes
  CHECK(csv == render_trace_csv(meta_for(F4, "direct"), rows));
}

TEST_CASE("kernel engine adds the exponent column") {
  const Field& F4 = Field::get(2, 2);
  const CycloContext& ring = trace_ring(F4);
  std::vector<TraceRecord> rows(1);
  rows[0].u_dlog = 0;
  rows[0].u = F4.one();
  rows[0].value = Cyclo::from_int(ring, -1);
  rows[0].kernel_exponent = 0;
  std::string csv = render_trace_csv(meta_for(F4, "kernel"), rows);
  CHECK(csv ==
        "u_dlog,u,value_re,value_im,is_exact_integer,exact_value,"
        "kernel_exponent\r\n"
        "0,\"[1,0]\",-1,0,true,-1,0\r\n");
}

TEST_CASE("prime fields need no quoting in the element column") {
  const Field& F5 = Field::get(5, 1);
  const CycloContext& ring = CycloContext::get(5, 4);
  std::vector<TraceRecord> rows(1);
  rows[0].u_dlog = 0;
  rows[0].u = F5.one();
  rows[0].value = Cyclo::from_int(ring, 2);
  std::string csv = render_trace_csv(
      [&] {
        TraceTableMeta m;
        m.n = 2;
        m.q = 5;
        m.ext_degree = 1;
        m.chi_index = 0;
        m.engine = "rootsum";
        m.K = &F5;
        return m;
      }(),
      rows);
  // single-digit coefficient lists carry no comma, hence no quotes
  CHECK(csv ==
        "u_dlog,u,value_re,value_im,is_exact_integer,exact_value\r\n"
        "0,[1],2,0,true,2\r\n");
}

TEST_CASE("trace JSON structure, key order and round trip") {
  const Field& F4 = Field::get(2, 2);
  const CycloContext& ring = trace_ring(F4);
  std::vector<TraceRecord> rows(2);
  rows[0].u_dlog = 0;
  rows[0].u = F4.one();
  rows[0].value = Cyclo::from_int(ring, 1);
  rows[1].u_dlog = 1;
  rows[1].u = F4.exp(1);
  rows[1].value = Cyclo::root(ring, 1, 2);
  rows[1].kernel_exponent = 3;

  std::string out = render_trace_json(meta_for(F4, "direct"), rows);
  CHECK(out == render_trace_json(meta_for(F4, "direct"), rows));
  CHECK(out.back() == '\n');

  auto j = nlohmann::json::parse(out);
  CHECK(j["n"] == 2);
  CHECK(j["q"] == 4);
  CHECK(j["ext_degree"] == 1);
  CHECK(j["engine"] == "direct");
  CHECK(j["field"]["p"] == 2);
  CHECK(j["field"]["f"] == 2);
  CHECK(j["field"]["cardinality"] == 4);
  CHECK(j["field"]["modulus"] == nlohmann::json({1, 1, 1}));
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][0]["u_coeffs"] == nlohmann::json({1, 0}));
  CHECK(j["rows"][0]["value"]["is_exact_integer"] == true);
  CHECK(j["rows"][0]["value"]["integer"] == 1);
  CHECK(!j["rows"][0].contains("kernel_exponent"));
  CHECK(j["rows"][1]["kernel_exponent"] == 3);
  CHECK(j["rows"][1]["value"]["is_exact_integer"] == false);
  CHECK(!j["rows"][1]["value"].contains("integer"));
  // the exact coefficients are present: ring (2,3) stores a 1 x 2 matrix
  CHECK(j["rows"][1]["value"]["ring"]["p"] == 2);
  CHECK(j["rows"][1]["value"]["ring"]["ord"] == 3);
  CHECK(j["rows"][1]["value"]["coeffs"].size() == 1);
  CHECK(j["rows"][1]["value"]["coeffs"][0].size() == 2);

  // stable top-level key order in the emitted text
  std::vector<std::string> keys{"\"n\"",     "\"q\"",      "\"ext_degree\"",
                                "\"chi_index\"", "\"engine\"", "\"field\"",
                                "\"rows\""};
  std::size_t pos = 0;
  for (const auto& k : keys) {
    std::size_t here = out.find(k);
    REQUIRE(here != std::string::npos);
    CHECK(here >= pos);
    pos = here;
  }
}

TEST_CASE("pretty table marks inexact values with an approximation") {
  const Field& F4 = Field::get(2, 2);
  const CycloContext& ring = trace_ring(F4);
  std::vector<TraceRecord> rows(2);
  rows[0].u_dlog = 0;
  rows[0].u = F4.one();
  rows[0].value = Cyclo::from_int(ring, -1);
  rows[1].u_dlog = 1;
  rows[1].u = F4.exp(1);
  rows[1].value = Cyclo::root(ring, 0, 1);
  std::string out = render_trace_pretty(meta_for(F4, "direct"), rows);
  CHECK(out.find("trace table: n=2 q=4 ext=1 chi=0 engine=direct K=F_4\n") == 0);
  CHECK(out.find("u=g^0") != std::string::npos);
  CHECK(out.find("-1") != std::string::npos);
  CHECK(out.find("~") != std::string::npos);  // approximation marker
}

TEST_CASE("suite report text golden") {
  std::vector<SuiteResult> suites(2);
  suites[0].suite = "alpha";
  suites[0].checks.push_back({"first identity", true, ""});
  suites[0].checks.push_back({"second identity", true, ""});
  suites[1].suite = "beta";
  suites[1].checks.push_back(
      {"third identity", false, "module/op: first counterexample here"});
  std::string out = render_suites_text(suites);
  CHECK(out ==
        "suite alpha: PASS\n"
        "  [ ok ] first identity\n"
        "  [ ok ] second identity\n"
        "suite beta: FAIL\n"
        "  [FAIL] third identity\n"
        "         module/op: first counterexample here\n"
        "2/3 checks passed\n");
}

TEST_CASE("suite report JSON mirrors the text verdicts") {
  std::vector<SuiteResult> suites(1);
  suites[0].suite = "gamma";
  suites[0].checks.push_back({"passing check", true, "ignored detail"});
  suites[0].checks.push_back({"failing check", false, "what went wrong"});
  std::string out = render_suites_json(suites);
  auto j = nlohmann::json::parse(out);
  REQUIRE(j.size() == 1);
  CHECK(j[0]["suite"] == "gamma");
  CHECK(j[0]["pass"] == false);
  REQUIRE(j[0]["checks"].size() == 2);
  CHECK(j[0]["checks"][0]["name"] == "passing check");
  CHECK(j[0]["checks"][0]["pass"] == true);
  // detail only appears when present; a passing check may still carry one
  CHECK(j[0]["checks"][0]["detail"] == "ignored detail");
  CHECK(j[0]["checks"][1]["detail"] == "what went wrong");
  CHECK(out == render_suites_json(suites));
}

TEST_CASE("csv quoting escalates only when needed") {
  // a coefficient list with several digits holds commas and gets quoted with
  // doubled inner quotes were any present; field display never emits quotes,
  // so the quoted form is simply wrapped
  const Field& F16 = Field::get(2, 4);
  const CycloContext& ring = trace_ring(Field::get(2, 2));
  std::vector<TraceRecord> rows(1);
  rows[0].u_dlog = 5;
  rows[0].u = F16.exp(5);
  rows[0].value = Cyclo::from_int(ring, 0);
  TraceTableMeta m;
  m.n = 2;
  m.q = 4;
  m.ext_degree = 2;
  m.chi_index = 1;
  m.engine = "rootsum";
  m.K = &F16;
  std::string csv = render_trace_csv(m, rows);
  std::string u_shown = F16.show(F16.exp(5));
  CHECK(csv.find("5,\"" + u_shown + "\",0,0,true,0\r\n") != std::string::npos);
}

#include "glnq/report.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace glnq {

namespace {

// RFC 4180: quote when the field holds a comma, a quote or a line break
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string coeff_list(const Field& K, felem u) { return K.show(u); }

nlohmann::ordered_json value_json(const Cyclo& v) {
  nlohmann::ordered_json j;
  j["ring"] = {{"p", v.ctx().p()}, {"ord", v.ctx().ord()}};
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (std::int64_t i = 0; i < v.ctx().p() - 1; ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (std::int64_t k = 0; k < v.ctx().phi(); ++k)
      row.push_back(v.coeff(i, k));
    rows.push_back(row);
  }
  j["coeffs"] = rows;
  j["is_exact_integer"] = v.is_int();
  if (v.is_int()) j["integer"] = v.as_int();
  auto z = v.to_complex();
  j["approx"] = {{"re", format_g12(z.real())}, {"im", format_g12(z.imag())}};
  return j;
}

}  // namespace

std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string render_trace_csv(const TraceTableMeta& meta,
                             const std::vector<TraceRecord>& rows) {
  std::ostringstream os;
  bool kernel = meta.engine == "kernel";
  os << "u_dlog,u,value_re,value_im,is_exact_integer,exact_value";
  if (kernel) os << ",kernel_exponent";
  os << "\r\n";
  for (const auto& r : rows) {
    auto z = r.value.to_complex();
    os << r.u_dlog << ',' << csv_field(coeff_list(*meta.K, r.u)) << ','
       << csv_field(format_g12(z.real())) << ','
       << csv_field(format_g12(z.imag())) << ','
       << (r.value.is_int() ? "true" : "false") << ','
       << (r.value.is_int() ? std::to_string(r.value.as_int()) : "");
    if (kernel)
      os << ','
         << (r.kernel_exponent ? std::to_string(*r.kernel_exponent) : "");
    os << "\r\n";
  }
  return os.str();
}

std::string render_trace_json(const TraceTableMeta& meta,
                              const std::vector<TraceRecord>& rows) {
  nlohmann::ordered_json j;
  j["n"] = meta.n;
  j["q"] = meta.q;
  j["ext_degree"] = meta.ext_degree;
  j["chi_index"] = meta.chi_index;
  j["engine"] = meta.engine;
  const auto& desc = meta.K->descriptor();
  j["field"] = {{"p", desc.p},
                {"f", desc.f},
                {"cardinality", desc.cardinality},
                {"modulus", desc.modulus}};
  nlohmann::ordered_json jr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json row;
    row["u_dlog"] = r.u_dlog;
    row["u_coeffs"] = meta.K->coeffs(r.u);
    row["value"] = value_json(r.value);
    if (r.kernel_exponent) row["kernel_exponent"] = *r.kernel_exponent;
    jr.push_back(row);
  }
  j["rows"] = jr;
  return j.dump(2) + "\n";
}

std::string render_trace_pretty(const TraceTableMeta& meta,
                                const std::vector<TraceRecord>& rows) {
  std::ostringstream os;
  os << "trace table: n=" << meta.n << " q=" << meta.q
     << " ext=" << meta.ext_degree << " chi=" << meta.chi_index
     << " engine=" << meta.engine << " K=F_" << meta.K->size() << "\n";
  for (const auto& r : rows) {
    os << "  u=g^" << r.u_dlog << "  " << coeff_list(*meta.K, r.u) << "  ";
    if (r.value.is_int())
      os << r.value.as_int();
    else
      os << r.value.show() << "  ~ " << format_g12(r.value.to_complex().real())
         << (r.value.to_complex().imag() >= 0 ? "+" : "")
         << format_g12(r.value.to_complex().imag()) << "i";
    if (r.kernel_exponent) os << "  (exponent " << *r.kernel_exponent << ")";
    os << "\n";
  }
  return os.str();
}

std::string render_suites_text(const std::vector<SuiteResult>& suites) {
  std::ostringstream os;
  std::size_t total = 0, passed = 0;
  for (const auto& s : suites) {
    os << "suite " << s.suite << ": " << (s.pass() ? "PASS" : "FAIL") << "\n";
    for (const auto& c : s.checks) {
      os << "  [" << (c.pass ? " ok " : "FAIL") << "] " << c.name << "\n";
      if (!c.pass && !c.detail.empty()) os << "         " << c.detail << "\n";
      ++total;
      passed += c.pass;
    }
  }
  os << passed << "/" << total << " checks passed\n";
  return os.str();
}

std::string render_suites_json(const std::vector<SuiteResult>& suites) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& s : suites) {
    nlohmann::ordered_json js;
    js["suite"] = s.suite;
    js["pass"] = s.pass();
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : s.checks) {
      nlohmann::ordered_json jc;
      jc["name"] = c.name;
      jc["pass"] = c.pass;
      if (!c.detail.empty()) jc["detail"] = c.detail;
      checks.push_back(jc);
    }
    js["checks"] = checks;
    j.push_back(js);
  }
  return j.dump(2) + "\n";
}

}  // namespace glnq

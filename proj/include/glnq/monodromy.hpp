#pragma once
// Statistical and census-level fingerprints of the monodromy group: kernel
// censuses over cubic extensions, the p-power law for kernel traces, the
// constructive subfield-trace witness search, empirical-vs-exact Frobenius
// equidistribution, and the additive-polynomial pullback identities.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "glnq/field.hpp"

namespace glnq {

struct KernelCensus {
  std::int64_t q0 = 0;       // the base prime power
  std::int64_t p = 0;
  const Field* K0 = nullptr;  // F_{q0^3}
  std::int64_t n_at_1 = 0;    // N(1)
  std::int64_t count_nq0 = 0; // u with N(u) = q0 (u != 1 when p = 2)
  std::int64_t count_n1 = 0;  // u with N(u) = 1
  std::int64_t partition_sum = 0;  // sum over all u of N(u) - 1
  bool pass = false;
  std::string detail;
};
// Census of N(u) = #{T in F_{q0^3} : T^{q0^2} - T^{q0} = uT} over all u,
// checked against the closed forms (split by p = 2 / p odd).
KernelCensus cubic_kernel_census(const Field& q0_field);

struct PPowerRecord {
  std::int64_t u_dlog = 0;
  felem u = 0;
  std::int64_t exponent = 0;  // d with trace = p^d - 2
};
struct PPowerScan {
  std::int64_t n = 0, q = 0;
  const Field* K = nullptr;
  bool contains_base = false;
  std::vector<PPowerRecord> records;
  bool pass = false;
  std::string detail;
};
// Kernel trace over every u in K^*; asserts the p-power law, and when K
// contains F_q also that each exponent is a multiple of f with d/f <= n.
PPowerScan ppower_scan(std::int64_t n, const Field& base, const Field& K);

struct SubfieldTraceWitness {
  std::int64_t n = 0, q = 0;
  std::int64_t r = 0, c = 0, f0 = 0, s = 0;
  const Field* K0 = nullptr;  // F_{p^{s f0}}
  felem u0 = 0;
  std::int64_t u0_dlog = 0;
  std::int64_t trace = 0;  // p^{f0} - 2
  bool found = false;
  bool h_injective = false;  // diagnostic, meaningful when (n, r) != (2, 2)
};
// Constructs the auxiliary prime s per the case rules (n >= 3: a prime
// distinct from r dividing exactly one of n, n-1; n = 2 with r > 2: s = 2;
// (n, r) = (2, 2): s = 3), scans K0 = F_{q0^s} in dlog order for the first u
// whose kernel trace is p^{f0} - 2, and runs the injectivity diagnostic on
// H(v) = v^{(q0^{(n-1)r^c}-1)/(q0-1)} - v^{(q0^{n r^c}-1)/(q0-1)}.
SubfieldTraceWitness find_subfield_trace(std::int64_t n, const Field& base,
                                         std::int64_t r);

struct EquidistReport {
  std::int64_t n = 0, q = 0, m = 0;
  bool refused = false;
  std::string refusal;
  // index a = 0..n: frequency of kernel exponent a among u in F_{q^m}^*
  // versus the exact fraction of g in GL_n(q) with dim ker(g-1) = a.
  std::vector<double> empirical;
  std::vector<double> exact;
  std::vector<std::int64_t> empirical_counts;
  std::vector<std::int64_t> exact_counts;
  double max_abs_deviation = 0.0;
  double tol = 0.0;
  bool pass = false;
};
// Refuses (n, q) = (2, 2) and (2, 3): the group-identification statement
// this fingerprints requires q > 3 when n = 2.
EquidistReport equidist_compare(std::int64_t n, const Field& base,
                                std::int64_t m, double tol);

// Exact companion identity: sum over u in K^* of (q^{a(u)} - 1) equals
// (|K| - 1) - (q - 1), for K containing F_q. Returns true and fills the
// two sides; the -(q-1) accounts for the empty fiber over the image of 0.
bool fiber_partition_identity(std::int64_t n, const Field& base,
                              const Field& K, std::int64_t& lhs,
                              std::int64_t& rhs);

struct AbhyankarReport {
  std::int64_t n = 0, q = 0;
  const Field* K = nullptr;
  std::int64_t checked = 0;
  bool substitution_pass = false;  // counts at c = v^{(q-1)q^{n-1}} vs 1/u form
  bool kummer_pass = false;        // counts at v^{q-1} direct vs scan histogram
  bool qpower_pass = false;        // every count is a q-power
  std::string detail;
  bool pass() const {
    return substitution_pass && kummer_pass && qpower_pass;
  }
};
// For every v in K^*, compares #{T : T^{q^n} - c T^{q^{n-1}} = T} computed by
// kernel elimination at c = v^{(q-1)q^{n-1}} against the count of
// T^{q^n} - T^{q^{n-1}} = T/u at u = v^{q^n-1}, and the elimination count at
// c = v^{q-1} against an independent one-pass fiber histogram.
AbhyankarReport abhyankar_identity(std::int64_t n, const Field& base,
                                   const Field& K);

}  // namespace glnq

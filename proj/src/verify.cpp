#include "glnq/verify.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "glnq/cyclotomic.hpp"
#include "glnq/field.hpp"
#include "glnq/monodromy.hpp"
#include "glnq/trace_engines.hpp"
#include "glnq/weil.hpp"

namespace glnq {

namespace {

std::int64_t ipow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) r *= b;
  return r;
}

std::string pair_tag(std::int64_t n, std::int64_t q) {
  std::ostringstream os;
  os << "(n=" << n << ",q=" << q << ")";
  return os.str();
}

std::string field_tag(const Field& K) {
  return "F_" + std::to_string(K.size());
}

// extensions of base with cardinality at most limit, smallest first
std::vector<const Field*> fields_over(const Field& base, std::int64_t limit) {
  std::vector<const Field*> out;
  for (std::int64_t j = 1;; ++j) {
    std::int64_t size = ipow_checked(base.size(), j, limit);
    if (size > limit) break;
    out.push_back(&Field::get(base.p(), base.f() * j));
  }
  return out;
}

// deterministic spread of dlog exponents for sampled cross-checks
std::vector<std::int64_t> sample_dlogs(std::int64_t m, std::int64_t count) {
  std::set<std::int64_t> s;
  for (std::int64_t i = 0; i < count; ++i) s.insert(i * m / count);
  return std::vector<std::int64_t>(s.begin(), s.end());
}

CheckResult make_check(std::string name, bool pass, std::string detail) {
  CheckResult c;
  c.name = std::move(name);
  c.pass = pass;
  c.detail = std::move(detail);
  return c;
}

// (1/order) sum a conj(b) over equal-length value vectors
Cyclo ip_vectors(const CycloContext& ring, const std::vector<Cyclo>& a,
                 const std::vector<Cyclo>& b, std::int64_t order) {
  Cyclo acc(ring);
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i].conj();
  return acc.div_exact(order);
}

}  // namespace

const std::vector<DeskPair>& desk_pairs() {
  static const std::vector<DeskPair> desk = {
      {2, 2, 2}, {2, 5, 1}, {3, 2, 1}, {3, 3, 1}};
  return desk;
}

std::int64_t desk_field_limit(bool small) { return small ? 512 : 4096; }

std::vector<CheckResult> engines_agreement_checks(std::int64_t limit) {
  std::vector<CheckResult> out;
  for (const DeskPair& d : desk_pairs()) {
    const Field& base = Field::get(d.p, d.f);
    std::int64_t q = base.size();
    for (const Field* Kp : fields_over(base, limit)) {
      const Field& K = *Kp;
      std::int64_t M = K.units();
      std::string tag = pair_tag(d.n, q) + " K=" + field_tag(K);
      auto table = trace_direct_table(d.n, base, K);

      // rootsum scan vs the direct sweep, every u and every character
      {
        bool ok = true;
        std::string detail;
        for (std::int64_t k = 0; k < q - 1 && ok; ++k) {
          auto P = hyp_params(d.n, base, make_char(base, k));
          for (std::int64_t du = 0; du < M && ok; ++du) {
            Cyclo rs = trace_rootsum(P, K, K.exp(du));
            if (table[du][k] != rs) {
              ok = false;
              std::ostringstream os;
              os << "engines/trace " << tag
                 << ": direct sweep and root-count scan disagree at u=g^"
                 << du << " chi=" << k << "; direct=" << table[du][k].show()
                 << " rootsum=" << rs.show();
              detail = os.str();
            }
          }
        }
        out.push_back(make_check(
            "direct sum equals root-count sum " + tag, ok, detail));
      }

      // pushforward scan at u vs the direct sweep at 1/u
      {
        bool ok = true;
        std::string detail;
        for (std::int64_t k = 0; k < q - 1 && ok; ++k) {
          auto P = hyp_params(d.n, base, make_char(base, k));
          for (std::int64_t du = 0; du < M && ok; ++du) {
            Cyclo pf = pushforward_f_trace(P, K, K.exp(du));
            const Cyclo& tv = table[K.mod_units(-du)][k];
            if (tv != pf) {
              ok = false;
              std::ostringstream os;
              os << "engines/trace " << tag
                 << ": fiber pushforward at u=g^" << du
                 << " fails to match the value at 1/u, chi=" << k
                 << "; pushforward=" << pf.show() << " direct=" << tv.show();
              detail = os.str();
            }
          }
        }
        out.push_back(make_check(
            "fiber pushforward evaluates the system at 1/u " + tag, ok,
            detail));
      }

      // the sweep reorganization against the defining double sum
      {
        bool ok = true;
        std::string detail;
        std::vector<std::int64_t> dus;
        if (K.size() <= 256) {
          for (std::int64_t du = 0; du < M; ++du) dus.push_back(du);
        } else {
          dus = sample_dlogs(M, K.size() <= 1024 ? 8 : 3);
        }
        for (std::int64_t k = 0; k < q - 1 && ok; ++k) {
          auto P = hyp_params(d.n, base, make_char(base, k));
          for (std::int64_t du : dus) {
            Cyclo naive = trace_direct(P, K, K.exp(du));
            if (table[du][k] != naive) {
              ok = false;
              std::ostringstream os;
              os << "engines/trace " << tag
                 << ": batch table deviates from the double-sum definition "
                    "at u=g^"
                 << du << " chi=" << k << "; table=" << table[du][k].show()
                 << " definition=" << naive.show();
              detail = os.str();
              break;
            }
          }
        }
        out.push_back(make_check(
            "batch sweep matches the defining double sum " + tag, ok,
            detail));
      }
    }
  }
  return out;
}

std::vector<CheckResult> sum_to_kernel_checks(std::int64_t limit) {
  std::vector<CheckResult> out;
  for (const DeskPair& d : desk_pairs()) {
    const Field& base = Field::get(d.p, d.f);
    std::int64_t q = base.size();
    const CycloContext& ring = trace_ring(base);
    for (const Field* Kp : fields_over(base, limit)) {
      const Field& K = *Kp;
      std::int64_t M = K.units();
      std::string tag = pair_tag(d.n, q) + " K=" + field_tag(K);
      auto table = trace_rootsum_table(d.n, base, K);
      bool ok = true;
      std::string detail;
      for (std::int64_t du = 0; du < M && ok; ++du) {
        Cyclo s = Cyclo::from_int(ring, 1);
        for (std::int64_t k = 0; k < q - 1; ++k) s += table[du][k];
        felem u = K.exp(du);
        std::int64_t dd = kernel_dim(d.n, base, K, K.inv(u));
        std::int64_t rhs = ipow(K.p(), dd) - 1;
        if (!s.is_int() || s.as_int() != rhs) {
          ok = false;
          std::ostringstream os;
          os << "engines/kernel " << tag
             << ": 1 + sum over characters at u=g^" << du
             << " is not the kernel count at 1/u; sum=" << s.show()
             << " expected " << rhs;
          detail = os.str();
        }
      }
      out.push_back(make_check(
          "1 + sum over characters equals kernel count at 1/u " + tag, ok,
          detail));
    }
  }
  return out;
}

std::vector<CheckResult> kloosterman_checks() {
  std::vector<CheckResult> out;

  // N = 1: the one-term sum collapses to the additive character itself
  {
    bool ok = true;
    std::string detail;
    struct Pair {
      std::int64_t p, bf, kf;
    };
    for (Pair pr : {Pair{2, 2, 2}, Pair{2, 1, 3}, Pair{3, 2, 2}}) {
      const Field& base = Field::get(pr.p, pr.bf);
      const Field& K = Field::get(pr.p, pr.kf);
      ExtensionView v = extension_view(base, K);
      for (std::int64_t t = 1; t < K.size() && ok; ++t) {
        Cyclo kl = kloosterman_trace(base, K, 1, KloostermanForm::full_set,
                                     make_char(base, 0), felem(t));
        Cyclo psi = psi_value(v, felem(t));
        if (kl != psi) {
          ok = false;
          std::ostringstream os;
          os << "engines/kloosterman: N=1 value at t=" << K.show(felem(t))
             << " on " << field_tag(K) << " is " << kl.show() << ", not "
             << psi.show();
          detail = os.str();
        }
      }
    }
    out.push_back(
        make_check("N=1 restricted sum collapses to psi_K(t)", ok, detail));
  }

  // N = 2, odd characteristic: the restricted form is conjugation-invariant
  {
    bool ok = true;
    std::string detail;
    struct Cfg {
      std::int64_t p, bf, kf, chi;
    };
    for (Cfg c : {Cfg{3, 2, 2, 0}, Cfg{3, 2, 2, 4}, Cfg{5, 1, 1, 0},
                  Cfg{5, 1, 1, 2}, Cfg{5, 1, 2, 0}}) {
      const Field& base = Field::get(c.p, c.bf);
      const Field& K = Field::get(c.p, c.kf);
      for (std::int64_t t = 1; t < K.size() && ok; ++t) {
        Cyclo kl = kloosterman_trace(base, K, 2, KloostermanForm::full_set,
                                     make_char(base, c.chi), felem(t));
        if (kl != kl.conj()) {
          ok = false;
          std::ostringstream os;
          os << "engines/kloosterman: N=2 value at t=" << K.show(felem(t))
             << " on " << field_tag(K) << " chi=" << c.chi
             << " is not real: " << kl.show();
          detail = os.str();
        }
      }
    }
    out.push_back(make_check(
        "N=2 restricted sums are real in odd characteristic", ok, detail));
  }

  // multiplicative convolution of the two Kloosterman factors rebuilds the
  // direct trace, scaled by #K
  {
    bool ok = true;
    std::string detail;
    struct Sys {
      std::int64_t n, p, f;
    };
    for (Sys sy : {Sys{2, 2, 2}, Sys{3, 2, 1}}) {
      const Field& base = Field::get(sy.p, sy.f);
      const Field& K = base;  // convolve over the base field itself
      auto P = hyp_params(sy.n, base, make_char(base, 0));
      for (std::int64_t du = 0; du < K.units() && ok; ++du) {
        felem u = K.exp(du);
        Cyclo conv(trace_ring(base));
        for (std::int64_t ds = 0; ds < K.units(); ++ds) {
          felem s = K.exp(ds);
          felem t = K.div(u, s);
          Cyclo f1 = -kloosterman_trace(base, K, P.A,
                                        KloostermanForm::drop_trivial,
                                        make_char(base, 0), t);
          Cyclo f2 = kloosterman_trace(base, K, P.B,
                                       KloostermanForm::full_set,
                                       make_char(base, 0), K.inv(s))
                         .conj();
          conv += f1 * f2;
        }
        Cyclo rhs = trace_direct(P, K, u).scaled(K.size());
        if (conv != rhs) {
          ok = false;
          std::ostringstream os;
          os << "engines/kloosterman " << pair_tag(sy.n, base.size())
             << ": convolution at u=g^" << du << " gives " << conv.show()
             << ", direct trace scaled by #K gives " << rhs.show();
          detail = os.str();
        }
      }
    }
    out.push_back(make_check(
        "Kloosterman convolution rebuilds #K times the direct trace", ok,
        detail));
  }
  return out;
}

SuiteResult suite_engines(bool small) {
  SuiteResult s;
  s.suite = "engines";
  std::int64_t limit = desk_field_limit(small);
  for (auto& c : engines_agreement_checks(limit)) s.checks.push_back(c);
  for (auto& c : sum_to_kernel_checks(limit)) s.checks.push_back(c);
  for (auto& c : kloosterman_checks()) s.checks.push_back(c);
  return s;
}

SuiteResult suite_ppower(bool small) {
  SuiteResult s;
  s.suite = "ppower";
  std::int64_t limit = desk_field_limit(small);
  for (const DeskPair& d : desk_pairs()) {
    const Field& base = Field::get(d.p, d.f);
    for (std::int64_t j = 1; ipow_checked(d.p, j, limit) <= limit; ++j) {
      const Field& K = Field::get(d.p, j);
      PPowerScan scan = ppower_scan(d.n, base, K);
      std::string tag = pair_tag(d.n, base.size()) + " K=" + field_tag(K) +
                        (scan.contains_base ? "" : " (no base subfield)");
      s.checks.push_back(make_check(
          "kernel traces are p-power minus two " + tag, scan.pass,
          scan.pass ? "" : "monodromy/ppower " + tag + ": " + scan.detail));
    }
  }
  return s;
}

SuiteResult suite_census() {
  SuiteResult s;
  s.suite = "census";
  struct Q0 {
    std::int64_t p, f;
  };
  for (Q0 c : {Q0{2, 1}, Q0{3, 1}, Q0{2, 2}, Q0{5, 1}, Q0{7, 1}, Q0{2, 3},
               Q0{3, 2}}) {
    KernelCensus kc = cubic_kernel_census(Field::get(c.p, c.f));
    std::string name =
        "cubic kernel census matches its closed form q0=" +
        std::to_string(kc.q0);
    s.checks.push_back(make_check(
        name, kc.pass,
        kc.pass ? "" : "monodromy/census: " + kc.detail));
  }
  return s;
}

SuiteResult suite_weil() {
  SuiteResult s;
  s.suite = "weil";
  for (const DeskPair& d : desk_pairs()) {
    const Field& base = Field::get(d.p, d.f);
    std::int64_t q = base.size(), n = d.n;
    std::string tag = pair_tag(n, q);
    WeilTable t = build_weil_table(n, base);
    const CycloContext& ring = *t.ring;
    std::int64_t count = std::int64_t(t.elements.size());
    Cyclo one = Cyclo::from_int(ring, 1);

    s.checks.push_back(make_check(
        "group enumeration count " + tag, count == gl_order(n, q),
        count == gl_order(n, q)
            ? ""
            : "weil/enumerate " + tag + ": got " + std::to_string(count)));

    // pointwise decomposition and value range
    {
      bool ok = true;
      std::string detail;
      std::vector<std::int64_t> powers;
      for (std::int64_t i = 0; i <= n; ++i) powers.push_back(ipow(q, i));
      for (std::int64_t i = 0; i < count && ok; ++i) {
        Cyclo sum = one;
        for (std::int64_t k = 0; k < q - 1; ++k) sum += t.comp[k][i];
        if (!sum.is_int() || sum.as_int() != t.total[i] ||
            std::find(powers.begin(), powers.end(), t.total[i]) ==
                powers.end()) {
          ok = false;
          detail = "weil/decompose " + tag + ": element " +
                   std::to_string(i) + " total " +
                   std::to_string(t.total[i]) + " vs 1+components " +
                   sum.show();
        }
      }
      s.checks.push_back(make_check(
          "total trace is 1 plus the component sum, all values q-powers " +
              tag,
          ok, detail));
    }

    // identity, scalars, transvection
    {
      bool ok = true;
      std::string detail;
      std::int64_t A = (ipow(q, n) - 1) / (q - 1);
      Mat id = mat_identity(base, n);
      Mat tv = transvection(base, n);
      for (std::int64_t i = 0; i < count && ok; ++i) {
        if (t.elements[i] == id) {
          for (std::int64_t k = 0; k < q - 1 && ok; ++k)
            if (!t.comp[k][i].is_int() || t.comp[k][i].as_int() != A) {
              ok = false;
              detail = "weil/values " + tag + ": component " +
                       std::to_string(k) + " at the identity is " +
                       t.comp[k][i].show() + ", not " + std::to_string(A);
            }
        } else if (t.elements[i] == tv) {
          std::int64_t want = (ipow(q, n - 1) - 1) / (q - 1);
          if (t.total[i] != ipow(q, n - 1)) {
            ok = false;
            detail = "weil/values " + tag + ": transvection total " +
                     std::to_string(t.total[i]);
          }
          for (std::int64_t k = 0; k < q - 1 && ok; ++k)
            if (!t.comp[k][i].is_int() || t.comp[k][i].as_int() != want) {
              ok = false;
              detail = "weil/values " + tag + ": component " +
                       std::to_string(k) + " at the transvection is " +
                       t.comp[k][i].show() + ", not " + std::to_string(want);
            }
        }
      }
      // scalar matrices: component k at b*1 is conj(chi_k)(b) * A
      for (std::int64_t db = 0; db < q - 1 && ok; ++db) {
        felem b = base.exp(db);
        Mat sc = mat_scalar(base, n, b);
        std::int64_t i =
            std::find(t.elements.begin(), t.elements.end(), sc) -
            t.elements.begin();
        for (std::int64_t k = 0; k < q - 1 && ok; ++k) {
          Cyclo want = Cyclo::root(ring, 0, -k * db).scaled(A);
          if (t.comp[k][i] != want) {
            ok = false;
            detail = "weil/values " + tag + ": component " +
                     std::to_string(k) + " at the scalar g^" +
                     std::to_string(db) + " is " + t.comp[k][i].show() +
                     ", not " + want.show();
          }
        }
      }
      s.checks.push_back(make_check(
          "identity, scalar and transvection values " + tag, ok, detail));
    }

    // inner products: components are orthonormal, trivial label contains 1
    {
      bool ok = true;
      std::string detail;
      std::vector<Cyclo> ones(count, one);
      for (std::int64_t k = 0; k < q - 1 && ok; ++k) {
        Cyclo ip1 = inner_product(ring, t.comp[k], ones);
        std::int64_t want1 = k == 0 ? 1 : 0;
        if (!ip1.is_int() || ip1.as_int() != want1) {
          ok = false;
          detail = "weil/innerprod " + tag + ": [comp_" + std::to_string(k) +
                   ", 1] = " + ip1.show();
        }
        for (std::int64_t l = 0; l < q - 1 && ok; ++l) {
          Cyclo ip = inner_product(ring, t.comp[k], t.comp[l]);
          std::int64_t want = k == l ? (k == 0 ? 2 : 1) : 0;
          if (!ip.is_int() || ip.as_int() != want) {
            ok = false;
            detail = "weil/innerprod " + tag + ": [comp_" +
                     std::to_string(k) + ", comp_" + std::to_string(l) +
                     "] = " + ip.show() + ", want " + std::to_string(want);
          }
        }
      }
      std::vector<Cyclo> tau(count);
      for (std::int64_t i = 0; i < count; ++i)
        tau[i] = Cyclo::from_int(ring, t.total[i]);
      Cyclo ip = inner_product(ring, tau, ones);
      if (!ip.is_int() || ip.as_int() != 2) {
        ok = false;
        detail = "weil/innerprod " + tag + ": [total, 1] = " + ip.show();
      }
      s.checks.push_back(make_check(
          "component orthonormality and [total,1]=2 " + tag, ok, detail));
    }

    // n = 2: the value census and [total,total]
    if (n == 2) {
      CensusRecord rec = trace_value_census(base);
      std::int64_t want_q = q * q * q - 2 * q - 1;
      std::int64_t want_1 = q * q * q * q - 2 * q * q * q - q * q + 3 * q;
      bool ok = rec.count_q2 == 1 && rec.count_q == want_q &&
                rec.count_1 == want_1;
      std::vector<Cyclo> tau(count);
      for (std::int64_t i = 0; i < count; ++i)
        tau[i] = Cyclo::from_int(ring, t.total[i]);
      Cyclo ip = inner_product(ring, tau, tau);
      ok = ok && ip.is_int() && ip.as_int() == q + 3;
      std::ostringstream os;
      if (!ok)
        os << "weil/census " << tag << ": counts (" << rec.count_q2 << ", "
           << rec.count_q << ", " << rec.count_1 << ") vs (1, " << want_q
           << ", " << want_1 << "), [total,total] = " << ip.show();
      s.checks.push_back(make_check(
          "trace-value census and [total,total]=q+3 " + tag, ok, os.str()));
    }
  }
  return s;
}

SuiteResult suite_uniqueness() {
  SuiteResult s;
  s.suite = "uniqueness";
  for (const DeskPair& d : desk_pairs()) {
    const Field& base = Field::get(d.p, d.f);
    std::int64_t q = base.size(), n = d.n;
    std::string tag = pair_tag(n, q);

    // premises for n = 2: restriction coincidences and irreducibility
    if (n == 2) {
      WeilTable t = build_weil_table(n, base);
      const CycloContext& ring = *t.ring;
      SL2WeilCharacters sl = sl2_weil_characters(t);
      std::int64_t ns = std::int64_t(sl.sl_index.size());
      bool ok = true;
      std::string detail;
      // comp_i and comp_{q-1-i} agree on SL
      for (std::int64_t i = 1; i <= (q - 2) / 2 && ok; ++i) {
        for (std::int64_t j = 0; j < ns && ok; ++j) {
          if (t.comp[i][sl.sl_index[j]] !=
              t.comp[q - 1 - i][sl.sl_index[j]]) {
            ok = false;
            detail = "weil/restrict " + tag + ": components " +
                     std::to_string(i) + " and " + std::to_string(q - 1 - i) +
                     " differ on the determinant-1 subgroup";
          }
        }
      }
      s.checks.push_back(make_check(
          "paired components restrict identically " + tag, ok, detail));

      ok = true;
      detail.clear();
      auto need_unit_norm = [&](const std::vector<Cyclo>& v,
                                const std::string& who) {
        Cyclo ip = ip_vectors(ring, v, v, ns);
        if (!ip.is_int() || ip.as_int() != 1) {
          ok = false;
          detail = "weil/irreducible " + tag + ": [" + who + ", " + who +
                   "] = " + ip.show();
        }
      };
      need_unit_norm(sl.steinberg, "steinberg");
      for (std::size_t i = 0; i < sl.chi_i.size() && ok; ++i)
        need_unit_norm(sl.chi_i[i], "chi_" + std::to_string(i + 1));
      for (std::size_t a = 0; a < sl.xi.size() && ok; ++a) {
        need_unit_norm(sl.xi[a], "xi_" + std::to_string(a + 1));
        for (std::size_t b = 0; b < a && ok; ++b) {
          Cyclo ip = ip_vectors(ring, sl.xi[a], sl.xi[b], ns);
          if (!ip.is_zero()) {
            ok = false;
            detail = "weil/irreducible " + tag +
                     ": the two halves are not orthogonal: " + ip.show();
          }
        }
      }
      s.checks.push_back(make_check(
          "restricted constituents are irreducible " + tag, ok, detail));
    }

    UniquenessReport rep = verify_weil_uniqueness(n, base);
    bool has_expected =
        std::find(rep.degree_solutions.begin(), rep.degree_solutions.end(),
                  rep.expected) != rep.degree_solutions.end();
    s.checks.push_back(make_check(
        "expected coefficients solve the degree identity " + tag,
        has_expected,
        has_expected ? ""
                     : "weil/uniqueness " + tag +
                           ": expected vector missing from the degree "
                           "solutions"));

    std::ostringstream os;
    if (!rep.unique_expected) {
      os << "weil/uniqueness " << tag << ": " << rep.degree_solutions.size()
         << " degree solutions, " << rep.value_solutions.size()
         << " surviving the value condition";
      if (!rep.value_solutions.empty()) {
        os << "; first survivor (";
        for (std::size_t i = 0; i < rep.value_solutions[0].size(); ++i)
          os << (i ? "," : "") << rep.value_solutions[0][i];
        os << ")";
      }
    }
    s.checks.push_back(make_check(
        "value condition isolates exactly one solution " + tag,
        rep.unique_expected, os.str()));
  }
  return s;
}

SuiteResult suite_detchar() {
  SuiteResult s;
  s.suite = "detchar";
  struct NQ {
    std::int64_t n, q;
  };
  for (NQ c : {NQ{2, 4}, NQ{2, 5}, NQ{3, 2}, NQ{3, 3}, NQ{2, 7}, NQ{4, 2}}) {
    DetCharReport rep = char_product_identity(c.n, c.q);
    std::string name = "determinant character product " + pair_tag(c.n, c.q);
    std::string detail;
    if (!rep.pass) {
      for (const auto& e : rep.entries)
        if (!e.pass) {
          std::ostringstream os;
          os << "weil/detchar " << pair_tag(c.n, c.q) << ": label "
             << e.chi_index << " has set size " << e.set_size << " and sum "
             << e.sum_residue << ", expected " << rep.A << " and "
             << e.expected;
          detail = os.str();
          break;
        }
    }
    s.checks.push_back(make_check(name, rep.pass, detail));
  }
  return s;
}

SuiteResult suite_equidist(bool small) {
  SuiteResult s;
  s.suite = "equidist";

  // refusal path: the statement excludes (2,2) and (2,3)
  {
    EquidistReport a = equidist_compare(2, Field::get(2, 1), 3, 0.06);
    EquidistReport b = equidist_compare(2, Field::get(3, 1), 3, 0.06);
    bool ok = a.refused && b.refused;
    s.checks.push_back(make_check(
        "(2,2) and (2,3) are refused", ok,
        ok ? "" : "monodromy/equidist: a degenerate pair was accepted"));
  }

  // endpoint comparisons
  {
    EquidistReport r = equidist_compare(2, Field::get(2, 2), 6, 0.06);
    bool ok = !r.refused && r.pass && r.exact_counts[0] == 124 &&
              r.exact_counts[1] == 55 && r.exact_counts[2] == 1;
    std::ostringstream os;
    if (!ok)
      os << "monodromy/equidist (n=2,q=4) m=6: max deviation "
         << r.max_abs_deviation << ", exact counts " << r.exact_counts[0]
         << "/" << r.exact_counts[1] << "/" << r.exact_counts[2];
    s.checks.push_back(make_check(
        "empirical matches exact within 0.06 (n=2,q=4) at m=6", ok,
        os.str()));
  }
  {
    EquidistReport r = equidist_compare(3, Field::get(2, 1), 9, 0.06);
    bool ok = !r.refused && r.pass;
    std::ostringstream os;
    if (!ok)
      os << "monodromy/equidist (n=3,q=2) m=9: max deviation "
         << r.max_abs_deviation;
    s.checks.push_back(make_check(
        "empirical matches exact within 0.06 (n=3,q=2) at m=9", ok,
        os.str()));
  }

  // exact companion identity on every desk extension
  std::int64_t limit = desk_field_limit(small);
  for (const DeskPair& d : desk_pairs()) {
    const Field& base = Field::get(d.p, d.f);
    bool ok = true;
    std::string detail;
    for (const Field* Kp : fields_over(base, limit)) {
      std::int64_t lhs = 0, rhs = 0;
      if (!fiber_partition_identity(d.n, base, *Kp, lhs, rhs)) {
        ok = false;
        std::ostringstream os;
        os << "monodromy/equidist " << pair_tag(d.n, base.size()) << " K="
           << field_tag(*Kp) << ": fiber sizes sum to " << lhs << ", not "
           << rhs;
        detail = os.str();
        break;
      }
    }
    s.checks.push_back(make_check(
        "fiber sizes partition the punctured field " +
            pair_tag(d.n, base.size()),
        ok, detail));
  }
  return s;
}

SuiteResult suite_abhyankar(bool small) {
  SuiteResult s;
  s.suite = "abhyankar";
  std::int64_t limit = desk_field_limit(small);
  for (const DeskPair& d : desk_pairs()) {
    const Field& base = Field::get(d.p, d.f);
    for (const Field* Kp : fields_over(base, limit)) {
      AbhyankarReport rep = abhyankar_identity(d.n, base, *Kp);
      std::string tag = pair_tag(d.n, base.size()) + " K=" + field_tag(*Kp);
      s.checks.push_back(make_check(
          "additive pullback identities " + tag, rep.pass(),
          rep.pass() ? "" : "monodromy/pullback " + tag + ": " + rep.detail));
    }
  }
  return s;
}

SuiteResult suite_subfield_trace() {
  SuiteResult s;
  s.suite = "subfield-trace";
  struct W {
    std::int64_t n, p, f, r;
    std::int64_t want_s, want_k0;
  };
  for (W w : {W{2, 2, 2, 2, 3, 8}, W{2, 2, 3, 3, 2, 4}, W{2, 3, 2, 2, 3, 27},
              W{3, 2, 2, 2, 3, 8}, W{2, 2, 4, 2, 3, 8},
              W{3, 3, 2, 2, 3, 27}}) {
    const Field& base = Field::get(w.p, w.f);
    SubfieldTraceWitness sw = find_subfield_trace(w.n, base, w.r);
    std::string tag = pair_tag(w.n, base.size()) + " r=" + std::to_string(w.r);
    bool ok = sw.found && sw.s == w.want_s && sw.K0->size() == w.want_k0 &&
              sw.f0 < w.f && w.f % sw.f0 == 0 &&
              sw.trace == ipow(w.p, sw.f0) - 2;
    if (ok && !(w.n == 2 && w.r == 2)) ok = sw.h_injective;
    std::ostringstream os;
    if (!ok)
      os << "monodromy/subfield-trace " << tag << ": found=" << sw.found
         << " s=" << sw.s << " K0=F_" << (sw.K0 ? sw.K0->size() : 0)
         << " trace=" << sw.trace << " h_injective=" << sw.h_injective;
    s.checks.push_back(
        make_check("subfield trace witness exists " + tag, ok, os.str()));
  }
  return s;
}

std::vector<SuiteResult> suite_all(bool small) {
  std::vector<SuiteResult> all;
  all.push_back(suite_engines(small));
  all.push_back(suite_ppower(small));
  all.push_back(suite_census());
  all.push_back(suite_weil());
  all.push_back(suite_uniqueness());
  all.push_back(suite_detchar());
  all.push_back(suite_equidist(small));
  all.push_back(suite_abhyankar(small));
  all.push_back(suite_subfield_trace());
  return all;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "engines",  "ppower",    "census",    "weil",          "uniqueness",
      "detchar",  "equidist",  "abhyankar", "subfield-trace"};
  return names;
}

SuiteResult run_suite_by_name(const std::string& name, bool small) {
  if (name == "engines") return suite_engines(small);
  if (name == "ppower") return suite_ppower(small);
  if (name == "census") return suite_census();
  if (name == "weil") return suite_weil();
  if (name == "uniqueness") return suite_uniqueness();
  if (name == "detchar") return suite_detchar();
  if (name == "equidist") return suite_equidist(small);
  if (name == "abhyankar") return suite_abhyankar(small);
  if (name == "subfield-trace") return suite_subfield_trace();
  std::string msg = "unknown suite '" + name + "'; available:";
  for (const auto& s : suite_names()) msg += " " + s;
  msg += " all";
  throw std::invalid_argument(msg);
}

}  // namespace glnq

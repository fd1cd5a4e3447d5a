#include "glnq/monodromy.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "glnq/trace_engines.hpp"
#include "glnq/weil.hpp"

namespace glnq {

namespace {

std::int64_t ipow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) r *= b;
  return r;
}

std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t m) {
  if (m == 1) return 0;
  unsigned __int128 r = 1, bb = b % m;
  while (e > 0) {
    if (e & 1) r = (r * bb) % m;
    bb = (bb * bb) % m;
    e >>= 1;
  }
  return std::int64_t(r);
}

// #ker of the F_p-linear map T -> frob^{ka}(T) - c * frob^{kb}(T) - e * T
// on K, as a count (a power of p). Shared by the census and the pullback
// identities, which need maps the trace-engine kernel does not cover.
std::int64_t linear_kernel_count(const Field& K, std::int64_t ka,
                                 std::int64_t kb, felem c, felem e) {
  std::int64_t D = K.f(), p = K.p();
  std::vector<int> m(D * D);
  for (std::int64_t i = 0; i < D; ++i) {
    felem b = felem(1);
    for (std::int64_t s = 0; s < i; ++s) b = felem(b * p);
    felem col = K.sub(
        K.sub(K.frobenius(b, ka), K.mul(c, K.frobenius(b, kb))),
        K.mul(e, b));
    auto digits = K.coeffs(col);
    for (std::int64_t r = 0; r < D; ++r) m[r * D + i] = digits[r];
  }
  std::int64_t rank = 0;
  for (std::int64_t cix = 0; cix < D && rank < D; ++cix) {
    std::int64_t piv = -1;
    for (std::int64_t r = rank; r < D; ++r)
      if (m[r * D + cix] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (std::int64_t cc = 0; cc < D; ++cc)
      std::swap(m[piv * D + cc], m[rank * D + cc]);
    std::int64_t lead = m[rank * D + cix], inv = 1;
    for (std::int64_t t = 1; t < p; ++t)
      if ((lead * t) % p == 1) {
        inv = t;
        break;
      }
    for (std::int64_t cc = 0; cc < D; ++cc)
      m[rank * D + cc] = int((m[rank * D + cc] * inv) % p);
    for (std::int64_t r = 0; r < D; ++r) {
      if (r == rank || m[r * D + cix] == 0) continue;
      std::int64_t factor = m[r * D + cix];
      for (std::int64_t cc = 0; cc < D; ++cc)
        m[r * D + cc] =
            int(((m[r * D + cc] - factor * m[rank * D + cc]) % p + p) % p);
    }
    ++rank;
  }
  return ipow(p, D - rank);
}

}  // namespace

KernelCensus cubic_kernel_census(const Field& q0_field) {
  std::int64_t q0 = q0_field.size();
  std::int64_t p = q0_field.p();
  std::int64_t f0 = q0_field.f();
  const Field& K0 = Field::get(p, 3 * f0);
  KernelCensus c;
  c.q0 = q0;
  c.p = p;
  c.K0 = &K0;
  std::int64_t D = K0.f();
  std::int64_t ka = (2 * f0) % D, kb = f0 % D;

  std::map<std::int64_t, std::int64_t> by_value;
  for (std::int64_t t = 0; t < K0.size(); ++t) {
    felem u = felem(t);
    std::int64_t nn = linear_kernel_count(K0, ka, kb, K0.one(), u);
    by_value[nn]++;
    c.partition_sum += nn - 1;
    if (u == K0.one()) c.n_at_1 = nn;
  }
  c.count_nq0 = by_value.count(q0) ? by_value[q0] : 0;
  c.count_n1 = by_value.count(1) ? by_value[1] : 0;

  bool ok = c.partition_sum == q0 * q0 * q0 - 1;
  if (p == 2) {
    ok = ok && c.n_at_1 == q0 * q0;
    ok = ok && c.count_nq0 == q0 * q0;
    ok = ok && c.count_n1 == q0 * q0 * q0 - q0 * q0 - 1;
    ok = ok && by_value.size() == 3u;  // values 1, q0 and q0^2 (at u = 1)
  } else {
    ok = ok && c.count_nq0 == q0 * q0 + q0 + 1;
    ok = ok && c.count_n1 == q0 * q0 * q0 - (q0 * q0 + q0 + 1);
    ok = ok && by_value.size() == 2u;
  }
  c.pass = ok;
  std::ostringstream os;
  os << "q0=" << q0 << " N(1)=" << c.n_at_1 << " #[N=q0]=" << c.count_nq0
     << " #[N=1]=" << c.count_n1 << " partition=" << c.partition_sum;
  c.detail = os.str();
  return c;
}

PPowerScan ppower_scan(std::int64_t n, const Field& base, const Field& K) {
  if (K.p() != base.p())
    throw std::invalid_argument("ppower_scan: characteristic mismatch");
  PPowerScan s;
  s.n = n;
  s.q = base.size();
  s.K = &K;
  s.contains_base = K.f() % base.f() == 0;
  s.pass = true;
  std::int64_t p = K.p(), f = base.f();
  for (std::int64_t du = 0; du < K.units(); ++du) {
    felem u = K.exp(du);
    std::int64_t d = kernel_dim(n, base, K, u);
    s.records.push_back({du, u, d});
    // independent scan count: nonzero solutions of the kernel equation are
    // exactly the preimages of u under T^{q^{n-1}-1} - T^{q^n-1}
    std::int64_t scanned = count_F_preimages(n, base, K, u);
    if (scanned != ipow(p, d) - 1) {
      s.pass = false;
      if (s.detail.empty()) {
        std::ostringstream os;
        os << "scan count " << scanned << " disagrees with p^d-1 at u=g^"
           << du << " (d=" << d << ") on " << K.size();
        s.detail = os.str();
      }
    }
    if (s.contains_base && (d % f != 0 || d / f > n)) {
      s.pass = false;
      if (s.detail.empty()) {
        std::ostringstream os;
        os << "kernel exponent " << d << " at u=g^" << du
           << " is not an admissible multiple of f=" << f;
        s.detail = os.str();
      }
    }
  }
  return s;
}

SubfieldTraceWitness find_subfield_trace(std::int64_t n, const Field& base,
                                         std::int64_t r) {
  if (!is_prime_int(r))
    throw std::invalid_argument("find_subfield_trace: r must be prime");
  std::int64_t f = base.f(), p = base.p();
  if (f % r != 0)
    throw std::invalid_argument(
        "find_subfield_trace: r must divide the degree of the base field");
  SubfieldTraceWitness w;
  w.n = n;
  w.q = base.size();
  w.r = r;
  w.c = 0;
  std::int64_t f0 = f;
  while (f0 % r == 0) {
    f0 /= r;
    ++w.c;
  }
  w.f0 = f0;
  std::int64_t q0 = ipow(p, f0);

  // auxiliary prime s
  if (n >= 3) {
    std::int64_t s = 0;
    for (std::int64_t cand = 2; cand <= n; ++cand) {
      if (!is_prime_int(cand) || cand == r) continue;
      bool div_n = n % cand == 0, div_n1 = (n - 1) % cand == 0;
      if (div_n != div_n1) {
        s = cand;
        break;
      }
    }
    if (s == 0)
      throw std::logic_error(
          "find_subfield_trace: no auxiliary prime for this n");
    w.s = s;
  } else if (r > 2) {
    w.s = 2;
  } else {
    w.s = 3;
  }

  const Field& K0 = Field::get(p, w.s * f0);
  w.K0 = &K0;
  w.trace = ipow(p, f0) - 2;
  for (std::int64_t du = 0; du < K0.units(); ++du) {
    felem u = K0.exp(du);
    if (trace_kernel_sum(n, base, K0, u) == w.trace) {
      w.u0 = u;
      w.u0_dlog = du;
      w.found = true;
      break;
    }
  }

  if (!(n == 2 && r == 2)) {
    // H is injective on the group of (q0^s-1)/(q0-1)-th roots of unity
    std::int64_t M0 = K0.units();
    std::int64_t d = (ipow(q0, w.s) - 1) / (q0 - 1);
    std::int64_t rc = ipow(r, w.c);
    std::int64_t e1 = (mod_pow(q0, (n - 1) * rc, M0 * (q0 - 1)) - 1) / (q0 - 1);
    std::int64_t e2 = (mod_pow(q0, n * rc, M0 * (q0 - 1)) - 1) / (q0 - 1);
    std::set<felem> seen;
    bool inj = true;
    for (std::int64_t t = 0; t < d; ++t) {
      felem v = K0.exp((M0 / d) * t);
      felem hv = K0.sub(K0.pow(v, e1), K0.pow(v, e2));
      if (!seen.insert(hv).second) inj = false;
    }
    w.h_injective = inj;
  }
  return w;
}

EquidistReport equidist_compare(std::int64_t n, const Field& base,
                                std::int64_t m, double tol) {
  EquidistReport rep;
  rep.n = n;
  rep.q = base.size();
  rep.m = m;
  rep.tol = tol;
  if (n < 2 || m < 1)
    throw std::invalid_argument("equidist_compare: need n >= 2 and m >= 1");
  if (n == 2 && rep.q <= 3) {
    rep.refused = true;
    rep.refusal =
        "the equidistribution statement needs q > 3 when n = 2: the "
        "group-identification step degenerates for q = 2 and q = 3";
    return rep;
  }
  const Field& K = Field::get(base.p(), base.f() * m);
  std::int64_t f = base.f(), q = rep.q;

  rep.empirical_counts.assign(n + 1, 0);
  for (std::int64_t du = 0; du < K.units(); ++du) {
    felem u = K.exp(du);
    std::int64_t d = kernel_dim(n, base, K, u);
    if (d % f != 0 || d / f > n)
      throw std::logic_error(
          "equidist_compare: kernel exponent escaped its admissible range");
    rep.empirical_counts[d / f]++;
  }

  // exact side: enumerate GL_n(q) and histogram dim ker(g - 1)
  rep.exact_counts.assign(n + 1, 0);
  std::int64_t cells = n * n, span = ipow(q, cells);
  std::int64_t order = 0;
  for (std::int64_t idx = 0; idx < span; ++idx) {
    Mat g(cells);
    std::int64_t rest = idx;
    for (std::int64_t e = cells - 1; e >= 0; --e) {
      g[e] = felem(rest % q);
      rest /= q;
    }
    if (mat_det(base, n, g) == 0) continue;
    ++order;
    rep.exact_counts[dim_ker_scaled(base, n, g, base.one())]++;
  }

  rep.empirical.assign(n + 1, 0.0);
  rep.exact.assign(n + 1, 0.0);
  for (std::int64_t a = 0; a <= n; ++a) {
    rep.empirical[a] = double(rep.empirical_counts[a]) / double(K.units());
    rep.exact[a] = double(rep.exact_counts[a]) / double(order);
    rep.max_abs_deviation = std::max(
        rep.max_abs_deviation, std::abs(rep.empirical[a] - rep.exact[a]));
  }
  rep.pass = rep.max_abs_deviation <= tol;
  return rep;
}

bool fiber_partition_identity(std::int64_t n, const Field& base,
                              const Field& K, std::int64_t& lhs,
                              std::int64_t& rhs) {
  if (K.p() != base.p() || K.f() % base.f() != 0)
    throw std::invalid_argument(
        "fiber_partition_identity: K must contain the base field");
  lhs = 0;
  for (std::int64_t du = 0; du < K.units(); ++du) {
    felem u = K.exp(du);
    lhs += ipow(K.p(), kernel_dim(n, base, K, u)) - 1;
  }
  rhs = (K.size() - 1) - (base.size() - 1);
  return lhs == rhs;
}

AbhyankarReport abhyankar_identity(std::int64_t n, const Field& base,
                                   const Field& K) {
  if (K.p() != base.p() || K.f() % base.f() != 0)
    throw std::invalid_argument(
        "abhyankar_identity: K must contain the base field");
  AbhyankarReport rep;
  rep.n = n;
  rep.q = base.size();
  rep.K = &K;
  std::int64_t q = rep.q, f = base.f(), D = K.f(), p = K.p();
  std::int64_t M = K.units();
  std::int64_t k1 = (f * (n - 1)) % D, k2 = (f * n) % D;

  // one-pass histogram: for T != 0, T^{q^n} - v T^{q^{n-1}} = T exactly when
  // v = (T^{q^n} - T) / T^{q^{n-1}}
  std::vector<std::int64_t> hist(K.size(), 0);
  for (std::int64_t e = 0; e < M; ++e) {
    felem T = K.exp(e);
    felem num = K.sub(K.frobenius(T, k2), T);
    if (num == 0) continue;  // belongs to the v = 0 bucket
    felem v = K.div(num, K.frobenius(T, k1));
    hist[v]++;
  }

  std::int64_t e_c1 = ((q - 1) % M) * mod_pow(q, n - 1, M) % M;
  std::int64_t e_u = (mod_pow(q, n, M) - 1 + M) % M;
  rep.substitution_pass = rep.kummer_pass = rep.qpower_pass = true;
  for (std::int64_t dv = 0; dv < M; ++dv) {
    felem v = K.exp(dv);
    // (1): elimination at c = v^{(q-1) q^{n-1}} against the 1/u twist
    felem c1 = K.pow(v, e_c1);
    std::int64_t cnt_a = linear_kernel_count(K, k2, k1, c1, K.one());
    felem u = K.pow(v, e_u);
    std::int64_t cnt_b =
        ipow(p, kernel_dim(n, base, K, K.neg(K.inv(u))));
    if (cnt_a != cnt_b && rep.substitution_pass) {
      rep.substitution_pass = false;
      std::ostringstream os;
      os << "substitution mismatch at v=g^" << dv << ": " << cnt_a
         << " != " << cnt_b;
      rep.detail = os.str();
    }
    // (2): elimination at c = v^{q-1} against the scan histogram
    felem c2 = K.pow(v, (q - 1) % M);
    std::int64_t cnt_k = linear_kernel_count(K, k2, k1, c2, K.one());
    if (cnt_k != 1 + hist[c2] && rep.kummer_pass) {
      rep.kummer_pass = false;
      std::ostringstream os;
      os << "histogram mismatch at v=g^" << dv << ": " << cnt_k
         << " != " << (1 + hist[c2]);
      rep.detail = os.str();
    }
    // counts must be powers of q
    for (std::int64_t cnt : {cnt_a, cnt_k}) {
      std::int64_t d = 0, w = cnt;
      while (w > 1) {
        w /= p;
        ++d;
      }
      if (ipow(p, d) != cnt || d % f != 0) {
        rep.qpower_pass = false;
        if (rep.detail.empty()) {
          std::ostringstream os;
          os << "count " << cnt << " at v=g^" << dv << " is not a q-power";
          rep.detail = os.str();
        }
      }
    }
    ++rep.checked;
  }
  return rep;
}

}  // namespace glnq

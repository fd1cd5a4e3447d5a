#include "glnq/trace_engines.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace glnq {

namespace {

std::int64_t geom_sum(std::int64_t q, std::int64_t terms) {
  // 1 + q + ... + q^{terms-1}
  std::int64_t s = 0, pw = 1;
  for (std::int64_t i = 0; i < terms; ++i) {
    s += pw;
    pw *= q;
  }
  return s;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
  while (nr != 0) {
    std::int64_t qq = r / nr;
    std::swap(t -= qq * nt, nt);
    std::swap(r -= qq * nr, nr);
  }
  if (r != 1) throw std::logic_error("element not invertible in Z/m");
  return ((t % m) + m) % m;
}

std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t r = 1 % m;
  b %= m;
  while (e > 0) {
    if (e & 1) r = (r * b) % m;
    b = (b * b) % m;
    e >>= 1;
  }
  return r;
}

void require_extension(const Field& base, const Field& K, const char* op) {
  if (K.p() != base.p() || K.f() % base.f() != 0)
    throw std::invalid_argument(std::string(op) +
                                ": K must be an extension of the base field");
}

void require_unit(felem u, const char* op) {
  if (u == 0)
    throw std::invalid_argument(std::string(op) +
                                ": the parameter u must be nonzero");
}

}  // namespace

LocalSystemParams hyp_params(std::int64_t n, const Field& base,
                             MultChar chi) {
  if (n < 2) throw std::invalid_argument("hyp_params: n must be at least 2");
  std::int64_t q = base.size();
  if (ipow_checked(q, n, std::int64_t(1) << 62) > (std::int64_t(1) << 62))
    throw std::invalid_argument("hyp_params: q^n overflows");
  if (chi.modulus_order != base.units())
    throw std::invalid_argument(
        "hyp_params: character label does not match the base field");
  LocalSystemParams P;
  P.n = n;
  P.base = &base;
  P.A = geom_sum(q, n);
  P.B = geom_sum(q, n - 1);
  P.chi = chi;
  std::int64_t qn1 = 1;
  for (std::int64_t i = 0; i < n - 1; ++i) qn1 *= q;
  if (P.A - P.B != qn1)
    throw std::logic_error("hyp_params: A - B is not q^{n-1}");
  if (P.A % q != 1 || P.B % q != 1)
    throw std::logic_error("hyp_params: A, B are not 1 mod q");
  return P;
}

const CycloContext& trace_ring(const Field& base) {
  return CycloContext::get(base.p(), base.units() > 0 ? base.units() : 1);
}

ExtensionView extension_view(const Field& base, const Field& K) {
  require_extension(base, K, "extension_view");
  ExtensionView v;
  v.base = &base;
  v.K = &K;
  v.emb = &Embedding::get(base, K);
  v.ring = &trace_ring(base);
  v.omega = mod_inverse(v.emb->unit_shift(), base.units());
  return v;
}

Cyclo psi_value(const ExtensionView& v, felem x) {
  return Cyclo::root(*v.ring, v.K->trace_to_prime(x), 0);
}

Cyclo chi_value(const ExtensionView& v, const MultChar& chi, felem x) {
  if (x == 0)
    return chi.trivial() ? Cyclo::from_int(*v.ring, 1) : Cyclo(*v.ring);
  std::int64_t j = v.chi_grade(v.K->dlog(x));
  return Cyclo::root(*v.ring, 0, chi.index * j);
}

Cyclo trace_direct(const LocalSystemParams& P, const Field& K, felem u) {
  require_unit(u, "trace_direct");
  if (K.size() > (std::int64_t(1) << 12) ||
      K.size() * K.size() > kDirectPairCap)
    throw std::invalid_argument(
        "trace_direct: |K|^2 exceeds the double-sum cap of 2^24");
  ExtensionView v = extension_view(*P.base, K);
  std::int64_t M = K.units(), ordq = P.base->units(), k = P.chi.index;
  felem cu = K.neg(K.inv(u));  // -1/u
  std::int64_t cu_log = K.dlog(cu);
  std::int64_t a_mod = P.A % M, ab_mod = (P.A - P.B) % M;

  // psi-exponent histogram graded by the chi weight of x
  std::vector<std::int64_t> hist(ordq * std::int64_t(K.p()), 0);
  std::int64_t neg1 = K.dlog(K.neg(K.one()));

  for (std::int64_t t = 0; t < K.size(); ++t) {
    felem x = felem(t);
    if (x == 0) {
      // the summand collapses to psi_K(-y); it only counts for trivial chi
      if (!P.chi.trivial()) continue;
      for (std::int64_t ey = 0; ey < M; ++ey)
        hist[K.trace_of_exp(ey + neg1)]++;
      continue;
    }
    std::int64_t ex = K.dlog(x);
    std::int64_t grade = (k * v.chi_grade(ex)) % ordq;
    // first summand has fixed dlog offset; second is y(x-1)
    std::int64_t off1 = K.mod_units(cu_log + a_mod * ex);
    felem xm1 = K.sub(x, K.one());
    for (std::int64_t ey = 0; ey < M; ++ey) {
      felem y = K.exp_table()[ey];
      felem m1 = K.exp_table()[K.mod_units(off1 + ab_mod * ey)];
      felem m23 = K.mul(y, xm1);
      hist[grade * K.p() + K.trace_to_prime(K.add(m1, m23))]++;
    }
  }

  CycloAccum acc(*v.ring);
  for (std::int64_t j = 0; j < ordq; ++j)
    for (std::int64_t i = 0; i < K.p(); ++i)
      if (hist[j * K.p() + i] != 0) acc.add(i, j, hist[j * K.p() + i]);
  return acc.reduce().div_exact(K.size());
}

Cyclo trace_rootsum(const LocalSystemParams& P, const Field& K, felem u) {
  require_unit(u, "trace_rootsum");
  ExtensionView v = extension_view(*P.base, K);
  std::int64_t M = K.units();
  felem cu = K.neg(K.inv(u));
  std::int64_t cu_log = K.dlog(cu);
  std::int64_t a_mod = P.A % M, ab_mod = (P.A - P.B) % M;
  Cyclo out(*v.ring);
  if (P.chi.trivial()) out -= Cyclo::from_int(*v.ring, 1);
  // (-1/u) x^A + x^{A-B} - 1 vanishes nowhere at x = 0 (it equals -1), so
  // only units can be roots; scan all of K anyway and assert that.
  for (std::int64_t t = 0; t < K.size(); ++t) {
    felem x = felem(t);
    felem val;
    if (x == 0) {
      val = K.neg(K.one());
    } else {
      std::int64_t ex = K.dlog(x);
      felem t1 = K.exp_table()[K.mod_units(cu_log + a_mod * ex)];
      felem t2 = K.exp_table()[K.mod_units(ab_mod * ex)];
      val = K.sub(K.add(t1, t2), K.one());
    }
    if (val != 0) continue;
    if (x == 0)
      throw std::logic_error("trace_rootsum: zero turned up as a root");
    out += chi_value(v, P.chi, x);
  }
  return out;
}

Cyclo pushforward_f_trace(const LocalSystemParams& P, const Field& K,
                          felem u) {
  require_unit(u, "pushforward_f_trace");
  ExtensionView v = extension_view(*P.base, K);
  MultChar conj_chi = make_char(*P.base, -P.chi.index);
  Cyclo out(*v.ring);
  if (P.chi.trivial()) out -= Cyclo::from_int(*v.ring, 1);
  for (std::int64_t t = 0; t < K.size(); ++t) {
    felem x = felem(t);
    felem fx = K.mul(K.pow(x, P.B), K.pow(K.sub(K.one(), x), P.A - P.B));
    if (fx != u) continue;
    out += chi_value(v, conj_chi, x);
  }
  return out;
}

std::int64_t kernel_dim(std::int64_t n, const Field& base, const Field& K,
                        felem u) {
  require_unit(u, "kernel_dim");
  if (n < 2) throw std::invalid_argument("kernel_dim: n must be at least 2");
  if (K.p() != base.p())
    throw std::invalid_argument("kernel_dim: characteristic mismatch");
  std::int64_t D = K.f();
  std::int64_t p = K.p();
  std::int64_t k1 = (base.f() * (n - 1)) % D;
  std::int64_t k2 = (base.f() * n) % D;
  // columns of the map T -> T^{q^{n-1}} - T^{q^n} - uT on the power basis
  std::vector<int> m(D * D);
  for (std::int64_t i = 0; i < D; ++i) {
    felem b = felem(1);
    for (std::int64_t s = 0; s < i; ++s) b = felem(b * p);  // basis code p^i
    felem col = K.sub(K.sub(K.frobenius(b, k1), K.frobenius(b, k2)),
                      K.mul(u, b));
    auto digits = K.coeffs(col);
    for (std::int64_t r = 0; r < D; ++r) m[r * D + i] = digits[r];
  }
  // Gaussian elimination over F_p
  std::int64_t rank = 0;
  for (std::int64_t c = 0; c < D && rank < D; ++c) {
    std::int64_t piv = -1;
    for (std::int64_t r = rank; r < D; ++r)
      if (m[r * D + c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (std::int64_t cc = 0; cc < D; ++cc)
      std::swap(m[piv * D + cc], m[rank * D + cc]);
    std::int64_t inv = mod_inverse(m[rank * D + c], p);
    for (std::int64_t cc = 0; cc < D; ++cc)
      m[rank * D + cc] = int((m[rank * D + cc] * inv) % p);
    for (std::int64_t r = 0; r < D; ++r) {
      if (r == rank || m[r * D + c] == 0) continue;
      std::int64_t factor = m[r * D + c];
      for (std::int64_t cc = 0; cc < D; ++cc)
        m[r * D + cc] =
            int(((m[r * D + cc] - factor * m[rank * D + cc]) % p + p) % p);
    }
    ++rank;
  }
  return D - rank;
}

std::int64_t trace_kernel_sum(std::int64_t n, const Field& base,
                              const Field& K, felem u) {
  std::int64_t d = kernel_dim(n, base, K, u);
  std::int64_t v = 1;
  for (std::int64_t i = 0; i < d; ++i) v *= K.p();
  return v - 2;
}

std::int64_t count_F_preimages(std::int64_t n, const Field& base,
                               const Field& K, felem u) {
  require_unit(u, "count_F_preimages");
  // the defining polynomial has prime-field coefficients, so any K over F_p
  // is a legitimate scan domain even when it misses F_q
  if (K.p() != base.p())
    throw std::invalid_argument("count_F_preimages: characteristic mismatch");
  std::int64_t M = K.units();
  std::int64_t q = base.size();
  // exponents q^{n-1} - 1 and q^n - 1 reduced mod |K| - 1
  std::int64_t e1 = (mod_pow(q, n - 1, M) - 1 + M) % M;
  std::int64_t e2 = (mod_pow(q, n, M) - 1 + M) % M;
  std::int64_t count = 0;
  for (std::int64_t e = 0; e < M; ++e) {
    felem a = K.exp_table()[(e * e1) % M];
    felem b = K.exp_table()[(e * e2) % M];
    if (K.sub(a, b) == u) ++count;
  }
  return count;
}

std::vector<std::vector<Cyclo>> trace_direct_table(std::int64_t n,
                                                   const Field& base,
                                                   const Field& K) {
  if (K.size() > (std::int64_t(1) << 12) ||
      K.size() * K.size() > kDirectPairCap)
    throw std::invalid_argument(
        "trace_direct_table: |K|^2 exceeds the double-sum cap of 2^24");
  LocalSystemParams P = hyp_params(n, base, make_char(base, 0));
  ExtensionView v = extension_view(base, K);
  const CycloContext& ring = *v.ring;
  std::int64_t M = K.units();
  std::int64_t p = K.p();
  std::int64_t ordq = base.units();
  std::int64_t ab = (P.A - P.B) % M;
  std::int64_t a_mod = P.A % M;
  std::int64_t neg1 = K.dlog(K.neg(K.one()));
  const auto& trD = K.trace_exp_table();

  // corr[g][i] counts z in [0, M) with trD[(g + ab z) mod M] + trD[z] = i;
  // single[g][i] drops the trD[z] term. Built in one M^2 pass.
  std::int64_t wid = 2 * p - 1;
  std::vector<std::int32_t> corr(M * wid, 0);
  std::vector<std::int32_t> single(M * p, 0);
  for (std::int64_t g = 0; g < M; ++g) {
    std::int64_t idx = g;
    auto* crow = &corr[g * wid];
    auto* srow = &single[g * p];
    for (std::int64_t z = 0; z < M; ++z) {
      int i1 = trD[idx];
      crow[i1 + trD[z]]++;
      srow[i1]++;
      idx += ab;
      if (idx >= M) idx -= M;
    }
  }

  // x = 0 row: histogram of trace of -y over y in K^* (trivial label only)
  std::vector<std::int64_t> x0(p, 0);
  for (std::int64_t e = 0; e < M; ++e) x0[trD[K.mod_units(e + neg1)]]++;

  // per-x data for x not in {0, 1}
  std::vector<std::int64_t> xgam(std::max<std::int64_t>(M - 1, 0));
  std::vector<std::int32_t> xgrade(std::max<std::int64_t>(M - 1, 0));
  std::int64_t nx = 0;
  for (std::int64_t t = 2; t < K.size(); ++t) {
    felem x = felem(t);
    std::int64_t ex = K.dlog(x);
    std::int64_t e23 = K.dlog(K.sub(x, K.one()));
    xgam[nx] = K.mod_units(a_mod * ex - ab * e23);
    xgrade[nx] = std::int32_t(v.chi_grade(ex));
    ++nx;
  }

  std::vector<std::vector<Cyclo>> out(M, std::vector<Cyclo>(ordq));
  std::vector<std::int64_t> hist(ordq * wid);
  for (std::int64_t du = 0; du < M; ++du) {
    std::int64_t c = K.mod_units(neg1 - du);  // dlog(-1/u)
    std::fill(hist.begin(), hist.end(), 0);
    for (std::int64_t ix = 0; ix < nx; ++ix) {
      std::int64_t g = xgam[ix] + c;
      if (g >= M) g -= M;
      auto* crow = &corr[g * wid];
      auto* hrow = &hist[xgrade[ix] * wid];
      for (std::int64_t i = 0; i < wid; ++i) hrow[i] += crow[i];
    }
    // x = 1 contributes psi((-1/u) y^{A-B}) with chi weight 0
    for (std::int64_t i = 0; i < p; ++i) hist[i] += single[c * p + i];
    for (std::int64_t k = 0; k < ordq; ++k) {
      CycloAccum acc(ring);
      for (std::int64_t j = 0; j < ordq; ++j) {
        std::int64_t jj = (k * j) % std::max<std::int64_t>(ordq, 1);
        for (std::int64_t i = 0; i < wid; ++i) {
          std::int64_t cnt = hist[j * wid + i];
          if (cnt != 0) acc.add(i % p, jj, cnt);
        }
      }
      if (k == 0)
        for (std::int64_t i = 0; i < p; ++i)
          if (x0[i] != 0) acc.add(i, 0, x0[i]);
      out[du][k] = acc.reduce().div_exact(K.size());
    }
  }
  return out;
}

std::vector<std::vector<Cyclo>> trace_rootsum_table(std::int64_t n,
                                                    const Field& base,
                                                    const Field& K) {
  LocalSystemParams P = hyp_params(n, base, make_char(base, 0));
  ExtensionView v = extension_view(base, K);
  std::int64_t M = K.units(), ordq = base.units();
  std::int64_t ab = (P.A - P.B) % M, a_mod = P.A % M;
  // A root x of (-1/u)x^A + x^{A-B} - 1 exists exactly when x^{A-B} != 1,
  // with u = x^A / (x^{A-B} - 1); bucket every x by that u.
  std::vector<std::int64_t> roots(M * ordq, 0);
  for (std::int64_t ex = 0; ex < M; ++ex) {
    felem xab = K.exp_table()[(ab * ex) % M];
    if (xab == K.one()) continue;
    std::int64_t du =
        K.mod_units(a_mod * ex - K.dlog(K.sub(xab, K.one())));
    roots[du * ordq + v.chi_grade(ex)]++;
  }
  std::vector<std::vector<Cyclo>> out(M, std::vector<Cyclo>(ordq));
  for (std::int64_t du = 0; du < M; ++du)
    for (std::int64_t k = 0; k < ordq; ++k) {
      CycloAccum acc(*v.ring);
      for (std::int64_t j = 0; j < ordq; ++j) {
        std::int64_t cnt = roots[du * ordq + j];
        if (cnt != 0) acc.add(0, (k * j) % ordq, cnt);
      }
      Cyclo val = acc.reduce();
      if (k == 0) val -= Cyclo::from_int(*v.ring, 1);
      out[du][k] = val;
    }
  return out;
}

std::vector<std::vector<Cyclo>> pushforward_table(std::int64_t n,
                                                  const Field& base,
                                                  const Field& K) {
  LocalSystemParams P = hyp_params(n, base, make_char(base, 0));
  ExtensionView v = extension_view(base, K);
  std::int64_t M = K.units(), ordq = base.units();
  std::vector<std::int64_t> fib(M * ordq, 0);
  for (std::int64_t t = 0; t < K.size(); ++t) {
    felem x = felem(t);
    felem fx = K.mul(K.pow(x, P.B), K.pow(K.sub(K.one(), x), P.A - P.B));
    if (fx == 0) continue;  // x in {0, 1}: no unit fiber membership
    fib[K.dlog(fx) * ordq + (x == 0 ? 0 : v.chi_grade(K.dlog(x)))]++;
  }
  std::vector<std::vector<Cyclo>> out(M, std::vector<Cyclo>(ordq));
  for (std::int64_t du = 0; du < M; ++du)
    for (std::int64_t k = 0; k < ordq; ++k) {
      CycloAccum acc(*v.ring);
      for (std::int64_t j = 0; j < ordq; ++j) {
        std::int64_t cnt = fib[du * ordq + j];
        // conjugate character: weight -k
        if (cnt != 0) acc.add(0, ((ordq - k) % ordq) * j % ordq, cnt);
      }
      Cyclo val = acc.reduce();
      if (k == 0) val -= Cyclo::from_int(*v.ring, 1);
      out[du][k] = val;
    }
  return out;
}

Cyclo kloosterman_trace(const Field& base, const Field& K, std::int64_t N,
                        KloostermanForm form, const MultChar& chi, felem t) {
  require_unit(t, "kloosterman_trace");
  if (N < 1 || std::gcd(N, K.p()) != 1)
    throw std::invalid_argument(
        "kloosterman_trace: N must be positive and prime to p");
  if (chi.modulus_order != base.units())
    throw std::invalid_argument(
        "kloosterman_trace: character label does not match the base field");
  ExtensionView v = extension_view(base, K);
  if (form == KloostermanForm::drop_trivial) {
    if (!chi.trivial())
      throw std::invalid_argument(
          "kloosterman_trace: the all-terms form carries no character twist");
    Cyclo sum(*v.ring);
    felem ti = K.inv(t);
    felem nn = K.scalar(N);
    for (std::int64_t c = 0; c < K.size(); ++c) {
      felem x = felem(c);
      felem arg = K.sub(K.mul(nn, x), K.mul(K.pow(x, N), ti));
      sum += psi_value(v, arg);
    }
    return -sum;
  }
  Cyclo sum(*v.ring);
  felem nn = K.scalar(N);
  for (std::int64_t c = 1; c < K.size(); ++c) {
    felem x = felem(c);
    if (K.pow(x, N) != t) continue;
    sum += psi_value(v, K.mul(nn, x)) * chi_value(v, chi, x);
  }
  return sum;
}

}  // namespace glnq

#include "glnq/weil.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace glnq {

namespace {

std::int64_t ipow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) r *= b;
  return r;
}

// rank over F_q by Gaussian elimination; destroys m
std::int64_t mat_rank(const Field& F, std::int64_t n, Mat& m) {
  std::int64_t rank = 0;
  for (std::int64_t c = 0; c < n && rank < n; ++c) {
    std::int64_t piv = -1;
    for (std::int64_t r = rank; r < n; ++r)
      if (m[r * n + c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    for (std::int64_t cc = 0; cc < n; ++cc)
      std::swap(m[piv * n + cc], m[rank * n + cc]);
    felem inv = F.inv(m[rank * n + c]);
    for (std::int64_t cc = 0; cc < n; ++cc)
      m[rank * n + cc] = F.mul(m[rank * n + cc], inv);
    for (std::int64_t r = 0; r < n; ++r) {
      if (r == rank) continue;
      felem factor = m[r * n + c];
      if (factor == 0) continue;
      for (std::int64_t cc = 0; cc < n; ++cc)
        m[r * n + cc] =
            F.sub(m[r * n + cc], F.mul(factor, m[rank * n + cc]));
    }
    ++rank;
  }
  return rank;
}

}  // namespace

Mat mat_identity(const Field& F, std::int64_t n) {
  Mat m(n * n, 0);
  for (std::int64_t i = 0; i < n; ++i) m[i * n + i] = F.one();
  return m;
}

Mat mat_scalar(const Field&, std::int64_t n, felem b) {
  Mat m(n * n, 0);
  for (std::int64_t i = 0; i < n; ++i) m[i * n + i] = b;
  return m;
}

Mat transvection(const Field& F, std::int64_t n) {
  Mat m = mat_identity(F, n);
  m[0 * n + 1] = F.one();
  return m;
}

Mat mat_mul(const Field& F, std::int64_t n, const Mat& a, const Mat& b) {
  Mat m(n * n, 0);
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t k = 0; k < n; ++k) {
      felem av = a[i * n + k];
      if (av == 0) continue;
      for (std::int64_t j = 0; j < n; ++j)
        m[i * n + j] = F.add(m[i * n + j], F.mul(av, b[k * n + j]));
    }
  return m;
}

felem mat_det(const Field& F, std::int64_t n, Mat m) {
  felem det = F.one();
  std::int64_t rank = 0;
  for (std::int64_t c = 0; c < n; ++c) {
    std::int64_t piv = -1;
    for (std::int64_t r = rank; r < n; ++r)
      if (m[r * n + c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return 0;
    if (piv != rank) {
      for (std::int64_t cc = 0; cc < n; ++cc)
        std::swap(m[piv * n + cc], m[rank * n + cc]);
      det = F.neg(det);
    }
    det = F.mul(det, m[rank * n + c]);
    felem inv = F.inv(m[rank * n + c]);
    for (std::int64_t r = rank + 1; r < n; ++r) {
      felem factor = F.mul(m[r * n + c], inv);
      if (factor == 0) continue;
      for (std::int64_t cc = c; cc < n; ++cc)
        m[r * n + cc] =
            F.sub(m[r * n + cc], F.mul(factor, m[rank * n + cc]));
    }
    ++rank;
  }
  return det;
}

std::int64_t dim_ker_scaled(const Field& F, std::int64_t n, const Mat& g,
                            felem a) {
  Mat m(n * n);
  for (std::int64_t i = 0; i < n * n; ++i) m[i] = F.mul(a, g[i]);
  for (std::int64_t i = 0; i < n; ++i)
    m[i * n + i] = F.sub(m[i * n + i], F.one());
  return n - mat_rank(F, n, m);
}

std::int64_t gl_order(std::int64_t n, std::int64_t q) {
  std::int64_t qn = ipow(q, n), r = 1;
  for (std::int64_t i = 0; i < n; ++i) r *= qn - ipow(q, i);
  return r;
}

std::int64_t total_weil(const Field& F, std::int64_t n, const Mat& g) {
  return ipow(F.size(), dim_ker_scaled(F, n, g, F.one()));
}

Cyclo weil_component(const Field& F, std::int64_t n, const Mat& g,
                     const MultChar& chi) {
  if (chi.modulus_order != F.units())
    throw std::invalid_argument(
        "weil_component: character label does not match the field");
  const CycloContext& ring = CycloContext::get(F.p(), std::max<std::int64_t>(
                                                          F.units(), 1));
  CycloAccum acc(ring);
  for (std::int64_t da = 0; da < F.units(); ++da) {
    felem a = F.exp(da);
    std::int64_t cnt = ipow(F.size(), dim_ker_scaled(F, n, g, a)) - 1;
    if (cnt != 0) acc.add(0, (chi.index * da) % F.units(), cnt);
  }
  return acc.reduce().div_exact(F.units());
}

WeilTable build_weil_table(std::int64_t n, const Field& base) {
  std::int64_t q = base.size();
  std::int64_t order = gl_order(n, q);
  if (order > kGroupOrderCap)
    throw std::invalid_argument(
        "build_weil_table: group order exceeds the enumeration cap of 2^21");
  WeilTable t;
  t.n = n;
  t.base = &base;
  t.ring = &CycloContext::get(base.p(), std::max<std::int64_t>(q - 1, 1));

  std::int64_t cells = n * n;
  std::int64_t span = ipow(q, cells);
  t.elements.reserve(order);
  for (std::int64_t idx = 0; idx < span; ++idx) {
    Mat g(cells);
    std::int64_t rest = idx;
    for (std::int64_t e = cells - 1; e >= 0; --e) {
      g[e] = felem(rest % q);
      rest /= q;
    }
    if (mat_det(base, n, g) == 0) continue;
    t.elements.push_back(std::move(g));
  }
  if (std::int64_t(t.elements.size()) != order)
    throw std::logic_error(
        "build_weil_table: enumeration count disagrees with the group order");

  std::int64_t count = order;
  t.total.resize(count);
  t.in_sl.assign(count, 0);
  t.comp.assign(q - 1, std::vector<Cyclo>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    const Mat& g = t.elements[i];
    t.total[i] = total_weil(base, n, g);
    if (mat_det(base, n, g) == base.one()) {
      t.in_sl[i] = 1;
      ++t.sl_count;
    }
    for (std::int64_t k = 0; k < q - 1; ++k)
      t.comp[k][i] = weil_component(base, n, g, make_char(base, k));
  }
  return t;
}

Cyclo inner_product(const CycloContext& ring, const std::vector<Cyclo>& f,
                    const std::vector<Cyclo>& h) {
  if (f.size() != h.size())
    throw std::invalid_argument("inner_product: length mismatch");
  Cyclo acc(ring);
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * h[i].conj();
  return acc.div_exact(std::int64_t(f.size()));
}

Cyclo inner_product_masked(const CycloContext& ring,
                           const std::vector<Cyclo>& f,
                           const std::vector<Cyclo>& h,
                           const std::vector<char>& mask,
                           std::int64_t subgroup_order) {
  if (f.size() != h.size() || f.size() != mask.size())
    throw std::invalid_argument("inner_product_masked: length mismatch");
  Cyclo acc(ring);
  std::int64_t used = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!mask[i]) continue;
    acc += f[i] * h[i].conj();
    ++used;
  }
  if (used != subgroup_order)
    throw std::invalid_argument(
        "inner_product_masked: mask size disagrees with the subgroup order");
  return acc.div_exact(subgroup_order);
}

CensusRecord trace_value_census(const Field& base) {
  std::int64_t q = base.size();
  if (q < 4)
    throw std::invalid_argument(
        "trace_value_census: needs q >= 4 (small groups degenerate)");
  WeilTable t = build_weil_table(2, base);
  CensusRecord rec;
  rec.q = q;
  rec.order = std::int64_t(t.elements.size());
  for (std::int64_t v : t.total) {
    if (v == q * q)
      ++rec.count_q2;
    else if (v == q)
      ++rec.count_q;
    else if (v == 1)
      ++rec.count_1;
    else
      throw std::logic_error(
          "trace_value_census: a value outside {1, q, q^2} appeared");
  }
  return rec;
}

namespace {

// Monomial model for splitting the middle component over SL_2(q), odd q:
// the permutation-with-signs action on the q+1 projective lines, with the
// order-2 character of F_q^* as the twist. Entries are all in {-1, 0, 1}.
struct LineAction {
  const Field* F;
  std::int64_t q;
  // line reps: index c in [0, q) -> (1, c), index q -> (0, 1)
  int chi2(felem c) const { return F->dlog(c) % 2 == 0 ? 1 : -1; }
  std::vector<int> rho(const Mat& g) const {
    std::int64_t dim = q + 1;
    std::vector<int> m(dim * dim, 0);
    for (std::int64_t l = 0; l < dim; ++l) {
      felem v0 = l < q ? F->one() : 0;
      felem v1 = l < q ? felem(l) : F->one();
      felem w0 = F->add(F->mul(g[0], v0), F->mul(g[1], v1));
      felem w1 = F->add(F->mul(g[2], v0), F->mul(g[3], v1));
      std::int64_t lp;
      felem c;
      if (w0 != 0) {
        lp = F->div(w1, w0);
        c = w0;  // w = c * (1, w1/w0)
      } else {
        lp = q;
        c = w1;  // w = c * (0, 1)
      }
      m[lp * dim + l] = chi2(c);
    }
    return m;
  }
};

std::int64_t isqrt_exact(std::int64_t v) {
  if (v < 0) return -1;
  std::int64_t r = 0;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r * r == v ? r : -1;
}

}  // namespace

SL2WeilCharacters sl2_weil_characters(const WeilTable& table) {
  if (table.n != 2)
    throw std::invalid_argument("sl2_weil_characters: needs an n = 2 table");
  const Field& F = *table.base;
  std::int64_t q = F.size();
  const CycloContext& ring = *table.ring;
  SL2WeilCharacters out;
  for (std::size_t i = 0; i < table.elements.size(); ++i)
    if (table.in_sl[i]) out.sl_index.push_back(std::int64_t(i));
  std::int64_t ns = std::int64_t(out.sl_index.size());

  Cyclo one = Cyclo::from_int(ring, 1);
  out.steinberg.resize(ns);
  for (std::int64_t j = 0; j < ns; ++j)
    out.steinberg[j] = table.comp[0][out.sl_index[j]] - one;

  std::int64_t nchi = (q - 2) / 2;
  out.chi_i.assign(nchi, std::vector<Cyclo>(ns));
  for (std::int64_t i = 1; i <= nchi; ++i)
    for (std::int64_t j = 0; j < ns; ++j)
      out.chi_i[i - 1][j] = table.comp[i][out.sl_index[j]];

  if (q % 2 == 0) return out;

  // split the order-2 component into its two halves
  std::int64_t k0 = (q - 1) / 2;
  LineAction act{&F, q};
  std::int64_t dim = q + 1;

  // the monomial model must reproduce the component on the nose
  std::vector<std::int64_t> R(ns);
  std::vector<std::vector<int>> rho_g(ns);
  for (std::int64_t j = 0; j < ns; ++j) {
    rho_g[j] = act.rho(table.elements[out.sl_index[j]]);
    std::int64_t tr = 0;
    for (std::int64_t l = 0; l < dim; ++l) tr += rho_g[j][l * dim + l];
    const Cyclo& cv = table.comp[k0][out.sl_index[j]];
    if (!cv.is_int() || cv.as_int() != tr)
      throw std::logic_error(
          "sl2_weil_characters: monomial model disagrees with the order-2 "
          "component");
    R[j] = tr;
  }

  // try the two unipotent class sums until one separates the halves
  std::vector<felem> shears = {F.one(), F.generator()};
  for (felem shear : shears) {
    Mat u = mat_identity(F, 2);
    u[1] = shear;
    std::set<Mat> cls;
    for (std::int64_t j = 0; j < ns; ++j) {
      const Mat& s = table.elements[out.sl_index[j]];
      // s u s^{-1} for s in SL_2: inverse via the adjugate, det = 1
      Mat si = {s[3], F.neg(s[1]), F.neg(s[2]), s[0]};
      cls.insert(mat_mul(F, 2, mat_mul(F, 2, s, u), si));
    }
    std::vector<std::int64_t> T(dim * dim, 0);
    for (const Mat& h : cls) {
      std::vector<int> r = act.rho(h);
      for (std::int64_t i = 0; i < dim * dim; ++i) T[i] += r[i];
    }
    std::vector<std::int64_t> T2(dim * dim, 0);
    for (std::int64_t i = 0; i < dim; ++i)
      for (std::int64_t k = 0; k < dim; ++k) {
        std::int64_t tv = T[i * dim + k];
        if (tv == 0) continue;
        for (std::int64_t l = 0; l < dim; ++l)
          T2[i * dim + l] += tv * T[k * dim + l];
      }
    // solve T^2 = alpha T + beta I from one off-diagonal entry
    std::int64_t alpha = 0;
    bool found = false;
    for (std::int64_t i = 0; i < dim && !found; ++i)
      for (std::int64_t l = 0; l < dim && !found; ++l) {
        if (i == l || T[i * dim + l] == 0) continue;
        if (T2[i * dim + l] % T[i * dim + l] != 0)
          throw std::logic_error(
              "sl2_weil_characters: class sum fails its quadratic relation");
        alpha = T2[i * dim + l] / T[i * dim + l];
        found = true;
      }
    if (!found) continue;
    std::int64_t beta = T2[0] - alpha * T[0];
    for (std::int64_t i = 0; i < dim; ++i)
      for (std::int64_t l = 0; l < dim; ++l) {
        std::int64_t want = alpha * T[i * dim + l] + (i == l ? beta : 0);
        if (T2[i * dim + l] != want)
          throw std::logic_error(
              "sl2_weil_characters: class sum fails its quadratic relation");
      }
    std::int64_t delta = alpha * alpha + 4 * beta;
    if (delta == 0) continue;
    std::int64_t p = F.p();
    std::int64_t signed_p = (p % 4 == 1) ? p : -p;
    if (delta % signed_p != 0)
      throw std::logic_error(
          "sl2_weil_characters: discriminant is not a multiple of +-p");
    std::int64_t sq = isqrt_exact(delta / signed_p);
    if (sq <= 0)
      throw std::logic_error(
          "sl2_weil_characters: discriminant over +-p is not a square");
    Cyclo gauss = quadratic_gauss_sum(ring);

    out.xi.assign(2, std::vector<Cyclo>(ns));
    for (std::int64_t j = 0; j < ns; ++j) {
      std::int64_t trTg = 0;
      for (std::int64_t i = 0; i < dim; ++i)
        for (std::int64_t k = 0; k < dim; ++k)
          trTg += T[i * dim + k] * rho_g[j][k * dim + i];
      std::int64_t S = 2 * trTg - alpha * R[j];
      Cyclo base_term = Cyclo::from_int(ring, R[j] * delta);
      Cyclo split_term = gauss.scaled(S * sq);
      out.xi[0][j] = (base_term + split_term).div_exact(2 * delta);
      out.xi[1][j] = (base_term - split_term).div_exact(2 * delta);
      Cyclo sum = out.xi[0][j] + out.xi[1][j];
      if (!sum.is_int() || sum.as_int() != R[j])
        throw std::logic_error(
            "sl2_weil_characters: halves do not add back to the component");
    }
    return out;
  }
  throw std::logic_error(
      "sl2_weil_characters: no unipotent class sum separated the halves");
}

namespace {

void enumerate_degree_solutions(const std::vector<std::int64_t>& degs,
                                std::int64_t target, std::size_t pos,
                                std::vector<std::int64_t>& cur,
                                std::vector<std::vector<std::int64_t>>& out) {
  if (pos + 1 == degs.size()) {
    if (target % degs[pos] == 0) {
      cur[pos] = target / degs[pos];
      out.push_back(cur);
    }
    return;
  }
  for (std::int64_t a = 0; a * degs[pos] <= target; ++a) {
    cur[pos] = a;
    enumerate_degree_solutions(degs, target - a * degs[pos], pos + 1, cur,
                               out);
  }
}

}  // namespace

UniquenessReport verify_weil_uniqueness(std::int64_t n, const Field& base) {
  std::int64_t q = base.size();
  UniquenessReport rep;
  rep.n = n;
  rep.q = q;
  WeilTable table = build_weil_table(n, base);
  const CycloContext& ring = *table.ring;
  Cyclo one = Cyclo::from_int(ring, 1);

  std::vector<std::vector<Cyclo>> basis;  // value vectors per coordinate
  std::vector<std::int64_t> degs;
  std::int64_t group_order;
  std::int64_t id_pos = -1;  // position of the identity in the value vectors
  const Mat id = mat_identity(base, n);

  if (n >= 3) {
    // constituents over the full group: the trivial-label component minus
    // the constant 1, then each nontrivial component
    group_order = std::int64_t(table.elements.size());
    for (std::int64_t i = 0; i < group_order; ++i)
      if (table.elements[i] == id) {
        id_pos = i;
        break;
      }
    for (std::int64_t k = 0; k < q - 1; ++k) {
      std::vector<Cyclo> vals(group_order);
      for (std::int64_t i = 0; i < group_order; ++i)
        vals[i] = k == 0 ? table.comp[0][i] - one : table.comp[k][i];
      rep.coords.push_back("a_" + std::to_string(k));
      basis.push_back(std::move(vals));
      rep.expected.push_back(1);
    }
  } else {
    if (q < 4)
      throw std::invalid_argument(
          "verify_weil_uniqueness: n = 2 needs q >= 4");
    SL2WeilCharacters sl = sl2_weil_characters(table);
    group_order = std::int64_t(sl.sl_index.size());
    for (std::int64_t j = 0; j < group_order; ++j)
      if (table.elements[sl.sl_index[j]] == id) {
        id_pos = j;
        break;
      }
    rep.coords.push_back("a_st");
    basis.push_back(sl.steinberg);
    rep.expected.push_back(1);
    for (std::size_t i = 0; i < sl.chi_i.size(); ++i) {
      rep.coords.push_back("b_" + std::to_string(i + 1));
      basis.push_back(sl.chi_i[i]);
      rep.expected.push_back(2);
    }
    for (std::size_t i = 0; i < sl.xi.size(); ++i) {
      rep.coords.push_back("c_" + std::to_string(i + 1));
      basis.push_back(sl.xi[i]);
      rep.expected.push_back(1);
    }
  }
  if (id_pos < 0)
    throw std::logic_error("verify_weil_uniqueness: identity not found");
  for (auto& vals : basis) {
    Cyclo d = vals[id_pos];
    if (!d.is_int())
      throw std::logic_error("verify_weil_uniqueness: non-integer degree");
    degs.push_back(d.as_int());
  }

  std::int64_t target = ipow(q, n) - 2;
  std::vector<std::int64_t> cur(degs.size(), 0);
  enumerate_degree_solutions(degs, target, 0, cur, rep.degree_solutions);

  std::vector<std::int64_t> allowed;
  for (std::int64_t i = 0; i <= n; ++i) allowed.push_back(ipow(q, i));

  for (const auto& cand : rep.degree_solutions) {
    bool good = true;
    for (std::int64_t g = 0; g < group_order && good; ++g) {
      Cyclo v = Cyclo::from_int(ring, 2);
      for (std::size_t ci = 0; ci < cand.size(); ++ci)
        if (cand[ci] != 0) v += basis[ci][g].scaled(cand[ci]);
      if (!v.is_int() ||
          std::find(allowed.begin(), allowed.end(), v.as_int()) ==
              allowed.end())
        good = false;
    }
    if (good) rep.value_solutions.push_back(cand);
  }
  rep.unique_expected = rep.value_solutions.size() == 1 &&
                        rep.value_solutions[0] == rep.expected;
  return rep;
}

DetCharReport char_product_identity(std::int64_t n, std::int64_t q) {
  if (n < 2 || q < 2)
    throw std::invalid_argument("char_product_identity: need n, q >= 2");
  std::int64_t m = ipow(q, n) - 1;
  std::int64_t A = m / (q - 1);
  DetCharReport rep;
  rep.n = n;
  rep.q = q;
  rep.A = A;
  rep.a_even = A % 2 == 0;
  if (rep.a_even != (q % 2 == 1 && n % 2 == 0))
    throw std::logic_error(
        "char_product_identity: parity of A violates its closed form");
  rep.pass = true;
  for (std::int64_t k = 0; k < q - 1; ++k) {
    DetCharEntry e;
    e.chi_index = k;
    e.chi_residue = (A * k) % m;
    for (std::int64_t r = 0; r < m; ++r)
      if ((A * r) % m == e.chi_residue) {
        ++e.set_size;
        e.sum_residue = (e.sum_residue + r) % m;
      }
    e.expected = (e.chi_residue + (rep.a_even ? m / 2 : 0)) % m;
    e.pass = e.set_size == A && e.sum_residue == e.expected;
    rep.entries.push_back(e);
    rep.pass = rep.pass && e.pass;
  }
  return rep;
}

}  // namespace glnq

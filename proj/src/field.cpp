#include "glnq/field.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace glnq {

bool is_prime_int(std::int64_t v) {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::int64_t d = 3; d * d <= v; d += 2)
    if (v % d == 0) return false;
  return true;
}

std::vector<std::int64_t> prime_factors(std::int64_t v) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 2; d * d <= v; d += (d == 2 ? 1 : 2)) {
    if (v % d == 0) {
      out.push_back(d);
      while (v % d == 0) v /= d;
    }
  }
  if (v > 1) out.push_back(v);
  return out;
}

std::int64_t ipow_checked(std::int64_t b, std::int64_t e, std::int64_t cap) {
  std::int64_t r = 1;
  for (std::int64_t i = 0; i < e; ++i) {
    if (r > cap / b) return cap + 1;
    r *= b;
  }
  return r;
}

namespace {

// --- dense polynomial arithmetic over F_p, used only while a field is
// --- being constructed (irreducibility tests, the generator search)

using Poly = std::vector<int>;  // low-degree-first, trimmed

void ptrim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& mod, std::int64_t p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::int64_t> t(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) t[i + j] += std::int64_t(a[i]) * b[j];
  size_t f = mod.size() - 1;  // mod is monic of degree f
  for (size_t k = t.size(); k-- > f;) {
    std::int64_t c = t[k] % p;
    t[k] = 0;
    if (c == 0) continue;
    for (size_t i = 0; i < f; ++i) t[k - f + i] -= c * mod[i];
  }
  Poly r(std::min(t.size(), f));
  for (size_t i = 0; i < r.size(); ++i) r[i] = int(((t[i] % p) + p) % p);
  ptrim(r);
  return r;
}

Poly ppowmod(Poly base, std::int64_t e, const Poly& mod, std::int64_t p) {
  Poly r = {1};
  while (e > 0) {
    if (e & 1) r = pmulmod(r, base, mod, p);
    base = pmulmod(base, base, mod, p);
    e >>= 1;
  }
  return r;
}

Poly pmod(Poly a, const Poly& b, std::int64_t p) {
  // b monic after normalization by caller
  while (a.size() >= b.size() && !a.empty()) {
    std::int64_t c = a.back();
    size_t sh = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) {
      std::int64_t v = a[sh + i] - c * b[i];
      a[sh + i] = int(((v % p) + p) % p);
    }
    ptrim(a);
  }
  return a;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  std::int64_t t = 0, nt = 1, r = m, nr = ((a % m) + m) % m;
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  return ((t % m) + m) % m;
}

Poly pmonic(Poly a, std::int64_t p) {
  ptrim(a);
  if (a.empty()) return a;
  std::int64_t lead = a.back();
  if (lead != 1) {
    std::int64_t il = inv_mod(lead, p);
    for (auto& c : a) c = int((c * il) % p);
  }
  return a;
}

Poly pgcd(Poly a, Poly b, std::int64_t p) {
  a = pmonic(std::move(a), p);
  b = pmonic(std::move(b), p);
  while (!b.empty()) {
    Poly r = pmod(a, b, p);
    a = std::move(b);
    b = pmonic(std::move(r), p);
  }
  return a;
}

bool poly_irreducible(const Poly& g, std::int64_t p) {
  std::int64_t f = std::int64_t(g.size()) - 1;
  if (f == 1) return true;
  Poly x = {0, 1};
  // frob[d] = X^{p^d} mod g, built by repeated p-th powers
  std::vector<Poly> frob(f + 1);
  frob[0] = x;
  for (std::int64_t d = 1; d <= f; ++d)
    frob[d] = ppowmod(frob[d - 1], p, g, p);
  if (frob[f] != x) return false;
  for (std::int64_t r : prime_factors(f)) {
    Poly h = frob[f / r];
    // h - X
    if (h.size() < 2) h.resize(2, 0);
    h[1] = int(((h[1] - 1) % p + p) % p);
    ptrim(h);
    Poly d = pgcd(h, g, p);
    if (d.size() != 1) return false;  // nontrivial common factor
  }
  return true;
}

// code <-> digit helpers used before the log tables exist
std::vector<int> code_digits(felem a, std::int64_t p, std::int64_t f) {
  std::vector<int> d(f);
  for (std::int64_t i = 0; i < f; ++i) {
    d[i] = int(a % p);
    a = felem(a / p);
  }
  return d;
}

felem digits_code(const std::vector<int>& d, std::int64_t p) {
  std::int64_t c = 0;
  for (size_t i = d.size(); i-- > 0;) c = c * p + d[i];
  return felem(c);
}

felem raw_mul(felem a, felem b, const std::vector<int>& mod, std::int64_t p,
              std::int64_t f) {
  Poly pa = code_digits(a, p, f);
  Poly pb = code_digits(b, p, f);
  ptrim(pa);
  ptrim(pb);
  Poly r = pmulmod(pa, pb, mod, p);
  r.resize(f, 0);
  return digits_code(r, p);
}

felem raw_pow(felem a, std::int64_t e, const std::vector<int>& mod,
              std::int64_t p, std::int64_t f) {
  felem r = 1;
  while (e > 0) {
    if (e & 1) r = raw_mul(r, a, mod, p, f);
    a = raw_mul(a, a, mod, p, f);
    e >>= 1;
  }
  return r;
}

felem lex_code(std::int64_t t, std::int64_t p, std::int64_t f) {
  // digit a_0 is the most significant position of the lex order
  std::vector<int> d(f);
  for (std::int64_t i = f - 1; i >= 0; --i) {
    d[i] = int(t % p);
    t /= p;
  }
  return digits_code(d, p);
}

std::vector<int> smallest_irreducible(std::int64_t p, std::int64_t f) {
  if (f == 1) return {0, 1};  // X itself
  std::int64_t count = 1;
  for (std::int64_t i = 0; i < f; ++i) count *= p;
  for (std::int64_t t = 0; t < count; ++t) {
    felem low = lex_code(t, p, f);
    std::vector<int> cand = code_digits(low, p, f);
    cand.push_back(1);
    if (poly_irreducible(cand, p)) return cand;
  }
  throw std::logic_error("no irreducible polynomial found");
}

bool is_primitive(felem a, const std::vector<int>& mod, std::int64_t p,
                  std::int64_t f, std::int64_t m,
                  const std::vector<std::int64_t>& mfac) {
  if (a == 0) return false;
  if (raw_pow(a, m, mod, p, f) != 1) return false;
  for (std::int64_t r : mfac)
    if (raw_pow(a, m / r, mod, p, f) == 1) return false;
  return true;
}

felem smallest_generator(const std::vector<int>& mod, std::int64_t p,
                         std::int64_t f, std::int64_t m) {
  auto mfac = prime_factors(m);
  std::int64_t count = m + 1;
  for (std::int64_t t = 1; t < count; ++t) {
    felem cand = lex_code(t, p, f);
    if (cand != 0 && is_primitive(cand, mod, p, f, m, mfac))
      return cand;
  }
  throw std::logic_error("no primitive element found");
}

}  // namespace

Field::Field(std::int64_t p, std::int64_t f, std::vector<int> modulus,
             felem gen)
    : p_(p), f_(f), gen_(gen) {
  n_ = 1;
  for (std::int64_t i = 0; i < f_; ++i) n_ *= p_;
  m_ = n_ - 1;
  desc_ = {p_, f_, n_, modulus};
  pow_p_.resize(f_ + 1);
  pow_p_[0] = 1;
  for (std::int64_t i = 1; i <= f_; ++i) pow_p_[i] = felem(pow_p_[i - 1] * p_);
  build_tables();
}

void Field::build_tables() {
  exp_.assign(m_, 0);
  log_.assign(n_, -1);
  felem cur = 1;
  for (std::int64_t e = 0; e < m_; ++e) {
    exp_[e] = cur;
    if (log_[cur] != -1)
      throw std::logic_error("generator is not primitive");
    log_[cur] = e;
    cur = raw_mul(cur, gen_, desc_.modulus, p_, f_);
  }
  if (cur != 1) throw std::logic_error("generator order mismatch");

  trace_code_.assign(n_, 0);
  trace_exp_.assign(m_, 0);
  for (std::int64_t e = 0; e < m_; ++e) {
    felem x = exp_[e];
    felem acc = x;
    std::int64_t pe = 1;
    for (std::int64_t d = 1; d < f_; ++d) {
      pe = (pe * p_) % m_;
      acc = add(acc, exp_[(e * pe) % m_]);
    }
    if (acc >= felem(p_))
      throw std::logic_error("trace left the prime field");
    trace_code_[x] = std::uint8_t(acc);
    trace_exp_[e] = std::uint8_t(acc);
  }
  trace_code_[0] = 0;
}

felem Field::add(felem a, felem b) const {
  if (p_ == 2) return a ^ b;
  felem r = 0;
  for (std::int64_t i = 0; i < f_; ++i) {
    std::int64_t da = (a / pow_p_[i]) % p_;
    std::int64_t db = (b / pow_p_[i]) % p_;
    r += felem(((da + db) % p_) * pow_p_[i]);
  }
  return r;
}

felem Field::neg(felem a) const {
  if (p_ == 2) return a;
  felem r = 0;
  for (std::int64_t i = 0; i < f_; ++i) {
    std::int64_t d = (a / pow_p_[i]) % p_;
    r += felem(((p_ - d) % p_) * pow_p_[i]);
  }
  return r;
}

felem Field::inv(felem a) const {
  if (a == 0) throw std::invalid_argument("inverse of zero");
  return exp_[(m_ - log_[a]) % m_];
}

felem Field::pow(felem a, std::int64_t e) const {
  if (a == 0) {
    if (e == 0) return 1;
    if (e < 0) throw std::invalid_argument("negative power of zero");
    return 0;
  }
  std::int64_t em = ((e % m_) + m_) % m_;
  return exp_[(log_[a] * em) % m_];
}

felem Field::frobenius(felem a, std::int64_t e) const {
  if (a == 0) return 0;
  std::int64_t k = ((e % f_) + f_) % f_;
  std::int64_t pe = 1 % m_;
  std::int64_t b = p_ % m_;
  for (std::int64_t i = 0; i < k; ++i) pe = (pe * b) % m_;
  return exp_[(log_[a] * pe) % m_];
}

felem Field::scalar(std::int64_t c) const {
  return felem(((c % p_) + p_) % p_);
}

std::int64_t Field::dlog(felem a) const {
  if (a == 0) throw std::invalid_argument("dlog of zero");
  return log_[a];
}

felem Field::exp(std::int64_t e) const { return exp_[mod_units(e)]; }

std::vector<int> Field::coeffs(felem a) const {
  return code_digits(a, p_, f_);
}

felem Field::from_coeffs(const std::vector<int>& c) const {
  if (std::int64_t(c.size()) != f_)
    throw std::invalid_argument("coefficient list has wrong length");
  for (int d : c)
    if (d < 0 || d >= p_)
      throw std::invalid_argument("coefficient out of range");
  return digits_code(c, p_);
}

felem Field::lex_element(std::int64_t t) const { return lex_code(t, p_, f_); }

std::string Field::show(felem a) const {
  std::ostringstream os;
  os << "[";
  auto d = coeffs(a);
  for (size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << "]";
  return os.str();
}

namespace {

struct CacheEntry {
  std::vector<int> modulus;
  felem gen = 0;
  bool ok = false;
};

std::filesystem::path cache_path(const char* dir, std::int64_t p,
                                 std::int64_t f) {
  std::ostringstream os;
  os << "glnq_field_" << p << "_" << f << ".txt";
  return std::filesystem::path(dir) / os.str();
}

CacheEntry read_cache(const char* dir, std::int64_t p, std::int64_t f,
                      std::int64_t m) {
  CacheEntry ce;
  std::ifstream in(cache_path(dir, p, f));
  if (!in) return ce;
  std::int64_t cp = 0, cf = 0;
  in >> cp >> cf;
  if (cp != p || cf != f) return ce;
  std::vector<int> mod(f + 1);
  for (auto& c : mod) {
    if (!(in >> c)) return ce;
    if (c < 0 || c >= p) return ce;
  }
  std::int64_t g = 0;
  if (!(in >> g)) return ce;
  if (mod.back() != 1) return ce;
  if (f > 1 && !poly_irreducible(mod, p)) return ce;
  if (g <= 0 || g >= m + 1) return ce;
  if (!is_primitive(felem(g), mod, p, f, m, prime_factors(m))) return ce;
  ce.modulus = std::move(mod);
  ce.gen = felem(g);
  ce.ok = true;
  return ce;
}

void write_cache(const char* dir, std::int64_t p, std::int64_t f,
                 const std::vector<int>& mod, felem gen) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  std::ofstream out(cache_path(dir, p, f));
  if (!out) return;
  out << p << " " << f << "\n";
  for (size_t i = 0; i < mod.size(); ++i) out << (i ? " " : "") << mod[i];
  out << "\n" << gen << "\n";
}

}  // namespace

const Field& Field::get(std::int64_t p, std::int64_t f) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, std::int64_t>,
                  std::unique_ptr<Field>>
      registry;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, f);
  auto it = registry.find(key);
  if (it != registry.end()) return *it->second;

  if (!is_prime_int(p))
    throw std::invalid_argument("field characteristic must be prime, got " +
                                std::to_string(p));
  if (f < 1) throw std::invalid_argument("field degree must be >= 1");
  if (ipow_checked(p, f, kFieldCardinalityCap) > kFieldCardinalityCap)
    throw std::invalid_argument("field cardinality exceeds the 2^22 cap");

  std::int64_t n = 1;
  for (std::int64_t i = 0; i < f; ++i) n *= p;
  std::int64_t m = n - 1;

  std::vector<int> mod;
  felem gen = 0;
  const char* dir = std::getenv("GLNQ_CACHE_DIR");
  bool cached = false;
  if (dir && *dir) {
    CacheEntry ce = read_cache(dir, p, f, m);
    if (ce.ok) {
      mod = std::move(ce.modulus);
      gen = ce.gen;
      cached = true;
    }
  }
  if (!cached) {
    mod = smallest_irreducible(p, f);
    gen = (m == 1) ? felem(1) : smallest_generator(mod, p, f, m);
    if (dir && *dir) write_cache(dir, p, f, mod, gen);
  }

  auto field = std::unique_ptr<Field>(new Field(p, f, std::move(mod), gen));
  const Field& ref = *field;
  registry.emplace(key, std::move(field));
  return ref;
}

// --- embeddings

Embedding::Embedding(const Field& sub, const Field& sup)
    : sub_(&sub), sup_(&sup) {
  if (sub.p() != sup.p())
    throw std::invalid_argument("embedding requires equal characteristic");
  if (sup.f() % sub.f() != 0)
    throw std::invalid_argument("subfield degree must divide");

  if (sub.f() == sup.f()) {
    root_ = (sub.f() == 1) ? felem(0) : felem(sub.p());  // the element X
    fwd_.resize(sub.size());
    for (std::int64_t a = 0; a < sub.size(); ++a) fwd_[a] = felem(a);
  } else {
    // lexicographically smallest root of the sub modulus in sup
    const auto& mod = sub.descriptor().modulus;
    felem found = 0;
    bool have = false;
    for (std::int64_t t = 0; t < sup.size() && !have; ++t) {
      felem cand = sup.lex_element(t);
      felem acc = sup.scalar(mod.back());
      for (std::int64_t i = std::int64_t(mod.size()) - 2; i >= 0; --i)
        acc = sup.add(sup.mul(acc, cand), sup.scalar(mod[i]));
      if (acc == 0) {
        found = cand;
        have = true;
      }
    }
    if (!have) throw std::logic_error("modulus has no root in extension");
    root_ = found;
    fwd_.resize(sub.size());
    std::vector<felem> rp(sub.f());
    rp[0] = 1;
    for (std::int64_t i = 1; i < sub.f(); ++i) rp[i] = sup.mul(rp[i - 1], root_);
    for (std::int64_t a = 0; a < sub.size(); ++a) {
      auto d = sub.coeffs(felem(a));
      felem acc = 0;
      for (std::int64_t i = 0; i < sub.f(); ++i)
        acc = sup.add(acc, sup.mul(sup.scalar(d[i]), rp[i]));
      fwd_[a] = acc;
    }
  }

  back_.assign(sup.size(), -1);
  for (std::int64_t a = 0; a < sub.size(); ++a) {
    if (back_[fwd_[a]] != -1)
      throw std::logic_error("embedding is not injective");
    back_[fwd_[a]] = a;
  }

  std::int64_t r = sup.units() / sub.units();
  std::int64_t t0 = (sub.units() == 1) ? 0 : sup.dlog(fwd_[sub.generator()]);
  if (sub.units() == 1) {
    unit_shift_ = 1;
  } else {
    if (t0 % r != 0) throw std::logic_error("generator image has wrong order");
    unit_shift_ = t0 / r;
    if (std::gcd(unit_shift_, sub.units()) != 1)
      throw std::logic_error("generator image is not primitive in subfield");
  }
}

const Embedding& Embedding::get(const Field& sub, const Field& sup) {
  static std::mutex mu;
  static std::map<std::pair<const Field*, const Field*>,
                  std::unique_ptr<Embedding>>
      registry;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(&sub, &sup);
  auto it = registry.find(key);
  if (it != registry.end()) return *it->second;
  auto e = std::unique_ptr<Embedding>(new Embedding(sub, sup));
  const Embedding& ref = *e;
  registry.emplace(key, std::move(e));
  return ref;
}

felem Embedding::preimage(felem b) const {
  std::int64_t a = back_[b];
  if (a < 0)
    throw std::invalid_argument("element is not in the embedded subfield");
  return felem(a);
}

bool Embedding::in_subfield(felem b) const { return back_[b] >= 0; }

felem norm_to_subfield(const Embedding& e, felem x) {
  if (x == 0) return 0;
  std::int64_t r = e.sup().units() / e.sub().units();
  return e.preimage(e.sup().pow(x, r));
}

felem trace_to_subfield(const Embedding& e, felem x) {
  std::int64_t steps = e.sup().f() / e.sub().f();
  felem acc = 0;
  felem cur = x;
  for (std::int64_t i = 0; i < steps; ++i) {
    acc = e.sup().add(acc, cur);
    cur = e.sup().frobenius(cur, e.sub().f());
  }
  return e.preimage(acc);
}

std::int64_t MultChar::order() const {
  return modulus_order / std::gcd(index == 0 ? modulus_order : index,
                                  modulus_order);
}

MultChar make_char(const Field& base, std::int64_t index) {
  std::int64_t m = base.units();
  MultChar c;
  c.modulus_order = m;
  c.index = ((index % m) + m) % m;
  return c;
}

}  // namespace glnq

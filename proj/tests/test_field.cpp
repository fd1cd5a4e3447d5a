// Field construction is pinned against small independent oracles written in
// plain polynomial arithmetic: the modulus must be the lex-smallest monic
// irreducible, the generator the lex-smallest primitive element, embeddings
// must pick the lex-smallest root. Everything else (trace tables, norms,
// characters, the on-disk cache) is checked exhaustively at small sizes.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>

#include "doctest.h"
#include "glnq/field.hpp"

using namespace glnq;

namespace {

// low-degree-first coefficient lists over F_p, independent of the library
using Poly = std::vector<int>;

Poly pmul(const Poly& a, const Poly& b, std::int64_t p) {
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = int((c[i + j] + std::int64_t(a[i]) * b[j]) % p);
  return c;
}

// remainder of a by monic d
Poly prem(Poly a, const Poly& d, std::int64_t p) {
  while (a.size() >= d.size()) {
    int lead = a.back();
    if (lead != 0) {
      std::size_t shift = a.size() - d.size();
      for (std::size_t i = 0; i < d.size(); ++i)
        a[shift + i] = int(((a[shift + i] - std::int64_t(lead) * d[i]) % p + p) % p);
    }
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

// all monic polynomials of a given degree, sorted by coefficient list
std::vector<Poly> monics(std::int64_t p, int deg) {
  std::vector<Poly> out;
  std::int64_t count = 1;
  for (int i = 0; i < deg; ++i) count *= p;
  for (std::int64_t code = 0; code < count; ++code) {
    Poly m(deg + 1, 0);
    std::int64_t w = code;
    for (int i = 0; i < deg; ++i) {
      m[i] = int(w % p);
      w /= p;
    }
    m[deg] = 1;
    out.push_back(m);
  }
  // ordered by coefficient list, a0 weighing most
  std::sort(out.begin(), out.end());
  return out;
}

bool brute_irreducible(const Poly& m, std::int64_t p) {
  int deg = int(m.size()) - 1;
  if (deg < 1) return false;
  for (int d = 1; d <= deg / 2; ++d)
    for (const Poly& cand : monics(p, d))
      if (prem(m, cand, p).empty()) return false;
  return true;
}

Poly brute_smallest_irreducible(std::int64_t p, int deg) {
  for (const Poly& m : monics(p, deg))
    if (brute_irreducible(m, p)) return m;
  return {};
}

Poly ppowmod(Poly base, std::int64_t e, const Poly& mod, std::int64_t p) {
  Poly r{1};
  base = prem(base, mod, p);
  while (e > 0) {
    if (e & 1) r = prem(pmul(r, base, p), mod, p);
    base = prem(pmul(base, base, p), mod, p);
    e >>= 1;
  }
  return r;
}

bool brute_primitive(const Poly& elt, const Poly& mod, std::int64_t p,
                     std::int64_t m) {
  if (elt.empty()) return false;
  if (ppowmod(elt, m, mod, p) != Poly{1}) return false;
  for (std::int64_t r : prime_factors(m))
    if (ppowmod(elt, m / r, mod, p) == Poly{1}) return false;
  return true;
}

Poly coeff_poly(const Field& F, felem x) {
  auto c = F.coeffs(x);
  Poly out(c.begin(), c.end());
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

}  // namespace

TEST_CASE("modulus is the lex-smallest monic irreducible") {
  struct Case {
    std::int64_t p;
    int f;
  };
  for (Case c : {Case{2, 2}, Case{2, 3}, Case{2, 4}, Case{2, 8}, Case{3, 2},
                 Case{3, 3}, Case{5, 2}, Case{7, 2}}) {
    const Field& F = Field::get(c.p, c.f);
    Poly want = brute_smallest_irreducible(c.p, c.f);
    Poly got(F.descriptor().modulus.begin(), F.descriptor().modulus.end());
    CAPTURE(c.p);
    CAPTURE(c.f);
    CHECK(got == want);
  }
  // two classics by hand
  CHECK(Field::get(3, 2).descriptor().modulus == std::vector<int>{1, 0, 1});
  CHECK(Field::get(2, 3).descriptor().modulus == std::vector<int>{1, 0, 1, 1});
}

TEST_CASE("generator is the lex-smallest primitive element") {
  for (auto [p, f] : std::vector<std::pair<std::int64_t, int>>{
           {2, 2}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {13, 1}}) {
    const Field& F = Field::get(p, f);
    Poly mod(F.descriptor().modulus.begin(), F.descriptor().modulus.end());
    felem expect = 0;
    bool found = false;
    // elements ordered by coefficient list
    for (std::int64_t t = 0; t < F.size() && !found; ++t) {
      felem x = F.lex_element(t);
      if (brute_primitive(coeff_poly(F, x), mod, p, F.units())) {
        expect = x;
        found = true;
      }
    }
    CAPTURE(p);
    CAPTURE(f);
    REQUIRE(found);
    CHECK(F.generator() == expect);
  }
}

TEST_CASE("lex_element enumerates every element in coefficient order") {
  const Field& F = Field::get(3, 2);
  std::vector<std::vector<int>> lists;
  std::set<felem> seen;
  for (std::int64_t t = 0; t < F.size(); ++t) {
    felem x = F.lex_element(t);
    CHECK(!seen.count(x));
    seen.insert(x);
    lists.push_back(F.coeffs(x));
  }
  CHECK(std::is_sorted(lists.begin(), lists.end()));
  CHECK(std::int64_t(seen.size()) == F.size());
}

TEST_CASE("exp and dlog are inverse and multiplicative") {
  const Field& F = Field::get(3, 3);
  for (std::int64_t e = 0; e < F.units(); ++e)
    CHECK(F.dlog(F.exp(e)) == e);
  // multiplicativity across a full sweep against one fixed factor
  felem a = F.exp(7);
  for (std::int64_t e = 0; e < F.units(); ++e) {
    felem b = F.exp(e);
    CHECK(F.dlog(F.mul(a, b)) == F.mod_units(7 + e));
  }
  CHECK(F.exp(F.units()) == F.one());
  CHECK(F.exp(-1) == F.inv(F.generator()));
}

TEST_CASE("additive structure matches polynomial addition") {
  const Field& F = Field::get(5, 2);
  for (std::int64_t s = 0; s < F.size(); ++s) {
    felem x = F.lex_element(s);
    felem y = F.lex_element((s * 7 + 3) % F.size());
    auto cx = F.coeffs(x), cy = F.coeffs(y);
    std::vector<int> want(cx.size());
    for (std::size_t i = 0; i < cx.size(); ++i)
      want[i] = int((cx[i] + cy[i]) % 5);
    CHECK(F.coeffs(F.add(x, y)) == want);
    CHECK(F.add(x, F.neg(x)) == F.zero());
  }
}

TEST_CASE("multiplication matches polynomial arithmetic modulo the modulus") {
  const Field& F = Field::get(2, 4);
  Poly mod(F.descriptor().modulus.begin(), F.descriptor().modulus.end());
  for (std::int64_t s = 0; s < F.size(); ++s)
    for (std::int64_t t = 0; t < F.size(); ++t) {
      felem x = F.lex_element(s), y = F.lex_element(t);
      Poly want = prem(pmul(coeff_poly(F, x).empty() ? Poly{0}
                                                     : coeff_poly(F, x),
                            coeff_poly(F, y).empty() ? Poly{0}
                                                     : coeff_poly(F, y),
                            2),
                       mod, 2);
      CHECK(coeff_poly(F, F.mul(x, y)) == want);
    }
}

TEST_CASE("trace tables agree with the sum of Frobenius orbits") {
  for (auto [p, f] : std::vector<std::pair<std::int64_t, int>>{
           {2, 3}, {3, 2}, {5, 2}, {2, 6}}) {
    const Field& F = Field::get(p, f);
    for (std::int64_t t = 0; t < F.size(); ++t) {
      felem x = F.lex_element(t);
      felem s = 0;
      for (int i = 0; i < f; ++i) s = F.add(s, F.frobenius(x, i));
      // the orbit sum lands in the prime field: a single digit
      auto c = F.coeffs(s);
      for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] == 0);
      CHECK(F.trace_to_prime(x) == c[0]);
      if (x != 0) CHECK(F.trace_of_exp(F.dlog(x)) == c[0]);
    }
  }
  // the classic quartet: traces over F_4 are 0, 0, 1, 1
  const Field& F4 = Field::get(2, 2);
  CHECK(F4.trace_to_prime(F4.zero()) == 0);
  CHECK(F4.trace_to_prime(F4.one()) == 0);
  CHECK(F4.trace_to_prime(F4.generator()) == 1);
  CHECK(F4.trace_to_prime(F4.mul(F4.generator(), F4.generator())) == 1);
}

TEST_CASE("pow and frobenius") {
  const Field& F = Field::get(3, 3);
  for (std::int64_t t = 0; t < F.size(); ++t) {
    felem x = F.lex_element(t);
    CHECK(F.pow(x, 0) == F.one());
    CHECK(F.pow(x, 1) == x);
    CHECK(F.pow(x, 3) == F.frobenius(x, 1));
    CHECK(F.pow(x, 9) == F.frobenius(x, 2));
    CHECK(F.frobenius(x, 3) == x);  // full Frobenius orbit closes
    felem lhs = F.frobenius(F.add(x, F.one()), 1);
    felem rhs = F.add(F.frobenius(x, 1), F.one());
    CHECK(lhs == rhs);  // Frobenius is additive
  }
  CHECK(F.scalar(0) == F.zero());
  CHECK(F.scalar(1) == F.one());
  CHECK(F.scalar(3) == F.zero());
  CHECK(F.scalar(-1) == F.neg(F.one()));
}

TEST_CASE("embedding picks the lex-smallest root and is a ring map") {
  const Field& sub = Field::get(2, 2);
  const Field& sup = Field::get(2, 4);
  const Embedding& e = Embedding::get(sub, sup);

  // roots of the small modulus inside the big field, in coefficient order
  std::vector<felem> roots;
  for (std::int64_t t = 0; t < sup.size(); ++t) {
    felem x = sup.lex_element(t);
    felem acc = 0, xp = sup.one();
    for (int c : sub.descriptor().modulus) {
      acc = sup.add(acc, sup.mul(sup.scalar(c), xp));
      xp = sup.mul(xp, x);
    }
    if (acc == 0) roots.push_back(x);
  }
  REQUIRE(roots.size() == 2);  // degree-2 modulus splits in the big field
  CHECK(e.root() == roots.front());

  for (std::int64_t a = 0; a < sub.size(); ++a)
    for (std::int64_t b = 0; b < sub.size(); ++b) {
      CHECK(e.map(sub.add(felem(a), felem(b))) ==
            sup.add(e.map(felem(a)), e.map(felem(b))));
      CHECK(e.map(sub.mul(felem(a), felem(b))) ==
            sup.mul(e.map(felem(a)), e.map(felem(b))));
    }
  CHECK(e.map(sub.one()) == sup.one());

  std::int64_t members = 0;
  for (std::int64_t t = 0; t < sup.size(); ++t) {
    felem x = sup.lex_element(t);
    if (e.in_subfield(x)) {
      ++members;
      CHECK(e.map(e.preimage(x)) == x);
    }
  }
  CHECK(members == sub.size());
  CHECK_THROWS_AS((void)e.preimage(sup.generator()), std::exception);
}

TEST_CASE("embedding of a field into itself is the identity") {
  const Field& F = Field::get(2, 3);
  const Embedding& e = Embedding::get(F, F);
  for (std::int64_t t = 0; t < F.size(); ++t) {
    felem x = F.lex_element(t);
    CHECK(e.map(x) == x);
    CHECK(e.in_subfield(x));
    CHECK(e.preimage(x) == x);
  }
  CHECK(e.unit_shift() == 1);
}

TEST_CASE("unit_shift ties the two generators together") {
  const Field& sub = Field::get(2, 2);
  const Field& sup = Field::get(2, 4);
  const Embedding& e = Embedding::get(sub, sup);
  std::int64_t cofactor = sup.units() / sub.units();
  CHECK(std::gcd(e.unit_shift(), sub.units()) == 1);
  CHECK(e.map(sub.generator()) == sup.exp(cofactor * e.unit_shift()));
}

TEST_CASE("norm and trace to a subfield") {
  const Field& sub = Field::get(2, 2);
  const Field& sup = Field::get(2, 4);
  const Embedding& e = Embedding::get(sub, sup);
  for (std::int64_t t = 0; t < sup.size(); ++t) {
    felem x = sup.lex_element(t);
    // norm is x^{1+q}, trace is x + x^q, both landing in the subfield
    felem nrm = sup.mul(x, sup.frobenius(x, 2));
    felem trc = sup.add(x, sup.frobenius(x, 2));
    CHECK(e.map(norm_to_subfield(e, x)) == nrm);
    CHECK(e.map(trace_to_subfield(e, x)) == trc);
  }
  // multiplicativity of the norm on units
  for (std::int64_t i = 0; i < sup.units(); ++i) {
    felem x = sup.exp(i), y = sup.exp(2 * i + 1);
    CHECK(norm_to_subfield(e, sup.mul(x, y)) ==
          sub.mul(norm_to_subfield(e, x), norm_to_subfield(e, y)));
  }
  // norm is surjective onto subfield units, fibers of equal size
  std::map<felem, int> fibers;
  for (std::int64_t i = 0; i < sup.units(); ++i)
    fibers[norm_to_subfield(e, sup.exp(i))]++;
  CHECK(std::int64_t(fibers.size()) == sub.units());
  for (auto& [v, c] : fibers) CHECK(c == sup.units() / sub.units());
}

TEST_CASE("character labels reduce and order correctly") {
  const Field& F4 = Field::get(2, 2);
  CHECK(make_char(F4, 0).trivial());
  CHECK(make_char(F4, 5).index == 2);
  CHECK(make_char(F4, -1).index == 2);
  CHECK(make_char(F4, 0).order() == 1);
  CHECK(make_char(F4, 1).order() == 3);
  const Field& F7 = Field::get(7, 1);
  CHECK(make_char(F7, 2).order() == 3);
  CHECK(make_char(F7, 3).order() == 2);
  CHECK(make_char(F7, 1).order() == 6);
}

TEST_CASE("construction guards") {
  CHECK_THROWS_AS((void)Field::get(6, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)Field::get(1, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)Field::get(2, 0), std::invalid_argument);
  CHECK_THROWS_AS((void)Field::get(2, 23), std::invalid_argument);
  CHECK_THROWS_AS((void)Field::get(2081, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)Embedding::get(Field::get(2, 2), Field::get(3, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)Embedding::get(Field::get(2, 2), Field::get(2, 5)),
                  std::invalid_argument);
}

TEST_CASE("integer helpers") {
  CHECK(!is_prime_int(1));
  CHECK(is_prime_int(2));
  CHECK(is_prime_int(3));
  CHECK(!is_prime_int(4));
  CHECK(is_prime_int(7919));
  CHECK(!is_prime_int(7917));
  CHECK(prime_factors(1).empty());
  CHECK(prime_factors(12) == std::vector<std::int64_t>{2, 3});
  CHECK(prime_factors(360) == std::vector<std::int64_t>{2, 3, 5});
  CHECK(prime_factors(97) == std::vector<std::int64_t>{97});
  CHECK(ipow_checked(3, 0, 100) == 1);
  CHECK(ipow_checked(2, 10, 2000) == 1024);
  CHECK(ipow_checked(2, 11, 2000) == 2001);  // cap + 1 signals overflow
  CHECK(ipow_checked(10, 19, std::int64_t(1) << 62) == (std::int64_t(1) << 62) + 1);
}

TEST_CASE("element display") {
  const Field& F = Field::get(2, 2);
  CHECK(F.show(F.zero()) == "[0,0]");
  CHECK(F.show(F.one()) == "[1,0]");
  CHECK(Field::get(5, 1).show(3) == "[3]");
}

// The disk cache: files appear under GLNQ_CACHE_DIR, corrupt files fall back
// to a fresh computation, and a valid foreign file is honored as-is. Each
// scenario uses a field no other test touches, because fields are interned
// per process the first time they are requested.
TEST_CASE("field cache round trip, corruption fallback, foreign file") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "glnq_field_cache_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  setenv("GLNQ_CACHE_DIR", dir.string().c_str(), 1);

  {  // fresh build writes a loadable file
    const Field& F = Field::get(2, 17);
    fs::path file = dir / "glnq_field_2_17.txt";
    REQUIRE(fs::exists(file));
    std::ifstream in(file);
    std::int64_t p, f, g;
    std::vector<int> mod(18);
    in >> p >> f;
    for (auto& c : mod) in >> c;
    in >> g;
    CHECK(p == 2);
    CHECK(f == 17);
    CHECK(mod == F.descriptor().modulus);
    CHECK(felem(g) == F.generator());
  }

  {  // garbage in the cache must not poison the field
    std::ofstream(dir / "glnq_field_5_5.txt") << "not a field at all";
    const Field& F = Field::get(5, 5);
    Poly want = brute_smallest_irreducible(5, 5);
    Poly got(F.descriptor().modulus.begin(), F.descriptor().modulus.end());
    CHECK(got == want);
    // and the bad file was replaced by a valid one
    std::ifstream in(dir / "glnq_field_5_5.txt");
    std::int64_t p = 0, f = 0;
    in >> p >> f;
    CHECK(p == 5);
    CHECK(f == 5);
  }

  {  // a valid file with a different (second-smallest) modulus is honored
    std::int64_t p = 3;
    int deg = 8;
    Poly second;
    int seen = 0;
    for (const Poly& m : monics(p, deg)) {
      if (brute_irreducible(m, p)) {
        ++seen;
        if (seen == 2) {
          second = m;
          break;
        }
      }
    }
    REQUIRE(!second.empty());
    std::int64_t m = 6560;
    // any primitive element for that modulus, found by brute force
    Poly gen;
    for (std::int64_t code = 1; code < 6561 && gen.empty(); ++code) {
      Poly e;
      std::int64_t w = code;
      for (int i = 0; i < deg; ++i) {
        e.push_back(int(w % p));
        w /= p;
      }
      while (!e.empty() && e.back() == 0) e.pop_back();
      if (brute_primitive(e, second, p, m)) gen = e;
    }
    REQUIRE(!gen.empty());
    std::int64_t gcode = 0;
    for (int i = int(gen.size()) - 1; i >= 0; --i) gcode = gcode * p + gen[i];
    std::ofstream out(dir / "glnq_field_3_8.txt");
    out << p << " " << deg << "\n";
    for (std::size_t i = 0; i < second.size(); ++i)
      out << (i ? " " : "") << second[i];
    out << "\n" << gcode << "\n";
    out.close();

    const Field& F = Field::get(3, 8);
    Poly got(F.descriptor().modulus.begin(), F.descriptor().modulus.end());
    CHECK(got == second);
    CHECK(F.generator() == felem(gcode));
    // the cached field still behaves like a field
    CHECK(F.mul(F.generator(), F.inv(F.generator())) == F.one());
    CHECK(F.exp(F.units()) == F.one());
  }

  unsetenv("GLNQ_CACHE_DIR");
  fs::remove_all(dir);
}

#include "glnq/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "glnq/field.hpp"

namespace glnq {

std::int64_t euler_phi(std::int64_t n) {
  std::int64_t r = n;
  for (std::int64_t d : prime_factors(n)) r -= r / d;
  return r;
}

std::vector<std::int64_t> cyclotomic_poly(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("cyclotomic index must be positive");
  // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, by exact division.
  std::vector<std::int64_t> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (std::int64_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    std::vector<std::int64_t> phi_d = cyclotomic_poly(d);
    // divide num by phi_d in place (both monic, division is exact)
    std::vector<std::int64_t> quot(num.size() - phi_d.size() + 1, 0);
    for (size_t k = quot.size(); k-- > 0;) {
      std::int64_t c = num[k + phi_d.size() - 1];
      quot[k] = c;
      if (c == 0) continue;
      for (size_t i = 0; i < phi_d.size(); ++i) num[k + i] -= c * phi_d[i];
    }
    for (std::int64_t c : num)
      if (c != 0) throw std::logic_error("cyclotomic division left remainder");
    num = std::move(quot);
  }
  return num;
}

CycloContext::CycloContext(std::int64_t p, std::int64_t ord)
    : p_(p), ord_(ord) {
  auto phi_poly = cyclotomic_poly(ord);
  phi_ = std::int64_t(phi_poly.size()) - 1;
  rows_.assign(ord, std::vector<std::int64_t>(phi_, 0));
  for (std::int64_t j = 0; j < std::min(ord, phi_); ++j) rows_[j][j] = 1;
  for (std::int64_t j = phi_; j < ord; ++j) {
    const auto& prev = rows_[j - 1];
    auto& cur = rows_[j];
    std::int64_t carry = prev[phi_ - 1];
    for (std::int64_t i = phi_ - 1; i > 0; --i)
      cur[i] = prev[i - 1] - carry * phi_poly[i];
    cur[0] = -carry * phi_poly[0];
  }
}

const CycloContext& CycloContext::get(std::int64_t p, std::int64_t ord) {
  static std::mutex mu;
  static std::map<std::pair<std::int64_t, std::int64_t>,
                  std::unique_ptr<CycloContext>>
      registry;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, ord);
  auto it = registry.find(key);
  if (it != registry.end()) return *it->second;

  if (!is_prime_int(p))
    throw std::invalid_argument("cyclotomic context needs prime p");
  if (ord < 1) throw std::invalid_argument("root order must be positive");
  if (std::gcd(p, ord) != 1)
    throw std::invalid_argument("root orders must be coprime to p");
  if (ord > (std::int64_t(1) << 14) || p * ord > (std::int64_t(1) << 21))
    throw std::invalid_argument("cyclotomic ring too large for exact work");

  auto ctx = std::unique_ptr<CycloContext>(new CycloContext(p, ord));
  const CycloContext& ref = *ctx;
  registry.emplace(key, std::move(ctx));
  return ref;
}

namespace {

void check_same(const Cyclo& a, const Cyclo& b) {
  if (!a.valid() || !b.valid())
    throw std::invalid_argument("uninitialized cyclotomic value");
  if (&a.ctx() != &b.ctx())
    throw std::invalid_argument("mixed cyclotomic contexts");
}

}  // namespace

Cyclo CycloAccum::reduce() const {
  const CycloContext& ctx = *ctx_;
  std::int64_t p = ctx.p(), ord = ctx.ord(), phi = ctx.phi();
  Cyclo out(ctx);
  for (std::int64_t i = 0; i < p - 1; ++i) {
    for (std::int64_t j = 0; j < ord; ++j) {
      std::int64_t c = raw_[i * ord + j] - raw_[(p - 1) * ord + j];
      if (c == 0) continue;
      const auto& row = ctx.power_row(j);
      for (std::int64_t k = 0; k < phi; ++k)
        out.c_[i * phi + k] += c * row[k];
    }
  }
  return out;
}

Cyclo Cyclo::from_int(const CycloContext& ctx, std::int64_t v) {
  Cyclo r(ctx);
  r.c_[0] = v;
  return r;
}

Cyclo Cyclo::root(const CycloContext& ctx, std::int64_t i, std::int64_t j) {
  std::int64_t p = ctx.p(), ord = ctx.ord();
  CycloAccum acc(ctx);
  acc.add(((i % p) + p) % p, ((j % ord) + ord) % ord, 1);
  return acc.reduce();
}

Cyclo Cyclo::operator+(const Cyclo& o) const {
  check_same(*this, o);
  Cyclo r = *this;
  for (size_t k = 0; k < c_.size(); ++k) r.c_[k] += o.c_[k];
  return r;
}

Cyclo Cyclo::operator-(const Cyclo& o) const {
  check_same(*this, o);
  Cyclo r = *this;
  for (size_t k = 0; k < c_.size(); ++k) r.c_[k] -= o.c_[k];
  return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  check_same(*this, o);
  for (size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) {
  check_same(*this, o);
  for (size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

Cyclo Cyclo::operator*(const Cyclo& o) const {
  check_same(*this, o);
  const CycloContext& ctx = *ctx_;
  std::int64_t p = ctx.p(), ord = ctx.ord(), phi = ctx.phi();
  CycloAccum acc(ctx);
  for (std::int64_t i1 = 0; i1 < p - 1; ++i1)
    for (std::int64_t j1 = 0; j1 < phi; ++j1) {
      std::int64_t a = c_[i1 * phi + j1];
      if (a == 0) continue;
      for (std::int64_t i2 = 0; i2 < p - 1; ++i2)
        for (std::int64_t j2 = 0; j2 < phi; ++j2) {
          std::int64_t b = o.c_[i2 * phi + j2];
          if (b == 0) continue;
          acc.add((i1 + i2) % p, (j1 + j2) % ord, a * b);
        }
    }
  return acc.reduce();
}

bool Cyclo::operator==(const Cyclo& o) const {
  check_same(*this, o);
  return c_ == o.c_;
}

Cyclo Cyclo::conj() const {
  const CycloContext& ctx = *ctx_;
  std::int64_t p = ctx.p(), ord = ctx.ord(), phi = ctx.phi();
  CycloAccum acc(ctx);
  for (std::int64_t i = 0; i < p - 1; ++i)
    for (std::int64_t j = 0; j < phi; ++j) {
      std::int64_t c = c_[i * phi + j];
      if (c == 0) continue;
      acc.add((p - i) % p, (ord - j) % ord, c);
    }
  return acc.reduce();
}

Cyclo Cyclo::scaled(std::int64_t k) const {
  Cyclo r = *this;
  for (auto& c : r.c_) c *= k;
  return r;
}

Cyclo Cyclo::div_exact(std::int64_t d) const {
  if (d == 0) throw std::invalid_argument("division by zero");
  Cyclo r = *this;
  for (auto& c : r.c_) {
    if (c % d != 0)
      throw std::logic_error("inexact division in cyclotomic ring: " + show() +
                             " by " + std::to_string(d));
    c /= d;
  }
  return r;
}

bool Cyclo::is_zero() const {
  for (auto c : c_)
    if (c != 0) return false;
  return true;
}

bool Cyclo::is_int() const {
  for (size_t k = 1; k < c_.size(); ++k)
    if (c_[k] != 0) return false;
  return true;
}

std::int64_t Cyclo::as_int() const {
  if (!is_int())
    throw std::logic_error("cyclotomic value is not a rational integer: " +
                           show());
  return c_[0];
}

std::complex<double> Cyclo::to_complex() const {
  const CycloContext& ctx = *ctx_;
  std::int64_t p = ctx.p(), ord = ctx.ord(), phi = ctx.phi();
  const double tau = 6.283185307179586476925287;
  std::complex<double> z = 0;
  for (std::int64_t i = 0; i < p - 1; ++i)
    for (std::int64_t j = 0; j < phi; ++j) {
      std::int64_t c = c_[i * phi + j];
      if (c == 0) continue;
      double angle = tau * (double(i) / double(p) + double(j) / double(ord));
      z += double(c) * std::complex<double>(std::cos(angle), std::sin(angle));
    }
  return z;
}

std::string Cyclo::show() const {
  if (!valid()) return "<none>";
  std::ostringstream os;
  os << "cyc(p=" << ctx_->p() << ",ord=" << ctx_->ord() << ")[";
  for (size_t k = 0; k < c_.size(); ++k) os << (k ? "," : "") << c_[k];
  os << "]";
  return os.str();
}

Cyclo quadratic_gauss_sum(const CycloContext& ctx) {
  std::int64_t p = ctx.p();
  if (p < 3) throw std::invalid_argument("quadratic Gauss sum needs odd p");
  CycloAccum acc(ctx);
  for (std::int64_t t = 1; t < p; ++t) {
    // Legendre symbol by Euler's criterion
    std::int64_t s = 1, b = t, e = (p - 1) / 2;
    while (e > 0) {
      if (e & 1) s = (s * b) % p;
      b = (b * b) % p;
      e >>= 1;
    }
    acc.add(t, 0, s == 1 ? 1 : -1);
  }
  return acc.reduce();
}

}  // namespace glnq

#pragma once
// Exact arithmetic in Z[zeta_p] (x) Z[zeta_ord] for gcd(p, ord) = 1.
//
// Values are integer matrices of shape (p-1) x phi(ord): rows are powers of
// zeta_p reduced against 1 + x + ... + x^{p-1}, columns are powers of
// zeta_ord reduced against the ord-th cyclotomic polynomial. Since p is the
// field characteristic and ord divides q - 1 for q a power of p, the two
// root orders are coprime and this tensor basis is an integral basis of
// Q(zeta_{p*ord}); equality of canonical coefficient matrices is equality of
// algebraic numbers. All character sums in this project live here.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace glnq {

class CycloContext {
 public:
  // Interned per (p, ord). Throws for non-coprime pairs or absurdly large
  // rings (the guard keeps desk-scale use honest and rejects runaway CLI
  // parameters with a clear message).
  static const CycloContext& get(std::int64_t p, std::int64_t ord);

  std::int64_t p() const { return p_; }
  std::int64_t ord() const { return ord_; }
  std::int64_t phi() const { return phi_; }
  std::int64_t dim() const { return (p_ - 1) * phi_; }

  // x^j mod Phi_ord as a length-phi row, for j in [0, ord).
  const std::vector<std::int64_t>& power_row(std::int64_t j) const {
    return rows_[j];
  }

 private:
  CycloContext(std::int64_t p, std::int64_t ord);
  std::int64_t p_, ord_, phi_;
  std::vector<std::vector<std::int64_t>> rows_;
};

class Cyclo {
 public:
  Cyclo() : ctx_(nullptr) {}
  explicit Cyclo(const CycloContext& ctx)
      : ctx_(&ctx), c_(ctx.dim(), 0) {}

  static Cyclo from_int(const CycloContext& ctx, std::int64_t v);
  // zeta_p^i * zeta_ord^j, exponents arbitrary (reduced mod p / mod ord).
  static Cyclo root(const CycloContext& ctx, std::int64_t i, std::int64_t j);

  const CycloContext& ctx() const { return *ctx_; }
  bool valid() const { return ctx_ != nullptr; }

  Cyclo operator+(const Cyclo& o) const;
  Cyclo operator-(const Cyclo& o) const;
  Cyclo operator*(const Cyclo& o) const;
  Cyclo operator-() const;
  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  bool operator==(const Cyclo& o) const;
  bool operator!=(const Cyclo& o) const { return !(*this == o); }

  Cyclo conj() const;  // complex conjugation, zeta -> zeta^{-1} on both parts
  Cyclo scaled(std::int64_t k) const;

  // Exact division by a nonzero integer. A remainder means an internal
  // invariant was violated, so it throws std::logic_error.
  Cyclo div_exact(std::int64_t d) const;

  bool is_zero() const;
  bool is_int() const;
  std::int64_t as_int() const;  // requires is_int()

  std::complex<double> to_complex() const;  // diagnostic only
  std::int64_t coeff(std::int64_t i, std::int64_t j) const {
    return c_[i * ctx_->phi() + j];
  }
  const std::vector<std::int64_t>& raw_coeffs() const { return c_; }

  std::string show() const;

 private:
  const CycloContext* ctx_;
  std::vector<std::int64_t> c_;  // canonical, (p-1) x phi row-major
  friend class CycloAccum;
};

// Accumulator over the raw p x ord exponent grid; the hot loops of the trace
// engines push integer counts here and reduce to canonical form once.
class CycloAccum {
 public:
  explicit CycloAccum(const CycloContext& ctx)
      : ctx_(&ctx), raw_(ctx.p() * ctx.ord(), 0) {}

  void add(std::int64_t i, std::int64_t j, std::int64_t count) {
    raw_[i * ctx_->ord() + j] += count;
  }
  Cyclo reduce() const;

 private:
  const CycloContext* ctx_;
  std::vector<std::int64_t> raw_;
};

// The quadratic Gauss sum sum_{t in F_p^*} chi2(t) zeta_p^t, whose square is
// (-1)^{(p-1)/2} p. Requires odd prime p equal to ctx.p().
Cyclo quadratic_gauss_sum(const CycloContext& ctx);

std::int64_t euler_phi(std::int64_t n);
std::vector<std::int64_t> cyclotomic_poly(std::int64_t n);  // low-degree-first

}  // namespace glnq

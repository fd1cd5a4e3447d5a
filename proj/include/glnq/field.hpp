#pragma once
// Finite fields F_{p^f} with fully materialized discrete-log tables.
//
// Every field is built deterministically so that repeated runs (and runs on
// different machines) agree bit for bit:
//   * the modulus is the lexicographically smallest monic irreducible of
//     degree f over F_p, comparing coefficient lists low-degree-first;
//   * the multiplicative generator is the lexicographically smallest
//     primitive element under the same coefficient order;
//   * subfield embeddings send the representation root of the small field to
//     the lexicographically smallest root of its modulus in the big field.
//
// Elements are stored as base-p packed integer codes, digit i of the code
// being the coefficient of X^i in the power basis of the modulus root.
// Arithmetic after construction is table driven: exp/log over the cyclic
// unit group, a trace-to-F_p table over codes and one over dlog exponents.
// Fields are interned and immutable; the hard cardinality cap is 2^22.

#include <cstdint>
#include <string>
#include <vector>

namespace glnq {

using felem = std::uint32_t;  // packed element code, < 2^22

inline constexpr std::int64_t kFieldCardinalityCap = std::int64_t(1) << 22;

struct FieldDescriptor {
  std::int64_t p = 0;
  std::int64_t f = 0;
  std::int64_t cardinality = 0;
  std::vector<int> modulus;  // length f+1, low-degree-first, monic
};

class Field {
 public:
  // Interned accessor. Throws std::invalid_argument for non-prime p, f < 1
  // or p^f beyond the cap. Honors GLNQ_CACHE_DIR (see field.cpp).
  static const Field& get(std::int64_t p, std::int64_t f);

  std::int64_t p() const { return p_; }
  std::int64_t f() const { return f_; }
  std::int64_t size() const { return n_; }
  std::int64_t units() const { return m_; }  // p^f - 1
  const FieldDescriptor& descriptor() const { return desc_; }

  felem zero() const { return 0; }
  felem one() const { return 1; }
  felem generator() const { return gen_; }

  felem add(felem a, felem b) const;
  felem neg(felem a) const;
  felem sub(felem a, felem b) const { return add(a, neg(b)); }
  felem mul(felem a, felem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[mod_units(log_[a] + log_[b])];
  }
  felem inv(felem a) const;
  felem div(felem a, felem b) const { return mul(a, inv(b)); }

  // x^e for e >= 0 (reduced mod p^f-1 for nonzero x). 0^0 = 1.
  felem pow(felem a, std::int64_t e) const;

  // e-fold Frobenius x -> x^{p^e}.
  felem frobenius(felem a, std::int64_t e) const;

  // The element c * 1 for an integer c (reduced mod p).
  felem scalar(std::int64_t c) const;

  std::int64_t dlog(felem a) const;       // a != 0
  felem exp(std::int64_t e) const;        // generator^e, any e >= 0 or reduced
  std::int64_t mod_units(std::int64_t e) const {
    e %= m_;
    return e < 0 ? e + m_ : e;
  }

  int trace_to_prime(felem a) const { return trace_code_[a]; }
  int trace_of_exp(std::int64_t e) const { return trace_exp_[mod_units(e)]; }
  const std::vector<std::uint8_t>& trace_code_table() const { return trace_code_; }
  const std::vector<std::uint8_t>& trace_exp_table() const { return trace_exp_; }
  const std::vector<felem>& exp_table() const { return exp_; }

  std::vector<int> coeffs(felem a) const;
  felem from_coeffs(const std::vector<int>& c) const;

  // Elements in lexicographic order of their coefficient lists,
  // low-degree-first. Index t in [0, p^f) -> element code.
  felem lex_element(std::int64_t t) const;

  std::string show(felem a) const;  // coefficient list, for messages

 private:
  Field(std::int64_t p, std::int64_t f, std::vector<int> modulus, felem gen);
  Field(const Field&) = delete;

  void build_tables();

  std::int64_t p_, f_, n_, m_;
  FieldDescriptor desc_;
  felem gen_;
  std::vector<felem> exp_;             // size m_, exp_[e] = g^e
  std::vector<std::int64_t> log_;      // size n_, log_[0] = -1
  std::vector<std::uint8_t> trace_code_;
  std::vector<std::uint8_t> trace_exp_;
  std::vector<felem> pow_p_;           // p^i for digit work
  friend struct FieldBuilder;
};

// Ring embedding F_{p^a} -> F_{p^b} for a | b, both fields interned.
class Embedding {
 public:
  static const Embedding& get(const Field& sub, const Field& sup);

  const Field& sub() const { return *sub_; }
  const Field& sup() const { return *sup_; }
  felem root() const { return root_; }  // image of the sub's modulus root

  felem map(felem a) const { return fwd_[a]; }
  // Preimage for elements lying in the embedded subfield; throws otherwise.
  felem preimage(felem b) const;
  bool in_subfield(felem b) const;

  // dlog compatibility constant: the subfield generator g0 maps to
  // g^{ ((|K|-1)/(q-1)) * unit_shift } with gcd(unit_shift, q-1) = 1.
  std::int64_t unit_shift() const { return unit_shift_; }

 private:
  Embedding(const Field& sub, const Field& sup);
  const Field* sub_;
  const Field* sup_;
  felem root_;
  std::vector<felem> fwd_;
  std::vector<std::int64_t> back_;  // sup code -> sub code or -1
  std::int64_t unit_shift_;
};

// Norm and trace to a subfield along an embedding, returned in the subfield.
felem norm_to_subfield(const Embedding& e, felem x);
felem trace_to_subfield(const Embedding& e, felem x);

// A multiplicative character label of F_q^*: chi_k(g0) = zeta_{q-1}^k for
// the field's canonical generator g0. k is stored reduced mod q-1.
struct MultChar {
  std::int64_t modulus_order = 1;  // q - 1
  std::int64_t index = 0;          // k in [0, q-1)
  bool trivial() const { return index == 0; }
  std::int64_t order() const;      // order of the character
};

MultChar make_char(const Field& base, std::int64_t index);

// Small helpers shared with tests and the CLI.
bool is_prime_int(std::int64_t v);
std::vector<std::int64_t> prime_factors(std::int64_t v);  // distinct, sorted
std::int64_t ipow_checked(std::int64_t b, std::int64_t e, std::int64_t cap);

}  // namespace glnq

#pragma once
// Trace functions of the rank-A local systems attached to a pair (n, q) and a
// multiplicative character of F_q, computed by independent engines:
//
//   * direct: the normalized double character sum over (x, y) in K x K^*,
//     divided exactly by #K;
//   * rootsum: a character sum over the roots in K of the degree-A polynomial
//     (-1/u) x^A + x^{A-B} - 1;
//   * pushforward: fibers of f(t) = t^B (1-t)^{A-B}, with the conjugate
//     character, evaluating the same system at 1/u;
//   * kernel: for the summed-over-all-characters system, the F_p-kernel
//     dimension of T -> T^{q^{n-1}} - T^{q^n} - uT.
//
// The engines share nothing but the field tables, so exact agreement across
// them is a strong correctness check; the verify module runs that comparison
// wholesale. Batch variants produce every (u, character) value of a field in
// one pass and are cross-checked against the per-call definitions.

#include <cstdint>
#include <vector>

#include "glnq/cyclotomic.hpp"
#include "glnq/field.hpp"

namespace glnq {

// |K|^2 must stay under this for the direct double sum.
inline constexpr std::int64_t kDirectPairCap = std::int64_t(1) << 24;

struct LocalSystemParams {
  std::int64_t n = 0;
  const Field* base = nullptr;  // F_q
  std::int64_t A = 0;           // (q^n - 1)/(q - 1)
  std::int64_t B = 0;           // (q^{n-1} - 1)/(q - 1)
  MultChar chi;
};

// Builds A and B and asserts A - B = q^{n-1} and A = B = 1 mod q.
LocalSystemParams hyp_params(std::int64_t n, const Field& base, MultChar chi);

// The coefficient ring Z[zeta_p] (x) Z[zeta_{q-1}] all values live in.
const CycloContext& trace_ring(const Field& base);

// Per-extension evaluation data: how the base field's characters extend to K.
// chi_K(x) = zeta_{q-1}^{k * ((omega * dlog_K x) mod (q-1))} via the norm.
struct ExtensionView {
  const Field* base = nullptr;
  const Field* K = nullptr;
  const Embedding* emb = nullptr;
  const CycloContext* ring = nullptr;
  std::int64_t omega = 0;  // inverse of the embedding's unit_shift mod q-1
  std::int64_t chi_grade(std::int64_t dlog_x) const {
    std::int64_t m = base->units();
    return ((dlog_x % m) * omega) % m;
  }
};
ExtensionView extension_view(const Field& base, const Field& K);

// psi_K(x) and chi_K(x) as exact cyclotomic values (chi_K(0) is 0 for a
// nontrivial label; the trivial label extends by 1 everywhere, 0 included).
Cyclo psi_value(const ExtensionView& v, felem x);
Cyclo chi_value(const ExtensionView& v, const MultChar& chi, felem x);

Cyclo trace_direct(const LocalSystemParams& P, const Field& K, felem u);
Cyclo trace_rootsum(const LocalSystemParams& P, const Field& K, felem u);
Cyclo pushforward_f_trace(const LocalSystemParams& P, const Field& K, felem u);

// F_p-kernel dimension of T -> T^{q^{n-1}} - T^{q^n} - uT on K (u != 0).
std::int64_t kernel_dim(std::int64_t n, const Field& base, const Field& K,
                        felem u);
// Trace of the all-characters sum at u: p^d - 2 with d = kernel_dim.
std::int64_t trace_kernel_sum(std::int64_t n, const Field& base,
                              const Field& K, felem u);
// #{T in K : T^{q^{n-1}-1} - T^{q^n-1} = u}, by scan; u != 0.
std::int64_t count_F_preimages(std::int64_t n, const Field& base,
                               const Field& K, felem u);

// Batch tables indexed [dlog u][character index k]. Both cover every
// u in K^* and every k in [0, q-1) in one pass over the field.
// direct: the stride-correlation reorganization of the double sum.
// rootsum / pushforward: fiber bucketing of the defining scans.
std::vector<std::vector<Cyclo>> trace_direct_table(std::int64_t n,
                                                   const Field& base,
                                                   const Field& K);
std::vector<std::vector<Cyclo>> trace_rootsum_table(std::int64_t n,
                                                    const Field& base,
                                                    const Field& K);
std::vector<std::vector<Cyclo>> pushforward_table(std::int64_t n,
                                                  const Field& base,
                                                  const Field& K);

enum class KloostermanForm {
  full_set,     // sum over x with x^N = t of psi_K(Nx) chi_K(x)
  drop_trivial  // -sum over all x in K of psi_K(Nx - x^N/t), trivial chi only
};

Cyclo kloosterman_trace(const Field& base, const Field& K, std::int64_t N,
                        KloostermanForm form, const MultChar& chi, felem t);

}  // namespace glnq

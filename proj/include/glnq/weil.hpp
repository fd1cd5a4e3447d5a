#pragma once
// Weil character theory of GL_n(q) and SL_2(q) at desk scale, by full matrix
// enumeration: the total character q^{dim ker(g-1)}, its components under the
// scalar group, exact inner products, trace-value censuses, brute-force
// uniqueness searches over coefficient vectors, and the determinant character
// product computed in residue arithmetic.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "glnq/cyclotomic.hpp"
#include "glnq/field.hpp"

namespace glnq {

inline constexpr std::int64_t kGroupOrderCap = std::int64_t(1) << 21;

// Square matrix over a field, row-major, dimension carried by the caller.
using Mat = std::vector<felem>;

Mat mat_identity(const Field& F, std::int64_t n);
Mat mat_scalar(const Field& F, std::int64_t n, felem b);
Mat transvection(const Field& F, std::int64_t n);  // identity plus E_12
Mat mat_mul(const Field& F, std::int64_t n, const Mat& a, const Mat& b);
felem mat_det(const Field& F, std::int64_t n, Mat m);
// dim over F_q of ker(a*g - 1) for a unit scalar a.
std::int64_t dim_ker_scaled(const Field& F, std::int64_t n, const Mat& g,
                            felem a);

std::int64_t gl_order(std::int64_t n, std::int64_t q);

// tau_n(g) = q^{dim ker(g-1)}.
std::int64_t total_weil(const Field& F, std::int64_t n, const Mat& g);

// Component of the scalar-eigenspace decomposition:
// (1/(q-1)) sum_a chi(a) (q^{dim ker(ag-1)} - 1), division exact.
Cyclo weil_component(const Field& F, std::int64_t n, const Mat& g,
                     const MultChar& chi);

// The full group with every character value precomputed. comp[k][i] is the
// component of the index-k character at element i; total[i] is tau_n.
struct WeilTable {
  std::int64_t n = 0;
  const Field* base = nullptr;
  const CycloContext* ring = nullptr;  // Z[zeta_p] (x) Z[zeta_{q-1}]
  std::vector<Mat> elements;
  std::vector<std::int64_t> total;
  std::vector<std::vector<Cyclo>> comp;
  std::vector<char> in_sl;  // det = 1
  std::int64_t sl_count = 0;
};
WeilTable build_weil_table(std::int64_t n, const Field& base);

// (1/N) sum_i f[i] conj(h[i]), exact division asserted. N defaults to the
// vector length (full-group inner product) but a subgroup order may be given
// with a mask selecting its elements.
Cyclo inner_product(const CycloContext& ring, const std::vector<Cyclo>& f,
                    const std::vector<Cyclo>& h);
Cyclo inner_product_masked(const CycloContext& ring,
                           const std::vector<Cyclo>& f,
                           const std::vector<Cyclo>& h,
                           const std::vector<char>& mask,
                           std::int64_t subgroup_order);

struct CensusRecord {
  std::int64_t q = 0;
  std::int64_t order = 0;
  std::int64_t count_q2 = 0;  // elements with tau = q^2
  std::int64_t count_q = 0;   // tau = q
  std::int64_t count_1 = 0;   // tau = 1
};
// n = 2 trace-value census over GL_2(q); requires q >= 4.
CensusRecord trace_value_census(const Field& base);

// The irreducible Weil characters of SL_2(q) as value vectors over the SL
// element list (the in_sl subset of a WeilTable, in enumeration order):
// Steinberg, the chi_i for 1 <= i <= floor((q-2)/2), and for odd q the two
// halves xi[0], xi[1] of the quadratic component, split exactly via a
// unipotent class sum and the quadratic Gauss sum.
struct SL2WeilCharacters {
  std::vector<std::int64_t> sl_index;  // indices into table.elements
  std::vector<Cyclo> steinberg;
  std::vector<std::vector<Cyclo>> chi_i;
  std::vector<std::vector<Cyclo>> xi;
};
SL2WeilCharacters sl2_weil_characters(const WeilTable& table);

struct UniquenessReport {
  std::int64_t n = 0, q = 0;
  // Human-readable coordinate names, then every coefficient vector passing
  // the degree identity, and the subset surviving the value condition.
  std::vector<std::string> coords;
  std::vector<std::vector<std::int64_t>> degree_solutions;
  std::vector<std::vector<std::int64_t>> value_solutions;
  std::vector<std::int64_t> expected;
  bool unique_expected = false;
};
UniquenessReport verify_weil_uniqueness(std::int64_t n, const Field& base);

struct DetCharEntry {
  std::int64_t chi_index = 0;    // character label of F_q^*
  std::int64_t chi_residue = 0;  // its residue in Z/(q^n - 1)
  std::int64_t set_size = 0;     // #char(A, chi), must equal A
  std::int64_t sum_residue = 0;  // sum of the residues of char(A, chi)
  std::int64_t expected = 0;     // chi_residue (+ half the modulus if A even)
  bool pass = false;
};
struct DetCharReport {
  std::int64_t n = 0, q = 0, A = 0;
  bool a_even = false;
  std::vector<DetCharEntry> entries;
  bool pass = false;
};
// Residue arithmetic mod q^n - 1; no group enumeration involved.
DetCharReport char_product_identity(std::int64_t n, std::int64_t q);

}  // namespace glnq

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "ncr/matspace.hpp"
#include "ncr/quiver.hpp"

// Brute-force references over small prime fields. Everything here is
// exhaustive enumeration with a hard work ceiling; nothing samples.
namespace ncr::oracle {

inline constexpr std::uint64_t kWorkCeiling = std::uint64_t{1} << 20;

// Number of subspaces of F_q^n (sum of Gaussian binomials); saturates at
// UINT64_MAX.
std::uint64_t count_subspaces(std::uint64_t q, std::size_t n);

// Calls visit on every subspace of F_q^n, walking RREF shapes. Throws
// OracleInfeasible if there are more than kWorkCeiling of them.
void for_each_subspace(const PrimeField& field, std::size_t n,
                       const std::function<void(const Subspace<PrimeField>&)>& visit);

struct BruteNcrk {
  std::size_t rank;
  Subspace<PrimeField> minimal_u;            // intersection of all maximizers
  std::int64_t max_c;
  std::vector<Subspace<PrimeField>> maximizers;
};

BruteNcrk brute_ncrk(const MatrixSpace<PrimeField>& s);

struct BruteDiscrepancy {
  std::int64_t c;
  std::vector<Subrepresentation<PrimeField>> optima;
  std::size_t subrep_count;
};

// Work estimate for brute_discrepancy: product of per-vertex subspace counts.
std::uint64_t subrep_search_size(const Representation<PrimeField>& w);

// Enumerates every subrepresentation of w.
void for_each_subrep(const Representation<PrimeField>& w,
                     const std::function<void(const Subrepresentation<PrimeField>&)>& visit);

BruteDiscrepancy brute_discrepancy(const Representation<PrimeField>& w, const Weight& sigma);

// max over subrepresentations W' of -<alpha, dim W - dim W'>.
std::int64_t brute_ncext_target(const DimensionVector& alpha, const Representation<PrimeField>& w);

// max over subrepresentations V' of -<dim V', beta>.
std::int64_t brute_ncext_source(const Representation<PrimeField>& v, const DimensionVector& beta);

// Exact maximal rank in blow_up(s, d). Coefficient tuples are enumerated in
// order of increasing entry height and the search stops as soon as the rank
// reaches the certified upper bound d * brute_ncrk(s).rank, so the answer is
// exact whenever the call returns. Throws OracleInfeasible if neither the
// bound is reached nor the enumeration completes within kWorkCeiling tuples.
std::size_t brute_rank_blowup(const MatrixSpace<PrimeField>& s, std::size_t d);

}  // namespace ncr::oracle

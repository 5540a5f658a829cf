#include "ncr/oracle.hpp"

#include <algorithm>
#include <limits>

namespace ncr::oracle {

namespace {

using u128 = unsigned __int128;
constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturate(u128 v) { return v > kSaturated ? kSaturated : static_cast<std::uint64_t>(v); }

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) { return saturate(static_cast<u128>(a) * b); }

std::uint64_t sat_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r = sat_mul(r, base);
  return r;
}

// Visits every k-subset of {0..n-1} in lexicographic order.
template <class Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    visit(idx);
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::uint64_t count_subspaces(std::uint64_t q, std::size_t n) {
  // Gaussian binomials via [m, k] = [m-1, k-1] + q^k [m-1, k].
  std::vector<std::uint64_t> row{1};
  for (std::size_t m = 1; m <= n; ++m) {
    std::vector<std::uint64_t> next(m + 1, 0);
    for (std::size_t k = 0; k <= m; ++k) {
      u128 v = 0;
      if (k >= 1) v += row[k - 1];
      if (k < m) v += static_cast<u128>(sat_pow(q, k)) * row[k];
      next[k] = saturate(v);
    }
    row = std::move(next);
  }
  u128 total = 0;
  for (auto v : row) total += v;
  return saturate(total);
}

void for_each_subspace(const PrimeField& field, std::size_t n,
                       const std::function<void(const Subspace<PrimeField>&)>& visit) {
  const std::uint64_t q = field.modulus();
  const auto count = count_subspaces(q, n);
  if (count > kWorkCeiling) {
    throw OracleInfeasible("F_" + std::to_string(q) + "^" + std::to_string(n) + " has " + std::to_string(count) +
                           " subspaces, above the 2^20 ceiling");
  }
  for (std::size_t k = 0; k <= n; ++k) {
    for_each_combination(n, k, [&](const std::vector<std::size_t>& pivots) {
      // Free entries: row i, column j > pivots[i], j not a pivot.
      std::vector<bool> is_pivot(n, false);
      for (auto p : pivots) is_pivot[p] = true;
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = pivots[i] + 1; j < n; ++j) {
          if (!is_pivot[j]) free.emplace_back(i, j);
        }
      }
      Matrix<PrimeField> m(field, k, n);
      for (std::size_t i = 0; i < k; ++i) m(i, pivots[i]) = 1;
      std::vector<std::uint64_t> digits(free.size(), 0);
      while (true) {
        for (std::size_t f = 0; f < free.size(); ++f) m(free[f].first, free[f].second) = digits[f];
        visit(Subspace<PrimeField>::row_span(m));
        std::size_t f = 0;
        while (f < digits.size() && ++digits[f] == q) digits[f++] = 0;
        if (f == digits.size()) break;
      }
    });
  }
}

BruteNcrk brute_ncrk(const MatrixSpace<PrimeField>& s) {
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  std::vector<Subspace<PrimeField>> maximizers;
  for_each_subspace(s.field(), s.cols(), [&](const Subspace<PrimeField>& u) {
    const auto c = static_cast<std::int64_t>(u.dim()) - static_cast<std::int64_t>(space_image(s, u).dim());
    if (c > best) {
      best = c;
      maximizers.clear();
    }
    if (c == best) maximizers.push_back(u);
  });
  Subspace<PrimeField> minimal = maximizers.front();
  for (const auto& u : maximizers) minimal = subspace_intersect(minimal, u);
  return BruteNcrk{static_cast<std::size_t>(static_cast<std::int64_t>(s.cols()) - best), std::move(minimal), best,
                   std::move(maximizers)};
}

std::uint64_t subrep_search_size(const Representation<PrimeField>& w) {
  std::uint64_t total = 1;
  for (auto n : w.dims().values) total = sat_mul(total, count_subspaces(w.field().modulus(), n));
  return total;
}

void for_each_subrep(const Representation<PrimeField>& w,
                     const std::function<void(const Subrepresentation<PrimeField>&)>& visit) {
  const auto size = subrep_search_size(w);
  if (size > kWorkCeiling) {
    throw OracleInfeasible("subrepresentation search space has " + std::to_string(size) +
                           " vertex-subspace tuples, above the 2^20 ceiling");
  }
  const Quiver& q = w.quiver();
  const std::size_t nv = q.vertex_count();
  std::vector<std::vector<Subspace<PrimeField>>> choices(nv);
  for (std::size_t x = 0; x < nv; ++x) {
    for_each_subspace(w.field(), w.dims()[x], [&](const Subspace<PrimeField>& u) { choices[x].push_back(u); });
  }
  // Arrows are checked as soon as both endpoints are assigned.
  std::vector<std::vector<std::size_t>> arrows_at(nv);
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    arrows_at[std::max(q.arrow(a).tail, q.arrow(a).head)].push_back(a);
  }
  Subrepresentation<PrimeField> current;
  current.spaces.assign(nv, Subspace<PrimeField>::zero(w.field(), 0));
  std::function<void(std::size_t)> assign = [&](std::size_t x) {
    if (x == nv) {
      visit(current);
      return;
    }
    for (const auto& u : choices[x]) {
      current.spaces[x] = u;
      bool ok = true;
      for (auto a : arrows_at[x]) {
        const auto& arrow = q.arrow(a);
        if (!current.spaces[arrow.head].contains(apply_image(w.map(a), current.spaces[arrow.tail]))) {
          ok = false;
          break;
        }
      }
      if (ok) assign(x + 1);
    }
  };
  assign(0);
}

BruteDiscrepancy brute_discrepancy(const Representation<PrimeField>& w, const Weight& sigma) {
  if (sigma.size() != w.quiver().vertex_count()) throw DimensionError("brute_discrepancy: weight length mismatch");
  BruteDiscrepancy out{std::numeric_limits<std::int64_t>::min(), {}, 0};
  for_each_subrep(w, [&](const Subrepresentation<PrimeField>& sub) {
    ++out.subrep_count;
    const auto c = sigma_value(sigma, sub.dims());
    if (c > out.c) {
      out.c = c;
      out.optima.clear();
    }
    if (c == out.c) out.optima.push_back(sub);
  });
  return out;
}

std::int64_t brute_ncext_target(const DimensionVector& alpha, const Representation<PrimeField>& w) {
  if (alpha.size() != w.quiver().vertex_count()) throw DimensionError("brute_ncext_target: alpha length mismatch");
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for_each_subrep(w, [&](const Subrepresentation<PrimeField>& sub) {
    DimensionVector factor = w.dims();
    for (std::size_t x = 0; x < factor.size(); ++x) factor.values[x] -= sub.spaces[x].dim();
    best = std::max(best, -euler_form(w.quiver(), alpha, factor));
  });
  return best;
}

std::int64_t brute_ncext_source(const Representation<PrimeField>& v, const DimensionVector& beta) {
  if (beta.size() != v.quiver().vertex_count()) throw DimensionError("brute_ncext_source: beta length mismatch");
  std::int64_t best = std::numeric_limits<std::int64_t>::min();
  for_each_subrep(v, [&](const Subrepresentation<PrimeField>& sub) {
    best = std::max(best, -euler_form(v.quiver(), sub.dims(), beta));
  });
  return best;
}

std::size_t brute_rank_blowup(const MatrixSpace<PrimeField>& s, std::size_t d) {
  const auto big = blow_up(s, d);
  const std::size_t bound = std::min(d * brute_ncrk(s).rank, std::min(big.rows(), big.cols()));
  const std::size_t dd = big.blowup_factor();
  const std::size_t m = s.generators().size();
  const std::size_t coeff_count = dd * dd * m;
  const std::uint64_t q = s.field().modulus();

  std::size_t best = 0;
  std::uint64_t examined = 0;
  std::vector<Matrix<PrimeField>> coeffs(m, Matrix<PrimeField>(s.field(), dd, dd));
  // Height h pass: tuples in {0..h}^K whose largest entry is exactly h.
  for (std::uint64_t h = 0; h < q; ++h) {
    std::vector<std::uint64_t> digits(coeff_count, 0);
    while (true) {
      const bool at_height = h == 0 || std::find(digits.begin(), digits.end(), h) != digits.end();
      if (at_height) {
        if (++examined > kWorkCeiling) {
          throw OracleInfeasible("blow-up rank search exceeded 2^20 coefficient tuples without reaching the bound");
        }
        for (std::size_t t = 0; t < coeff_count; ++t) {
          coeffs[t / (dd * dd)](t % (dd * dd) / dd, t % dd) = digits[t];
        }
        best = std::max(best, rank(big.element(coeffs)));
        if (best >= bound) return best;
      }
      std::size_t t = 0;
      while (t < coeff_count && digits[t] == h) digits[t++] = 0;
      if (t == coeff_count) break;
      ++digits[t];
    }
  }
  return best;
}

}  // namespace ncr::oracle

#include <doctest.h>

#include "support.hpp"

using namespace testing;
using ncr::RationalField;

namespace {

const PrimeField F101(101);

FM t111(const PrimeField& f) {
  // x1 = x2 = x3 = 1 in T.
  auto g = skew_generators(f);
  return g[0] + g[1] + g[2];
}

}  // namespace

TEST_CASE("field arithmetic") {
  PrimeField f(7);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.inv(3) == 5);
  CHECK(f.from_int(-1) == 6);
  CHECK(f.from_int(15) == 1);
  CHECK_THROWS_AS(PrimeField(9), ncr::ValidationError);
  CHECK_THROWS_AS(PrimeField(1), ncr::ValidationError);
  CHECK(ncr::is_prime(1000003));
  CHECK_FALSE(ncr::is_prime(1000001));

  RationalField q;
  CHECK(q.parse("6/4") == mpq_class(3, 2));
  CHECK(q.parse("-7") == mpq_class(-7));
  CHECK_THROWS_AS(q.parse("1/0"), ncr::ValidationError);
  CHECK_THROWS_AS(q.parse("x"), ncr::ValidationError);
}

TEST_CASE("rref") {
  auto r = ncr::rref(FM::identity(F101, 3));
  CHECK(r.reduced == FM::identity(F101, 3));
  CHECK(r.rank == 3);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1, 2});

  auto z = ncr::rref(FM(F101, 2, 3));
  CHECK(z.rank == 0);
  CHECK(z.pivots.empty());
  CHECK(z.reduced.is_zero());

  CHECK(ncr::rank(t111(F101)) == 2);

  FM m = FM::from_ints(F101, 2, 3, {2, 4, 6, 1, 3, 5});
  auto once = ncr::rref(m).reduced;
  CHECK(ncr::rref(once).reduced == once);
  CHECK(once == FM::from_ints(F101, 2, 3, {1, 0, -1, 0, 1, 2}));
}

TEST_CASE("kernel") {
  CHECK(ncr::kernel(FM::identity(F101, 4)).is_zero());
  CHECK(ncr::kernel(FM(F101, 2, 2)).is_full());
  auto k = ncr::kernel(t111(F101));
  CHECK(k.dim() == 1);
  CHECK(k == span(F101, 3, {{1, -1, 1}}));
}

TEST_CASE("pseudo-inverse") {
  FM inv_me = FM::from_ints(F101, 2, 2, {1, 2, 3, 4});
  auto b = ncr::pseudo_inverse(inv_me);
  CHECK(b * inv_me == FM::identity(F101, 2));

  CHECK(ncr::pseudo_inverse(FM(F101, 2, 3)).is_zero());
  CHECK(ncr::pseudo_inverse(FM(F101, 2, 3)).rows() == 3);

  FM e11 = FM::unit(F101, 2, 2, 0, 0);
  auto be = ncr::pseudo_inverse(e11);
  CHECK(be == e11);
  CHECK(e11 * be * e11 == e11);
  CHECK(be * e11 * be == be);
}

TEST_CASE("subspace sum and intersection") {
  auto e1 = span(F101, 3, {{1, 0, 0}});
  auto e2 = span(F101, 3, {{0, 1, 0}});
  auto zero = FS::zero(F101, 3);
  auto full = FS::full(F101, 3);
  CHECK(ncr::subspace_sum(e1, zero) == e1);
  CHECK(ncr::subspace_intersect(e1, full) == e1);
  CHECK(ncr::subspace_intersect(e1, e2).is_zero());
  CHECK(ncr::subspace_sum(span(F101, 3, {{1, 1, 0}}), e2) == span(F101, 3, {{1, 0, 0}, {0, 1, 0}}));
  CHECK_THROWS_AS(ncr::subspace_sum(e1, FS::zero(F101, 2)), ncr::DimensionError);
}

TEST_CASE("image and preimage") {
  auto e1 = span(F101, 3, {{1, 0, 0}});
  CHECK(ncr::apply_image(FM::identity(F101, 3), e1) == e1);
  CHECK(ncr::apply_image(FM(F101, 3, 3), e1).is_zero());
  CHECK(ncr::apply_image(skew_generators(F101)[0], e1) == span(F101, 3, {{0, 1, 0}}));
  CHECK_THROWS_AS(ncr::apply_image(FM(F101, 2, 2), e1), ncr::DimensionError);

  FM e11 = FM::unit(F101, 2, 2, 0, 0);
  CHECK(ncr::preimage(e11, FS::full(F101, 2)).is_full());
  CHECK(ncr::preimage(e11, FS::zero(F101, 2)) == ncr::kernel(e11));
  CHECK(ncr::preimage(e11, span(F101, 2, {{0, 1}})) == span(F101, 2, {{0, 1}}));
}

TEST_CASE("rationals: elimination keeps lowest terms") {
  RationalField q;
  using QM = ncr::Matrix<RationalField>;
  QM m = QM::from_ints(q, 2, 2, {2, 3, 4, 5});
  auto b = ncr::pseudo_inverse(m);
  CHECK(b(0, 0) == mpq_class(-5, 2));
  CHECK(b(0, 1) == mpq_class(3, 2));
  CHECK(m * b == QM::identity(q, 2));
  auto t = QM::from_ints(q, 3, 3, {0, 1, 1, -1, 0, 1, -1, -1, 0});
  CHECK(ncr::rank(t) == 2);
  CHECK(ncr::kernel(t) == ncr::Subspace<RationalField>::row_span(QM::from_ints(q, 1, 3, {1, -1, 1})));
}

TEST_CASE("property: rank-nullity, pseudo-inverse identities, modular law") {
  ncr::Rng rng(7);
  for (std::uint64_t p : {2, 3, 5, 101}) {
    PrimeField f(p);
    for (std::size_t r = 0; r <= 4; ++r) {
      for (std::size_t c = 0; c <= 4; ++c) {
        for (int t = 0; t < 200; ++t) {
          auto m = sparse_matrix(f, r, c, rng);
          const auto rk = ncr::rank(m);
          CHECK(rk + ncr::kernel(m).dim() == c);
          const auto b = ncr::pseudo_inverse(m);
          REQUIRE(b.rows() == c);
          REQUIRE(b.cols() == r);
          CHECK(m * b * m == m);
          CHECK(b * m * b == b);
        }
      }
    }
    for (int t = 0; t < 200; ++t) {
      const std::size_t n = 1 + rng.below(5);
      auto u = FS::row_span(sparse_matrix(f, rng.below(n + 1), n, rng));
      auto v = FS::row_span(sparse_matrix(f, rng.below(n + 1), n, rng));
      CHECK(u.dim() + v.dim() == ncr::subspace_sum(u, v).dim() + ncr::subspace_intersect(u, v).dim());
      // Two bases of the same space canonicalize identically.
      auto mixer = random_matrix(f, u.dim(), u.dim(), rng);
      if (ncr::rank(mixer) == u.dim()) CHECK(FS::row_span(mixer * u.basis()) == u);

      const std::size_t rows = 1 + rng.below(4);
      auto m = sparse_matrix(f, rows, n, rng);
      auto w = FS::row_span(sparse_matrix(f, rng.below(rows + 1), rows, rng));
      auto back = ncr::apply_image(m, ncr::preimage(m, w));
      CHECK(w.contains(back));
      CHECK((back == w) == ncr::image(m).contains(w));
    }
  }
}

#include <doctest.h>

#include <functional>

#include "burau/braid.hpp"
#include "burau/io.hpp"
#include "burau/representation.hpp"
#include "burau/rng.hpp"

#ifndef BURAU_FIXTURE_DIR
#error "BURAU_FIXTURE_DIR must be defined"
#endif

using namespace burau;

namespace {

const IntegerRing Z{};

// Generator images written out from the matrix definition, independent of
// BurauContext.
ZMatrix generator_by_definition(int n, int i) {
  const std::size_t r = static_cast<std::size_t>(n - 1);
  ZMatrix m = ZMatrix::identity(Z, r);
  const std::size_t row = static_cast<std::size_t>(i - 1);
  m.set(row, row, ZPoly::term(Z, -1, 2));
  if (row > 0) m.set(row, row - 1, ZPoly::term(Z, -1, 1));
  if (row + 1 < r) m.set(row, row + 1, ZPoly::term(Z, -1, 1));
  return m;
}

ZPoly det3(const ZMatrix& m) {
  auto e = [&](std::size_t i, std::size_t j) { return m(i, j); };
  return e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0)) +
         e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0));
}

ArtinWord random_word(int n, int length, Rng& rng) {
  std::vector<int> letters;
  for (int k = 0; k < length; ++k) {
    const int i = 1 + static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n - 1)));
    letters.push_back(rng.uniform_index(2) ? i : -i);
  }
  return ArtinWord(n, letters);
}

// Every reduced word of w, by peeling off right descents.
void reduced_words(const Permutation& w, std::vector<int>& suffix, std::vector<std::vector<int>>& out) {
  if (w.is_identity()) {
    out.emplace_back(suffix.rbegin(), suffix.rend());
    return;
  }
  for (int i : w.right_descents()) {
    suffix.push_back(i);
    reduced_words(w.times_simple(i), suffix, out);
    suffix.pop_back();
  }
}

template <class Ring>
void check_braid_relations(int n, const Ring& ring) {
  const BurauContext<Ring> ctx(n, ring);
  for (int i = 1; i < n; ++i) {
    CHECK((ctx.generator(i) * ctx.generator_inverse(i)).is_identity());
    CHECK((ctx.generator_inverse(i) * ctx.generator(i)).is_identity());
    for (int j = i + 1; j < n; ++j) {
      const auto& a = ctx.generator(i);
      const auto& b = ctx.generator(j);
      if (j == i + 1) {
        CHECK(a * b * a == b * a * b);
      } else {
        CHECK(a * b == b * a);
      }
    }
  }
}

}  // namespace

TEST_CASE("generators match the matrix definition") {
  for (int n = 3; n <= 8; ++n) {
    const BurauContext<IntegerRing> ctx(n, Z);
    for (int i = 1; i < n; ++i) CHECK(ctx.generator(i) == generator_by_definition(n, i));
  }
}

TEST_CASE("sigma_1 in B_3 modulo 2") {
  const BurauContext<ModularRing> ctx(3, ModularRing(2));
  const auto& g = ctx.generator(1);
  CHECK(g(0, 0) == ModPoly::term(ModularRing(2), 1, 2));
  CHECK(g(0, 1) == ModPoly::term(ModularRing(2), 1, 1));
  CHECK(g(1, 0).is_zero());
  CHECK(g(1, 1) == ModPoly::constant(ModularRing(2), 1));
}

TEST_CASE("braid relations hold over Z and Z/5") {
  for (int n = 3; n <= 8; ++n) {
    check_braid_relations(n, Z);
    check_braid_relations(n, ModularRing(5));
  }
}

TEST_CASE("matrix of s1 s2 s1 s3 in B_4") {
  const BurauContext<IntegerRing> ctx(4, Z);
  const ZMatrix m = ctx.of_word(ArtinWord(4, {1, 2, 1, 3}));
  ZMatrix want(Z, 3);
  want.set(0, 2, ZPoly::term(Z, -1, 4));
  want.set(1, 0, ZPoly::term(Z, 1, 3));
  want.set(1, 1, ZPoly::term(Z, 1, 2));
  want.set(1, 2, ZPoly::term(Z, 1, 3));
  want.set(2, 1, ZPoly::term(Z, -1, 1));
  want.set(2, 2, ZPoly::term(Z, -1, 2));
  CHECK(m == want);
}

TEST_CASE("positive lifts do not depend on the reduced word") {
  const BurauContext<IntegerRing> ctx(4, Z);
  for (const auto& w : SymmetricGroup::of(4).elements()) {
    std::vector<std::vector<int>> words;
    std::vector<int> scratch;
    reduced_words(w, scratch, words);
    REQUIRE(!words.empty());
    for (const auto& word : words) {
      CHECK(Permutation::from_word(4, word) == w);
      CHECK(ctx.of_word(ArtinWord(4, word)) == ctx.positive_lift(w));
    }
  }
}

TEST_CASE("Delta closed form") {
  for (int n = 3; n <= 8; ++n) {
    const BurauContext<IntegerRing> ctx(n, Z);
    const ZMatrix product = ctx.of_word(ArtinWord(n, longest_element(n).reduced_word()));
    CHECK(product == delta_closed_form(n, Z));
    CHECK(ctx.delta() == product);
    CHECK((ctx.delta() * ctx.delta_inverse()).is_identity());
    CHECK(ctx.delta() * ctx.delta() == ZMatrix::identity(Z, n - 1).shifted(2 * n));
    for (int d = -3; d <= 3; ++d) {
      ZMatrix by_product = ZMatrix::identity(Z, n - 1);
      for (int k = 0; k < std::abs(d); ++k) by_product = by_product * (d > 0 ? ctx.delta() : ctx.delta_inverse());
      CHECK(ctx.delta_power(d) == by_product);
    }
  }
  const BurauContext<IntegerRing> ctx4(4, Z);
  CHECK(ctx4.delta() * ctx4.delta() == ZMatrix::identity(Z, 3).shifted(8));
  CHECK(ctx4.delta()(0, 2) == ZPoly::term(Z, -1, 4));
}

TEST_CASE("representation is a homomorphism") {
  Rng rng(31);
  const BurauContext<IntegerRing> ctx(4, Z);
  const BurauContext<ModularRing> ctx5(4, ModularRing(5));
  for (int trial = 0; trial < 100; ++trial) {
    const ArtinWord a = random_word(4, 8, rng);
    const ArtinWord b = random_word(4, 8, rng);
    CHECK(ctx.of_word(a + b) == ctx.of_word(a) * ctx.of_word(b));
    CHECK((ctx.of_word(a) * ctx.of_word(a.inverse())).is_identity());
    CHECK(mat_mod_reduce(ctx.of_word(a), 5) == ctx5.of_word(a));
    CHECK(ctx.of_braid(gnf_from_artin(a)) == ctx.of_word(a));
  }
}

TEST_CASE("determinant of a positive lift is (-v^2)^length") {
  const BurauContext<IntegerRing> ctx(4, Z);
  for (const auto& w : SymmetricGroup::of(4).elements()) {
    const ZPoly want = ZPoly::term(Z, w.length() % 2 ? -1 : 1, 2 * w.length());
    CHECK(det3(ctx.positive_lift(w)) == want);
  }
}

TEST_CASE("projlen is invariant under multiplication by Delta") {
  Rng rng(77);
  for (int n : {3, 4, 5}) {
    const BurauContext<IntegerRing> ctx(n, Z);
    for (int trial = 0; trial < 50; ++trial) {
      const ZMatrix m = ctx.of_word(random_word(n, 20, rng));
      CHECK((m * ctx.delta()).projlen() == m.projlen());
      CHECK((ctx.delta() * m).projlen() == m.projlen());
      CHECK((ctx.delta_inverse() * m).projlen() == m.projlen());
    }
  }
}

TEST_CASE("projlen is twice the Garside length in B_3") {
  const BurauContext<IntegerRing> ctx(3, Z);
  int checked = 0;
  std::function<void(const Braid&)> walk = [&](const Braid& b) {
    const ZMatrix m = ctx.of_braid(b);
    CHECK(m.projlen() == 2 * b.garside_length());

    int deg[2];
    int val[2];
    for (std::size_t c = 0; c < 2; ++c) {
      ZMatrix col(Z, 2);
      for (std::size_t r = 0; r < 2; ++r) col.set(r, 0, m(r, c));
      deg[c] = col.deg();
      val[c] = col.val();
    }
    if (b.garside_length() == 0) {
      CHECK(deg[0] == deg[1]);
      CHECK(val[0] == val[1]);
    } else if (b.factors().back().right_descents() == std::vector<int>{1}) {
      CHECK(deg[0] > deg[1]);
      CHECK(val[0] > val[1]);
    } else {
      CHECK(b.factors().back().right_descents() == std::vector<int>{2});
      CHECK(deg[0] < deg[1]);
      CHECK(val[0] < val[1]);
    }
    ++checked;
    if (b.garside_length() == 6) return;
    for (const auto& u : garside_suffixes(b)) walk(b.with_suffix(u));
  };
  for (int d = -2; d <= 2; ++d) walk(Braid(3).with_inf(d));
  CHECK(checked == 5 * (1 + 4 + 8 + 16 + 32 + 64 + 128));
}

TEST_CASE("kernel candidate check") {
  const BurauContext<ModularRing> ctx(4, ModularRing(5));
  CHECK(ctx.positive_kernel_candidate(Braid(4)) == 0);
  CHECK(ctx.positive_kernel_candidate(Braid(4).with_suffix(Permutation::simple(4, 1))) == std::nullopt);
  CHECK_THROWS_AS(ctx.positive_kernel_candidate(Braid(4).with_inf(1)), std::invalid_argument);

  const Braid sigma = read_braid_file(std::string(BURAU_FIXTURE_DIR) + "/sigma.txt", 4);
  CHECK(sigma.inf() == 0);
  CHECK(ctx.positive_kernel_candidate(sigma) == 27);
}

TEST_CASE("the three mod 5 kernel elements") {
  const BurauContext<ModularRing> ctx5(4, ModularRing(5));
  const BurauContext<ModularRing> ctx7(4, ModularRing(7));
  const BurauContext<IntegerRing> ctxz(4, Z);
  const std::string dir = BURAU_FIXTURE_DIR;
  const struct {
    const char* word;
    const char* gnf;
    int inf;
    int length;
  } cases[] = {{"/sigma.txt", "/kappa.json", -27, 54}, {"/sigma1.txt", "/kappa1.json", -29, 59},
               {"/sigma2.txt", "/kappa2.json", -33, 65}};
  for (const auto& c : cases) {
    const Braid sigma = read_braid_file(dir + c.word, 4);
    const Braid kappa = read_braid_file(dir + c.gnf, 4);
    CHECK(kappa == sigma.with_inf(c.inf));
    CHECK(kappa.garside_length() == c.length);
    CHECK(ctx5.kernel_check(kappa));
    CHECK_FALSE(ctx7.kernel_check(kappa));
    CHECK_FALSE(ctxz.kernel_check(kappa));
    CHECK(mat_mod_reduce(ctxz.of_braid(kappa), 5).is_identity());
  }
}

TEST_CASE("kernel element found by the mod 5 search with seed 8") {
  const Braid b = read_braid_file(std::string(BURAU_FIXTURE_DIR) + "/search_mod5_seed8.json", 4);
  CHECK(b.inf() == -27);
  CHECK(b.garside_length() == 55);
  CHECK(BurauContext<ModularRing>(4, ModularRing(5)).kernel_check(b));
  CHECK_FALSE(BurauContext<ModularRing>(4, ModularRing(7)).kernel_check(b));
  CHECK_FALSE(BurauContext<IntegerRing>(4, Z).kernel_check(b));
}

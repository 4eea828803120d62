#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>
#include <queue>

#include "nurs/metric.hpp"
#include "nurs/rng.hpp"

using namespace nurs;

namespace {

// BFS distances from `start` over right-multiplication by the given moves.
std::map<Permutation, std::uint32_t> bfs_distances(const Permutation& start,
                                                   const std::vector<Permutation>& moves) {
  std::map<Permutation, std::uint32_t> dist;
  std::queue<Permutation> queue;
  dist[start] = 0;
  queue.push(start);
  while (!queue.empty()) {
    const Permutation cur = queue.front();
    queue.pop();
    for (const Permutation& m : moves) {
      const Permutation nxt = compose(cur, m);
      if (dist.emplace(nxt, dist[cur] + 1).second) queue.push(nxt);
    }
  }
  return dist;
}

std::vector<Permutation> adjacent_transpositions(std::uint32_t n) {
  std::vector<Permutation> moves;
  for (std::uint32_t i = 1; i < n; ++i) moves.push_back(transposition(n, i, i + 1));
  return moves;
}

std::vector<Permutation> all_transpositions(std::uint32_t n) {
  std::vector<Permutation> moves;
  for (std::uint32_t i = 1; i <= n; ++i)
    for (std::uint32_t j = i + 1; j <= n; ++j) moves.push_back(transposition(n, i, j));
  return moves;
}

}  // namespace

TEST_CASE("distance names round-trip") {
  for (DistanceKind kind : kAllDistanceKinds) CHECK(parse_distance(distance_name(kind)) == kind);
  CHECK_THROWS(parse_distance("Kendall"));
  CHECK_THROWS(parse_distance("manhattan"));
}

TEST_CASE("energy examples") {
  for (DistanceKind kind : kAllDistanceKinds) {
    const MallowsModel model = MallowsModel::make(5, 0.7, kind);
    CHECK(energy(model, model.sigma0) == 0);
  }
  CHECK(energy(MallowsModel::make(3, 1, DistanceKind::Hamming), Permutation::parse("2,1,3")) == 2);
  CHECK(energy(MallowsModel::make(3, 1, DistanceKind::Cayley), cycle(3, {1, 2, 3})) == 2);
  CHECK(energy(MallowsModel::make(2, 1, DistanceKind::Kendall), Permutation::parse("2,1")) == 1);
  CHECK(energy(MallowsModel::make(3, 1, DistanceKind::L1), Permutation::parse("2,3,1")) == 4);
  CHECK(energy(MallowsModel::make(3, 1, DistanceKind::L2), Permutation::parse("2,3,1")) == 6);
  CHECK(energy(MallowsModel::make(3, 1, DistanceKind::Ulam), Permutation::parse("3,1,2")) == 1);
  CHECK_THROWS(energy(MallowsModel::make(3, 1, DistanceKind::L1), Permutation::identity(4)));
}

TEST_CASE("log weight") {
  const Permutation swapped = Permutation::parse("2,1,3");
  CHECK(log_weight(MallowsModel::make(3, 0.0, DistanceKind::L2), swapped) == 0.0);
  CHECK(log_weight(MallowsModel::make(3, 1.0, DistanceKind::Hamming), swapped) ==
        doctest::Approx(-2.0));
  CHECK(log_weight(MallowsModel::make(3, 0.5, DistanceKind::Cayley), cycle(3, {1, 2, 3})) ==
        doctest::Approx(-1.0));
}

TEST_CASE("kendall equals adjacent-transposition BFS between inverses") {
  const std::uint32_t n = 4;
  const auto moves = adjacent_transpositions(n);
  Rng rng(77);
  std::vector<Permutation> refs = {Permutation::identity(n)};
  for (int rep = 0; rep < 3; ++rep) refs.push_back(fisher_yates(rng, n));
  for (const Permutation& sigma0 : refs) {
    MallowsModel model = MallowsModel::make(n, 1.0, DistanceKind::Kendall);
    model.sigma0 = sigma0;
    const auto dist = bfs_distances(inverse(sigma0), moves);
    for (const Permutation& sigma : enumerate_lex(n))
      CHECK(energy(model, sigma) == dist.at(inverse(sigma)));
  }
}

TEST_CASE("cayley equals all-transposition BFS") {
  const std::uint32_t n = 5;
  const auto dist = bfs_distances(Permutation::identity(n), all_transpositions(n));
  const MallowsModel model = MallowsModel::make(n, 1.0, DistanceKind::Cayley);
  for (const Permutation& sigma : enumerate_lex(n)) {
    CHECK(energy(model, sigma) == dist.at(sigma));
    CHECK(cayley_distance(sigma, Permutation::identity(n)) == dist.at(sigma));
  }
}

TEST_CASE("exact pmf small cases") {
  {
    const ExactPmf pmf = exact_pmf(MallowsModel::make(2, std::log(2.0), DistanceKind::Cayley));
    REQUIRE(pmf.probs.size() == 2);
    CHECK(pmf.probs[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK(pmf.probs[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  }
  for (DistanceKind kind : kAllDistanceKinds) {
    const ExactPmf pmf = exact_pmf(MallowsModel::make(4, 0.0, kind));
    for (double p : pmf.probs) CHECK(p == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
  }
  {
    // Hamming energies over S_3 in lexicographic order: 0,2,2,3,3,2
    const ExactPmf pmf = exact_pmf(MallowsModel::make(3, 1.0, DistanceKind::Hamming));
    const double z = 1 + 3 * std::exp(-2.0) + 2 * std::exp(-3.0);
    const double expected[] = {1 / z,
                               std::exp(-2.0) / z,
                               std::exp(-2.0) / z,
                               std::exp(-3.0) / z,
                               std::exp(-3.0) / z,
                               std::exp(-2.0) / z};
    for (std::size_t t = 0; t < 6; ++t)
      CHECK(pmf.probs[t] == doctest::Approx(expected[t]).epsilon(1e-14));
  }
  CHECK_THROWS(exact_pmf(MallowsModel::make(9, 0.1, DistanceKind::L1)));
}

TEST_CASE("exact pmf sums to one") {
  for (DistanceKind kind : kAllDistanceKinds) {
    for (double beta : {0.0, 0.3, 1.5}) {
      const ExactPmf pmf = exact_pmf(MallowsModel::make(5, beta, kind));
      double total = 0.0;
      for (double p : pmf.probs) {
        CHECK(p >= 0.0);
        total += p;
      }
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("right-invariance of the relabeling-invariant distances") {
  const std::uint32_t n = 5;
  Rng rng(31);
  const Permutation g = fisher_yates(rng, n);
  for (DistanceKind kind :
       {DistanceKind::Kendall, DistanceKind::Cayley, DistanceKind::Hamming, DistanceKind::Ulam}) {
    MallowsModel base = MallowsModel::make(n, 0.6, kind);
    MallowsModel shifted = base;
    shifted.sigma0 = compose(base.sigma0, g);
    const ExactPmf pmf_base = exact_pmf(base);
    const ExactPmf pmf_shifted = exact_pmf(shifted);
    for (int rep = 0; rep < 40; ++rep) {
      const Permutation sigma = fisher_yates(rng, n);
      const double lhs = pmf_base.probs[lex_rank(sigma)];
      const double rhs = pmf_shifted.probs[lex_rank(compose(sigma, g))];
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("table constants") {
  CHECK(table_local_jump(DistanceKind::Cayley, 17) == 1);
  CHECK(table_local_jump(DistanceKind::Kendall, 5) == 7);
  CHECK(table_local_jump(DistanceKind::L2, 4) == 18);
  CHECK(table_local_jump(DistanceKind::Hamming, 9) == 2);
  CHECK(table_local_jump(DistanceKind::Ulam, 9) == 2);
  CHECK(table_local_jump(DistanceKind::L1, 6) == 10);
  CHECK(table_energy_max(DistanceKind::Kendall, 4) == 6);
  CHECK(table_energy_max(DistanceKind::L2, 3) == 8);
  CHECK(table_energy_max(DistanceKind::Ulam, 5) == 4);
  CHECK(table_energy_max(DistanceKind::L1, 5) == 12);
  CHECK(table_energy_max(DistanceKind::Hamming, 7) == 7);
  CHECK(table_energy_max(DistanceKind::Cayley, 7) == 6);
}

TEST_CASE("brute constants vs tables") {
  CHECK(brute_local_jump(DistanceKind::Cayley, 4) == 1);
  CHECK(brute_local_jump(DistanceKind::Hamming, 4) == 2);
  CHECK(brute_energy_max(DistanceKind::Hamming, 4) == 4);
  CHECK(brute_energy_max(DistanceKind::Kendall, 4) == 6);
  CHECK(brute_energy_max(DistanceKind::L1, 5) == 12);
  for (std::uint32_t n : {4u, 5u, 6u}) {
    for (DistanceKind kind : kAllDistanceKinds) {
      CHECK(static_cast<double>(brute_local_jump(kind, n)) <= table_local_jump(kind, n));
      CHECK(static_cast<double>(brute_energy_max(kind, n)) == table_energy_max(kind, n));
    }
    CHECK(brute_local_jump(DistanceKind::Cayley, n) == 1);
    CHECK(brute_local_jump(DistanceKind::Hamming, n) == 2);
  }
  CHECK_THROWS(brute_local_jump(DistanceKind::Cayley, 8));
  CHECK_THROWS(brute_energy_max(DistanceKind::Cayley, 9));
}

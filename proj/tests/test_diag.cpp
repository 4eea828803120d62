#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "nurs/diag.hpp"

using namespace nurs;

TEST_CASE("poisson pmf") {
  CHECK(poisson_pmf(1.0, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(poisson_pmf(1.0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  for (double lambda : {0.5, 1.0, 2.718, 5.0}) {
    double total = 0.0;
    for (std::uint64_t k = 0; k <= 60; ++k) total += poisson_pmf(lambda, k);
    CHECK(std::abs(total - 1.0) <= 1e-12);
  }
  CHECK_THROWS(poisson_pmf(0.0, 1));
}

TEST_CASE("triangular pmf variants") {
  CHECK(triangular_pmf(7, 0, TriangularVariant::Paper) ==
        doctest::Approx(129.0 / 16641.0).epsilon(1e-14));
  CHECK(triangular_pmf(7, 0, TriangularVariant::Derived) ==
        doctest::Approx(128.0 / 16384.0).epsilon(1e-14));
  CHECK(triangular_pmf(7, 128, TriangularVariant::Paper) ==
        doctest::Approx(1.0 / 16641.0).epsilon(1e-14));
  CHECK(triangular_pmf(7, 128, TriangularVariant::Derived) == 0.0);
  CHECK(triangular_pmf(3, -5, TriangularVariant::Derived) ==
        triangular_pmf(3, 5, TriangularVariant::Derived));
  for (TriangularVariant variant : {TriangularVariant::Paper, TriangularVariant::Derived}) {
    for (std::uint32_t m : {1u, 3u, 7u}) {
      double total = 0.0;
      for (std::int64_t k = -(std::int64_t{1} << m); k <= (std::int64_t{1} << m); ++k)
        total += triangular_pmf(m, k, variant);
      CHECK(std::abs(total - 1.0) <= 1e-12);
    }
  }
  CHECK_THROWS(triangular_pmf(3, 9, TriangularVariant::Paper));
}

TEST_CASE("empirical tv") {
  {
    Histogram hist;
    hist.add(0);
    hist.add(1);
    std::map<std::int64_t, double> pmf = {{0, 0.5}, {1, 0.5}};
    CHECK(empirical_tv(hist, pmf) == 0.0);
  }
  {
    // point mass vs a uniform reference on two atoms
    Histogram hist;
    hist.add(0);
    std::map<std::int64_t, double> pmf = {{0, 0.5}, {1, 0.5}};
    CHECK(empirical_tv(hist, pmf) == doctest::Approx(0.5));
  }
  {
    // reference mass at empty bins counts
    Histogram hist;
    hist.add(7);
    std::map<std::int64_t, double> pmf = {{0, 1.0}};
    CHECK(empirical_tv(hist, pmf) == doctest::Approx(1.0));
  }
  Histogram empty;
  std::map<std::int64_t, double> pmf = {{0, 1.0}};
  CHECK_THROWS(empirical_tv(empty, pmf));
}

TEST_CASE("trace rows") {
  const MallowsModel model = MallowsModel::make(6, 0.5, DistanceKind::Hamming);
  TransitionRecord rec;
  rec.selected_index = -3;
  rec.orbit_len = 8;
  rec.reason = StopReason::Stop;
  {
    const TraceRow row = trace_row(11, Permutation::identity(6), model, rec);
    CHECK(row.iter == 11);
    CHECK(row.signed_index == -3);
    CHECK(row.fixed_points == 6);
    CHECK(row.lis == 6);
    CHECK(row.cycle_len_1 == 1);
    CHECK(row.energy == 0);
  }
  {
    const TraceRow row = trace_row(0, Permutation::parse("6,5,4,3,2,1"), model, rec);
    CHECK(row.lis == 1);
    CHECK(row.fixed_points == 0);
    CHECK(row.energy == 6);
  }
  const std::vector<Permutation> states = {Permutation::identity(6), Permutation::parse("2,1,3,4,5,6")};
  const std::vector<TransitionRecord> records = {rec, rec};
  const RunTrace trace = trace_stats(states, records, model);
  REQUIRE(trace.size() == 2);
  CHECK(trace[0].iter == 0);
  CHECK(trace[1].iter == 1);
  CHECK(trace[1].fixed_points == 4);
}

TEST_CASE("autocorrelation and ess") {
  {
    // iid noise: ess within 20% of N
    Rng rng(5);
    std::vector<double> series(20000);
    for (double& v : series) v = rng.uniform01();
    const AcfResult res = autocorr_ess(series, 50);
    CHECK(res.acf[0] == 1.0);
    CHECK(std::abs(res.ess - 20000.0) <= 4000.0);
  }
  {
    // constant series: by convention acf is zero and ess = N
    const std::vector<double> flat(100, 3.14);
    const AcfResult res = autocorr_ess(flat, 10);
    CHECK(res.ess == 100.0);
    for (double a : res.acf) CHECK(a == 0.0);
  }
  {
    // alternating series: lag-1 autocorrelation near -1
    std::vector<double> alt(1000);
    for (std::size_t t = 0; t < alt.size(); ++t) alt[t] = t % 2 ? 1.0 : -1.0;
    const AcfResult res = autocorr_ess(alt, 5);
    CHECK(res.acf[1] == doctest::Approx(-1.0).epsilon(0.01));
    CHECK(res.ess >= 900.0);  // truncation at the first negative lag
  }
  {
    // strongly correlated chain has a much smaller ess
    Rng rng(6);
    std::vector<double> ar(20000);
    double x = 0.0;
    for (double& v : ar) v = x = 0.95 * x + 0.1 * (rng.uniform01() - 0.5);
    const AcfResult res = autocorr_ess(ar, 200);
    CHECK(res.ess < 4000.0);
  }
  CHECK_THROWS(autocorr_ess(std::vector<double>(5, 1.0), 10));
}

TEST_CASE("chi square survival") {
  CHECK(chi_square_survival(3.841, 1) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(chi_square_survival(0.0, 5) == 1.0);
  CHECK(chi_square_survival(4.351, 5) == doctest::Approx(0.5).epsilon(0.01));
  CHECK(chi_square_survival(124.34, 100) == doctest::Approx(0.05).epsilon(0.01));
  CHECK(chi_square_survival(1000.0, 10) <= 1e-12);
}

#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "qp_oracle.hpp"
#include "wgf/qp.hpp"

using namespace wgf;



TEST_CASE("qp: unconstrained optimum already feasible") {
  // 1/2 z^2 - z with z >= 0: optimum z = 1.
  QPProblem q;
  q.H = SparseMatrix::identity(1);
  q.g = {-1.0};
  q.center = {0.0};
  q.A = SparseMatrix(0, 1);
  q.nonneg_indices = {0};
  QPResult r = solve_qp(q);
  CHECK(r.converged);
  CHECK(r.z[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(r.dual_bound[0] == doctest::Approx(0.0).epsilon(1e-7));
}

TEST_CASE("qp: symmetric equality split") {
  QPProblem q;
  q.H = SparseMatrix::identity(2);
  q.g = {0.0, 0.0};
  q.center = {0.0, 0.0};
  q.A = SparseMatrix::from_triplets(1, 2, {{0, 0, 1.0}, {0, 1, 1.0}});
  q.b = {1.0};
  QPResult r = solve_qp(q);
  CHECK(r.converged);
  CHECK(r.z[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.z[1] == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("qp: active bound with multiplier") {
  // 1/2 (z+1)^2 with z >= 0: z = 0, bound multiplier 1.
  QPProblem q;
  q.H = SparseMatrix::identity(1);
  q.g = {0.0};
  q.center = {-1.0};
  q.A = SparseMatrix(0, 1);
  q.nonneg_indices = {0};
  QPResult r = solve_qp(q);
  CHECK(r.converged);
  CHECK(r.z[0] == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(r.dual_bound[0] == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("qp matches the active-set enumeration oracle") {
  std::mt19937_64 rng(2024);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    QPProblem q = test::random_qp_instance(rng);
    test::QpOracleResult oracle = test::active_set_oracle(q);
    REQUIRE(oracle.found);
    QPResult r = solve_qp(q, 1e-9, 200);
    REQUIRE(r.converged);
    for (std::size_t i = 0; i < r.z.size(); ++i)
      CHECK(std::abs(r.z[i] - oracle.z[i]) <= 1e-8);
    CHECK(r.stationarity <= 1e-9);
    CHECK(r.primal <= 1e-9);
    CHECK(r.complementarity <= 1e-9);
    ++solved;
  }
  CHECK(solved == 200);
}

TEST_CASE("qp barrier parameter decreases monotonically") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    QPProblem q = test::random_qp_instance(rng);
    if (q.nonneg_indices.empty()) continue;
    QPResult r = solve_qp(q);
    REQUIRE(r.converged);
    for (std::size_t i = 1; i < r.mu_trace.size(); ++i)
      CHECK(r.mu_trace[i] <= r.mu_trace[i - 1] * (1.0 + 1e-12));
  }
}

TEST_CASE("qp solution is invariant under positive rescaling of (H, g)") {
  std::mt19937_64 rng(31);
  QPProblem q = test::random_qp_instance(rng);
  QPResult r1 = solve_qp(q);
  QPProblem q2 = q;
  for (double& v : q2.H.values()) v *= 37.5;
  for (double& v : q2.g) v *= 37.5;
  QPResult r2 = solve_qp(q2);
  REQUIRE(r1.converged);
  REQUIRE(r2.converged);
  for (std::size_t i = 0; i < r1.z.size(); ++i)
    CHECK(std::abs(r1.z[i] - r2.z[i]) <= 1e-9 * (1.0 + std::abs(r1.z[i])));
}

TEST_CASE("qp feasibility at return") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    QPProblem q = test::random_qp_instance(rng);
    if (q.A.rows() == 0) continue;
    QPResult r = solve_qp(q);
    REQUIRE(r.converged);
    auto az = q.A.multiply(r.z);
    double binf = 0.0;
    for (double v : q.b) binf = std::max(binf, std::abs(v));
    for (int i = 0; i < q.A.rows(); ++i)
      CHECK(std::abs(az[i] - q.b[i]) <= 1e-9 * (1.0 + binf));
  }
}

TEST_CASE("qp flags an exhausted iteration budget") {
  QPProblem q;
  q.H = SparseMatrix::identity(2);
  q.g = {3.0, -1.0};
  q.center = {0.5, 0.5};
  q.A = SparseMatrix(0, 2);
  q.nonneg_indices = {0, 1};
  QPResult r = solve_qp(q, 1e-12, 1);
  CHECK_FALSE(r.converged);
}

TEST_CASE("qp reports infeasible equality systems") {
  QPProblem q;
  q.H = SparseMatrix::identity(1);
  q.g = {0.0};
  q.center = {0.0};
  q.A = SparseMatrix::from_triplets(2, 1, {{0, 0, 1.0}, {1, 0, 1.0}});
  q.b = {0.0, 1.0};  // z = 0 and z = 1 simultaneously
  CHECK_THROWS_AS(solve_qp(q, 1e-9, 60), std::runtime_error);
}

#include "graphssr/graph.hpp"
#include "graphssr/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace graphssr;

namespace {

Matrix random_symmetric_weights(Index n, std::uint64_t seed) {
  Rng rng(seed);
  Matrix a = uniform01(n, n, rng);
  Matrix w = 0.5 * (a + a.transpose());
  w.diagonal().setZero();
  return w;
}

Matrix points_1d(std::initializer_list<double> xs) {
  Matrix p(static_cast<Index>(xs.size()), 1);
  Index i = 0;
  for (double x : xs) p(i++, 0) = x;
  return p;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("kernel weights") {
  const double r = 0.7;
  SUBCASE("gaussian at zero distance is one") {
    Matrix p(3, 2);
    p << 0, 0, 0, 0, 1, 1;
    const WeightMatrix w = build_weights(PointCloud(p), GaussianKernel{r});
    CHECK(w(0, 1) == 1.0);
    CHECK(w(0, 0) == 0.0);
  }
  SUBCASE("gaussian at distance r is 1/e") {
    const WeightMatrix w = build_weights(PointCloud(points_1d({0.0, r, 0.3})), GaussianKernel{r});
    CHECK(w(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  }
  SUBCASE("indicator vanishes beyond r") {
    const WeightMatrix w =
        build_weights(PointCloud(points_1d({0.0, 2 * r, r / 2, 2 * r - 0.1})), IndicatorKernel{r});
    CHECK(w(0, 1) == 0.0);
    CHECK(w(0, 2) == 1.0);
  }
  SUBCASE("isolated vertex is rejected by name") {
    CHECK_THROWS_WITH_AS(build_weights(PointCloud(points_1d({0.0, 0.1, 5.0})), IndicatorKernel{r}),
                         doctest::Contains("vertex 2"), Error);
  }
  SUBCASE("radius must be positive") {
    CHECK_THROWS_AS(build_weights(PointCloud(points_1d({0.0, 1.0})), GaussianKernel{0.0}), Error);
  }
}

TEST_CASE("self-tuning weights on three collinear points") {
  // distances: d12 = 1, d13 = 3, d23 = 2; nearest neighbours give r = (1, 1, 2)
  const WeightMatrix w = zelnik_perona_weights(PointCloud(points_1d({0.0, 1.0, 3.0})), 1);
  CHECK(w(0, 1) == doctest::Approx(std::exp(-1.0 / (1.0 * 1.0))).epsilon(1e-15));
  CHECK(w(0, 2) == doctest::Approx(std::exp(-9.0 / (1.0 * 2.0))).epsilon(1e-15));
  CHECK(w(1, 2) == doctest::Approx(std::exp(-4.0 / (1.0 * 2.0))).epsilon(1e-15));
  CHECK(w.matrix().diagonal().isZero(0.0));
  CHECK(w.matrix() == w.matrix().transpose());
}

TEST_CASE("self-tuning weights on two points") {
  const WeightMatrix w = zelnik_perona_weights(PointCloud(points_1d({0.5, 2.0})), 1);
  CHECK(w(0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("self-tuning weights reject bad input") {
  CHECK_THROWS_AS(zelnik_perona_weights(PointCloud(points_1d({0.0, 1.0, 2.0})), 3), Error);
  CHECK_THROWS_AS(zelnik_perona_weights(PointCloud(points_1d({0.0, 1.0, 2.0})), 0), Error);
  CHECK_THROWS_WITH_AS(zelnik_perona_weights(PointCloud(points_1d({0.0, 0.0, 2.0})), 1),
                       doctest::Contains("duplicate"), Error);
}

TEST_CASE("weight matrix invariants") {
  Matrix w(2, 2);
  w << 0, 1, 1, 0;
  CHECK_NOTHROW(WeightMatrix{w});
  Matrix asym = w;
  asym(0, 1) = 0.5;
  CHECK_THROWS_AS(WeightMatrix{asym}, Error);
  Matrix neg = w;
  neg(0, 1) = neg(1, 0) = -1.0;
  CHECK_THROWS_AS(WeightMatrix{neg}, Error);
}

TEST_CASE("Laplacian of a single edge") {
  Matrix w(2, 2);
  w << 0, 1, 1, 0;
  Matrix expect(2, 2);
  expect << 1, -1, -1, 1;
  CHECK(degree_and_laplacian(WeightMatrix(w), 0.0).matrix == expect);
  CHECK(degree_and_laplacian(WeightMatrix(w), 0.5).matrix == expect);
}

TEST_CASE("Laplacian properties on a random graph") {
  const WeightMatrix w(random_symmetric_weights(12, 3));
  const Laplacian l0 = degree_and_laplacian(w, 0.0);
  CHECK((l0.matrix * Vector::Ones(12)).cwiseAbs().maxCoeff() < 1e-14);
  for (double p : {0.0, 0.5, 1.0}) {
    const Laplacian l = degree_and_laplacian(w, p);
    CHECK(l.matrix == l.matrix.transpose());
    Rng rng(11);
    for (int t = 0; t < 20; ++t) {
      const Vector x = standard_normal(12, 1, rng);
      CHECK(x.dot(l.matrix * x) >= -1e-12);
    }
  }
  // normalized form equals D^-1/2 (D - W) D^-1/2 computed densely
  const Vector d = w.degrees();
  const Matrix dm = d.cwiseSqrt().cwiseInverse().asDiagonal();
  const Matrix expect = dm * (Matrix(d.asDiagonal()) - w.matrix()) * dm;
  CHECK((degree_and_laplacian(w, 0.5).matrix - expect).norm() < 1e-13);
}

TEST_CASE("Laplacian rejects zero degree") {
  Matrix w = Matrix::Zero(3, 3);
  w(0, 1) = w(1, 0) = 1.0;
  CHECK_THROWS_WITH_AS(degree_and_laplacian(WeightMatrix(w), 0.0), doctest::Contains("vertex 2"),
                       Error);
}

TEST_CASE("perturbed assembly") {
  const Index n = 4;
  Matrix w0 = Matrix::Zero(n, n);
  w0(0, 1) = w0(1, 0) = 0.3;
  w0(2, 3) = w0(3, 2) = 0.05;
  Matrix ones = Matrix::Ones(n, n);
  ones.diagonal().setZero();

  SUBCASE("eps = 0 returns W0 exactly") {
    const PerturbationFamily fam(WeightMatrix(w0), {ones, 2 * ones});
    CHECK(assemble_perturbed(fam, 0.0).matrix() == w0);
  }
  SUBCASE("first order shift") {
    const PerturbationFamily fam(WeightMatrix(w0), {ones});
    const Matrix w = assemble_perturbed(fam, 0.1).matrix();
    CHECK((w - w0 - 0.1 * ones).cwiseAbs().maxCoeff() < 1e-16);
  }
  SUBCASE("negative entry beyond tolerance") {
    Matrix c = Matrix::Zero(n, n);
    c(2, 3) = c(3, 2) = -1.0;
    const PerturbationFamily fam(WeightMatrix(w0), {c});
    CHECK_THROWS_WITH_AS(assemble_perturbed(fam, 0.1), doctest::Contains("eps too large"), Error);
  }
  SUBCASE("round-off negatives are clamped") {
    Matrix c = Matrix::Zero(n, n);
    c(0, 2) = c(2, 0) = -1e-13;
    const PerturbationFamily fam(WeightMatrix(w0), {c});
    CHECK(assemble_perturbed(fam, 1.0)(0, 2) == 0.0);
  }
  SUBCASE("corrections need zero diagonal") {
    CHECK_THROWS_AS(PerturbationFamily(WeightMatrix(w0), {Matrix::Ones(n, n)}), Error);
  }
}

TEST_CASE("inter-cluster scaling") {
  const Clustering c = Clustering::blocks({2, 3});
  const WeightMatrix w(random_symmetric_weights(5, 9));
  CHECK(scale_intercluster(w, c, 1.0).matrix() == w.matrix());
  const Matrix z = scale_intercluster(w, c, 0.0).matrix();
  CHECK(z.block(0, 2, 2, 3).isZero(0.0));
  CHECK(z.block(0, 0, 2, 2) == w.matrix().block(0, 0, 2, 2));
  CHECK(scale_intercluster(w, c, 1e-3)(0, 4) == doctest::Approx(w(0, 4) * 1e-3));
  const Matrix twice = scale_intercluster(scale_intercluster(w, c, 0.3), c, 0.2).matrix();
  const Matrix once = scale_intercluster(w, c, 0.3 * 0.2).matrix();
  CHECK((twice - once).cwiseAbs().maxCoeff() < 1e-16);
  CHECK_THROWS_AS(scale_intercluster(w, c, 1.5), Error);
}

TEST_CASE("cluster assumptions") {
  SUBCASE("two disjoint unit 2-cliques have gap 2") {
    Matrix w = Matrix::Zero(4, 4);
    w(0, 1) = w(1, 0) = w(2, 3) = w(3, 2) = 1.0;
    const AssumptionReport r = check_assumptions(WeightMatrix(w), Clustering::blocks({2, 2}));
    REQUIRE(r.block_gaps.size() == 2);
    CHECK(r.theta == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("inter-cluster edge is rejected") {
    Matrix w = Matrix::Zero(4, 4);
    w(0, 1) = w(1, 0) = w(2, 3) = w(3, 2) = w(1, 2) = w(2, 1) = 1.0;
    CHECK_THROWS_WITH_AS(check_assumptions(WeightMatrix(w), Clustering::blocks({2, 2})),
                         doctest::Contains("not block-diagonal"), AssumptionError);
  }
  SUBCASE("isolated vertex inside a block fails") {
    Matrix w = Matrix::Zero(3, 3);
    w(0, 1) = w(1, 0) = 1.0;
    for (double p : {0.0, 0.5})
      CHECK_THROWS_WITH_AS(check_assumptions(WeightMatrix(w), Clustering::blocks({3}), p),
                           doctest::Contains("not connected"), AssumptionError);
  }
  SUBCASE("block split into two components fails") {
    Matrix w = Matrix::Zero(4, 4);
    w(0, 1) = w(1, 0) = w(2, 3) = w(3, 2) = 1.0;
    CHECK_THROWS_WITH_AS(check_assumptions(WeightMatrix(w), Clustering::blocks({4})),
                         doctest::Contains("not connected"), AssumptionError);
  }
  SUBCASE("single connected cluster") {
    const AssumptionReport r =
        check_assumptions(WeightMatrix(random_symmetric_weights(6, 2)), Clustering::blocks({6}));
    CHECK(r.theta > 0.0);
  }
}

TEST_CASE("Laplacian expansion reproduces L_eps") {
  const Clustering c = Clustering::blocks({5, 5});
  Matrix w0 = Matrix::Zero(10, 10);
  w0.block(0, 0, 5, 5) = random_symmetric_weights(5, 4);
  w0.block(5, 5, 5, 5) = random_symmetric_weights(5, 5);
  const PerturbationFamily fam(WeightMatrix(w0),
                               {random_symmetric_weights(10, 6), random_symmetric_weights(10, 7)});
  for (double p : {0.0, 0.5, 0.3}) {
    const auto coeffs = laplacian_expansion(fam, p, 10);
    CHECK((coeffs[0] - degree_and_laplacian(fam.base(), p).matrix).norm() < 1e-13);
    for (double eps : {1e-2, 1e-3}) {
      Matrix sum = Matrix::Zero(10, 10);
      double e = 1.0;
      for (const Matrix& ch : coeffs) {
        sum += e * ch;
        e *= eps;
      }
      const Matrix direct = degree_and_laplacian(assemble_perturbed(fam, eps), p).matrix;
      CHECK((sum - direct).norm() < 1e-12 * direct.norm());
    }
    if (p == 0.0) {
      // unnormalized: L^(h) = D(W^(h)) - W^(h) and nothing beyond the family order
      const Matrix& w1 = fam.corrections()[0];
      const Matrix l1 = Matrix(w1.rowwise().sum().asDiagonal()) - w1;
      CHECK((coeffs[1] - l1).norm() < 1e-13);
      CHECK(coeffs[3].norm() == 0.0);
    }
  }
}

TEST_CASE("family hash tracks content") {
  Matrix w0 = random_symmetric_weights(4, 1);
  const PerturbationFamily a(WeightMatrix(w0), {random_symmetric_weights(4, 2)});
  const PerturbationFamily b(WeightMatrix(w0), {random_symmetric_weights(4, 2)});
  const PerturbationFamily c(WeightMatrix(w0), {random_symmetric_weights(4, 3)});
  CHECK(a.hash() == b.hash());
  CHECK(a.hash() != c.hash());
}

}  // TEST_SUITE

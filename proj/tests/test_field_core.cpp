#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "boussinesq/errors.hpp"
#include "boussinesq/fft.hpp"
#include "boussinesq/functionals.hpp"
#include "boussinesq/grid.hpp"
#include "boussinesq/operators.hpp"
#include "support.hpp"

using namespace boussinesq;
using namespace testing_support;

TEST(Grid, SpacingIsLengthOverN) {
  const Grid g = make_grid(64, 2.0 * kPi);
  EXPECT_DOUBLE_EQ(g.dx(), 2.0 * kPi / 64);
  EXPECT_EQ(g.spectral_cols(), 33);
}

TEST(Grid, SixteenPointWavenumbers) {
  const Grid g = make_grid(16, 1.0);
  auto k = g.wavenumbers();
  std::sort(k.begin(), k.end());
  std::vector<double> expected;
  for (int m = -7; m <= 8; ++m) expected.push_back(2.0 * kPi * m);
  ASSERT_EQ(k.size(), expected.size());
  for (std::size_t i = 0; i < k.size(); ++i) EXPECT_NEAR(k[i], expected[i], 1e-12);
}

TEST(Grid, WavenumbersClosedUnderNegationApartFromNyquist) {
  const Grid g = make_grid(32, 3.0);
  const auto k = g.wavenumbers();
  for (int row = 1; row < 32; ++row) {
    if (row == 16) continue;
    EXPECT_DOUBLE_EQ(g.ky(row), -g.ky(32 - row));
  }
  EXPECT_EQ(g.ky_derivative(16), 0.0);
  EXPECT_EQ(g.kx_derivative(16), 0.0);
  EXPECT_EQ(k.size(), 32u);
}

TEST(Grid, RejectsBadParameters) {
  EXPECT_THROW(make_grid(15, 1.0), ParameterError);
  EXPECT_THROW(make_grid(14, 1.0), ParameterError);
  EXPECT_THROW(make_grid(64, 0.0), ParameterError);
  EXPECT_THROW(make_grid(64, -1.0), ParameterError);
}

TEST(Grid, RetainedModesFollowTwoThirdsRule) {
  const Grid g = make_grid(48, 1.0);
  EXPECT_TRUE(g.retained(15, 15));
  EXPECT_FALSE(g.retained(16, 0));
  EXPECT_FALSE(g.retained(0, 16));
  EXPECT_TRUE(g.retained(48 - 15, 3));
}

TEST(SpectralRoundTrip, SineIsReproduced) {
  const Grid g = make_grid(64, 2.0 * kPi);
  const auto f = ScalarField::sample(g, [](double x, double) { return std::sin(x); });
  EXPECT_LE(max_diff(spectral_round_trip(f), f), 1e-12);
}

TEST(SpectralRoundTrip, ZeroStaysExactlyZero) {
  const Grid g = make_grid(32, 1.0);
  const auto z = spectral_round_trip(ScalarField::zero(g));
  for (double v : z.values()) EXPECT_EQ(v, 0.0);
}

TEST(SpectralRoundTrip, RandomBandLimitedFields) {
  std::mt19937_64 rng(11);
  for (int n : {32, 64, 128}) {
    const Grid g = make_grid(n, 2.0 * kPi);
    for (int trial = 0; trial < 10; ++trial) {
      const auto f = random_scalar(g, rng, n / 3 - 1, 16);
      EXPECT_LE(max_diff(spectral_round_trip(f), f), 1e-12 * f.max_abs());
    }
  }
}

TEST(Fft, ForwardIsNormalizedAndInverseUndoesIt) {
  const Grid g = make_grid(32, 2.0 * kPi);
  const auto f = ScalarField::sample(g, [](double x, double y) { return 3.0 + std::cos(2 * x + y); });
  EXPECT_NEAR(f.spectrum()[0].real(), 3.0, 1e-14);
  EXPECT_NEAR(f.mean(), 3.0, 1e-14);
}

TEST(Differentiate, GradientOfSine) {
  const Grid g = make_grid(64, 2.0 * kPi);
  const auto f = ScalarField::sample(g, [](double x, double) { return std::sin(x); });
  const auto grad = std::get<VectorField>(differentiate(f, DiffMode::gradient));
  const auto c = ScalarField::sample(g, [](double x, double) { return std::cos(x); });
  EXPECT_LE(max_diff(grad.u1(), c), 1e-12);
  EXPECT_LE(grad.u2().max_abs(), 1e-12);
}

TEST(Differentiate, LaplacianOfProduct) {
  const Grid g = make_grid(64, 2.0 * kPi);
  const auto f = ScalarField::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  const auto lap = std::get<ScalarField>(differentiate(f, DiffMode::laplacian));
  EXPECT_LE(max_diff(lap, -2.0 * f), 1e-12);
}

TEST(Differentiate, TaylorGreenVorticityUsesSignConvention) {
  const Grid g = make_grid(64, 2.0 * kPi);
  const auto w = std::get<ScalarField>(differentiate(taylor_green(g), DiffMode::vorticity));
  // d/dy (sin x cos y) - d/dx (-cos x sin y) = -2 sin x sin y
  const auto expected =
      ScalarField::sample(g, [](double x, double y) { return -2.0 * std::sin(x) * std::sin(y); });
  EXPECT_LE(max_diff(w, expected), 1e-12);
}

TEST(Differentiate, ArityMismatchThrows) {
  const Grid g = make_grid(16, 1.0);
  EXPECT_THROW(differentiate(ScalarField::zero(g), DiffMode::divergence), ArityError);
  EXPECT_THROW(differentiate(ScalarField::zero(g), DiffMode::vorticity), ArityError);
  EXPECT_THROW(differentiate(VectorField::zero(g), DiffMode::gradient), ArityError);
}

TEST(Differentiate, DivergenceOfGradientIsLaplacian) {
  std::mt19937_64 rng(5);
  const Grid g = make_grid(64, 2.0);
  const auto f = random_scalar(g, rng, 10);
  const auto d = divergence(gradient(f));
  EXPECT_LE(max_diff(d, laplacian(f)), 1e-9 * laplacian(f).max_abs());
}

TEST(LerayProject, DivergenceFreeInputUnchanged) {
  const Grid g = make_grid(64, 2.0 * kPi);
  const auto u = taylor_green(g);
  const auto p = leray_project(u);
  EXPECT_TRUE(p.divergence_free());
  EXPECT_LE(max_diff(p.u1(), u.u1()), 1e-12);
  EXPECT_LE(max_diff(p.u2(), u.u2()), 1e-12);
}

TEST(LerayProject, PureGradientVanishes) {
  const Grid g = make_grid(64, 2.0 * kPi);
  const auto phi = ScalarField::sample(g, [](double x, double y) { return std::sin(x) * std::sin(y); });
  EXPECT_LE(leray_project(gradient(phi)).max_abs(), 1e-12);
}

TEST(LerayProject, ModeParallelToWavevectorVanishes) {
  const Grid g = make_grid(64, 2.0 * kPi);
  const VectorField u(ScalarField::sample(g, [](double x, double) { return std::cos(x); }),
                      ScalarField::zero(g));
  EXPECT_LE(leray_project(u).max_abs(), 1e-12);
}

TEST(LerayProject, KeepsMeanFlow) {
  const Grid g = make_grid(32, 1.0);
  const VectorField u(ScalarField::sample(g, [](double, double) { return 0.7; }),
                      ScalarField::sample(g, [](double, double) { return -0.2; }));
  const auto p = leray_project(u);
  EXPECT_NEAR(p.u1().mean(), 0.7, 1e-15);
  EXPECT_NEAR(p.u2().mean(), -0.2, 1e-15);
}

TEST(LerayProject, IdempotentAndSelfAdjointOnRandomFields) {
  std::mt19937_64 rng(17);
  const Grid g = make_grid(64, 2.0 * kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const VectorField u(random_scalar(g, rng, 12), random_scalar(g, rng, 12));
    const VectorField w(random_scalar(g, rng, 12), random_scalar(g, rng, 12));
    const auto pu = leray_project(u);
    const auto ppu = leray_project(pu);
    EXPECT_LE(max_diff(ppu.u1(), pu.u1()), 1e-12 * u.max_abs());
    EXPECT_LE(max_diff(ppu.u2(), pu.u2()), 1e-12 * u.max_abs());
    EXPECT_LE(relative_divergence(pu), 1e-10);
    const auto pw = leray_project(w);
    const double a = grid_integral(pu.u1(), w.u1()) + grid_integral(pu.u2(), w.u2());
    const double b = grid_integral(u.u1(), pw.u1()) + grid_integral(u.u2(), pw.u2());
    EXPECT_NEAR(a, b, 1e-10 * (std::abs(a) + std::abs(b) + 1.0));
    // Projection plus gradient part reconstructs the input.
    const auto rebuilt = pu + gradient_part(u);
    EXPECT_LE(max_diff(rebuilt.u1(), u.u1()), 1e-12 * u.max_abs());
  }
}

TEST(VectorField, CertificateRejectsDivergentInput) {
  const Grid g = make_grid(32, 2.0 * kPi);
  EXPECT_THROW(VectorField::certified(ScalarField::sample(g, [](double x, double) { return std::sin(x); }),
                                      ScalarField::zero(g)),
               ParameterError);
}

TEST(VectorField, MixedGridsRejected) {
  EXPECT_THROW(VectorField(ScalarField::zero(make_grid(16, 1.0)), ScalarField::zero(make_grid(32, 1.0))),
               GridMismatchError);
}

TEST(JacobianBracket, SelfBracketIsExactlyZero) {
  std::mt19937_64 rng(3);
  const Grid g = make_grid(64, 2.0 * kPi);
  const auto p = random_scalar(g, rng);
  const auto pp = jacobian_bracket(p, p);
  for (double v : pp.values()) EXPECT_EQ(v, 0.0);
}

TEST(JacobianBracket, SineBracket) {
  const Grid g = make_grid(64, 2.0 * kPi);
  const auto sx = ScalarField::sample(g, [](double x, double) { return std::sin(x); });
  const auto sy = ScalarField::sample(g, [](double, double y) { return std::sin(y); });
  const auto expected =
      ScalarField::sample(g, [](double x, double y) { return std::cos(x) * std::cos(y); });
  EXPECT_LE(max_diff(jacobian_bracket(sx, sy), expected), 1e-12);
}

TEST(JacobianBracket, AntisymmetricWithZeroIntegral) {
  std::mt19937_64 rng(23);
  const Grid g = make_grid(64, 2.0 * kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = random_scalar(g, rng, 10);
    const auto q = random_scalar(g, rng, 10);
    const auto pq = jacobian_bracket(p, q);
    const auto qp = jacobian_bracket(q, p);
    EXPECT_LE((pq + qp).max_abs(), 1e-14 * pq.max_abs());
    const auto one = ScalarField::sample(g, [](double, double) { return 1.0; });
    EXPECT_LE(std::abs(grid_integral(pq, one)), 1e-12 * pq.max_abs() * g.length() * g.length());
    // int p {p, q} = 0
    const double s = grid_integral(p, pq);
    double scale = 0.0;
    for (std::size_t i = 0; i < pq.values().size(); ++i)
      scale += std::abs(p.values()[i] * pq.values()[i]) * g.cell_area();
    EXPECT_LE(std::abs(s), 1e-10 * scale);
  }
}

TEST(JacobianBracket, GridMismatchThrows) {
  EXPECT_THROW(jacobian_bracket(ScalarField::zero(make_grid(16, 1.0)), ScalarField::zero(make_grid(16, 2.0))),
               GridMismatchError);
}

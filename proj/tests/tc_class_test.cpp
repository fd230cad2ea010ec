#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "random_tc.hpp"
#include "shiftlab/errors.hpp"
#include "shiftlab/tc_class.hpp"

using namespace shiftlab;
using shiftlab::testing::close;
using shiftlab::testing::two_atom_tuple;
using shiftlab::testing::two_atom_sigma;
using shiftlab::testing::random_tuple;
using shiftlab::testing::Rng;

namespace {

void expect_same_measure(const Measure1D& a, const Measure1D& b, double tol = 1e-12) {
  for (int k = 0; k <= 8; ++k) EXPECT_TRUE(close(moment(a, k), moment(b, k), tol)) << k;
}

double relative_gap(double x, double y) { return std::abs(x - y) / std::max(std::abs(x), std::abs(y)); }

}  // namespace

TEST(TcClass, ValidateRejectsBadTuples) {
  FiveTuple ft = two_atom_tuple(0.6, 0.8, 0.7);
  ft.sigma = 0.5 * ft.sigma;
  EXPECT_THROW(validate(ft), std::invalid_argument);
  ft = two_atom_tuple(0.6, 0.8, 0.7);
  ft.a = 0.0;
  EXPECT_THROW(validate(ft), std::invalid_argument);
}

TEST(TcClass, TwoAtomDiagram) {
  double x = 0.6, y = 0.8, a = 0.7;
  ShiftGrid g = build_grid(two_atom_tuple(x, y, a), {12, 12});
  EXPECT_NEAR(g.alpha({0, 0}), x, 1e-15);
  EXPECT_NEAR(g.beta({0, 0}), y, 1e-15);
  EXPECT_NEAR(g.alpha({0, 1}), a, 1e-15);
  EXPECT_NEAR(g.beta({1, 0}), a * y / x, 1e-15);
  for (int i = 1; i < 6; ++i) {
    EXPECT_NEAR(g.alpha({i, 0}), 1.0, 1e-15);
    EXPECT_NEAR(g.beta({0, i}), 1.0, 1e-15);
    EXPECT_NEAR(g.alpha({i, i}), 1.0, 1e-15);
  }
  EXPECT_NEAR(gamma2d(g, {1, 1}), a * a * y * y, 1e-15);
  EXPECT_TRUE(commutes(g, {10, 10}));
}

TEST(TcClass, AllOnesDiagram) {
  FiveTuple ft{Measure1D::dirac(1.0), Measure1D::dirac(1.0), 1.0, Measure1D::dirac(1.0), Measure1D::dirac(1.0)};
  ShiftGrid g = build_grid(ft, {8, 8});
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      EXPECT_NEAR(g.alpha({i, j}), 1.0, 1e-15);
      EXPECT_NEAR(g.beta({i, j}), 1.0, 1e-15);
    }
  }
}

TEST(TcClass, UnboundedSeam) {
  // xi reaches beyond sigma at the top, so the column leads blow up.
  FiveTuple ft{Measure1D({{0.0, 0.5}, {0.5, 0.5}}, {}, Measure1D::Sign::positive), Measure1D::dirac(1.0), 0.5,
               Measure1D::dirac(1.0), Measure1D::dirac(1.0)};
  EXPECT_THROW(build_grid(ft), Unbounded);
}

TEST(TcClass, TwoAtomPsiPhi) {
  PsiPhi pp = psi_phi(two_atom_tuple(0.6, 0.8, 0.7));
  ASSERT_EQ(pp.psi.atoms().size(), 1u);
  EXPECT_NEAR(pp.psi.mass_at(1.0), 0.51, 1e-12);
  EXPECT_NEAR(pp.phi.mass_at(0.0), 0.3136, 1e-12);
  EXPECT_NEAR(pp.phi.mass_at(1.0), 0.0464, 1e-12);
  EXPECT_TRUE(is_subnormal(two_atom_tuple(0.6, 0.8, 0.7)));

  Verdict bad = is_subnormal(two_atom_tuple(0.3, 0.99, 0.1));
  EXPECT_FALSE(bad);
  EXPECT_EQ(std::get<double>(bad.witness), 0.0);
  EXPECT_EQ(bad.note.rfind("phi", 0), 0u);
  EXPECT_NEAR(psi_phi(two_atom_tuple(0.3, 0.99, 0.1)).phi.mass_at(0.0), 0.91 - 0.9801 * 0.99, 1e-12);
}

TEST(TcClass, PsiPhiSmallCoupling) {
  FiveTuple ft = two_atom_tuple(0.6, 0.8, 1e-9);
  PsiPhi pp = psi_phi(ft);
  Measure1D tau1 = restriction_measure(ft.tau, 1);
  expect_same_measure(pp.psi, tau1, 1e-12);
  EXPECT_NEAR(pp.phi.mass_at(0.0), 0.64 - 0.64 * integrate_power(tau1, -1.0), 1e-12);
}

TEST(TcClass, TensorTupleIsSubnormalWithProductMeasure) {
  Measure1D mu1({{0.0, 0.3}, {0.5, 0.3}, {1.0, 0.4}}, {}, Measure1D::Sign::positive);
  Measure1D mu2({{0.2, 0.5}, {1.0, 0.5}}, {}, Measure1D::Sign::positive);
  FiveTuple ft{mu1, mu2, std::sqrt(moment(mu1, 1)), restriction_measure(mu1, 1), restriction_measure(mu2, 1)};
  EXPECT_TRUE(is_subnormal(ft));
  Measure2D mu = berger_measure(ft);
  for (int i = 0; i <= 5; ++i) {
    for (int j = 0; j <= 5; ++j) EXPECT_TRUE(close(moment2d(mu, i, j), moment(mu1, i) * moment(mu2, j), 1e-12));
  }
}

TEST(TcClass, Transpose) {
  double x = 0.6, y = 0.8, a = 0.7;
  FiveTuple t = transpose(two_atom_tuple(x, y, a));
  expect_same_measure(t.sigma, two_atom_sigma(y));
  expect_same_measure(t.tau, two_atom_sigma(x));
  EXPECT_NEAR(t.a, a * y / x, 1e-15);

  Rng rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    FiveTuple ft = random_tuple(rng);
    FiveTuple back = transpose(transpose(ft));
    EXPECT_NEAR(back.a, ft.a, 1e-12);
    expect_same_measure(back.sigma, ft.sigma);
    expect_same_measure(back.xi, ft.xi);
    ShiftGrid g = build_grid(ft, {10, 10}), swapped_grid = build_grid(transpose(ft), {10, 10});
    for (int i = 0; i <= 8; ++i) {
      for (int j = 0; j <= 8; ++j) {
        EXPECT_TRUE(close(swapped_grid.alpha({i, j}), g.beta({j, i}), 1e-12)) << i << "," << j;
        EXPECT_TRUE(close(swapped_grid.beta({i, j}), g.alpha({j, i}), 1e-12)) << i << "," << j;
      }
    }
  }

  FiveTuple sym = two_atom_tuple(0.7, 0.7, 0.5);
  FiveTuple fixed = transpose(sym);
  EXPECT_NEAR(fixed.a, sym.a, 1e-15);
  expect_same_measure(fixed.sigma, sym.sigma);
}

TEST(TcClass, PowerExamples) {
  FiveTuple ft = two_atom_tuple(0.6, 0.8, 0.7);
  auto one = power(ft, 1, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].a, ft.a);

  auto col = power(ft, 1, 2);
  ASSERT_EQ(col.size(), 2u);
  expect_same_measure(col[1].sigma, two_atom_sigma(0.7));
  EXPECT_NEAR(col[1].a, 0.7, 1e-15);
  expect_same_measure(col[1].xi, Measure1D::dirac(1.0));
  expect_same_measure(col[1].eta, Measure1D::dirac(1.0));
  EXPECT_EQ(power(ft, 3, 2).size(), 6u);
}

TEST(TcClassProperty, RandomTuplesCommute) {
  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    FiveTuple ft = random_tuple(rng);
    EXPECT_TRUE(commutes(build_grid(ft, {12, 12}), {10, 10})) << trial;
  }
}

TEST(TcClassProperty, PowerSummandsMatchRestrictedGrid) {
  Rng rng(33);
  for (int trial = 0; trial < 8; ++trial) {
    FiveTuple ft = random_tuple(rng);
    ShiftGrid full = build_grid(ft, {30, 30});
    for (auto [m, n] : {std::pair{1, 2}, std::pair{2, 1}, std::pair{2, 2}, std::pair{1, 3}}) {
      auto summands = power(ft, m, n);
      for (int p = 0; p < m; ++p) {
        for (int q = 0; q < n; ++q) {
          ShiftGrid restricted = full.restricted(m, n, {p, q});
          ShiftGrid built = build_grid(summands[p * n + q], {6, 6});
          for (int i = 0; i <= 4; ++i) {
            for (int j = 0; j <= 4; ++j) {
              EXPECT_LT(relative_gap(gamma2d(restricted, {i, j}), gamma2d(built, {i, j})), 1e-10)
                  << "trial " << trial << " (" << m << "," << n << ") summand (" << p << "," << q << ") at " << i
                  << "," << j;
            }
          }
        }
      }
    }
  }
}

TEST(TcClassProperty, BergerMeasureReproducesMoments) {
  Rng rng(34);
  int checked = 0;
  FiveTuple ex = two_atom_tuple(0.6, 0.8, 0.7);
  EXPECT_NEAR(moment2d(berger_measure(ex), 1, 1), 0.3136, 1e-12);
  while (checked < 10) {
    FiveTuple ft = random_tuple(rng);
    if (!is_subnormal(ft)) {
      EXPECT_THROW(berger_measure(ft), NotSubnormal);
      continue;
    }
    ++checked;
    Measure2D mu = berger_measure(ft);
    ShiftGrid g = build_grid(ft, {8, 8});
    for (int i = 0; i <= 6; ++i) {
      for (int j = 0; j <= 6; ++j) {
        EXPECT_LT(relative_gap(moment2d(mu, i, j), gamma2d(g, {i, j})), 1e-10) << i << "," << j;
      }
    }
  }
}

TEST(TcClassProperty, ColumnPowerIdentities) {
  Rng rng(35);
  for (int trial = 0; trial < 20; ++trial) {
    FiveTuple ft = random_tuple(rng);
    PsiPhi base = psi_phi(ft);
    WeightSeq y = weights_from_measure(ft.tau);
    for (int n = 2; n <= 4; ++n) {
      auto summands = power(ft, 1, n);
      PsiPhi s0 = psi_phi(summands[0]);
      PsiPhi s1 = psi_phi(summands[1]);
      double tail = y.gamma(n + 1) / y.gamma(1);
      for (int k = 0; k <= 10; ++k) {
        double lhs = moment(s1.psi, k), rhs = moment(base.psi, n * (k + 1)) / tail;
        EXPECT_TRUE(close(lhs, rhs, 1e-10)) << "n " << n << " k " << k << ": " << lhs << " vs " << rhs;
      }
      double lhs = y.gamma(n) * integrate_power(s0.psi, -1.0);
      double rhs = y.gamma(1) * integrate_power(base.psi, -1.0);
      EXPECT_TRUE(close(lhs, rhs, 1e-10)) << "n " << n;
    }
  }
}

TEST(TcClassProperty, ColumnPowerVerdicts) {
  Rng rng(36);
  for (int trial = 0; trial < 50; ++trial) {
    FiveTuple ft = random_tuple(rng);
    PsiPhi base = psi_phi(ft);
    for (int n = 2; n <= 3; ++n) {
      auto summands = power(ft, 1, n);
      EXPECT_EQ(bool(is_nonnegative(psi_phi(summands[1]).psi)), bool(is_nonnegative(base.psi))) << trial;
      EXPECT_EQ(bool(is_nonnegative(psi_phi(summands[0]).phi)), bool(is_nonnegative(base.phi))) << trial;
    }
  }
}

TEST(TcClassProperty, SubnormalImpliesHyponormal) {
  Rng rng(37);
  int checked = 0;
  while (checked < 10) {
    FiveTuple ft = random_tuple(rng);
    if (!is_subnormal(ft)) continue;
    ++checked;
    EXPECT_TRUE(six_point_test(build_grid(ft, {21, 21}), {20, 20}));
  }
}

TEST(TcClass, PowerEquivalenceExamples) {
  TheoremReport good = verify_theorem(two_atom_tuple(0.6, 0.8, 0.7), 3, 3);
  EXPECT_TRUE(good.base);
  ASSERT_EQ(good.entries.size(), 9u);
  for (const auto& e : good.entries) {
    EXPECT_TRUE(e.subnormal);
    EXPECT_EQ(e.status, TheoremEntry::Status::agree);
  }
  TheoremReport bad = verify_theorem(two_atom_tuple(0.3, 0.99, 0.1), 3, 3);
  EXPECT_FALSE(bad.base);
  EXPECT_EQ(bad.defects, 0);
  for (const auto& e : bad.entries) {
    EXPECT_FALSE(e.subnormal);
    EXPECT_GE(e.failing_count, 1);
    EXPECT_EQ(e.status, TheoremEntry::Status::agree);
  }
}

TEST(TcClass, ComponentsSubnormal) {
  EXPECT_TRUE(components_subnormal(two_atom_tuple(0.6, 0.8, 0.7)));
  Verdict v = components_subnormal(two_atom_tuple(0.6, 0.8, 1.2));
  EXPECT_FALSE(v);
  EXPECT_TRUE(v.has_witness());
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "hsum/continuation.hpp"
#include "hsum/exact_eval.hpp"
#include "hsum/mellin_oracle.hpp"

using namespace hsum;

namespace {

const long double kZeta2 = ConstantTable::zeta2, kZeta3 = ConstantTable::zeta3, kLn2 = ConstantTable::ln2;

// Integer-N values of the continuable functions from directly accumulated sums.
long double integer_reference(const std::string& id, unsigned n) {
  long double s1 = 0, sm1 = 0, s1m1 = 0, s21 = 0, sm21 = 0;
  for (unsigned k = 1; k + 1 <= n; ++k) {
    const long double sg = (k % 2) ? -1.0L : 1.0L;
    s1 += 1.0L / k;
    sm1 += sg / k;
    s1m1 += sm1 / k;
    s21 += s1 / ((long double)k * k);
    sm21 += sg * s1 / ((long double)k * k);
  }
  const long double alt = (n % 2) ? -1.0L : 1.0L;
  if (id == "F0") return s1;
  if (id == "F1") return alt * (s1m1 + kLn2 * (s1 - sm1) - kLn2 * kLn2 / 2);
  if (id == "F2") return kZeta2 * s1 - s21;
  return alt * (sm21 - kZeta2 * sm1 - kZeta2 * kLn2 + 5 * kZeta3 / 8);
}

// Independent rational power series in u for Watson's lemma.
using Series = std::vector<Rational>;

Series mul(const Series& a, const Series& b) {
  Series c(a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

Series inverse(const Series& a) {
  Series b(a.size(), Rational(0));
  b[0] = 1 / a[0];
  for (std::size_t n = 1; n < a.size(); ++n) {
    Rational s = 0;
    for (std::size_t k = 1; k <= n; ++k) s += a[k] * b[n - k];
    b[n] = -s / a[0];
  }
  return b;
}

}  // namespace

TEST(Registry, Catalog) {
  const auto w2 = registry_list({2, 2, std::nullopt});
  ASSERT_EQ(w2.size(), 1u);
  EXPECT_EQ(w2[0].numerator, "ln(1+x)");
  EXPECT_EQ(w2[0].denominator_sign, 1);
  const auto w3 = registry_list({3, 3, std::nullopt});
  ASSERT_EQ(w3.size(), 2u);
  for (const auto& f : w3) EXPECT_EQ(f.numerator, "Li2(x)");
  EXPECT_NE(w3[0].denominator_sign, w3[1].denominator_sign);

  std::set<std::string> w6;
  for (const auto& f : registry_list({6, 6, Support::registry_only})) w6.insert(f.designation);
  for (const char* d : {"A1(x)/(x+1)", "A2(x)/(x+1)", "A2(x)/(x-1)_+", "A3(x)/(x+1)", "H(0,-1,0,1,1;x)/(x-1)_+"})
    EXPECT_TRUE(w6.count(d)) << d;

  std::set<std::string> cont;
  for (const auto& f : registry_list({1, 6, Support::continuable})) cont.insert(f.id);
  EXPECT_EQ(cont, (std::set<std::string>{"F0", "F1", "F2", "F3"}));
  for (const auto& f : registry()) EXPECT_GE(f.weight, 1u);
  EXPECT_EQ(physics_class_counts().back().count, "35");
  EXPECT_THROW(find_function("F99"), UsageError);
  EXPECT_THROW(require_continuable("F4"), CapabilityError);
}

TEST(Taylor, Examples) {
  const auto a = taylor_at_one("li2_1mx_over_1px", 4);
  EXPECT_EQ(a[0], 0);
  EXPECT_EQ(a[1], Rational(1, 2));
  // Li2(t)/(2-t) = (t + t^2/4 + t^3/9)(1/2 + t/4 + t^2/8): t^2 -> 1/4 + 1/8, t^3 -> 1/8 + 1/16 + 1/18
  EXPECT_EQ(a[2], Rational(3, 8));
  EXPECT_EQ(a[3], Rational(1, 8) + Rational(1, 16) + Rational(1, 18));
  const auto one = taylor_at_one("one", 3);
  EXPECT_EQ(one, (std::vector<Rational>{1, 0, 0, 0}));
  const auto x = taylor_at_one("x", 3);
  EXPECT_EQ(x, (std::vector<Rational>{1, -1, 0, 0}));
  EXPECT_EQ(taylor_at_one("F0", 2), (std::vector<Rational>{1, 0, 0}));
  EXPECT_THROW(taylor_at_one("F3", 3), CapabilityError);
  EXPECT_THROW(taylor_at_one("F2", 3), CapabilityError);
  EXPECT_THROW(taylor_at_one("F1", 3), CapabilityError);
}

TEST(MapBranch, Decompositions) {
  EXPECT_NE(map_branch("F3").mapping.find("-Li2(1-x) - ln(x) ln(1-x) + zeta2"), std::string::npos);
  EXPECT_NE(map_branch("F1").mapping.find("identity"), std::string::npos);
  EXPECT_EQ(map_branch("F0").terms.size(), 1u);
  EXPECT_EQ(map_branch("F0").terms[0].kind, MellinKind::plus_harmonic);
  EXPECT_THROW(map_branch("F5"), CapabilityError);
  EXPECT_THROW(map_branch("nope"), UsageError);
}

TEST(FactorialSeries, ClosedForms) {
  const FactorialSeries one{{1, 0, 0, 0}, 1};
  const ComplexValue z(3.5, 1.25);
  EXPECT_LE(std::abs(factorial_series_eval(one, z, 4).value - 1.0 / z), 1e-16);
  const FactorialSeries omx{{0, 1, 0, 0}, 1};
  EXPECT_LE(std::abs(factorial_series_eval(omx, z, 4).value - 1.0 / (z * (z + 1.0))), 1e-16);
  EXPECT_THROW(factorial_series_eval(one, 0.0, 3), PoleError);
  EXPECT_THROW(factorial_series_eval(one, -4.0, 3), PoleError);
  EXPECT_TRUE(factorial_series_eval(one, 0.5, 3).below_threshold);
  EXPECT_FALSE(factorial_series_eval(one, 2.0, 3).below_threshold);
}

TEST(FactorialSeries, ComponentMatchesQuadratureAtThirty) {
  for (const char* c : {"li2_1mx_over_1px", "log_half_1px_over_1px", "li2_1mx_over_1mx"}) {
    const auto s = factorial_series(c, 30);
    const auto v = factorial_series_eval(s, 30.0, 30);
    const auto q = mellin_numeric(c, 30.0);
    EXPECT_LE(std::abs(v.value - q.value), std::max(1e-10 * std::abs(q.value), q.error_estimate)) << c;
    EXPECT_LT(v.error_estimate, 1e-10);
  }
}

TEST(FactorialSeries, LogPowerGivesDerivative) {
  // d/dz 1/(z(z+1)) = M[ln(x) (1-x)]
  const auto s = factorial_series("one_minus_x", 40, 1);
  for (ComplexValue z : {ComplexValue(20), ComplexValue(22, 3), ComplexValue(25, -2)}) {
    const ComplexValue exact = -(2.0 * z + 1.0) / (z * z * (z + 1.0) * (z + 1.0));
    EXPECT_LE(std::abs(factorial_series_eval(s, z, 40).value - exact), 1e-10 * std::abs(exact)) << z;
  }
}

TEST(Asymptotic, LiTwoOneMinusOverOnePlus) {
  const auto a = asymptotic_coeffs("li2_1mx_over_1px", 8);
  EXPECT_EQ(a.coefficients[0], 0);
  EXPECT_EQ(a.coefficients[1], 0);
  EXPECT_EQ(a.coefficients[2], Rational(1, 2));
  EXPECT_EQ(a.coefficients[3], Rational(1, 4));
  EXPECT_EQ(a.coefficients[4], Rational(-7, 24));
  EXPECT_EQ(a.coefficients[5], Rational(-1, 3));
  EXPECT_EQ(a.coefficients[6], Rational(73, 120));
}

TEST(Asymptotic, WatsonLemmaOracle) {
  // x = e^-u: M[phi](N) = int_0^inf e^(-N u) phi(e^-u) du ~ sum_j g_j j! / N^(j+1)
  const unsigned order = 14;
  Series emu(order + 1), t(order + 1, Rational(0));
  Rational f = 1;
  for (unsigned j = 0; j <= order; ++j) {
    if (j) f *= j;
    emu[j] = ((j % 2) ? Rational(-1) : Rational(1)) / f;  // e^-u
    if (j) t[j] = -emu[j];                                  // 1 - e^-u
  }
  Series li2(order + 1, Rational(0)), power = t;
  for (unsigned k = 1; k <= order; ++k, power = mul(power, t))
    for (unsigned j = 0; j <= order; ++j) li2[j] += power[j] / Rational(k * k);
  Series one_plus = emu;
  one_plus[0] += 1;
  const Series g = mul(li2, inverse(one_plus));
  const auto a = asymptotic_coeffs("li2_1mx_over_1px", order);
  Rational jf = 1;
  for (unsigned j = 0; j < order; ++j) {
    if (j) jf *= j;
    EXPECT_EQ(a.coefficients[j + 1], g[j] * jf) << "N^-" << j + 1;
  }
}

TEST(Asymptotic, GeometricClosedForm) {
  // 1/(z(z+1)) = z^-2 - z^-3 + z^-4 - ...
  const auto a = asymptotic_coeffs("one_minus_x", 10);
  EXPECT_EQ(a.coefficients[1], 0);
  for (unsigned j = 2; j <= 10; ++j) EXPECT_EQ(a.coefficients[j], (j % 2) ? Rational(-1) : Rational(1)) << j;
}

TEST(Asymptotic, AgreesWithQuadratureAndImprovesWithOrder) {
  const auto a = asymptotic_coeffs("li2_1mx_over_1px", 24);
  for (double n : {30.0, 50.0}) {
    const auto q = mellin_numeric("li2_1mx_over_1px", n);
    const auto v = asymptotic_eval(a, n);
    EXPECT_LE(std::abs(v.value - q.value), std::max(1e-10 * std::abs(q.value), q.error_estimate + v.error_estimate))
        << n;
    double previous = INFINITY;
    for (unsigned terms : {4u, 8u, 12u, 16u}) {
      const double err = std::abs(asymptotic_eval(a, n, terms).value - q.value);
      EXPECT_LT(err, previous) << n << " terms=" << terms;
      previous = err;
    }
  }
  EXPECT_THROW(asymptotic_eval(a, 5.0), CapabilityError);
}

TEST(Continuation, IntegerConsistency) {
  for (const char* id : {"F0", "F1", "F2", "F3"})
    for (unsigned n = 5; n <= 40; ++n) {
      const long double ref = integer_reference(id, n);
      const ComplexValue v = evaluate_complex(id, static_cast<double>(n));
      EXPECT_LE(std::fabs(v.real() - static_cast<double>(ref)), 1e-10 * std::fabs(static_cast<double>(ref)))
          << id << " N=" << n;
      EXPECT_LE(std::fabs(v.imag()), 1e-15);
    }
}

TEST(Continuation, SpotValues) {
  EXPECT_NEAR(evaluate_complex("F0", 2.0).real(), 1.0, 1e-14);
  const auto q = mellin_numeric("F3", 1.0);
  EXPECT_NEAR(evaluate_complex("F3", 1.0).real(), q.value.real(), std::max(1e-10, q.error_estimate));
  // F3 displayed recursion at z=2: F3(3) + F3(2) = (1/2)[zeta2 - (psi(3)+gammaE)/2]
  const double lhs = evaluate_complex("F3", 3.0).real() + evaluate_complex("F3", 2.0).real();
  const double rhs = 0.5 * (static_cast<double>(kZeta2) - 1.5 / 2);
  EXPECT_NEAR(lhs, rhs, 1e-12);
  const double qlhs = mellin_numeric("F3", 3.0).value.real() + mellin_numeric("F3", 2.0).value.real();
  EXPECT_NEAR(qlhs, rhs, 1e-10);
}

TEST(Continuation, ShiftIdentityOnRandomGrid) {
  std::mt19937 rng(2718);
  std::uniform_real_distribution<double> re(1.0, 10.0), im(-10.0, 10.0);
  for (const char* id : {"F0", "F1", "F2", "F3"})
    for (int i = 0; i < 100; ++i) {
      const ComplexValue z(re(rng), im(rng));
      const auto s = recursion_shift(id, z);
      const ComplexValue predicted = static_cast<double>(s.sign) * evaluate_complex(id, z) + s.inhomogeneity;
      EXPECT_LE(std::abs(evaluate_complex(id, z + 1.0) - predicted), 1e-12) << id << " " << z;
    }
  EXPECT_NE(recursion_shift("F3", 2.0).formula.find("-F3(z)"), std::string::npos);
}

TEST(Continuation, ShiftIdentityAgainstQuadrature) {
  for (const char* id : {"F1", "F3"})
    for (ComplexValue z : {ComplexValue(1), ComplexValue(2.5, 1)}) {
      const auto s = recursion_shift(id, z);
      const ComplexValue lhs = mellin_numeric(id, z + 1.0).value;
      const ComplexValue rhs = static_cast<double>(s.sign) * mellin_numeric(id, z).value + s.inhomogeneity;
      EXPECT_LE(std::abs(lhs - rhs), 1e-10) << id << " " << z;
    }
}

TEST(Continuation, PolesAndNearPoles) {
  for (double p : {0.0, -1.0, -6.0}) EXPECT_THROW(evaluate_complex("F3", p), PoleError);
  const auto near = evaluate_jet("F1", ComplexValue(-2.0 + 5e-4, 0), 0);
  EXPECT_TRUE(near.degraded_accuracy);
  EXPECT_FALSE(evaluate_jet("F1", ComplexValue(-2.5, 0.5), 0).degraded_accuracy);
  EXPECT_THROW(evaluate_complex("F4", 2.0), CapabilityError);
}

TEST(Continuation, LeftHalfPlaneViaFoldBack) {
  // F0(z) = psi(z) + gammaE holds off the real axis in the left half-plane
  for (ComplexValue z : {ComplexValue(-3.5, 0.25), ComplexValue(-0.5, 2)}) {
    const ComplexValue exact = psi(z) + static_cast<double>(ConstantTable::gamma_e);
    EXPECT_LE(std::abs(evaluate_complex("F0", z) - exact), 1e-12) << z;
  }
}

TEST(Differentiate, ClosureS2) {
  for (unsigned n = 3; n <= 20; ++n) {
    // S1(N) = F0(N+1)
    const double rhs = -differentiate("F0", n + 1.0).real() + static_cast<double>(kZeta2);
    const double s2 = eval_exact(IndexVector{2}, n).get_d();
    EXPECT_NEAR(rhs, s2, 1e-9) << n;
  }
}

TEST(Differentiate, AgreesWithFiniteDifference) {
  const double h = 1e-5;
  for (const char* id : {"F0", "F1", "F2", "F3"})
    for (ComplexValue z : {ComplexValue(1.5), ComplexValue(4, 2), ComplexValue(9.75, -3), ComplexValue(27)}) {
      const ComplexValue fd = (evaluate_complex(id, z + h) - evaluate_complex(id, z - h)) / (2 * h);
      EXPECT_LE(std::abs(differentiate(id, z) - fd), 1e-7) << id << " " << z;
    }
}

TEST(Differentiate, MatchesLogWeightedQuadrature) {
  // d/dz M[Li2(x)/(1+x)] = M[ln(x) Li2(x)/(1+x)]
  MellinIntegrand f{"ln_li2", "ln(x)Li2(x)/(1+x)", false, [](double x, double y) {
                      return (x < 0.5 ? std::log(x) : std::log1p(-y)) * li2(x, y) / (1 + x);
                    }};
  for (ComplexValue z : {ComplexValue(2), ComplexValue(6.5, 1.5)}) {
    const auto q = mellin_numeric(f, z);
    EXPECT_LE(std::abs(differentiate("F3", z) - q.value), std::max(1e-10, q.error_estimate)) << z;
  }
}

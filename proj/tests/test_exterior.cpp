#include <doctest.h>

#include "erpg2/deform.hpp"
#include "erpg2/fixtures.hpp"

#include <random>

using namespace erpg2;
using namespace erpg2::fixtures;

namespace {

std::mt19937_64 rng(7041);

KForm<double> random_form(int degree) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  KForm<double> f(degree);
  for (int i = 0; i < f.size(); ++i) f.coeff_slot(i) = U(rng);
  return f;
}

KForm<Exact> random_exact_form(int degree) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 5);
  KForm<Exact> f(degree);
  for (int i = 0; i < f.size(); ++i) f.coeff_slot(i) = Exact::rational(num(rng), den(rng));
  return f;
}

Matrix<double> random_matrix(int n) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Matrix<double> m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = U(rng);
  return m;
}

double form_dist(const KForm<double>& a, const KForm<double>& b) {
  return (a - b).max_abs();
}

Exact third() { return Exact::rational(1, 3); }

} // namespace

TEST_CASE("wedge basics") {
  KForm<Exact> e1(1), e2(1);
  e1.add_term({1}, Exact(1));
  e2.add_term({2}, Exact(1));
  KForm<Exact> e12(2);
  e12.add_term({1, 2}, Exact(1));
  CHECK(wedge(e1, e2) == e12);

  const auto& tau = tau_std<Exact>();
  KForm<Exact> tt = wedge(tau, tau);
  KForm<Exact> expect(4);
  expect.add_term({1, 2, 5, 6}, Exact(-2));
  CHECK(tt == expect);

  CHECK(wedge(omega<Exact>(), rho_plus<Exact>()).is_zero());
  CHECK_THROWS_AS(wedge(star_phi<Exact>(), star_phi<Exact>()), FormError);
}

TEST_CASE("wedge is graded-anticommutative and bilinear (random)") {
  for (int it = 0; it < 200; ++it) {
    int p = 1 + static_cast<int>(rng() % 3), q = 1 + static_cast<int>(rng() % 3);
    KForm<double> a = random_form(p), b = random_form(q);
    double sg = (p * q) % 2 ? -1.0 : 1.0;
    CHECK(form_dist(wedge(a, b), sg * wedge(b, a)) < 1e-12);
  }
}

TEST_CASE("interior product") {
  KForm<Exact> e12(2);
  e12.add_term({1, 2}, Exact(1));
  KForm<Exact> e2(1);
  e2.add_term({2}, Exact(1));
  CHECK(interior(1, e12) == e2);

  KForm<Exact> tt = wedge(tau_std<Exact>(), tau_std<Exact>());
  CHECK(interior(3, tt).is_zero());
  KForm<Exact> expect(3);
  expect.add_term({2, 5, 6}, Exact(-2));
  CHECK(interior(1, tt) == expect);

  for (int it = 0; it < 100; ++it) { // (i_X)^2 = 0
    KForm<double> a = random_form(3);
    std::array<double, 7> X;
    std::uniform_real_distribution<double> U(-1, 1);
    for (auto& v : X) v = U(rng);
    CHECK(interior(X, interior(X, a)).max_abs() < 1e-12);
  }
}

TEST_CASE("hodge stars against the locked frame") {
  CHECK(star7(phi<Exact>()) == star_phi<Exact>());
  CHECK(star6(omega<Exact>()) ==
        Exact::rational(1, 2) * wedge(omega<Exact>(), omega<Exact>()));
  CHECK(star6(rho_plus<Exact>()) == rho_minus<Exact>());
  KForm<Exact> e347(3);
  e347.add_term({3, 4, 7}, Exact(-2));
  CHECK(star7(wedge(tau_std<Exact>(), tau_std<Exact>())) == e347);
  KForm<Exact> with7(1);
  with7.add_term({7}, Exact(1));
  CHECK_THROWS_AS(star6(with7), FormError);
}

TEST_CASE("star involutivity and the 6-dim signs") {
  for (int k = 0; k <= 7; ++k)
    for (int it = 0; it < 150; ++it) {
      KForm<double> a = random_form(k);
      CHECK(form_dist(star7(star7(a)), a) < 1e-12);
    }
  for (int k = 0; k <= 6; ++k) {
    KForm<Exact> a = random_exact_form(k);
    // zero out anything touching e7
    for (int s = 0; s < a.size(); ++s)
      if (mindex::masks(k)[s] & 0x40u) a.coeff_slot(s) = Exact(0);
    KForm<Exact> ss = star6(star6(a));
    CHECK(ss == (k % 2 ? -a : a));
  }
}

TEST_CASE("inner product pairing a ^ *6 b = <a,b> e^{1..6}") {
  for (int k = 1; k <= 3; ++k)
    for (int it = 0; it < 100; ++it) {
      KForm<double> a = random_form(k), b = random_form(k);
      for (auto* f : {&a, &b})
        for (int s = 0; s < f->size(); ++s)
          if (mindex::masks(k)[s] & 0x40u) f->coeff_slot(s) = 0.0;
      double ip = 0;
      for (int s = 0; s < a.size(); ++s) ip += a.coeff_slot(s) * b.coeff_slot(s);
      KForm<double> top = wedge(a, star6(b));
      CHECK(top.coeff({1, 2, 3, 4, 5, 6}) == doctest::Approx(ip).epsilon(1e-10));
    }
}

TEST_CASE("theta is the derivative of the action") {
  CHECK(theta(T7<Exact>(), tau_std<Exact>()) == third() * omega7<Exact>());

  IndexedEndo<Exact> id6 = on_h(Matrix<Exact>::identity(6));
  KForm<Exact> top6(6);
  top6.add_term({1, 2, 3, 4, 5, 6}, Exact(1));
  CHECK(theta(id6, top6) == Exact(-6) * top6);

  // finite-difference check of gl7_action(exp(tB)) ~ id + t theta(B)
  for (int it = 0; it < 25; ++it) {
    Matrix<double> B = random_matrix(7);
    KForm<double> a = random_form(3);
    double t = 1e-6;
    Matrix<double> exp_tB = Matrix<double>::identity(7);
    Matrix<double> pw = Matrix<double>::identity(7);
    for (int k = 1; k <= 12; ++k) {
      pw = (1.0 / k) * (pw * B);
      Matrix<double> term(7, 7);
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) term(i, j) = std::pow(t, k) * pw(i, j);
      exp_tB = exp_tB + term;
    }
    KForm<double> lhs = gl7_action(exp_tB, a);
    KForm<double> rhs = a + t * theta(on_full(B), a);
    CHECK(form_dist(lhs, rhs) < 1e-9); // O(t^2) = 1e-12 * |B|^2 scale
  }
}

TEST_CASE("the 18 T-actions on the named 2-forms") {
  using F = const KForm<Exact>&;
  F t = tau_std<Exact>();
  F w7 = omega7<Exact>(), w3 = omega3<Exact>(), w4 = omega4<Exact>();
  F w3b = omega3_bar<Exact>(), w4b = omega4_bar<Exact>();
  KForm<Exact> zero2(2);
  Exact th = third();

  const auto& t7 = T7<Exact>();
  CHECK(theta(t7, t) == th * w7);
  CHECK(theta(t7, w7) == th * t);
  CHECK(theta(t7, w3) == zero2);
  CHECK(theta(t7, w4) == th * w4b);
  CHECK(theta(t7, w3b) == zero2);
  CHECK(theta(t7, w4b) == th * w4);

  const auto& t3 = T3<Exact>();
  CHECK(theta(t3, t) == th * w3);
  CHECK(theta(t3, w7) == th * w3b);
  CHECK(theta(t3, w3) == th * t);
  CHECK(theta(t3, w4) == zero2);
  CHECK(theta(t3, w3b) == th * w7);
  CHECK(theta(t3, w4b) == zero2);

  const auto& t4 = T4<Exact>();
  CHECK(theta(t4, t) == th * w4);
  CHECK(theta(t4, w7) == th * w4b);
  CHECK(theta(t4, w3) == zero2);
  CHECK(theta(t4, w4) == th * t);
  CHECK(theta(t4, w3b) == zero2);
  CHECK(theta(t4, w4b) == th * w7);
}

TEST_CASE("theta/star6 conjugation identity") {
  for (int it = 0; it < 200; ++it) {
    int k = static_cast<int>(rng() % 7);
    Matrix<double> A6 = random_matrix(6);
    KForm<double> g = random_form(k);
    for (int s = 0; s < g.size(); ++s)
      if (mindex::masks(k)[s] & 0x40u) g.coeff_slot(s) = 0.0;
    KForm<double> lhs = theta(on_h(A6), star6(g)) + star6(theta(on_h(A6.transpose()), g));
    KForm<double> rhs = (-A6.trace()) * star6(g);
    CHECK(form_dist(lhs, rhs) < 1e-10);
  }
}

TEST_CASE("2-form projection onto the 7 and 14 dimensional modules") {
  auto [p7t, p14t] = project_2forms(tau_std<Exact>());
  CHECK(p7t.is_zero());
  CHECK(p14t == tau_std<Exact>());

  auto [p7w, p14w] = project_2forms(omega<Exact>());
  CHECK(p7w == omega<Exact>());
  CHECK(p14w.is_zero());
  CHECK_FALSE(wedge(omega<Exact>(), star_phi<Exact>()).is_zero());

  KForm<Exact> a(2);
  a.add_term({1, 2}, Exact(1));
  a.add_term({3, 4}, Exact(-1));
  auto [p7a, p14a] = project_2forms(a);
  CHECK(p7a.is_zero());
  CHECK(p14a == a);
  // membership characterizations on the 14-part
  CHECK(wedge(p14a, star_phi<Exact>()).is_zero());
  CHECK(wedge(p14a, phi<Exact>()) == -star7(p14a));

  for (int it = 0; it < 100; ++it) { // orthogonal, complementary
    KForm<double> x = random_form(2);
    auto [p7, p14] = project_2forms(x);
    CHECK(form_dist(p7 + p14, x) < 1e-12);
    double ip = 0;
    for (int s = 0; s < p7.size(); ++s) ip += p7.coeff_slot(s) * p14.coeff_slot(s);
    CHECK(std::fabs(ip) < 1e-10);
    CHECK(wedge(p14, star_phi<double>()).max_abs() < 1e-10);
  }
}

TEST_CASE("gl7 action: G2 membership witnesses") {
  CHECK(gl7_action(Matrix<Exact>::identity(7), phi<Exact>()) == phi<Exact>());
  CHECK(gl7_action(gtilde_matrix<Exact>(), phi<Exact>()) == phi<Exact>());
  Matrix<Exact> h = equivalence_witness_J();
  CHECK(gl7_action(h, phi<Exact>()) == phi<Exact>());
  // orthogonal: h h^t = I
  CHECK(h * h.transpose() == Matrix<Exact>::identity(7));
  Matrix<Exact> sing(7, 7);
  CHECK_THROWS_AS(gl7_action(sing, phi<Exact>()), SingularMatrix);
}

TEST_CASE("action is a group action and linearizes to theta") {
  for (int it = 0; it < 50; ++it) {
    Matrix<double> g = Matrix<double>::identity(7) + (0.4 * random_matrix(7));
    Matrix<double> h = Matrix<double>::identity(7) + (0.4 * random_matrix(7));
    KForm<double> a = random_form(2);
    KForm<double> lhs = gl7_action(g, gl7_action(h, a));
    KForm<double> rhs = gl7_action(g * h, a);
    CHECK(form_dist(lhs, rhs) < 1e-8);
  }
}

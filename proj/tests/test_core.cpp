#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qhm/element.hpp"

using namespace qhm;

namespace {
ParamsPtr P() {
  static ParamsPtr p = make_params(2, 0.3, 0.2);
  return p;
}
}  // namespace

TEST_CASE("unit and U1 evaluate") {
  auto par = P();
  auto one = unit_element(par);
  CHECK(std::abs(evaluate(one, 0, 0.3, 0.7) - cplx(1.0)) < 1e-14);
  auto U1 = u1_element(par);
  for (double x : {0.1, 0.45, 0.99})
    for (double y : {0.2, 0.8})
      CHECK(std::abs(evaluate(U1, 0, x, y) - e2pi(x)) < 1e-12);
}

TEST_CASE("frame quasi-periodicity (fold relation)") {
  auto par = P();
  auto fr = build_frame(par);
  for (double x : {0.05, 0.21, 0.4, 0.77})
    for (double y : {0.13, 0.62}) {
      cplx lhs = evaluate(fr.xi1, 1, x + 1.0, y);
      cplx rhs = e2pi(-par->c * (y - par->nu)) * evaluate(fr.xi1, 1, x, y);
      CHECK(std::abs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("frame Fourier support is {0,-c}") {
  auto par = P();
  auto fr = build_frame(par);
  for (const auto& [p, rows] : fr.xi1.coeffs) {
    CHECK(p == 1);
    for (const auto& [n, vals] : rows) {
      (void)vals;
      CHECK((n == 0 || n == -par->c));
    }
  }
}

TEST_CASE("add/scale basics") {
  auto par = P();
  auto F = random_element(par, 42, 2);
  CHECK(distance(add(F, scale(-1.0, F)), zero_element(par)) < 1e-13);
  CHECK(distance(scale(1.0, F), F) == 0.0);
  auto s = add(u1_element(par), u2_element(par));
  for (double x : {0.2, 0.6})
    for (double y : {0.3, 0.9})
      CHECK(std::abs(evaluate(s, 0, x, y) - (e2pi(x) + e2pi(y))) < 1e-12);
}

TEST_CASE("mul trivials and commutativity at degree 0") {
  auto par = P();
  auto F = random_element(par, 7, 2);
  CHECK(distance(mul(unit_element(par), F), F) < 1e-11);
  auto U1 = u1_element(par), U2 = u2_element(par);
  CHECK(distance(mul(U1, U2), mul(U2, U1)) < 1e-12);
}

TEST_CASE("star involution and unitarity of U1") {
  auto par = P();
  auto U1 = u1_element(par);
  CHECK(distance(mul(star(U1), U1), unit_element(par)) < 1e-11);
  CHECK(distance(star(unit_element(par)), unit_element(par)) < 1e-13);
  auto fr = build_frame(par);
  CHECK(distance(star(star(fr.xi1)), fr.xi1) < par->tol_num);
  auto F = random_element(par, 3, 2);
  auto G = random_element(par, 4, 2);
  CHECK(distance(star(mul(F, G)), mul(star(G), star(F))) < par->tol_num);
}

TEST_CASE("frame identities") {
  auto par = P();
  auto fr = build_frame(par);
  auto one = unit_element(par);
  auto s1 = add(mul(star(fr.xi1), fr.xi1), mul(star(fr.xi2), fr.xi2));
  auto s2 = add(mul(fr.xi1, star(fr.xi1)), mul(fr.xi2, star(fr.xi2)));
  CHECK(distance(s1, one) < par->tol_num);
  CHECK(distance(s2, one) < par->tol_num);
}

TEST_CASE("mul matches dense pointwise oracle") {
  auto par = P();
  auto fr = build_frame(par);
  auto F1 = fr.xi1;
  auto F2 = star(fr.xi2);
  auto prod = mul(F1, F2);
  const int N = 96;
  double worst = 0.0;
  for (int p = -1; p <= 1; ++p) {
    for (int a = 0; a < N; ++a) {
      for (int b = 0; b < N; ++b) {
        double x = (a + 0.5) / N, y = (b + 0.5) / N;
        cplx direct = 0.0;
        for (int q = -1; q <= 2; ++q) {
          if (std::abs(p - q) > par->p_max) continue;
          direct += evaluate(F1, q, x, y) *
                    evaluate(F2, p - q, x - 2.0 * q * par->mu, y - 2.0 * q * par->nu);
        }
        worst = std::max(worst, std::abs(evaluate(prod, p, x, y) - direct));
      }
    }
  }
  CHECK(worst < par->tol_num);
}

TEST_CASE("associativity on seeded triples") {
  auto par = P();
  for (unsigned long long s = 0; s < 20; ++s) {
    auto F = random_element(par, 100 + s, 1);
    auto G = random_element(par, 200 + s, 2);
    auto H = random_element(par, 300 + s, 1);
    CHECK(distance(mul(mul(F, G), H), mul(F, mul(G, H))) < par->tol_num);
  }
}

TEST_CASE("grading of products") {
  auto par = P();
  auto F = random_element(par, 5, 2);
  auto G = random_element(par, 6, 2);
  auto prod = mul(F, G);
  int flo = 99, fhi = -99, glo = 99, ghi = -99;
  for (int p : F.degrees()) { flo = std::min(flo, p); fhi = std::max(fhi, p); }
  for (int p : G.degrees()) { glo = std::min(glo, p); ghi = std::max(ghi, p); }
  for (int p : prod.degrees()) {
    CHECK(p >= flo + glo);
    CHECK(p <= fhi + ghi);
  }
}

TEST_CASE("random_element determinism and degree bound") {
  auto par = P();
  auto A = random_element(par, 77, 2);
  auto B = random_element(par, 77, 2);
  CHECK(distance(A, B) == 0.0);
  auto C = random_element(par, 78, 0);
  for (int p : C.degrees()) CHECK(p == 0);
  for (int p : A.degrees()) CHECK(std::abs(p) <= 2);
}

TEST_CASE("distance basics") {
  auto par = P();
  auto F = random_element(par, 9, 1);
  CHECK(distance(F, F) == 0.0);
  auto G = add(F, scale(1e-3, unit_element(par)));
  CHECK(distance(F, G) == doctest::Approx(1e-3).epsilon(1e-6));
}

TEST_CASE("bimodule inner products are pointwise products at degree 0") {
  auto par = P();
  auto fr = build_frame(par);
  // xi zeta* restricted to degree 0 equals the pointwise left inner product.
  auto prod = mul(fr.xi1, star(fr.xi2));
  for (double x : {0.1, 0.4, 0.8})
    for (double y : {0.25, 0.75}) {
      cplx lhs = evaluate(prod, 0, x, y);
      cplx rhs = evaluate(fr.xi1, 1, x, y) * std::conj(evaluate(fr.xi2, 1, x, y));
      CHECK(std::abs(lhs - rhs) < par->tol_num);
    }
}

TEST_CASE("window adequacy guard") {
  CHECK_THROWS_AS(make_params(2, 0.3, 0.2, 64, 10, 4), std::invalid_argument);
}

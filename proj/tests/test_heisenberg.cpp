#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qhm/heisenberg.hpp"

using namespace qhm;

namespace {
ParamsPtr P() {
  static ParamsPtr p = make_params(2, 0.3, 0.2);
  return p;
}

GroupElem inverse(const GroupElem& g, int c) {
  return {-g.r, -g.s, -g.t + double(c) * g.s * g.r};
}
}  // namespace

TEST_CASE("group law and inverses") {
  GroupElem g{0.3, 0.7, 0.1}, h{0.5, -0.2, 0.4};
  auto gh = compose(g, h);  // c = 1: plain matrix product
  CHECK(gh.r == doctest::Approx(0.8));
  CHECK(gh.s == doctest::Approx(0.5));
  CHECK(gh.t == doctest::Approx(0.1 + 0.4 + 0.7 * 0.5));
  for (int c : {1, 2, 3}) {
    auto gi = compose(g, inverse(g, c), c);
    CHECK(gi.r == doctest::Approx(0.0));
    CHECK(gi.s == doctest::Approx(0.0));
    CHECK(gi.t == doctest::Approx(0.0));
  }
}

TEST_CASE("alpha identity and left-action composition") {
  auto par = P();
  // Mix in xi1 so F is guaranteed nonzero-degree content (the phases that
  // distinguish the two composition orders vanish on degree 0).
  auto F = add(random_element(par, 21, 2), build_frame(par).xi1);
  CHECK(distance(act_alpha({0, 0, 0}, F), F) < 1e-13);
  GroupElem g{0.23, 0.41, 0.11}, h{-0.57, 0.19, 0.83};
  auto lhs = act_alpha(g, act_alpha(h, F));
  auto rhs = act_alpha(compose(g, h, par->c), F);
  CHECK(distance(lhs, rhs) < par->tol_num);
  // The opposite composition order must fail for noncommuting g, h.
  auto wrong = act_alpha(compose(h, g, par->c), F);
  CHECK(distance(lhs, wrong) > 1e-3);
}

TEST_CASE("trace basics and alpha-invariance") {
  auto par = P();
  CHECK(std::abs(trace(unit_element(par)) - cplx(1.0)) < 1e-13);
  CHECK(std::abs(trace(u1_element(par))) < 1e-13);
  auto F = random_element(par, 30, 2);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int i = 0; i < 10; ++i) {
    GroupElem g{uni(rng), uni(rng), uni(rng)};
    CHECK(std::abs(trace(act_alpha(g, F)) - trace(F)) < par->tol_num);
  }
}

TEST_CASE("trace property on seeded pairs") {
  auto par = P();
  for (unsigned long long s = 0; s < 5; ++s) {
    auto F = random_element(par, 400 + s, 2);
    auto G = random_element(par, 500 + s, 2);
    CHECK(std::abs(trace(mul(F, G)) - trace(mul(G, F))) < par->tol_num);
  }
}

TEST_CASE("trace positivity on samples") {
  auto par = P();
  for (unsigned long long s = 0; s < 5; ++s) {
    auto F = random_element(par, 600 + s, 2);
    CHECK(trace(mul(star(F), F)).real() > -par->tol_num);
    CHECK(std::abs(trace(mul(star(F), F)).imag()) < par->tol_num);
  }
}

TEST_CASE("sigma shifts degree-0 functions") {
  auto par = P();
  auto a = random_element(par, 71, 0);
  auto sa = sigma(a);
  for (double x : {0.12, 0.48, 0.93})
    for (double y : {0.31, 0.77}) {
      cplx lhs = evaluate(sa, 0, x, y);
      cplx rhs = evaluate(a, 0, x - 2 * par->mu, y - 2 * par->nu);
      CHECK(std::abs(lhs - rhs) < par->tol_num);
    }
}

TEST_CASE("sigma commutation with the frame") {
  auto par = P();
  auto fr = build_frame(par);
  auto a = random_element(par, 81, 0);  // degree-0 (commutative) part
  // xi a = sigma(a) xi
  CHECK(distance(mul(fr.xi1, a), mul(sigma(a), fr.xi1)) < par->tol_num);
  CHECK(distance(mul(fr.xi2, a), mul(sigma(a), fr.xi2)) < par->tol_num);
  // sigma(<xi, zeta>) = <zeta*, xi*> written multiplicatively:
  // sigma(xi* zeta) = zeta xi*
  CHECK(distance(sigma(mul(star(fr.xi1), fr.xi2)), mul(fr.xi2, star(fr.xi1))) < par->tol_num);
  CHECK(distance(sigma(mul(star(fr.xi2), fr.xi2)), mul(fr.xi2, star(fr.xi2))) < par->tol_num);
}

TEST_CASE("derivation trivials") {
  auto par = P();
  auto U1 = u1_element(par);
  CHECK(distance(derive(3, U1), zero_element(par)) < 1e-13);
  CHECK(distance(derive(1, U1), scale(cplx(0.0, -2.0 * M_PI), U1)) < 1e-9);
  auto U2 = u2_element(par);
  CHECK(distance(derive(2, U2), scale(cplx(0.0, -2.0 * M_PI), U2)) < 1e-13);
}

TEST_CASE("commutation relations of the derivations") {
  auto par = P();
  for (unsigned long long s = 0; s < 5; ++s) {
    auto F = random_element(par, 700 + s, 2);
    auto c12 = sub(derive(1, derive(2, F)), derive(2, derive(1, F)));
    CHECK(distance(c12, scale(-double(par->c), derive(3, F))) < par->tol_num);
    auto c13 = sub(derive(1, derive(3, F)), derive(3, derive(1, F)));
    CHECK(distance(c13, zero_element(par)) < par->tol_num);
    auto c23 = sub(derive(2, derive(3, F)), derive(3, derive(2, F)));
    CHECK(distance(c23, zero_element(par)) < par->tol_num);
  }
}

TEST_CASE("Leibniz rule for all derivations") {
  auto par = P();
  for (unsigned long long s = 0; s < 5; ++s) {
    auto F = random_element(par, 800 + s, 1);
    auto G = random_element(par, 900 + s, 1);
    auto prod = mul(F, G);
    for (int i : {1, 2, 3}) {
      auto lhs = derive(i, prod);
      auto rhs = add(mul(derive(i, F), G), mul(F, derive(i, G)));
      CHECK(distance(lhs, rhs) < par->tol_num);
    }
  }
}

TEST_CASE("trace annihilates the derivations") {
  auto par = P();
  for (unsigned long long s = 0; s < 5; ++s) {
    auto F = random_element(par, 1000 + s, 2);
    for (int i : {1, 2, 3}) CHECK(std::abs(trace(derive(i, F))) < par->tol_num);
  }
}

TEST_CASE("transport of derivations along the action") {
  auto par = P();
  // Pure t-translations do not transport.
  double res = 0.0;
  auto out = check_transport({0, 0, 0.37}, {0.5, -1.2, 0.8}, par, &res);
  CHECK(out.u == doctest::Approx(0.5));
  CHECK(out.v == doctest::Approx(-1.2));
  CHECK(out.w == doctest::Approx(0.8));
  CHECK(res < par->tol_num);
  // g=(r,0,0) with d2: w' = w - c r.
  out = check_transport({0.42, 0, 0}, {0, 1, 0}, par, &res);
  CHECK(out.w == doctest::Approx(-par->c * 0.42));
  CHECK(res < par->tol_num);
}

TEST_CASE("sigma transport constants") {
  auto par = P();
  // Pulling the basis derivations back along sigma^{-1} produces the
  // d3-corrections (-2 c nu, 2 c mu, 0).
  GroupElem gs{2 * par->mu, 2 * par->nu, 0.0};
  GroupElem gsi = inverse(gs, par->c);
  double res = 0.0;
  auto k1 = check_transport(gsi, {1, 0, 0}, par, &res);
  CHECK(k1.w == doctest::Approx(-2.0 * par->c * par->nu));
  CHECK(res < par->tol_num);
  auto k2 = check_transport(gsi, {0, 1, 0}, par, &res);
  CHECK(k2.w == doctest::Approx(2.0 * par->c * par->mu));
  CHECK(res < par->tol_num);
  auto k3 = check_transport(gsi, {0, 0, 1}, par, &res);
  CHECK(k3.w == doctest::Approx(1.0));
  CHECK(res < par->tol_num);
}

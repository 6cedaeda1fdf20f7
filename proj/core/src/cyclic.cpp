#include "qhm/cyclic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace qhm {

namespace {

int perm_sign(const std::vector<int>& p) {
  int s = 1;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

// Point evaluation of the full symbol with a dual phase in the degree:
// sum_p F(p,x,y) e(p theta).  Separates elements supported on any degree.
cplx eval_symbol(const QhmElement& F, double x, double y, double theta) {
  cplx acc = 0.0;
  for (int p : F.degrees()) acc += evaluate(F, p, x, y) * e2pi(p * theta);
  return acc;
}

}  // namespace

CocycleHandle trace_cocycle(const ParamsPtr& par) {
  (void)par;
  CocycleHandle h;
  h.arity = 0;
  h.even = true;
  h.label = "tau";
  h.eval = [](const std::vector<QhmElement>& a) {
    if (a.size() != 1) throw std::invalid_argument("tau: wrong tuple size");
    return trace(a[0]);
  };
  return h;
}

CocycleHandle hochschild_b(const CocycleHandle& phi) {
  CocycleHandle h;
  h.arity = phi.arity + 1;
  h.even = !phi.even;
  h.label = "b(" + phi.label + ")";
  int n = phi.arity;
  auto inner = phi.eval;
  h.eval = [inner, n](const std::vector<QhmElement>& a) {
    if (a.size() != size_t(n) + 2) throw std::invalid_argument("b: wrong tuple size");
    cplx acc = 0.0;
    for (int j = 0; j <= n; ++j) {
      std::vector<QhmElement> t;
      t.reserve(n + 1);
      for (int i = 0; i < j; ++i) t.push_back(a[i]);
      t.push_back(mul(a[j], a[j + 1]));
      for (int i = j + 2; i <= n + 1; ++i) t.push_back(a[i]);
      acc += double(j % 2 ? -1 : 1) * inner(t);
    }
    std::vector<QhmElement> t;
    t.reserve(n + 1);
    t.push_back(mul(a[n + 1], a[0]));
    for (int i = 1; i <= n; ++i) t.push_back(a[i]);
    acc += double((n + 1) % 2 ? -1 : 1) * inner(t);
    return acc;
  };
  return h;
}

double check_cyclicity(const CocycleHandle& phi, const ParamsPtr& par,
                       int n_tuples, unsigned long long seed0) {
  int n = phi.arity;
  double worst = 0.0;
  for (int t = 0; t < n_tuples; ++t) {
    std::vector<QhmElement> a;
    for (int j = 0; j <= n; ++j)
      a.push_back(random_element(par, seed0 + 16 * t + j, 1 + (t + j) % 2));
    std::vector<QhmElement> rot;
    rot.push_back(a[n]);
    for (int j = 0; j < n; ++j) rot.push_back(a[j]);
    cplx lhs = phi.eval(a);
    cplx rhs = double(n % 2 ? -1 : 1) * phi.eval(rot);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

double check_multilinearity(const CocycleHandle& phi, const ParamsPtr& par,
                            int n_tuples, unsigned long long seed0) {
  int n = phi.arity;
  double worst = 0.0;
  for (int t = 0; t < n_tuples; ++t) {
    std::vector<QhmElement> a;
    for (int j = 0; j <= n; ++j)
      a.push_back(random_element(par, seed0 + 16 * t + j, 1));
    QhmElement extra = random_element(par, seed0 + 16 * t + 15, 1);
    cplx lambda(0.7, -0.4);
    int slot = t % (n + 1);
    auto combo = a;
    combo[slot] = add(scale(lambda, a[slot]), extra);
    auto with_extra = a;
    with_extra[slot] = extra;
    cplx lhs = phi.eval(combo);
    cplx rhs = lambda * phi.eval(a) + phi.eval(with_extra);
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

bool check_wedge_condition(const WedgeWord& w, int c) {
  // Multivectors as sorted-index-word -> coefficient.
  std::map<std::vector<int>, double> acc;
  int n = int(w.size());
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      // [X1, X2] = -c X3, all other brackets vanish.
      int b = 0;
      double coef = 0.0;
      if (w[i - 1] == 1 && w[j - 1] == 2) { b = 3; coef = -double(c); }
      if (w[i - 1] == 2 && w[j - 1] == 1) { b = 3; coef = double(c); }
      if (b == 0) continue;
      std::vector<int> mono{b};
      for (int l = 1; l <= n; ++l)
        if (l != i && l != j) mono.push_back(w[l - 1]);
      // Canonicalize the wedge monomial: sort with sign, kill repeats.
      int sign = ((i + j) % 2 ? -1 : 1) * perm_sign(mono);
      std::sort(mono.begin(), mono.end());
      if (std::adjacent_find(mono.begin(), mono.end()) != mono.end()) continue;
      acc[mono] += sign * coef;
    }
  for (const auto& [mono, coef] : acc)
    if (std::abs(coef) > 1e-12) return false;
  return true;
}

CocycleHandle cocycle_from_wedge(const WedgeWord& w, const ParamsPtr& par) {
  (void)par;
  int n = int(w.size());
  CocycleHandle h;
  h.arity = n;
  h.even = (n % 2 == 0);
  h.label = "phi";
  for (int i : w) h.label += char('0' + i);
  h.eval = [w, n](const std::vector<QhmElement>& a) {
    if (a.size() != size_t(n) + 1) throw std::invalid_argument("phi_w: wrong tuple size");
    // D[j][m] = d_{w[m]} a_{j+1}
    std::vector<std::vector<QhmElement>> D(n);
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m) D[j].push_back(derive(w[m], a[j + 1]));
    std::vector<int> perm(n);
    for (int m = 0; m < n; ++m) perm[m] = m;
    cplx acc = 0.0;
    do {
      QhmElement prod = a[0];
      for (int j = 0; j < n; ++j) prod = mul(prod, D[j][perm[j]]);
      acc += double(perm_sign(perm)) * trace(prod);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
  };
  return h;
}

std::vector<CocycleHandle> standard_cocycles(const ParamsPtr& par) {
  std::vector<CocycleHandle> out;
  out.push_back(trace_cocycle(par));
  for (int i : {1, 2, 3}) out.push_back(cocycle_from_wedge({i}, par));
  out.push_back(cocycle_from_wedge({1, 3}, par));
  out.push_back(cocycle_from_wedge({2, 3}, par));
  out.push_back(cocycle_from_wedge({1, 2, 3}, par));
  return out;
}

CocycleHandle phi12_cocycle(const ParamsPtr& par) {
  return cocycle_from_wedge({1, 2}, par);
}

std::function<cplx(const std::vector<MatrixElement>&)> cup_tr(const CocycleHandle& phi) {
  int n = phi.arity;
  auto inner = phi.eval;
  return [inner, n](const std::vector<MatrixElement>& A) {
    if (A.size() != size_t(n) + 1) throw std::invalid_argument("cup_tr: wrong tuple size");
    int k = A[0].k;
    for (const auto& M : A)
      if (M.k != k) throw std::invalid_argument("cup_tr: matrix size mismatch");
    // Sum over index cycles i0 -> i1 -> ... -> in -> i0.
    std::vector<int> idx(n + 1, 0);
    cplx acc = 0.0;
    for (;;) {
      std::vector<QhmElement> t;
      t.reserve(n + 1);
      for (int j = 0; j <= n; ++j) t.push_back(A[j].at(idx[j], idx[(j + 1) % (n + 1)]));
      acc += inner(t);
      int j = 0;
      while (j <= n && ++idx[j] == k) idx[j++] = 0;
      if (j > n) break;
    }
    return acc;
  };
}

cplx pair_even(const MatrixElement& e, const CocycleHandle& phi) {
  if (phi.arity % 2 != 0)
    throw std::invalid_argument("pair_even: cochain arity must be even");
  if (distance(mul(e, e), e) > 1e-3 || distance(star(e), e) > 1e-3)
    throw std::invalid_argument("pair_even: input is not a projector");
  int m = phi.arity / 2;
  std::vector<MatrixElement> args(size_t(phi.arity) + 1, e);
  double fact = 1.0;
  for (int i = 2; i <= m; ++i) fact *= i;
  return cup_tr(phi)(args) / fact;
}

cplx odd_pairing_coeff(int n) {
  return std::pow(2.0, -n) /
         (std::sqrt(cplx(0.0, 2.0)) * std::tgamma(0.5 * n + 1.0));
}

cplx pair_odd(const MatrixElement& u, const CocycleHandle& phi) {
  int n = phi.arity;
  if (n % 2 == 0) throw std::invalid_argument("pair_odd: cochain arity must be odd");
  MatrixElement id = matrix_identity(u.par, u.k);
  if (distance(mul(u, star(u)), id) > 1e-3 || distance(mul(star(u), u), id) > 1e-3)
    throw std::invalid_argument("pair_odd: input is not unitary");
  MatrixElement t0 = sub(star(u), id);
  MatrixElement t1 = sub(u, id);
  std::vector<MatrixElement> args;
  for (int j = 0; j <= n; ++j) args.push_back(j % 2 ? t1 : t0);
  return odd_pairing_coeff(n) * cup_tr(phi)(args);
}

DualCycles build_dual_cycles(const ParamsPtr& par) {
  QhmElement U1 = u1_element(par), U2 = u2_element(par);
  Frame fr = build_frame(par);
  std::vector<QhmElement> xi{fr.xi1, fr.xi2};
  DualCycles d;

  d.c1.arity = d.c2.arity = d.c3.arity = 1;
  d.c1.terms.push_back({1.0, {star(U1), U1}});
  d.c2.terms.push_back({1.0, {star(U2), U2}});
  for (const auto& x : xi) d.c3.terms.push_back({1.0, {star(x), x}});

  auto skew = [&](const QhmElement& Uj) {
    ChainTensor c;
    c.arity = 2;
    for (const auto& x : xi) {
      c.terms.push_back({1.0, {mul(star(x), star(Uj)), Uj, x}});
      c.terms.push_back({-1.0, {mul(star(Uj), star(x)), x, Uj}});
    }
    return c;
  };
  d.c13 = skew(U1);
  d.c23 = skew(U2);

  d.c12.arity = 2;
  d.c12.terms.push_back({1.0, {mul(star(U1), star(U2)), U2, U1}});
  d.c12.terms.push_back({-1.0, {mul(star(U2), star(U1)), U1, U2}});

  d.c123.arity = 3;
  for (int p = 0; p < 2; ++p) {
    auto gen = [&](int j) { return j == 3 ? xi[p] : (j == 1 ? U1 : U2); };
    std::vector<int> perm{1, 2, 3};
    do {
      QhmElement a0 = mul(star(gen(perm[2])), mul(star(gen(perm[1])), star(gen(perm[0]))));
      d.c123.terms.push_back(
          {double(perm_sign(perm)), {a0, gen(perm[0]), gen(perm[1]), gen(perm[2])}});
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return d;
}

cplx pair_chain(const ChainTensor& chain, const CocycleHandle& phi) {
  if (chain.arity != phi.arity)
    throw std::invalid_argument("pair_chain: arity mismatch");
  cplx acc = 0.0;
  for (const auto& t : chain.terms) acc += t.weight * phi.eval(t.legs);
  return acc;
}

ChainTensor boundary_chain(const ChainTensor& chain) {
  int n = chain.arity;
  ChainTensor out;
  out.arity = n - 1;
  if (n < 1) throw std::invalid_argument("boundary_chain: arity must be >= 1");
  for (const auto& t : chain.terms) {
    for (int j = 0; j < n; ++j) {
      ChainTensor::Term s;
      s.weight = t.weight * double(j % 2 ? -1 : 1);
      for (int i = 0; i < j; ++i) s.legs.push_back(t.legs[i]);
      s.legs.push_back(mul(t.legs[j], t.legs[j + 1]));
      for (int i = j + 2; i <= n; ++i) s.legs.push_back(t.legs[i]);
      out.terms.push_back(std::move(s));
    }
    ChainTensor::Term s;
    s.weight = t.weight * double(n % 2 ? -1 : 1);
    s.legs.push_back(mul(t.legs[n], t.legs[0]));
    for (int i = 1; i < n; ++i) s.legs.push_back(t.legs[i]);
    out.terms.push_back(std::move(s));
  }
  return out;
}

double check_chain_closed(const ChainTensor& chain, const ParamsPtr& par,
                          int n_functionals, unsigned long long seed0) {
  ChainTensor bc = boundary_chain(chain);
  (void)par;
  double worst = 0.0;
  for (int f = 0; f < n_functionals; ++f) {
    std::mt19937_64 rng(seed0 + f);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    int legs = bc.arity + 1;
    std::vector<double> xs(legs), ys(legs), th(legs);
    for (int l = 0; l < legs; ++l) {
      xs[l] = 2.0 * uni(rng);  // beyond [0,1): exercises the fold relation
      ys[l] = uni(rng);
      th[l] = uni(rng);
    }
    cplx acc = 0.0;
    for (const auto& t : bc.terms) {
      cplx prod = t.weight;
      for (int l = 0; l < legs; ++l) prod *= eval_symbol(t.legs[l], xs[l], ys[l], th[l]);
      acc += prod;
    }
    worst = std::max(worst, std::abs(acc));
  }
  return worst;
}

}  // namespace qhm

#include "qhm/modules.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qhm/cyclic.hpp"

namespace qhm {

namespace {

constexpr double kPi = 3.1415926535897932384626433832795;

int order_for_width(const ParamsPtr& par, double width) {
  return par->nx * std::max(1, int(std::ceil(width - 1e-12)));
}

// Nodal interpolation of one row, zero outside the support.
cplx row_at(const ModuleVector& f, const std::vector<cplx>& vals, double x) {
  if (x <= f.grid.a || x >= f.grid.b) return 0.0;
  return f.grid.interpolate(vals, x);
}

// a_{p,m}(X) for arbitrary real X through the fold relation
// a_{p,m}(x + k) = e(k c p^2 nu) a_{p,m+kcp}(x).  Iterates the stored rows:
// the row stored at index ms contributes to index ms - k c p.
void folded_rows_at(const QhmElement& F, int p, double X,
                    std::map<int, cplx>& out) {
  const auto& par = *F.par;
  int k = int(std::floor(X));
  double xr = X - k;
  if (xr >= 1.0) { xr -= 1.0; ++k; }
  auto it = F.coeffs.find(p);
  if (it == F.coeffs.end()) return;
  cplx ph = e2pi(double(k) * par.c * double(p) * double(p) * par.nu);
  for (const auto& [ms, vals] : it->second) {
    cplx v = ph * par.grid.interpolate(vals, xr);
    if (v != cplx(0.0)) out[ms - k * par.c * p] += v;
  }
}

}  // namespace

ModuleVector::ModuleVector(ParamsPtr p, double x_lo, double x_hi, int order)
    : par(std::move(p)), grid(order, x_lo, x_hi) {}

std::vector<cplx>& ModuleVector::row_mut(int n) {
  auto& r = rows[n];
  if (r.empty()) r.assign(grid.n + 1, 0.0);
  return r;
}

const std::vector<cplx>* ModuleVector::row(int n) const {
  auto it = rows.find(n);
  return it == rows.end() ? nullptr : &it->second;
}

void ModuleVector::prune(double eps) {
  for (auto it = rows.begin(); it != rows.end();) {
    double m = 0.0;
    for (const auto& v : it->second) m = std::max(m, std::abs(v));
    it = m < eps ? rows.erase(it) : ++it;
  }
}

cplx module_evaluate(const ModuleVector& f, double x, double y) {
  if (x <= f.grid.a || x >= f.grid.b) return 0.0;
  cplx acc = 0.0;
  for (const auto& [n, vals] : f.rows)
    acc += f.grid.interpolate(vals, x) * e2pi(double(n) * y);
  return acc;
}

namespace {
ModuleVector resample(const ModuleVector& f, const ChebGrid& grid) {
  ModuleVector out(f.par, grid.a, grid.b, grid.n);
  for (const auto& [n, vals] : f.rows) {
    auto& r = out.row_mut(n);
    for (int j = 0; j <= grid.n; ++j) r[j] = row_at(f, vals, grid.nodes[j]);
  }
  out.prune();
  return out;
}
}  // namespace

ModuleVector module_add(const ModuleVector& f, const ModuleVector& g) {
  if (f.par != g.par) throw ParamsMismatch("module_add: params mismatch");
  if (f.grid.a == g.grid.a && f.grid.b == g.grid.b && f.grid.n == g.grid.n) {
    ModuleVector out = f;
    for (const auto& [n, vals] : g.rows) {
      auto& r = out.row_mut(n);
      for (int j = 0; j <= out.grid.n; ++j) r[j] += vals[j];
    }
    out.prune();
    return out;
  }
  double lo = std::min(f.grid.a, g.grid.a), hi = std::max(f.grid.b, g.grid.b);
  ChebGrid grid(std::max({f.grid.n, g.grid.n, order_for_width(f.par, hi - lo)}), lo, hi);
  ModuleVector a = resample(f, grid), b = resample(g, grid);
  return module_add(a, b);
}

ModuleVector module_sub(const ModuleVector& f, const ModuleVector& g) {
  return module_add(f, module_scale(-1.0, g));
}

ModuleVector module_scale(cplx lambda, const ModuleVector& f) {
  ModuleVector out = f;
  for (auto& [n, vals] : out.rows)
    for (auto& v : vals) v *= lambda;
  out.prune();
  return out;
}

double module_distance(const ModuleVector& f, const ModuleVector& g) {
  double lo = std::min(f.grid.a, g.grid.a), hi = std::max(f.grid.b, g.grid.b);
  double worst = 0.0;
  const int nx = 257, ny = 5;
  for (int i = 0; i <= nx; ++i) {
    double x = lo + (hi - lo) * i / nx;
    for (int j = 0; j < ny; ++j) {
      double y = (j + 0.31) / ny;
      worst = std::max(worst, std::abs(module_evaluate(f, x, y) - module_evaluate(g, x, y)));
    }
  }
  return worst;
}

double module_sup(const ModuleVector& f) {
  double worst = 0.0;
  for (const auto& [n, vals] : f.rows) {
    (void)n;
    for (const auto& v : vals) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

ModuleVector random_module_vector(const ParamsPtr& par, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  ModuleVector out(par, 0.05, 0.95, par->nx);
  // Smooth window: flat on [0.3, 0.7], C^5 transitions to zero at 0.05/0.95.
  auto window = [](double x) {
    if (x <= 0.05 || x >= 0.95) return 0.0;
    if (x < 0.3) return smooth_step((x - 0.05) / 0.25);
    if (x > 0.7) return smooth_step((0.95 - x) / 0.25);
    return 1.0;
  };
  for (int n = -2; n <= 2; ++n) {
    cplx c = std::exp(cplx(0.0, 2.0 * kPi * uni(rng))) / double((1 + std::abs(n)) * (1 + std::abs(n)));
    double k = 4.0 * uni(rng) - 2.0;
    auto& r = out.row_mut(n);
    for (int j = 0; j <= out.grid.n; ++j) {
      double x = out.grid.nodes[j];
      r[j] = c * window(x) * std::exp(cplx(0.0, 2.0 * kPi * k * x));
    }
  }
  return out;
}

QhmElement inner_product_D(const ModuleVector& f, const ModuleVector& g) {
  if (f.par != g.par) throw ParamsMismatch("inner_product_D: params mismatch");
  const auto& par = *f.par;
  if (par.mu == 0.0) throw std::invalid_argument("inner_product_D: mu = 0");
  QhmElement out(f.par);
  int n_lo = int(std::floor(std::min(f.grid.a, g.grid.a))) - 1;
  int n_hi = int(std::ceil(std::max(f.grid.b, g.grid.b))) + 1;
  for (int p = -par.p_max; p <= par.p_max; ++p)
    for (int n = n_lo; n <= n_hi; ++n) {
      cplx fold_ph = e2pi(-double(par.c) * n * double(p) * double(p) * par.nu);
      for (int j = 0; j <= par.nx; ++j) {
        double x1 = par.grid.nodes[j] + n;
        double x2 = par.grid.nodes[j] - 2.0 * p * par.mu + n;
        if (x1 <= f.grid.a || x1 >= f.grid.b) continue;
        if (x2 <= g.grid.a || x2 >= g.grid.b) continue;
        for (const auto& [m, fv] : f.rows) {
          cplx fc = std::conj(f.grid.interpolate(fv, x1));
          if (fc == cplx(0.0)) continue;
          for (const auto& [l, gv] : g.rows) {
            cplx gc = g.grid.interpolate(gv, x2);
            int idx = par.c * n * p - m + l;
            if (std::abs(idx) > par.ny) {
              if (std::abs(fc * gc) > par.tol_alg)
                throw WindowOverflow("inner_product_D: Fourier index out of window");
              continue;
            }
            out.row_mut(p, idx)[j] += fold_ph * fc * gc * e2pi(-2.0 * p * par.nu * l);
          }
        }
      }
    }
  out.prune(1e-14);
  return out;
}

ModuleVector right_action(const ModuleVector& f, const QhmElement& F) {
  if (f.par != F.par) throw ParamsMismatch("right_action: params mismatch");
  const auto& par = *f.par;
  if (par.mu == 0.0) throw std::invalid_argument("right_action: mu = 0");
  std::vector<int> qs;
  for (int p : F.degrees()) qs.push_back(-p);
  if (qs.empty()) return ModuleVector(f.par, f.grid.a, f.grid.b, f.grid.n);
  double lo = f.grid.a, hi = f.grid.b;
  for (int q : qs) {
    lo = std::min(lo, f.grid.a + 2.0 * q * par.mu);
    hi = std::max(hi, f.grid.b + 2.0 * q * par.mu);
  }
  ModuleVector out(f.par, lo, hi, order_for_width(f.par, hi - lo));
  for (int j = 0; j <= out.grid.n; ++j) {
    double x = out.grid.nodes[j];
    for (int q : qs) {
      double X = x - 2.0 * q * par.mu;
      if (X <= f.grid.a || X >= f.grid.b) continue;
      std::map<int, cplx> Fr;
      folded_rows_at(F, -q, X, Fr);
      if (Fr.empty()) continue;
      for (const auto& [n, fv] : f.rows) {
        cplx fc = f.grid.interpolate(fv, X);
        if (fc == cplx(0.0)) continue;
        for (const auto& [m, Fc] : Fr) {
          int idx = n + m;
          out.row_mut(idx)[j] += fc * Fc * e2pi(-2.0 * q * par.nu * idx);
        }
      }
    }
  }
  out.prune(1e-14);
  return out;
}

ModuleVector act_beta(const GroupElem& g, const ModuleVector& f) {
  const auto& par = *f.par;
  if (par.mu == 0.0) throw std::invalid_argument("act_beta: mu = 0");
  ModuleVector out(f.par, f.grid.a + g.r, f.grid.b + g.r, f.grid.n);
  for (const auto& [n, vals] : f.rows) {
    auto& r = out.row_mut(n);
    cplx ys = e2pi(-double(n) * g.s);
    for (int j = 0; j <= out.grid.n; ++j) {
      double x = out.grid.nodes[j];
      double theta = (kPi / par.mu) * x *
                     (g.t + g.s * par.c * x / 2.0 - par.c * g.s * g.r);
      r[j] = std::exp(cplx(0.0, theta)) * ys * vals[j];
    }
  }
  out.prune();
  return out;
}

ModuleVector connexion_leg(int which, const ModuleVector& f) {
  const auto& par = *f.par;
  if (par.mu == 0.0) throw std::invalid_argument("connexion_leg: mu = 0");
  ModuleVector out(f.par, f.grid.a, f.grid.b, f.grid.n);
  for (const auto& [n, vals] : f.rows) {
    auto& r = out.row_mut(n);
    if (which == 1) {
      auto d = f.grid.derivative(vals);
      for (int j = 0; j <= f.grid.n; ++j) r[j] = -d[j];
    } else if (which == 2) {
      for (int j = 0; j <= f.grid.n; ++j) {
        double x = f.grid.nodes[j];
        cplx mult(0.0, -2.0 * kPi * n +
                           (kPi * par.c / par.mu) * (x * x / 2.0 - (0.25 - par.mu) * x));
        r[j] = mult * vals[j];
      }
    } else if (which == 3) {
      for (int j = 0; j <= f.grid.n; ++j)
        r[j] = cplx(0.0, kPi / par.mu * f.grid.nodes[j]) * vals[j];
    } else {
      throw std::invalid_argument("connexion_leg: index must be 1, 2 or 3");
    }
  }
  out.prune();
  return out;
}

std::pair<ModuleVector, ModuleVector> connexion_13(const ModuleVector& f) {
  return {connexion_leg(1, f), connexion_leg(3, f)};
}

std::pair<ModuleVector, ModuleVector> connexion_23(const ModuleVector& f) {
  return {connexion_leg(2, f), connexion_leg(3, f)};
}

ModuleVector curvature_13(const ModuleVector& f) {
  return module_sub(connexion_leg(1, connexion_leg(3, f)),
                    connexion_leg(3, connexion_leg(1, f)));
}

ModuleVector curvature_23(const ModuleVector& f) {
  return module_sub(connexion_leg(2, connexion_leg(3, f)),
                    connexion_leg(3, connexion_leg(2, f)));
}

ModuleFrame build_module_frame(const ParamsPtr& par) {
  const double L = 2.0 * par->mu;
  if (L <= 0.0) throw std::invalid_argument("build_module_frame: need mu > 0");
  int k = std::max(1, int(std::ceil(L)));
  double l = L / k;  // sub-period of the bump lattice
  if (l >= 1.0) throw std::invalid_argument("build_module_frame: infeasible geometry");
  double h = std::min(0.45 * (1.0 - l), 0.45 * l);  // half-width of transitions
  // Bump: 1 on [-l/2+h, l/2-h], cos(pi/2 S) transitions, support width l+2h<1;
  // translates on the l-lattice satisfy sum bump^2 = 1 exactly
  // (cos^2 + sin^2 through the shared smoothstep angle).
  auto bump = [l, h](double t) {
    double a = std::abs(t);
    if (a >= l / 2.0 + h) return 0.0;
    if (a <= l / 2.0 - h) return 1.0;
    return std::cos(kPi / 2.0 * smooth_step((a - (l / 2.0 - h)) / (2.0 * h)));
  };
  ModuleFrame fr;
  for (int j = 0; j < k; ++j) {
    double cj = j * l;
    ModuleVector f(par, cj - l / 2.0 - h, cj + l / 2.0 + h, par->nx);
    auto& r = f.row_mut(0);
    for (int i = 0; i <= f.grid.n; ++i) r[i] = bump(f.grid.nodes[i] - cj);
    fr.vecs.push_back(std::move(f));
  }
  // Partition identity check on a lattice.
  for (int i = 0; i <= 400; ++i) {
    double x = -1.0 + 3.0 * i / 400.0;
    double s = 0.0;
    int qmax = int(std::ceil(2.2 / L)) + 1;  // translates reaching the whole lattice
    for (int j = 0; j < k; ++j)
      for (int q = -qmax; q <= qmax; ++q) {
        double b = bump(x - j * l - q * L);
        s += b * b;
      }
    if (std::abs(s - 1.0) > 1e-12)
      throw std::runtime_error("build_module_frame: partition identity failed");
  }
  return fr;
}

double frame_reconstruction_residual(const ModuleFrame& fr, const ModuleVector& g) {
  ModuleVector acc;
  bool first = true;
  for (const auto& f : fr.vecs) {
    ModuleVector t = right_action(f, inner_product_D(f, g));
    acc = first ? t : module_add(acc, t);
    first = false;
  }
  return module_distance(acc, g);
}

cplx pair_even_module(const ParamsPtr& par, ModulePairing which) {
  ModuleFrame fr = build_module_frame(par);
  cplx acc = 0.0;
  for (const auto& f : fr.vecs) {
    if (which == ModulePairing::tau) {
      acc += trace(inner_product_D(f, f));
    } else {
      ModuleVector th = which == ModulePairing::phi13 ? curvature_13(f) : curvature_23(f);
      acc += trace(inner_product_D(f, th));
    }
  }
  return acc;
}

ParamsPtr swapped_params(const ParamsPtr& par) {
  // Wider Fourier window: Phi images are genuinely broadband in y, and their
  // products convolve those spectra; the extra margin keeps the convolution
  // tails crossing the edge below tol_alg.
  return make_params(par->c, par->nu, par->mu, par->nx, par->ny + 32, par->p_max,
                     par->tol_alg, par->tol_num);
}

namespace {

// Phi images have full y-spectra whose outer band carries an irreducible
// interpolation-noise floor (~1e-8) above tol_alg; smoothly roll the spectrum
// off before the window edge so later folds never push visible mass outside.
void band_taper(QhmElement& F) {
  const int n1 = F.par->ny - 10;
  const int n0 = n1 - 10;
  for (auto& [p, rows] : F.coeffs) {
    (void)p;
    for (auto it = rows.begin(); it != rows.end();) {
      int a = std::abs(it->first);
      if (a <= n0) { ++it; continue; }
      if (a >= n1) { it = rows.erase(it); continue; }
      double w = std::cos(kPi / 2.0 * smooth_step(double(a - n0) / double(n1 - n0)));
      w *= w;
      for (auto& v : it->second) v *= w;
      ++it;
    }
  }
}

// pi(a)(x,y) = a(-y,-x) for a degree-0 element: resample through a uniform-y
// DFT of the periodic rows.
QhmElement pi_zero(const QhmElement& F, const ParamsPtr& tgt) {
  const auto& par = *F.par;
  QhmElement out(tgt);
  auto it = F.coeffs.find(0);
  if (it == F.coeffs.end()) return out;
  const int M = 4 * par.ny;
  // c_{m,k}: Fourier coefficients in y of a_m(-y).
  std::map<int, std::vector<cplx>> c;  // m -> coefficients k in [-ny, ny]
  for (const auto& [m, vals] : it->second) {
    std::vector<cplx> samples(M);
    for (int j = 0; j < M; ++j) {
      double u = double(j) / M;                      // y
      double xm = u == 0.0 ? 0.0 : 1.0 - u;          // -y mod 1
      samples[j] = par.grid.interpolate(vals, xm);
    }
    auto& ck = c[m];
    ck.assign(2 * tgt->ny + 1, 0.0);
    for (int k = -tgt->ny; k <= tgt->ny; ++k) {
      cplx s = 0.0;
      for (int j = 0; j < M; ++j) s += samples[j] * e2pi(-double(k) * j / M);
      ck[k + tgt->ny] = s / double(M);
    }
  }
  for (int k = -tgt->ny; k <= tgt->ny; ++k) {
    std::vector<cplx> row(tgt->nx + 1, 0.0);
    bool nz = false;
    for (const auto& [m, ck] : c) {
      cplx coef = ck[k + tgt->ny];
      if (std::abs(coef) < 1e-16) continue;
      nz = true;
      for (int j = 0; j <= tgt->nx; ++j)
        row[j] += coef * e2pi(-double(m) * tgt->grid.nodes[j]);
    }
    if (nz) out.row_mut(0, k) = std::move(row);
  }
  out.prune(1e-13);
  return out;
}

// T(xi)(x,y) = exp(i 2 pi c (y + mu)(x + nu)) xi(-y,-x): a degree -1 element
// of the swapped algebra, built by quadrature in y at each target node.
QhmElement t_of_xi(const QhmElement& xi, const ParamsPtr& tgt) {
  const auto& par = *xi.par;
  QhmElement out(tgt);
  const int M = 8 * par.ny;
  for (int j = 0; j <= tgt->nx; ++j) {
    double x = tgt->grid.nodes[j];
    std::vector<cplx> samples(M);
    for (int i = 0; i < M; ++i) {
      double y = double(i) / M;
      cplx chirp = std::exp(cplx(0.0, 2.0 * kPi * par.c * (y + par.mu) * (x + par.nu)));
      samples[i] = chirp * evaluate(xi, 1, -y, -x);
    }
    for (int n = -tgt->ny; n <= tgt->ny; ++n) {
      cplx s = 0.0;
      for (int i = 0; i < M; ++i) s += samples[i] * e2pi(-double(n) * i / M);
      s /= double(M);
      if (std::abs(s) > 1e-15) out.row_mut(-1, n)[j] = s;
    }
  }
  out.prune(1e-13);
  return out;
}

QhmElement extract_degree(const QhmElement& F, int p) {
  QhmElement out(F.par);
  auto it = F.coeffs.find(p);
  if (it != F.coeffs.end()) out.coeffs[p] = it->second;
  return out;
}

struct PhiContext {
  ParamsPtr tgt;
  Frame fr;
  QhmElement txi[2];

  explicit PhiContext(const ParamsPtr& par)
      : tgt(swapped_params(par)), fr(build_frame(par)) {
    txi[0] = t_of_xi(fr.xi1, tgt);
    txi[1] = t_of_xi(fr.xi2, tgt);
    band_taper(txi[0]);
    band_taper(txi[1]);
  }

  QhmElement apply_degree(const QhmElement& Fp, int p) const {
    QhmElement out = apply_degree_raw(Fp, p);
    band_taper(out);
    return out;
  }

  QhmElement apply_degree_raw(const QhmElement& Fp, int p) const {
    if (p == 0) return pi_zero(Fp, tgt);
    const QhmElement* xi[2] = {&fr.xi1, &fr.xi2};
    QhmElement acc(tgt);
    for (int i = 0; i < 2; ++i) {
      if (p > 0) {
        // F_p = sum_i xi_i (xi_i* F_p), recursing on degree p-1.
        QhmElement inner = apply_degree(mul(star(*xi[i]), Fp), p - 1);
        acc = add(acc, mul(txi[i], inner));
      } else {
        // F_p = sum_i (F_p xi_i) xi_i*, recursing on degree p+1.
        QhmElement inner = apply_degree(mul(Fp, *xi[i]), p + 1);
        acc = add(acc, mul(inner, star(txi[i])));
      }
    }
    return acc;
  }
};

}  // namespace

QhmElement phi_apply(const QhmElement& F) {
  PhiContext ctx(F.par);
  QhmElement out(ctx.tgt);
  for (int p : F.degrees())
    out = add(out, ctx.apply_degree(extract_degree(F, p), p));
  return out;
}

InducedResiduals check_induced_cocycles(const ParamsPtr& par) {
  InducedResiduals res;
  ParamsPtr tgt = swapped_params(par);
  double gm = par->c * (0.25 - par->mu);   // central offset of d2 over (mu,nu)
  double gn = par->c * (0.25 - par->nu);   // same for the image algebra
  for (unsigned long long s = 0; s < 3; ++s) {
    QhmElement F = random_element(par, 8800 + s, 1 + int(s % 2));
    QhmElement PF = phi_apply(F);
    // -Phi d1 = (d2' + gn d3') Phi
    QhmElement lhs = scale(-1.0, phi_apply(derive(1, F)));
    QhmElement rhs = add(derive(2, PF), scale(gn, derive(3, PF)));
    res.intertwine_d1 = std::max(res.intertwine_d1, distance(lhs, rhs));
    // -Phi d2 = (d1' - gm d3') Phi
    lhs = scale(-1.0, phi_apply(derive(2, F)));
    rhs = sub(derive(1, PF), scale(gm, derive(3, PF)));
    res.intertwine_d2 = std::max(res.intertwine_d2, distance(lhs, rhs));
    // -Phi d3 = d3' Phi
    lhs = scale(-1.0, phi_apply(derive(3, F)));
    res.intertwine_d3 = std::max(res.intertwine_d3, distance(lhs, derive(3, PF)));
  }
  // Cocycle pullbacks Phi* phi13' = phi23 and Phi* phi23' = phi13 (the
  // central offsets drop out of the (i,3) antisymmetrizations).
  auto p13 = cocycle_from_wedge({1, 3}, tgt);
  auto p23 = cocycle_from_wedge({2, 3}, tgt);
  auto q13 = cocycle_from_wedge({1, 3}, par);
  auto q23 = cocycle_from_wedge({2, 3}, par);
  for (unsigned long long s = 0; s < 3; ++s) {
    std::vector<QhmElement> a, pa;
    for (int j = 0; j < 3; ++j) {
      a.push_back(random_element(par, 8900 + 8 * s + j, 1));
      pa.push_back(phi_apply(a.back()));
    }
    res.pullback_13 = std::max(res.pullback_13, std::abs(p13.eval(pa) - q23.eval(a)));
    res.pullback_23 = std::max(res.pullback_23, std::abs(p23.eval(pa) - q13.eval(a)));
  }
  return res;
}

cplx pair_even_module_prime(const ParamsPtr& par, ModulePairing which) {
  if (par->nu == 0.0) throw std::invalid_argument("pair_even_module_prime: nu = 0");
  ParamsPtr sw = swapped_params(par);
  switch (which) {
    case ModulePairing::tau: return pair_even_module(sw, ModulePairing::tau);
    case ModulePairing::phi13: return pair_even_module(sw, ModulePairing::phi23);
    case ModulePairing::phi23: return pair_even_module(sw, ModulePairing::phi13);
  }
  throw std::invalid_argument("pair_even_module_prime: bad selector");
}

}  // namespace qhm

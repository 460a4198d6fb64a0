/* Copyright (C) 2026 The mtfr Authors.
 * Licensed under the Apache License, Version 2.0 (the "License"); you may not
 * use this file except in compliance with the License. You may obtain a copy
 * of the License at http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
 * WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
 * License for the specific language governing permissions and limitations
 * under the License.
 */
#include "mtfr/upcheck.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "mtfr/fft.hpp"

namespace mtfr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_radii(const std::vector<double>& radii) {
  if (radii.empty()) throw Error(ErrorKind::InvalidInput, "no radii given");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0)) throw Error(ErrorKind::InvalidInput, "radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw Error(ErrorKind::InvalidInput, "radii must increase strictly");
  }
}

// Midpoint sums of exp(log_integrand) over the cubic cells of side q.spacing inside the largest ball,
// binned by radius and accumulated. Rows of the outermost axis are summed in index order.
std::vector<double> ball_integrals(const std::function<double(const RVec&)>& log_integrand, int dim,
                                   const std::vector<double>& radii, const Quadrature& q) {
  check_radii(radii);
  if (dim < 1) throw Error(ErrorKind::InvalidInput, "dimension must be positive");
  if (!(q.spacing > 0.0)) throw Error(ErrorKind::InvalidInput, "quadrature spacing must be positive");
  const double h = q.spacing;
  const long n = static_cast<long>(std::ceil(radii.back() / h));
  const std::size_t side = static_cast<std::size_t>(2 * n);
  double cells = std::pow(static_cast<double>(side), dim);
  if (cells > 4e9) throw Error(ErrorKind::GridTooLarge, "quadrature grid too large; increase the spacing");
  const double vol = std::pow(h, dim);
  const std::size_t nb = radii.size();
  std::vector<double> rows(side * nb, 0.0);
  std::size_t inner = 1;
  for (int i = 1; i < dim; ++i) inner *= side;
  parallel_for(side, [&](std::size_t b, std::size_t e) {
    RVec l(dim);
    for (std::size_t r = b; r < e; ++r) {
      double* bins = &rows[r * nb];
      l(0) = (static_cast<double>(r) - n + 0.5) * h;
      for (std::size_t j = 0; j < inner; ++j) {
        std::size_t rest = j;
        for (int a = dim - 1; a >= 1; --a) {
          l(a) = (static_cast<double>(rest % side) - n + 0.5) * h;
          rest /= side;
        }
        double rad = l.norm();
        if (rad > radii.back()) continue;
        double v = log_integrand(l);
        if (v == -std::numeric_limits<double>::infinity()) continue;
        auto it = std::lower_bound(radii.begin(), radii.end(), rad);
        bins[it - radii.begin()] += std::exp(v) * vol;
      }
    }
  });
  std::vector<double> out(nb, 0.0);
  for (std::size_t r = 0; r < side; ++r)
    for (std::size_t i = 0; i < nb; ++i) out[i] += rows[r * nb + i];
  for (std::size_t i = 1; i < nb; ++i) out[i] += out[i - 1];
  return out;
}

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ConvergentLooking: return "convergent-looking";
    case Verdict::DivergentLooking: return "divergent-looking";
    default: return "inconclusive";
  }
}

std::string VerdictRule::describe() const {
  return "divergent-looking if the last three ratios I(R_{j+1})/I(R_j) are >= " + fmt(1.0 + growth_tol) +
         "; convergent-looking if all values vanish or the last three ratios are <= " + fmt(1.0 + convergence_tol) +
         "; inconclusive otherwise";
}

Verdict judge(const std::vector<double>& values, const VerdictRule& rule) {
  bool all_zero = std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
  if (all_zero) return Verdict::ConvergentLooking;
  if (values.size() < 4) return Verdict::Inconclusive;
  bool grow = true, flat = true;
  for (std::size_t i = values.size() - 3; i < values.size(); ++i) {
    double prev = values[i - 1];
    if (!(prev > 0.0)) {
      flat = false;
      continue;
    }
    double r = values[i] / prev;
    if (r < 1.0 + rule.growth_tol) grow = false;
    if (r > 1.0 + rule.convergence_tol) flat = false;
  }
  if (grow) return Verdict::DivergentLooking;
  if (flat) return Verdict::ConvergentLooking;
  return Verdict::Inconclusive;
}

Sweep make_sweep(std::string label, const std::vector<double>& radii, const std::vector<double>& values,
                 const VerdictRule& rule) {
  Sweep s;
  s.label = std::move(label);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    double ratio = (i > 0 && values[i - 1] > 0.0) ? values[i] / values[i - 1] : kNaN;
    s.points.push_back({radii[i], values[i], ratio});
  }
  s.verdict = judge(values, rule);
  return s;
}

RMat beurling_matrix(const RMat& omega) {
  const int n = static_cast<int>(omega.rows());
  if (n % 2 != 0 || omega.cols() != n) throw Error(ErrorKind::DimensionMismatch, "Omega must be 2d x 2d");
  const int d = n / 2;
  RMat anti = RMat::Zero(n, n);
  anti.topRightCorner(d, d).setIdentity();
  anti.bottomLeftCorner(d, d).setIdentity();
  require_invertible(omega, Tolerances{}.inv, "Omega");
  RMat inv = omega.inverse();
  return (0.5 * inv.transpose() * anti * inv).eval();
}

std::vector<double> beurling_integrals(const LogEvaluator& w, int dim, const RMat& m, double n,
                                       const std::vector<double>& radii, const Quadrature& q) {
  if (m.rows() != dim || m.cols() != dim) throw Error(ErrorKind::DimensionMismatch, "weight matrix size");
  RMat ms = checked_symmetrize(m, 1e-12, "Beurling weight matrix");
  return ball_integrals(
      [&](const RVec& l) {
        return w(l) + kPi * std::abs(l.dot(ms * l)) - n * std::log1p(l.norm());
      },
      dim, radii, q);
}

UPReport beurling_sweep(const LogEvaluator& w, int dim, const RMat& m, double n, const std::vector<double>& radii,
                        const Quadrature& q, const VerdictRule& rule) {
  UPReport r;
  r.condition = "beurling";
  r.parameters = {{"N", n}, {"spacing", q.spacing}};
  r.matrices = {{"M", m}};
  r.sweeps.push_back(make_sweep("beurling", radii, beurling_integrals(w, dim, m, n, radii, q), rule));
  r.verdict = r.sweeps.front().verdict;
  r.rule = rule.describe();
  return r;
}

HardyFit hardy_fit(const LogEvaluator& w, const RMat& omega, const HardyOptions& opt) {
  const int dim = static_cast<int>(omega.rows());
  if (omega.cols() != dim) throw Error(ErrorKind::DimensionMismatch, "Omega must be square");
  if (opt.shells.empty() || opt.directions < 1) throw Error(ErrorKind::InvalidInput, "no samples requested");
  require_invertible(omega, Tolerances{}.inv, "Omega");
  Eigen::PartialPivLU<RMat> lu(omega);
  Rng rng(opt.seed);
  std::normal_distribution<double> normal;
  std::vector<RVec> dirs;
  for (int i = 0; i < opt.directions; ++i) {
    RVec u(dim);
    if (dim == 2) {
      double th = 2.0 * kPi * (i + 0.5) / opt.directions;
      u << std::cos(th), std::sin(th);
    } else if (dim == 1) {
      u << (i % 2 ? -1.0 : 1.0);
    } else {
      for (int j = 0; j < dim; ++j) u(j) = normal(rng);
      u.normalize();
    }
    dirs.push_back(u);
  }
  const double log_floor = std::log(opt.floor);
  const std::size_t m = opt.shells.size() * dirs.size();
  RMat a(m, 3);
  RVec y(m);
  std::size_t row = 0, above = 0;
  for (double r : opt.shells) {
    if (!(r > 0.0)) throw Error(ErrorKind::InvalidInput, "shell radii must be positive");
    for (const RVec& u : dirs) {
      RVec l = r * u;
      double v = w(l);
      if (v > log_floor) ++above;
      y(row) = std::max(v, log_floor);
      RVec pre = lu.solve(l);
      double reg = opt.regressor == HardyRegressor::LogNorm ? std::log(l.norm()) : std::log1p(l.norm());
      a(row, 0) = 1.0;
      a(row, 1) = reg;
      a(row, 2) = -kPi * pre.squaredNorm() / 2.0;
      ++row;
    }
  }
  if (above == 0) throw Error(ErrorKind::DegenerateFit, "all samples lie below the floor");
  Eigen::ColPivHouseholderQR<RMat> qr(a);
  if (qr.rank() < 3) throw Error(ErrorKind::DegenerateFit, "sample shells do not determine (c, N, alpha)");
  RVec coef = qr.solve(y);
  HardyFit fit;
  fit.log_c = coef(0);
  fit.n = coef(1);
  fit.alpha = coef(2);
  fit.residual = std::sqrt((a * coef - y).squaredNorm() / static_cast<double>(m));
  fit.samples = m;
  fit.regressor = opt.regressor;
  return fit;
}

UPReport gelfand_shilov_sweep(const LogEvaluator& w, int d, double p, double alpha, double beta,
                              const std::vector<double>& radii, const Quadrature& q, const VerdictRule& rule) {
  if (!(p > 1.0) || !std::isfinite(p)) throw Error(ErrorKind::InvalidInput, "p must lie in (1, inf)");
  if (!(alpha > 0.0) || !(beta > 0.0)) throw Error(ErrorKind::InvalidInput, "alpha and beta must be positive");
  const double qexp = p / (p - 1.0);
  auto lp = [](const RVec& v, double e) {
    double s = 0.0;
    for (int i = 0; i < v.size(); ++i) s += std::pow(std::abs(v(i)), e);
    return s;
  };
  const double cx = kPi / p * std::pow(alpha, p), cw = kPi / qexp * std::pow(beta, qexp);
  auto ix = ball_integrals([&](const RVec& l) { return w(l) + cx * lp(l.head(d), p); }, 2 * d, radii, q);
  auto iw = ball_integrals([&](const RVec& l) { return w(l) + cw * lp(l.tail(d), qexp); }, 2 * d, radii, q);
  UPReport r;
  r.condition = "gelfand_shilov";
  r.parameters = {{"p", p}, {"q", qexp}, {"alpha", alpha}, {"beta", beta}, {"spacing", q.spacing}};
  r.sweeps.push_back(make_sweep("x", radii, ix, rule));
  r.sweeps.push_back(make_sweep("omega", radii, iw, rule));
  Verdict a = r.sweeps[0].verdict, b = r.sweeps[1].verdict;
  if (a == Verdict::DivergentLooking || b == Verdict::DivergentLooking)
    r.verdict = Verdict::DivergentLooking;
  else if (a == Verdict::ConvergentLooking && b == Verdict::ConvergentLooking)
    r.verdict = Verdict::ConvergentLooking;
  else
    r.verdict = Verdict::Inconclusive;
  r.rule = rule.describe() + "; overall divergent-looking if either weight diverges";
  r.notes.push_back(alpha * beta >= 1.0 ? "alpha*beta >= 1: both integrals finite forces W = 0"
                                        : "alpha*beta < 1: the condition does not constrain W");
  return r;
}

Shape Shape::box(const RVec& center, const RVec& half_widths) {
  if (center.size() != half_widths.size() || center.size() == 0)
    throw Error(ErrorKind::DimensionMismatch, "box center and half-widths differ in size");
  for (int i = 0; i < half_widths.size(); ++i)
    if (!(half_widths(i) > 0.0)) throw Error(ErrorKind::InvalidInput, "box half-widths must be positive");
  const int d = static_cast<int>(center.size());
  return Shape{Kind::Box, center, half_widths, RMat::Identity(d, d)};
}

Shape Shape::ball(const RVec& center, double radius) {
  if (center.size() == 0) throw Error(ErrorKind::DimensionMismatch, "empty ball center");
  if (!(radius > 0.0)) throw Error(ErrorKind::InvalidInput, "ball radius must be positive");
  const int d = static_cast<int>(center.size());
  return Shape{Kind::Ball, center, RVec::Constant(1, radius), RMat::Identity(d, d)};
}

Shape Shape::transformed(const RMat& g) const {
  if (g.rows() != dim() || g.cols() != dim()) throw Error(ErrorKind::DimensionMismatch, "shape map size");
  Shape s = *this;
  s.center = g * center;
  s.map = g * map;
  return s;
}

bool Shape::contains(const RVec& x) const {
  RVec y = map.partialPivLu().solve(RVec(x - center));
  if (kind == Kind::Ball) return y.norm() <= half(0);
  for (int i = 0; i < y.size(); ++i)
    if (std::abs(y(i)) > half(i)) return false;
  return true;
}

double volume(const Shape& s) {
  const int d = s.dim();
  double base;
  if (s.kind == Shape::Kind::Box) {
    base = std::pow(2.0, d) * s.half.prod();
  } else {
    base = std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0) * std::pow(s.half(0), d);
  }
  return std::abs(s.map.determinant()) * base;
}

MeanWidth mean_width(const Shape& s, std::size_t samples, std::uint64_t seed) {
  const int d = s.dim();
  MeanWidth out;
  if (d == 1) {
    out.value = 2.0 * std::abs(s.map(0, 0)) * s.half(0);
    out.exact = true;
    return out;
  }
  if (s.kind == Shape::Kind::Ball) {
    RMat g = s.map.transpose() * s.map;
    double sc = g.trace() / d;
    if ((g - sc * RMat::Identity(d, d)).norm() <= 1e-12 * sc) {
      out.value = 2.0 * s.half(0) * std::sqrt(sc);
      out.exact = true;
      return out;
    }
  }
  if (samples < 2) throw Error(ErrorKind::InvalidInput, "Monte Carlo mean width needs at least two samples");
  Rng rng(seed);
  std::normal_distribution<double> normal;
  RMat mt = s.map.transpose();
  RVec u(d);
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    for (int j = 0; j < d; ++j) u(j) = normal(rng);
    u.normalize();
    RVec v = mt * u;
    double w = s.kind == Shape::Kind::Ball ? 2.0 * s.half(0) * v.norm()
                                           : 2.0 * (s.half.array() * v.array().abs()).sum();
    sum += w;
    sum2 += w * w;
  }
  const double n = static_cast<double>(samples);
  out.value = sum / n;
  out.stderr_ = std::sqrt(std::max(0.0, sum2 / n - out.value * out.value) / (n - 1.0));
  return out;
}

NcValue nazarov_constant(const Shape& s, const Shape& t, double c, std::size_t mc_samples) {
  if (s.dim() != t.dim()) throw Error(ErrorKind::DimensionMismatch, "S and T differ in dimension");
  if (!(c > 0.0)) throw Error(ErrorKind::InvalidInput, "C must be positive");
  const double d = s.dim();
  NcValue v;
  v.vol_s = volume(s);
  v.vol_t = volume(t);
  v.width_s = mean_width(s, mc_samples, 1);
  v.width_t = mean_width(t, mc_samples, 2);
  v.exponent = std::min({v.vol_s * v.vol_t, std::pow(v.vol_s, 1.0 / d) * v.width_t.value,
                         std::pow(v.vol_t, 1.0 / d) * v.width_s.value});
  v.log_nc = std::log(c) + c * v.exponent;
  return v;
}

NazarovReport nazarov_bound(const SampledField& f1, const SampledField& f2, const Shape& s, const Shape& t,
                            const RMat& l1, const RMat& l2, const RMat& im_u, double c, std::size_t mc_samples) {
  const int d = s.dim();
  if (f1.dims() != d || f2.dims() != d || t.dim() != d || l1.rows() != d || l2.rows() != d || im_u.rows() != d)
    throw Error(ErrorKind::DimensionMismatch, "Nazarov inputs differ in dimension");
  require_invertible(im_u, Tolerances{}.inv, "Im(U) (the Nazarov hypothesis)");
  require_invertible(l1, Tolerances{}.inv, "L1");
  require_invertible(l2, Tolerances{}.inv, "L2");
  auto energy = [](const SampledField& f, const Shape* outside_of) {
    double e = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i)
      if (!outside_of || !outside_of->contains(f.coords(i))) e += std::norm(f[i]);
    return e * f.cell_volume();
  };
  NazarovReport r;
  r.c = c;
  r.lhs = energy(f1, nullptr);
  r.complement_s = energy(f1, &s);
  r.complement_t = energy(f2, &t);
  r.s_pulled = s.transformed(l1.inverse());
  r.t_pulled = t.transformed(im_u.inverse() * l2.inverse());
  r.nc = nazarov_constant(r.s_pulled, r.t_pulled, c, mc_samples);
  const double comp = r.complement_s + r.complement_t;
  r.rhs = std::exp(r.nc.log_nc) * comp;
  r.ratio = r.lhs > 0.0 ? r.rhs / r.lhs : std::numeric_limits<double>::infinity();
  if (r.lhs == 0.0) {
    r.c0 = 0.0;
  } else if (comp == 0.0) {
    r.c0 = std::numeric_limits<double>::infinity();
  } else {
    // log C + C m = log(lhs / comp), increasing in log C.
    const double target = std::log(r.lhs / comp), m = r.nc.exponent;
    double lo = -700.0, hi = 700.0;
    for (int it = 0; it < 200; ++it) {
      double mid = 0.5 * (lo + hi);
      double g = mid + std::exp(std::min(mid, 700.0)) * m - target;
      (g < 0.0 ? lo : hi) = mid;
    }
    r.c0 = std::exp(hi);
  }
  return r;
}

double region_energy(const GeneralizedGaussian& h, const Shape& s, int panels, int order) {
  const int d = s.dim();
  if (h.n() != d) throw Error(ErrorKind::DimensionMismatch, "Gaussian and shape differ in dimension");
  if (panels < 1 || order < 1) throw Error(ErrorKind::InvalidInput, "quadrature size must be positive");
  std::vector<double> gx, gw;
  gauss_legendre(order, gx, gw);
  const double jac = std::abs(s.map.determinant());
  auto log_sq = [&](const RVec& y) { return 2.0 * h.log_modulus(RVec(s.center + s.map * y)); };

  // Composite rule on [a, b]: nodes and weights.
  auto composite = [&](double a, double b, std::vector<double>& x, std::vector<double>& w) {
    x.clear();
    w.clear();
    const double pw = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
      double c = a + (p + 0.5) * pw;
      for (int i = 0; i < order; ++i) {
        x.push_back(c + 0.5 * pw * gx[i]);
        w.push_back(0.5 * pw * gw[i]);
      }
    }
  };

  if (s.kind == Shape::Kind::Box || d == 1) {
    std::vector<std::vector<double>> xs(d), ws(d);
    for (int i = 0; i < d; ++i) composite(-s.half(i), s.half(i), xs[i], ws[i]);
    const std::size_t per = xs[0].size();
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= per;
    if (total > 50000000) throw Error(ErrorKind::GridTooLarge, "region quadrature too large");
    std::vector<double> rows(per, 0.0);
    parallel_for(per, [&](std::size_t b, std::size_t e) {
      RVec y(d);
      for (std::size_t r = b; r < e; ++r) {
        std::size_t inner = total / per;
        double acc = 0.0;
        for (std::size_t j = 0; j < inner; ++j) {
          double wt = ws[0][r];
          y(0) = xs[0][r];
          std::size_t rest = j;
          for (int a = d - 1; a >= 1; --a) {
            std::size_t idx = rest % per;
            rest /= per;
            y(a) = xs[a][idx];
            wt *= ws[a][idx];
          }
          acc += wt * std::exp(log_sq(y));
        }
        rows[r] = acc;
      }
    });
    return jac * std::accumulate(rows.begin(), rows.end(), 0.0);
  }
  if (d != 2) throw Error(ErrorKind::UnsupportedShape, "ball quadrature is implemented for d <= 2");
  std::vector<double> rx, rw;
  composite(0.0, s.half(0), rx, rw);
  const int nt = 256;
  double acc = 0.0;
  RVec y(2);
  for (std::size_t i = 0; i < rx.size(); ++i) {
    double ring = 0.0;
    for (int j = 0; j < nt; ++j) {
      double th = 2.0 * kPi * j / nt;
      y << rx[i] * std::cos(th), rx[i] * std::sin(th);
      ring += std::exp(log_sq(y));
    }
    acc += rw[i] * rx[i] * ring * (2.0 * kPi / nt);
  }
  return jac * acc;
}

NazarovStages nazarov_stages(const SymplecticMatrix& a1, const SymplecticMatrix& a2, const GeneralizedGaussian& f,
                             const Shape& s, const Shape& t, double c, std::size_t mc_samples) {
  const int d = f.n();
  if (a1.n() != d || a2.n() != d || s.dim() != d || t.dim() != d)
    throw Error(ErrorKind::DimensionMismatch, "Nazarov stage inputs differ in dimension");
  PreIwasawa p1 = pre_iwasawa(a1), p2 = pre_iwasawa(a2);
  CMat u = p2.U * p1.U.adjoint();
  RMat im_u = u.imag();
  require_invertible(im_u, Tolerances{}.inv, "Im(U) (the Nazarov hypothesis)");
  auto energy = [](const GeneralizedGaussian& h) { return std::exp(2.0 * h.log_l2_norm()); };
  auto complement = [&](const GeneralizedGaussian& h, const Shape& sh) { return energy(h) - region_energy(h, sh); };

  NazarovStages st;
  GeneralizedGaussian h1 = apply_word(f, factor_to_word(a1)), h2 = apply_word(f, factor_to_word(a2));
  st.stage[0] = complement(h1, s) + complement(h2, t);
  st.energy[0] = energy(h1);

  GeneralizedGaussian g = apply_word(f, rotation_word(p1.U)), rg = apply_word(g, rotation_word(u));
  RMat l1i = p1.L.inverse(), l2i = p2.L.inverse();
  Shape s1 = s.transformed(l1i), t1 = t.transformed(l2i);
  st.stage[1] = complement(g, s1) + complement(rg, t1);
  st.energy[1] = energy(g);

  PairReduction red = pair_to_partial(u);
  if (red.k != d) throw Error(ErrorKind::NumericalFailure, "Im(Sigma) is singular although Im(U) is invertible");
  GeneralizedGaussian bg = apply_word(g, red.word_B);
  std::vector<int> all(d);
  std::iota(all.begin(), all.end(), 0);
  GeneralizedGaussian fbg = apply_partial_fourier(bg, all);
  Shape s2 = s1.transformed(red.W2);
  Shape t2 = t1.transformed(RMat(red.B.inverse() * red.W1.transpose()));
  st.stage[2] = complement(bg, s2) + complement(fbg, t2);
  st.energy[2] = energy(bg);

  for (int i = 1; i < 3; ++i)
    st.max_discrepancy = std::max(st.max_discrepancy, std::abs(st.stage[i] - st.stage[0]) / std::abs(st.stage[0]));
  st.log_nc_original = nazarov_constant(s1, t.transformed(RMat(im_u.inverse() * l2i)), c, mc_samples).log_nc;
  st.log_nc_rotated = nazarov_constant(s2, t2, c, mc_samples).log_nc;
  return st;
}

CrossSectionReport cross_section_sweep(const SampledField& v, int k, const RMat& m, double n,
                                       const std::vector<double>& radii, const VerdictRule& rule, double zero_tol) {
  if (v.dims() % 2 != 0 || v.dims() > 4) throw Error(ErrorKind::DimensionMismatch, "expected a field on R^{2d}, d <= 2");
  const int d = v.dims() / 2;
  if (k < 1 || k > d) throw Error(ErrorKind::InvalidInput, "k must lie in 1..d");
  if (m.rows() != 2 * k || m.cols() != 2 * k) throw Error(ErrorKind::DimensionMismatch, "slice weight matrix size");
  check_radii(radii);
  const int r = d - k;
  // Axis order (x1, x2, w1, w2); slice axes are x1 = [0, k) and w1 = [d, d + k).
  std::vector<int> slice_axes, rest_axes;
  for (int i = 0; i < k; ++i) slice_axes.push_back(i);
  for (int i = 0; i < k; ++i) slice_axes.push_back(d + i);
  for (int i = 0; i < r; ++i) rest_axes.push_back(k + i);
  for (int i = 0; i < r; ++i) rest_axes.push_back(d + k + i);
  std::vector<Axis> sa, ra;
  for (int a : slice_axes) sa.push_back(v.axes()[a]);
  for (int a : rest_axes) ra.push_back(v.axes()[a]);
  std::size_t nslices = 1, slice_size = 1;
  for (const Axis& a : ra) nslices *= a.points;
  for (const Axis& a : sa) slice_size *= a.points;
  double peak = 0.0;
  for (const cd& z : v.values()) peak = std::max(peak, std::abs(z));
  double slice_area = 1.0;
  for (const Axis& a : ra) slice_area *= a.spacing();

  CrossSectionReport out;
  out.slices = nslices;
  out.verdicts.assign(nslices, Verdict::Inconclusive);
  std::vector<char> zero(nslices, 0);
  const WeightSpec weight = WeightSpec::beurling(m, n);
  parallel_for(nslices, [&](std::size_t b, std::size_t e) {
    for (std::size_t s = b; s < e; ++s) {
      std::vector<std::size_t> ridx(ra.size());
      std::size_t rest = s;
      for (int i = static_cast<int>(ra.size()) - 1; i >= 0; --i) {
        ridx[i] = rest % ra[i].points;
        rest /= ra[i].points;
      }
      SampledField slice(sa);
      double speak = 0.0;
      for (std::size_t j = 0; j < slice_size; ++j) {
        std::size_t jr = j, flat = 0;
        std::vector<std::size_t> sidx(sa.size());
        for (int i = static_cast<int>(sa.size()) - 1; i >= 0; --i) {
          sidx[i] = jr % sa[i].points;
          jr /= sa[i].points;
        }
        for (std::size_t i = 0; i < sa.size(); ++i) flat += sidx[i] * v.stride(slice_axes[i]);
        for (std::size_t i = 0; i < ra.size(); ++i) flat += ridx[i] * v.stride(rest_axes[i]);
        slice[j] = v[flat];
        speak = std::max(speak, std::abs(v[flat]));
      }
      if (speak <= zero_tol * peak) {
        zero[s] = 1;
        out.verdicts[s] = Verdict::ConvergentLooking;
        continue;
      }
      out.verdicts[s] = judge(weighted_truncated_integrals(slice, weight, radii), rule);
    }
  });
  for (std::size_t s = 0; s < nslices; ++s) {
    out.zero_slice.push_back(zero[s] != 0);
    if (out.verdicts[s] == Verdict::ConvergentLooking)
      ++out.passing;
    else
      out.exception_measure += slice_area;
  }
  out.fraction = static_cast<double>(out.passing) / static_cast<double>(nslices);
  return out;
}

}  // namespace mtfr

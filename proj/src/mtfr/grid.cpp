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
#include "mtfr/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mtfr/fft.hpp"

namespace mtfr {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// Calls fn(flat, t) for every grid point with t the coordinate vector.
template <class Fn>
void for_each_point(const SampledField& f, Fn&& fn) {
  const int n = f.dims();
  std::vector<std::size_t> idx(n, 0);
  RVec t(n);
  for (int a = 0; a < n; ++a) t(a) = f.axes()[a].coord(0);
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    fn(flat, t);
    for (int a = n - 1; a >= 0; --a) {
      if (++idx[a] < f.axes()[a].points) {
        t(a) = f.axes()[a].coord(idx[a]);
        break;
      }
      idx[a] = 0;
      t(a) = f.axes()[a].coord(0);
    }
  }
}

std::size_t checked_product(const std::vector<Axis>& axes, const GridConfig& cfg) {
  std::size_t total = 1;
  for (const auto& a : axes) {
    if (a.points != 0 && total > cfg.max_elements / a.points) total = cfg.max_elements + 1;
    else total *= a.points;
  }
  if (total > cfg.max_elements) {
    std::ostringstream os;
    os << "grid needs more than " << cfg.max_elements << " elements";
    throw Error(ErrorKind::GridTooLarge, os.str());
  }
  return total;
}

// Real interpolation kernel of the N-point trigonometric interpolant (Nyquist term split evenly).
double dirichlet(double theta, std::size_t n) {
  double nn = static_cast<double>(n);
  double s = std::sin(0.5 * theta);
  double core;
  if (std::abs(s) < 1e-12) {
    double c = std::cos(0.5 * theta);  // +-1 at theta = 2 pi q
    core = (nn - 1.0) * std::pow(c, nn - 2.0);
  } else {
    core = std::sin(0.5 * (nn - 1.0) * theta) / s;
  }
  return (core + std::cos(0.5 * nn * theta)) / nn;
}

// Applies g(x) = |s|^{-1/2} f(x / s) along one axis.
void rescale_axis(SampledField& f, int axis, double s) {
  if (s == 1.0) return;
  const Axis ax = f.axes()[axis];
  const std::size_t n = ax.points, stride = f.stride(axis);
  const std::size_t outer = f.size() / (n * stride);
  std::vector<cd> line(n), out(n);
  if (s == -1.0) {
    for (std::size_t o = 0; o < outer; ++o)
      for (std::size_t i = 0; i < stride; ++i) {
        cd* base = f.values().data() + o * n * stride + i;
        for (std::size_t j = 0; j < n; ++j) line[j] = base[j * stride];
        for (std::size_t j = 0; j < n; ++j) base[j * stride] = line[(n - j) % n];
      }
    return;
  }
  RMat kernel = RMat::Zero(n, n);
  const double half = 0.5 * ax.extent;
  for (std::size_t j = 0; j < n; ++j) {
    double y = ax.coord(j) / s;
    if (std::abs(y) > half * (1.0 + 1e-12)) continue;
    for (std::size_t l = 0; l < n; ++l) kernel(j, l) = dirichlet(2.0 * kPi * (y - ax.coord(l)) / ax.extent, n);
  }
  kernel /= std::sqrt(std::abs(s));
  for (std::size_t o = 0; o < outer; ++o)
    for (std::size_t i = 0; i < stride; ++i) {
      cd* base = f.values().data() + o * n * stride + i;
      for (std::size_t j = 0; j < n; ++j) line[j] = base[j * stride];
      for (std::size_t j = 0; j < n; ++j) {
        cd acc = 0.0;
        for (std::size_t l = 0; l < n; ++l) acc += kernel(j, l) * line[l];
        out[j] = acc;
      }
      for (std::size_t j = 0; j < n; ++j) base[j * stride] = out[j];
    }
}

double max_abs(const std::vector<cd>& v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<Axis> uniform_axes(int n, std::size_t points, double extent) {
  return std::vector<Axis>(static_cast<std::size_t>(n), Axis{points, extent});
}

void GridDiagnostics::warn(const std::string& w) {
  if (std::find(warnings.begin(), warnings.end(), w) == warnings.end()) warnings.push_back(w);
}

SampledField::SampledField(std::vector<Axis> axes, const GridConfig& cfg) : axes_(std::move(axes)) {
  if (axes_.empty()) throw Error(ErrorKind::InvalidInput, "field needs at least one axis");
  for (const auto& a : axes_) {
    if (!is_pow2(a.points) || a.points < 8) throw Error(ErrorKind::InvalidInput, "axis points must be a power of two >= 8");
    if (!(a.extent > 0.0) || !std::isfinite(a.extent)) throw Error(ErrorKind::InvalidInput, "axis extent must be positive");
  }
  std::size_t total = checked_product(axes_, cfg);
  strides_.assign(axes_.size(), 1);
  for (int a = static_cast<int>(axes_.size()) - 2; a >= 0; --a) strides_[a] = strides_[a + 1] * axes_[a + 1].points;
  values_.assign(total, cd(0.0));
}

std::vector<std::size_t> SampledField::shape() const {
  std::vector<std::size_t> s;
  for (const auto& a : axes_) s.push_back(a.points);
  return s;
}

void SampledField::set_axis(int axis, Axis a) {
  if (a.points != axes_[axis].points) throw Error(ErrorKind::DimensionMismatch, "axis point count changed");
  axes_[axis] = a;
}

std::vector<std::size_t> SampledField::unravel(std::size_t flat) const {
  std::vector<std::size_t> idx(axes_.size());
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    idx[a] = flat / strides_[a];
    flat %= strides_[a];
  }
  return idx;
}

RVec SampledField::coords(std::size_t flat) const {
  auto idx = unravel(flat);
  RVec t(dims());
  for (int a = 0; a < dims(); ++a) t(a) = axes_[a].coord(idx[a]);
  return t;
}

double SampledField::cell_volume() const {
  double v = 1.0;
  for (const auto& a : axes_) v *= a.spacing();
  return v;
}

SampledField sample(const GeneralizedGaussian& g, const std::vector<Axis>& axes) {
  if (static_cast<int>(axes.size()) != g.n()) throw Error(ErrorKind::DimensionMismatch, "grid dims vs Gaussian");
  return sample_function(axes, [&g](const RVec& t) { return g.value(t); });
}

SampledField sample_function(const std::vector<Axis>& axes, const std::function<cd(const RVec&)>& fn) {
  SampledField f(axes);
  for_each_point(f, [&](std::size_t flat, const RVec& t) { f[flat] = fn(t); });
  return f;
}

SampledField fourier_grid(SampledField f, const std::vector<int>& axes, bool inverse) {
  for (int a : axes) {
    if (a < 0 || a >= f.dims()) throw Error(ErrorKind::DimensionMismatch, "Fourier axis");
    const Axis ax = f.axes()[a];
    const std::size_t n = ax.points, stride = f.stride(a);
    auto& v = f.values();
    for (std::size_t flat = 0; flat < v.size(); ++flat)
      if ((flat / stride) % n % 2 == 1) v[flat] = -v[flat];
    dft_axis(v.data(), f.shape(), a, inverse);
    const double h = ax.spacing();
    for (std::size_t flat = 0; flat < v.size(); ++flat)
      v[flat] *= ((flat / stride) % n % 2 == 1) ? -h : h;
    f.set_axis(a, Axis{n, static_cast<double>(n) / ax.extent});
  }
  return f;
}

SampledField chirp_grid(SampledField f, const RMat& q, GridDiagnostics* diag) {
  if (q.rows() != f.dims()) throw Error(ErrorKind::DimensionMismatch, "chirp size");
  const double vmax = max_abs(f.values());
  bool aliased = false;
  for_each_point(f, [&](std::size_t flat, const RVec& t) {
    RVec qt = q * t;
    if (diag && !aliased && std::abs(f[flat]) > 1e-10 * vmax) {
      for (int a = 0; a < f.dims(); ++a) {
        double h = f.axes()[a].spacing();
        if (std::abs(kPi * (2.0 * h * qt(a) + h * h * q(a, a))) > kPi) aliased = true;
      }
    }
    f[flat] *= std::polar(1.0, kPi * t.dot(qt));
  });
  if (diag && aliased) diag->warn("chirp aliasing: phase step exceeds pi between adjacent samples");
  return f;
}

SampledField dilation_grid(SampledField f, const RMat& l) {
  const int n = f.dims();
  if (l.rows() != n || l.cols() != n) throw Error(ErrorKind::DimensionMismatch, "dilation size");
  double scale = l.cwiseAbs().maxCoeff();
  std::vector<int> perm(n, -1);
  std::vector<double> s(n);
  std::vector<bool> used(n, false);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (std::abs(l(i, j)) > 1e-14 * scale) {
        if (perm[i] != -1 || used[j])
          throw Error(ErrorKind::UnsupportedDilation, "grid dilation must be a permutation times a diagonal");
        perm[i] = j;
        used[j] = true;
        s[i] = l(i, j);
      }
    }
    if (perm[i] == -1) throw Error(ErrorKind::Singular, "dilation L is singular");
  }
  bool identity_perm = true;
  for (int i = 0; i < n; ++i) identity_perm = identity_perm && perm[i] == i;
  if (!identity_perm) {
    std::vector<Axis> axes(n);
    for (int i = 0; i < n; ++i) axes[i] = f.axes()[perm[i]];
    SampledField g(axes);
    for (std::size_t flat = 0; flat < g.size(); ++flat) {
      auto y = g.unravel(flat);
      std::size_t src = 0;
      for (int i = 0; i < n; ++i) src += y[i] * f.stride(perm[i]);
      g[flat] = f[src];
    }
    f = std::move(g);
  }
  for (int i = 0; i < n; ++i) rescale_axis(f, i, s[i]);
  return f;
}

SampledField apply_letter_grid(SampledField f, const Letter& letter, GridDiagnostics* diag) {
  if (const auto* c = std::get_if<Chirp>(&letter)) return chirp_grid(std::move(f), c->Q, diag);
  if (const auto* d = std::get_if<Dilation>(&letter)) return dilation_grid(std::move(f), d->L);
  return fourier_grid(std::move(f), std::get<PartialFourier>(letter).axes);
}

SampledField apply_word_grid(SampledField f, const GeneratorWord& w, GridDiagnostics* diag) {
  if (w.n != f.dims()) throw Error(ErrorKind::DimensionMismatch, "word vs field dimension");
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) f = apply_letter_grid(std::move(f), *it, diag);
  return f;
}

SampledField partial_stft_grid(const SampledField& f, const SampledField& g, int k, const StftSampling& s,
                               const GridConfig& cfg) {
  const int d = f.dims();
  if (g.dims() != d) throw Error(ErrorKind::DimensionMismatch, "partial STFT windows");
  for (int a = 0; a < d; ++a)
    if (!(f.axes()[a] == g.axes()[a])) throw Error(ErrorKind::DimensionMismatch, "partial STFT grids differ");
  if (k < 1 || k > d) throw Error(ErrorKind::InvalidInput, "partial STFT needs 1 <= k <= d");
  if (s.x_stride == 0 || s.omega2_stride == 0) throw Error(ErrorKind::InvalidInput, "stride must be positive");
  const int r = d - k;

  std::vector<Axis> out_axes;
  auto strided = [&](const Axis& a, std::size_t st) {
    if (a.points % st != 0) throw Error(ErrorKind::InvalidInput, "stride must divide the axis size");
    return Axis{a.points / st, a.extent};
  };
  for (int a = 0; a < d; ++a) out_axes.push_back(strided(f.axes()[a], s.x_stride));
  for (int a = 0; a < k; ++a) out_axes.push_back(Axis{f.axes()[a].points, f.axes()[a].points / f.axes()[a].extent});
  for (int a = k; a < d; ++a) out_axes.push_back(strided(f.axes()[a], s.omega2_stride));
  SampledField out(out_axes, cfg);

  // Slices indexed by (x1, x2, w2) sample indices.
  std::vector<std::size_t> slice_shape;
  for (int a = 0; a < d; ++a) slice_shape.push_back(out_axes[a].points);
  for (int a = 0; a < r; ++a) slice_shape.push_back(out_axes[2 * d - r + a].points);
  std::size_t n_slices = 1;
  for (auto v : slice_shape) n_slices *= v;
  std::vector<std::size_t> tshape;
  std::size_t tsize = 1;
  for (int a = 0; a < k; ++a) {
    tshape.push_back(f.axes()[a].points);
    tsize *= f.axes()[a].points;
  }
  double hk = 1.0;
  for (int a = 0; a < k; ++a) hk *= f.axes()[a].spacing();

  parallel_for(n_slices, [&](std::size_t begin, std::size_t end) {
    std::vector<cd> buf(tsize);
    std::vector<std::size_t> sl(slice_shape.size()), tix(k);
    for (std::size_t c = begin; c < end; ++c) {
      std::size_t rem = c;
      for (int a = static_cast<int>(slice_shape.size()) - 1; a >= 0; --a) {
        sl[a] = rem % slice_shape[a];
        rem /= slice_shape[a];
      }
      // Fixed parts of f and g offsets from x2 and -w2.
      std::size_t f_off = 0, g_off = 0;
      bool g_valid = true;
      for (int a = 0; a < r; ++a) {
        const std::size_t n = f.axes()[k + a].points;
        f_off += sl[k + a] * s.x_stride * f.stride(k + a);
        std::size_t p = sl[d + a] * s.omega2_stride;
        if (p == 0) g_valid = false;
        else g_off += (n - p) * g.stride(k + a);
      }
      std::fill(buf.begin(), buf.end(), cd(0.0));
      if (g_valid) {
        std::fill(tix.begin(), tix.end(), 0);
        for (std::size_t t = 0; t < tsize; ++t) {
          std::size_t fi = f_off, gi = g_off;
          bool inside = true;
          int parity = 0;
          for (int a = 0; a < k; ++a) {
            const long n = static_cast<long>(f.axes()[a].points);
            long u = static_cast<long>(tix[a]) - static_cast<long>(sl[a] * s.x_stride) + n / 2;
            if (u < 0 || u >= n) inside = false;
            fi += tix[a] * f.stride(a);
            gi += static_cast<std::size_t>(std::max(0L, u)) * g.stride(a);
            parity += static_cast<int>(tix[a] & 1);
          }
          if (inside) {
            cd v = f[fi] * std::conj(g[gi]);
            buf[t] = (parity & 1) ? -v : v;
          }
          for (int a = k - 1; a >= 0; --a) {
            if (++tix[a] < tshape[a]) break;
            tix[a] = 0;
          }
        }
        for (int a = 0; a < k; ++a) dft_axis(buf.data(), tshape, a, false);
      }
      std::size_t base = 0;
      for (int a = 0; a < d; ++a) base += sl[a] * out.stride(a);
      for (int a = 0; a < r; ++a) base += sl[d + a] * out.stride(d + k + a);
      std::fill(tix.begin(), tix.end(), 0);
      for (std::size_t m = 0; m < tsize; ++m) {
        std::size_t oi = base;
        int parity = 0;
        for (int a = 0; a < k; ++a) {
          oi += tix[a] * out.stride(d + a);
          parity += static_cast<int>(tix[a] & 1);
        }
        out[oi] = (parity & 1) ? -hk * buf[m] : hk * buf[m];
        for (int a = k - 1; a >= 0; --a) {
          if (++tix[a] < tshape[a]) break;
          tix[a] = 0;
        }
      }
    }
  });
  return out;
}

SampledField tensor_conj(const SampledField& f, const SampledField& g, const GridConfig& cfg) {
  std::vector<Axis> axes = f.axes();
  axes.insert(axes.end(), g.axes().begin(), g.axes().end());
  SampledField out(axes, cfg);
  const std::size_t ng = g.size();
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < ng; ++j) out[i * ng + j] = f[i] * std::conj(g[j]);
  return out;
}

SampledField tfr_grid(const GeneratorWord& w, const SampledField& f, const SampledField& g, const GridConfig& cfg,
                      GridDiagnostics* diag) {
  if (w.n != f.dims() + g.dims()) throw Error(ErrorKind::DimensionMismatch, "TFR word dimension");
  return apply_word_grid(tensor_conj(f, g, cfg), w, diag);
}

double l2_norm(const SampledField& f) {
  double s = 0.0;
  for (const auto& v : f.values()) s += std::norm(v);
  return std::sqrt(s * f.cell_volume());
}

cd inner_product(const SampledField& a, const SampledField& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "inner product");
  cd s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s * a.cell_volume();
}

WeightSpec WeightSpec::beurling(const RMat& m, double n) {
  WeightSpec w;
  w.kind = Kind::Beurling;
  w.matrix = 0.5 * (m + m.transpose());
  w.param = n;
  return w;
}

WeightSpec WeightSpec::gaussian(const RMat& omega, double alpha) {
  WeightSpec w;
  w.kind = Kind::Gaussian;
  w.matrix = omega.inverse();
  w.param = alpha;
  return w;
}

WeightSpec WeightSpec::gelfand_shilov(double p, double a, bool on_x) {
  WeightSpec w;
  w.kind = Kind::GelfandShilov;
  w.p = p;
  w.param = a;
  w.first_half = on_x;
  return w;
}

double WeightSpec::log_weight(const RVec& l) const {
  switch (kind) {
    case Kind::Beurling:
      return kPi * std::abs(l.dot(matrix * l)) - param * std::log1p(l.norm());
    case Kind::Gaussian:
      return 0.5 * kPi * param * (matrix * l).squaredNorm();
    case Kind::GelfandShilov: {
      const int d = static_cast<int>(l.size() / 2);
      double s = 0.0;
      for (int i = 0; i < d; ++i) s += std::pow(std::abs(l(first_half ? i : d + i)), p);
      return (kPi / p) * std::pow(param, p) * s;
    }
  }
  return 0.0;
}

std::vector<double> weighted_truncated_integrals(const SampledField& f, const WeightSpec& w,
                                                 const std::vector<double>& radii) {
  double limit = 1e300;
  for (const auto& a : f.axes()) limit = std::min(limit, 0.5 * a.extent);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (radii[i] > limit * (1.0 + 1e-12)) throw Error(ErrorKind::RadiusExceedsGrid, "radius exceeds the grid half-extent");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw Error(ErrorKind::InvalidInput, "radii must increase");
  }
  std::vector<double> bins(radii.size(), 0.0);
  const double vol = f.cell_volume();
  for_each_point(f, [&](std::size_t flat, const RVec& t) {
    double a = std::abs(f[flat]);
    if (a == 0.0) return;
    double r = t.norm();
    auto it = std::lower_bound(radii.begin(), radii.end(), r);
    if (it == radii.end()) return;
    bins[it - radii.begin()] += std::exp(std::log(a) + w.log_weight(t)) * vol;
  });
  for (std::size_t i = 1; i < bins.size(); ++i) bins[i] += bins[i - 1];
  return bins;
}

double weighted_truncated_integral(const SampledField& f, const WeightSpec& w, double radius) {
  return weighted_truncated_integrals(f, w, {radius}).front();
}

Region Region::box(const RVec& lo, const RVec& hi) {
  return Region{RMat::Identity(lo.size(), lo.size()), RVec::Zero(lo.size()), lo, hi};
}

Region Region::linear_image(const RMat& map, const RVec& lo, const RVec& hi) {
  return Region{map.inverse(), RVec::Zero(lo.size()), lo, hi};
}

bool Region::contains(const RVec& l) const {
  RVec y = inverse_map * (l - center);
  const double eps = 1e-12;
  for (int i = 0; i < y.size(); ++i)
    if (y(i) < lo(i) - eps || y(i) > hi(i) + eps) return false;
  return true;
}

double mass_outside(const SampledField& f, const Region& r) {
  if (r.lo.size() != f.dims()) throw Error(ErrorKind::DimensionMismatch, "region dimension");
  double total = 0.0, outside = 0.0;
  for_each_point(f, [&](std::size_t flat, const RVec& t) {
    double m = std::norm(f[flat]);
    total += m;
    if (!r.contains(t)) outside += m;
  });
  return total > 0.0 ? outside / total : 0.0;
}

SampledField time_frequency_shift(const SampledField& f, double x, double w) {
  if (f.dims() != 1) throw Error(ErrorKind::DimensionMismatch, "time-frequency shift is one-dimensional");
  const Axis ax = f.axes()[0];
  double sh = x / ax.spacing();
  long s = std::lround(sh);
  if (std::abs(sh - static_cast<double>(s)) > 1e-9) throw Error(ErrorKind::OffGridPoint, "shift is not a grid multiple");
  SampledField out(f.axes());
  const long n = static_cast<long>(ax.points);
  for (long j = 0; j < n; ++j) {
    long src = j - s;
    if (src < 0 || src >= n) continue;
    double t = ax.coord(static_cast<std::size_t>(j));
    out[j] = std::polar(1.0, -kPi * x * w + 2.0 * kPi * w * t) * f[src];
  }
  return out;
}

double intertwining_check(const GeneratorWord& w, const RVec& lambda, const GeneralizedGaussian& f, const Axis& axis,
                          GridDiagnostics* diag) {
  if (w.n != 1 || f.n() != 1 || lambda.size() != 2) throw Error(ErrorKind::DimensionMismatch, "intertwining check is one-dimensional");
  RVec mu = w.matrix() * lambda;
  SampledField f0 = sample(f, {axis});
  SampledField a = time_frequency_shift(f0, mu(0), mu(1));
  SampledField b = apply_word_grid(f0, inverse_word(w), diag);
  b = time_frequency_shift(b, lambda(0), lambda(1));
  b = apply_word_grid(std::move(b), w, diag);
  if (!(b.axes()[0] == a.axes()[0])) throw Error(ErrorKind::OffGridPoint, "word does not return to the starting grid");
  double na = l2_norm(a), nb = l2_norm(b);
  double dev2 = na * na + nb * nb - 2.0 * std::abs(inner_product(a, b));
  return std::sqrt(std::max(0.0, dev2)) / l2_norm(f0);
}

BandLimitedInterpolator::BandLimitedInterpolator(const SampledField& f) : axes_(f.axes()), coeffs_(f.values()) {
  auto shape = f.shape();
  for (int a = 0; a < f.dims(); ++a) dft_axis(coeffs_.data(), shape, a, false);
  const double norm = 1.0 / static_cast<double>(coeffs_.size());
  for (auto& c : coeffs_) c *= norm;
}

cd BandLimitedInterpolator::operator()(const RVec& p) const {
  const int n = static_cast<int>(axes_.size());
  if (p.size() != n) throw Error(ErrorKind::DimensionMismatch, "interpolation point");
  std::vector<cd> cur = coeffs_, next;
  std::size_t len = cur.size();
  for (int a = n - 1; a >= 0; --a) {
    const Axis& ax = axes_[a];
    const std::size_t na = ax.points;
    const double u = (p(a) - ax.coord(0)) / ax.extent;
    std::vector<cd> e(na);
    for (std::size_t m = 0; m < na; ++m) {
      long q = m < na / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(na);
      if (m == na / 2) e[m] = std::cos(kPi * static_cast<double>(na) * u);
      else e[m] = std::polar(1.0, 2.0 * kPi * static_cast<double>(q) * u);
    }
    len /= na;
    next.assign(len, cd(0.0));
    for (std::size_t i = 0; i < len; ++i) {
      cd acc = 0.0;
      const cd* row = cur.data() + i * na;
      for (std::size_t m = 0; m < na; ++m) acc += row[m] * e[m];
      next[i] = acc;
    }
    cur.swap(next);
  }
  return cur[0];
}

}  // namespace mtfr

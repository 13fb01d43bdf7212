#include "hylab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <thread>

#include "hylab/gauss_hermite.hpp"

namespace hylab {

const char* method_name(Method m) {
  switch (m) {
    case Method::ClosedForm:
      return "closed-form";
    case Method::GaussHermite:
      return "gauss-hermite";
    case Method::MonteCarlo:
      return "monte-carlo";
  }
  return "unknown";
}

QuadratureScheme QuadratureScheme::gauss_hermite(int nodes) {
  QuadratureScheme s;
  s.kind = Kind::GaussHermite;
  s.nodes_per_axis = nodes;
  return s;
}

QuadratureScheme QuadratureScheme::monte_carlo(std::int64_t samples, std::uint64_t seed) {
  QuadratureScheme s;
  s.kind = Kind::MonteCarlo;
  s.samples = samples;
  s.seed = seed;
  return s;
}

void QuadratureScheme::validate() const {
  if (kind == Kind::GaussHermite && (nodes_per_axis < 10 || nodes_per_axis > 200)) {
    throw std::invalid_argument("QuadratureScheme: nodes_per_axis must lie in [10, 200]");
  }
  if (kind == Kind::MonteCarlo && samples < 10'000) {
    throw std::invalid_argument("QuadratureScheme: samples must be at least 1e4");
  }
  if (!(prune_budget > 0.0)) throw std::invalid_argument("QuadratureScheme: prune_budget must be positive");
  if (threads < 1) throw std::invalid_argument("QuadratureScheme: threads must be positive");
}

FunctionTriple to_evaluable(const GaussTriple& f) {
  return {EvaluableFunction::from(f[0]), EvaluableFunction::from(f[1]), EvaluableFunction::from(f[2])};
}

void parallel_for_chunks(std::size_t chunks, int threads, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), chunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) body(c);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t c = w; c < chunks; c += workers) body(c);
    });
  }
  for (auto& t : pool) t.join();
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<int> cost_order(const GaussHermiteRule& r) {
  std::vector<int> order(r.nodes.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return r.cost[a] < r.cost[b]; });
  return order;
}

/// All index tuples of length `dims` whose summed cost stays within budget.
struct PrunedGrid {
  int dims = 0;
  std::vector<int> idx;
  std::vector<double> cost;
  std::size_t size() const { return cost.size(); }
};

void enumerate(const GaussHermiteRule& r, const std::vector<int>& order, int level, double acc, double budget,
               std::vector<int>& cur, PrunedGrid& out) {
  for (int k : order) {
    const double c = acc + r.cost[k];
    if (c > budget) break;
    cur[level] = k;
    if (level + 1 == out.dims) {
      out.idx.insert(out.idx.end(), cur.begin(), cur.end());
      out.cost.push_back(c);
    } else {
      enumerate(r, order, level + 1, c, budget, cur, out);
    }
  }
}

PrunedGrid pruned_grid(const GaussHermiteRule& r, int dims, double budget) {
  PrunedGrid g;
  g.dims = dims;
  std::vector<int> cur(dims, 0);
  enumerate(r, cost_order(r), 0, 0.0, budget, cur, g);
  return g;
}

Mat lower_cholesky_of_inverse(const Mat& P) {
  Eigen::LLT<Mat> llt(P.inverse());
  if (llt.info() != Eigen::Success) throw std::domain_error("quadrature: envelope precision not positive definite");
  return llt.matrixL();
}

struct Selectors {
  Mat S1, S2, S3;
};

Selectors make_selectors(int n) {
  const int dx = n - 1;
  const int m = 2 * n;
  Selectors s{Mat::Zero(n, m), Mat::Zero(n, m), Mat()};
  for (int k = 0; k < dx; ++k) {
    s.S1(k, k) = 1.0;
    s.S2(k, dx + k) = 1.0;
  }
  s.S1(dx, 2 * dx) = 1.0;
  s.S2(dx, 2 * dx + 1) = 1.0;
  s.S3 = -(s.S1 + s.S2);
  return s;
}

int checked_dim(const FunctionTriple& f) {
  const int n = f[0].dim();
  if (f[1].dim() != n || f[2].dim() != n) throw std::invalid_argument("eval_trilinear: dimension mismatch");
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("eval_trilinear: dimension must be 2d+1 with d >= 1");
  if ((n - 1) / 2 > 2) throw Unsupported("eval_trilinear: quadrature supports d <= 2 only");
  return n;
}

cplx twist_factor(TrilinearVariant v, double b, double beta) {
  const double th = b * beta;
  switch (v) {
    case TrilinearVariant::Full:
      return {std::cos(th), std::sin(th)};
    case TrilinearVariant::TwistDifference: {
      const double s = std::sin(0.5 * th);
      return {-2.0 * s * s, std::sin(th)};
    }
    case TrilinearVariant::ShiftDifference:
      return 1.0;
  }
  return 1.0;
}

cplx gh_trilinear(const FunctionTriple& f, const Mat& A, double b, int N, double budget, int threads,
                  TrilinearVariant variant, std::int64_t& evals) {
  const int n = f[0].dim();
  const int dx = n - 1;
  const int m = 2 * n;
  const Selectors sel = make_selectors(n);
  const std::array<const Mat*, 3> S{&sel.S1, &sel.S2, &sel.S3};
  Mat P = Mat::Zero(m, m);
  Vec h = Vec::Zero(m);
  for (int j = 0; j < 3; ++j) {
    const Envelope& e = f[j].envelope();
    P += S[j]->transpose() * e.profile * (*S[j]);
    h += 2.0 * S[j]->transpose() * (e.profile * e.center);
  }
  const int nx = 2 * dx;
  const Mat Pxx = P.topLeftCorner(nx, nx);
  const Mat Pxt = P.topRightCorner(nx, 2);
  const Mat Ptt = P.bottomRightCorner(2, 2);
  const Mat PttInv = Ptt.inverse();
  const Mat Px = Pxx - Pxt * PttInv * Pxt.transpose();
  const Vec hx = h.head(nx) - Pxt * PttInv * h.tail(2);
  const Vec mux = 0.5 * Px.ldlt().solve(hx);
  const Mat Lx = lower_cholesky_of_inverse(Px);
  const Mat Lt = lower_cholesky_of_inverse(Ptt);
  const double detLx = Lx.diagonal().prod();
  const double detLt = Lt.diagonal().prod();
  const Mat B = A.transpose() * symplectic_matrix(dx / 2) * A;

  const GaussHermiteRule& rule = gauss_hermite_rule(N);
  const std::vector<int> order = cost_order(rule);
  const PrunedGrid outer = pruned_grid(rule, nx, budget);

  std::array<Vec, 3> c;
  std::array<Vec, 3> Rt;
  for (int j = 0; j < 3; ++j) {
    c[j] = f[j].envelope().center;
    Rt[j] = f[j].envelope().profile.row(dx).transpose();
  }

  constexpr std::size_t kChunk = 512;
  const std::size_t chunks = (outer.size() + kChunk - 1) / kChunk;
  std::vector<cplx> partial(chunks, 0.0);
  std::vector<std::int64_t> counts(chunks, 0);
  parallel_for_chunks(chunks, threads, [&](std::size_t ch) {
    Vec u(nx), x(nx);
    Vec z1(n), z2(n), z3(n), z3u(n);
    cplx acc = 0.0;
    std::int64_t cnt = 0;
    const std::size_t end = std::min(outer.size(), (ch + 1) * kChunk);
    for (std::size_t o = ch * kChunk; o < end; ++o) {
      double wout = detLx * detLt;
      for (int k = 0; k < nx; ++k) {
        const int id = outer.idx[o * nx + k];
        u(k) = rule.nodes[id];
        wout *= rule.scaled_weights[id];
      }
      x = mux + Lx.triangularView<Eigen::Lower>() * u;
      const auto x1 = x.head(dx);
      const auto x2 = x.segment(dx, dx);
      const double beta = x1.dot(B * x2);
      // gradient of the shifted log-envelope in (t1, t2) at t = 0
      z1 << x1, 0.0;
      z2 << x2, 0.0;
      z3 << -(x1 + x2), -beta;
      const double g3 = 2.0 * Rt[2].dot(z3 - c[2]);
      const Vec grad = Eigen::Vector2d(-2.0 * Rt[0].dot(z1 - c[0]) + g3, -2.0 * Rt[1].dot(z2 - c[1]) + g3);
      const Vec mut = 0.5 * PttInv * grad;
      const double rem = budget - outer.cost[o];

      cplx inner = 0.0;
      for (int a : order) {
        const double ca = rule.cost[a];
        if (ca > rem) break;
        const double t1 = mut(0) + Lt(0, 0) * rule.nodes[a];
        z1(dx) = t1;
        const cplx v1 = f[0](z1.data());
        ++cnt;
        if (v1 == cplx(0.0)) continue;
        cplx row = 0.0;
        for (int bb : order) {
          if (ca + rule.cost[bb] > rem) break;
          const double t2 = mut(1) + Lt(1, 0) * rule.nodes[a] + Lt(1, 1) * rule.nodes[bb];
          z2(dx) = t2;
          z3(dx) = -t1 - t2 - beta;
          const cplx v2 = f[1](z2.data());
          cplx v3 = f[2](z3.data());
          cnt += 2;
          if (variant == TrilinearVariant::ShiftDifference) {
            z3u = z3;
            z3u(dx) = -t1 - t2;
            v3 -= f[2](z3u.data());
            ++cnt;
          }
          row += rule.scaled_weights[bb] * v2 * v3;
        }
        inner += rule.scaled_weights[a] * v1 * row;
      }
      acc += wout * inner * twist_factor(variant, b, beta);
    }
    partial[ch] = acc;
    counts[ch] = cnt;
  });
  cplx total = 0.0;
  for (std::size_t ch = 0; ch < chunks; ++ch) {
    total += partial[ch];
    evals += counts[ch];
  }
  return total;
}

struct PairMoments {
  double n = 0, sr = 0, si = 0, srr = 0, sii = 0, sri = 0;
  void add(cplx v) {
    n += 1;
    sr += v.real();
    si += v.imag();
    srr += v.real() * v.real();
    sii += v.imag() * v.imag();
    sri += v.real() * v.imag();
  }
  void merge(const PairMoments& o) {
    n += o.n;
    sr += o.sr;
    si += o.si;
    srr += o.srr;
    sii += o.sii;
    sri += o.sri;
  }
};

/// Mean, standard error of the modulus, and complex standard error from pair
/// moments accumulated relative to `shift`.
void summarize(const PairMoments& pm, cplx shift, cplx& mean, double& err_mod, double& err_complex) {
  const double mr = pm.sr / pm.n, mi = pm.si / pm.n;
  mean = shift + cplx(mr, mi);
  const double denom = pm.n > 1 ? (pm.n - 1) : 1.0;
  const double vrr = std::max(0.0, (pm.srr - pm.n * mr * mr) / denom);
  const double vii = std::max(0.0, (pm.sii - pm.n * mi * mi) / denom);
  const double vri = (pm.sri - pm.n * mr * mi) / denom;
  err_complex = std::sqrt((vrr + vii) / pm.n);
  const double am = std::abs(mean);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * am;
  if (am == 0.0) {
    err_mod = err_complex + floor;
    return;
  }
  const double cr = mean.real() / am, ci = mean.imag() / am;
  const double vpar = cr * cr * vrr + ci * ci * vii + 2.0 * cr * ci * vri;
  const double vperp = ci * ci * vrr + cr * cr * vii - 2.0 * cr * ci * vri;
  const double spar = std::sqrt(std::max(0.0, vpar) / pm.n);
  const double sperp = std::sqrt(std::max(0.0, vperp) / pm.n);
  err_mod = spar + sperp * sperp / am + floor;
}

constexpr std::int64_t kPairsPerChunk = 8192;

TrilinearResult mc_trilinear(const FunctionTriple& f, const Mat& A, double b, const QuadratureScheme& scheme,
                             TrilinearVariant variant) {
  const int n = f[0].dim();
  const int dx = n - 1;
  const int m = 2 * n;
  const Selectors sel = make_selectors(n);
  const std::array<const Mat*, 3> S{&sel.S1, &sel.S2, &sel.S3};
  Mat P = Mat::Zero(m, m);
  Vec h = Vec::Zero(m);
  for (int j = 0; j < 3; ++j) {
    const Envelope& e = f[j].envelope();
    P += S[j]->transpose() * e.rate * (*S[j]);
    h += 2.0 * S[j]->transpose() * (e.rate * e.center);
  }
  const Vec mu = 0.5 * P.ldlt().solve(h);
  const Mat L = lower_cholesky_of_inverse(2.0 * P);
  const double logq0 = -L.diagonal().array().log().sum() - 0.5 * m * std::log(2.0 * M_PI);
  const Mat B = A.transpose() * symplectic_matrix(dx / 2) * A;

  auto integrand = [&](const Vec& w, std::int64_t& cnt) -> cplx {
    const auto x1 = w.head(dx);
    const auto x2 = w.segment(dx, dx);
    const double beta = x1.dot(B * x2);
    Vec z1(n), z2(n), z3(n);
    z1 << x1, w(2 * dx);
    z2 << x2, w(2 * dx + 1);
    z3 << -(x1 + x2), -w(2 * dx) - w(2 * dx + 1) - beta;
    const cplx v12 = f[0](z1.data()) * f[1](z2.data());
    cnt += 2;
    if (v12 == cplx(0.0)) return 0.0;
    cplx v3 = f[2](z3.data());
    ++cnt;
    if (variant == TrilinearVariant::ShiftDifference) {
      z3(dx) += beta;
      v3 -= f[2](z3.data());
      ++cnt;
    }
    return v12 * v3 * twist_factor(variant, b, beta);
  };

  std::int64_t dummy = 0;
  const cplx shift = integrand(mu, dummy) * std::exp(-logq0);
  const std::int64_t pairs = (scheme.samples + 1) / 2;
  const std::size_t chunks = static_cast<std::size_t>((pairs + kPairsPerChunk - 1) / kPairsPerChunk);
  std::vector<PairMoments> parts(chunks);
  std::vector<std::int64_t> counts(chunks, 0);
  parallel_for_chunks(chunks, scheme.threads, [&](std::size_t ch) {
    std::mt19937_64 rng(splitmix64(scheme.seed ^ splitmix64(ch + 1)));
    std::normal_distribution<double> normal;
    const std::int64_t begin = static_cast<std::int64_t>(ch) * kPairsPerChunk;
    const std::int64_t end = std::min(pairs, begin + kPairsPerChunk);
    Vec xi(m), wp(m), wm(m);
    PairMoments pm;
    std::int64_t cnt = 0;
    for (std::int64_t s = begin; s < end; ++s) {
      for (int k = 0; k < m; ++k) xi(k) = normal(rng);
      const Vec d = L.triangularView<Eigen::Lower>() * xi;
      wp = mu + d;
      wm = mu - d;
      const double invq = std::exp(-(logq0 - 0.5 * xi.squaredNorm()));
      const cplx v = 0.5 * (integrand(wp, cnt) + integrand(wm, cnt)) * invq;
      pm.add(v - shift);
    }
    parts[ch] = pm;
    counts[ch] = cnt;
  });
  PairMoments total;
  TrilinearResult res;
  res.method = Method::MonteCarlo;
  for (std::size_t ch = 0; ch < chunks; ++ch) {
    total.merge(parts[ch]);
    res.evaluations += counts[ch];
  }
  summarize(total, shift, res.value, res.error, res.stderr_complex);
  return res;
}

bool any_zero(const FunctionTriple& f) {
  for (const auto& g : f) {
    if (g.envelope().amplitude == 0.0) return true;
  }
  return false;
}

/// Integral of w |f|^p on the GH grid adapted to exp(-(z-c)^T rate (z-c)).
double grid_power(const EvaluableFunction& f, double p, const Vec& c, const Mat& rate, int N, double budget,
                  int threads, const std::function<double(const Vec&)>& weight) {
  const int n = f.dim();
  const Mat L = lower_cholesky_of_inverse(rate);
  const double detL = L.diagonal().prod();
  const GaussHermiteRule& rule = gauss_hermite_rule(N);
  const PrunedGrid grid = pruned_grid(rule, n, budget);
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (grid.size() + kChunk - 1) / kChunk;
  std::vector<double> partial(chunks, 0.0);
  parallel_for_chunks(chunks, threads, [&](std::size_t ch) {
    Vec u(n), z(n);
    double acc = 0.0;
    const std::size_t end = std::min(grid.size(), (ch + 1) * kChunk);
    for (std::size_t o = ch * kChunk; o < end; ++o) {
      double w = detL;
      for (int k = 0; k < n; ++k) {
        const int id = grid.idx[o * n + k];
        u(k) = rule.nodes[id];
        w *= rule.scaled_weights[id];
      }
      z = c + L.triangularView<Eigen::Lower>() * u;
      if (weight) w *= weight(z);
      acc += w * std::pow(std::abs(f(z.data())), p);
    }
    partial[ch] = acc;
  });
  return std::accumulate(partial.begin(), partial.end(), 0.0);
}

/// |group(z)| is modelled by exp(logc - (z-m)^T R (z-m)).
struct GroupBump {
  Vec m;
  Mat R;
  double logc = 0.0;
};

std::vector<GroupBump> group_bumps(const GaussianPolynomial& f) {
  std::vector<GroupBump> out;
  for (const auto& g : f.groups()) {
    GroupBump b;
    b.R = (0.5 * (g.Q + g.Q.transpose())).real();
    Eigen::LLT<Mat> llt(b.R);
    if (llt.info() != Eigen::Success) throw std::domain_error("quadrature: Re(Q) not positive definite");
    b.m = 0.5 * llt.solve(Vec(g.l.real()));
    double csum = 0.0;
    for (const auto& [a, cc] : g.poly.terms()) csum += std::abs(cc);
    if (!(csum > 0.0)) continue;
    b.logc = std::log(csum) + b.m.dot(b.R * b.m);
    out.push_back(std::move(b));
  }
  return out;
}

/// Multi-group Gaussian polynomials are split by a partition of unity
/// proportional to the group magnitudes; each piece is integrated on the
/// grid of its own group.
double gh_norm_power(const EvaluableFunction& f, double p, int N, double budget, int threads) {
  const GaussianPolynomial* src = f.source();
  if (src && src->groups().size() >= 2) {
    const std::vector<GroupBump> bumps = group_bumps(*src);
    auto log_mag = [&](std::size_t k, const Vec& z) {
      const Vec dz = z - bumps[k].m;
      return p * (bumps[k].logc - dz.dot(bumps[k].R * dz));
    };
    double total = 0.0;
    for (std::size_t k = 0; k < bumps.size(); ++k) {
      auto weight = [&, k](const Vec& z) {
        double mx = -std::numeric_limits<double>::infinity();
        std::vector<double> lm(bumps.size());
        for (std::size_t i = 0; i < bumps.size(); ++i) mx = std::max(mx, lm[i] = log_mag(i, z));
        double s = 0.0;
        for (double v : lm) s += std::exp(v - mx);
        return std::exp(lm[k] - mx) / s;
      };
      total += grid_power(f, p, bumps[k].m, p * bumps[k].R, N, budget, threads, weight);
    }
    return total;
  }
  const Envelope& e = f.envelope();
  return grid_power(f, p, e.center, p * e.profile, N, budget, threads, nullptr);
}

NormResult mc_norm(const EvaluableFunction& f, double p, const QuadratureScheme& scheme) {
  const int n = f.dim();
  const Envelope& e = f.envelope();
  const Mat L = lower_cholesky_of_inverse(2.0 * p * e.rate);
  const double logq0 = -L.diagonal().array().log().sum() - 0.5 * n * std::log(2.0 * M_PI);
  const double shift = std::pow(std::abs(f(e.center.data())), p) * std::exp(-logq0);
  const std::int64_t pairs = (scheme.samples + 1) / 2;
  const std::size_t chunks = static_cast<std::size_t>((pairs + kPairsPerChunk - 1) / kPairsPerChunk);
  std::vector<PairMoments> parts(chunks);
  parallel_for_chunks(chunks, scheme.threads, [&](std::size_t ch) {
    std::mt19937_64 rng(splitmix64(~scheme.seed ^ splitmix64(ch + 1)));
    std::normal_distribution<double> normal;
    const std::int64_t begin = static_cast<std::int64_t>(ch) * kPairsPerChunk;
    const std::int64_t end = std::min(pairs, begin + kPairsPerChunk);
    Vec xi(n), z(n);
    PairMoments pm;
    for (std::int64_t s = begin; s < end; ++s) {
      for (int k = 0; k < n; ++k) xi(k) = normal(rng);
      const Vec d = L.triangularView<Eigen::Lower>() * xi;
      const double invq = std::exp(-(logq0 - 0.5 * xi.squaredNorm()));
      z = e.center + d;
      double v = std::pow(std::abs(f(z.data())), p);
      z = e.center - d;
      v += std::pow(std::abs(f(z.data())), p);
      pm.add(cplx(0.5 * v * invq - shift, 0.0));
    }
    parts[ch] = pm;
  });
  PairMoments total;
  for (const auto& pm : parts) total.merge(pm);
  cplx mean;
  double err_mod = 0.0, err_c = 0.0;
  summarize(total, shift, mean, err_mod, err_c);
  NormResult r;
  r.method = Method::MonteCarlo;
  const double I = mean.real();
  r.value = I > 0.0 ? std::pow(I, 1.0 / p) : 0.0;
  r.error = I > 0.0 ? r.value * err_c / (p * I) : err_c;
  return r;
}

}  // namespace

TrilinearResult eval_trilinear(const FunctionTriple& f, const Mat& A, double b, const QuadratureScheme& scheme,
                               TrilinearVariant variant) {
  scheme.validate();
  const int n = checked_dim(f);
  if (A.rows() != n - 1 || A.cols() != n - 1) throw std::invalid_argument("eval_trilinear: A must be 2d x 2d");
  TrilinearResult res;
  if (any_zero(f)) {
    res.method = scheme.kind == QuadratureScheme::Kind::MonteCarlo ? Method::MonteCarlo : Method::GaussHermite;
    return res;
  }
  if (scheme.kind == QuadratureScheme::Kind::MonteCarlo) return mc_trilinear(f, A, b, scheme, variant);
  res.method = Method::GaussHermite;
  const int N = scheme.nodes_per_axis;
  res.value = gh_trilinear(f, A, b, N, scheme.prune_budget, scheme.threads, variant, res.evaluations);
  const cplx coarse = gh_trilinear(f, A, b, N / 2, scheme.prune_budget, scheme.threads, variant, res.evaluations);
  res.error = std::abs(res.value - coarse);
  return res;
}

TrilinearResult eval_trilinear(const EvaluableFunction& f1, const EvaluableFunction& f2,
                               const EvaluableFunction& f3, const Mat& A, double b,
                               const QuadratureScheme& scheme) {
  return eval_trilinear(FunctionTriple{f1, f2, f3}, A, b, scheme);
}

cplx gh_integrate(const std::function<cplx(const double*)>& F, const Vec& center, const Mat& rate, int nodes,
                  double prune_budget) {
  const int n = static_cast<int>(center.size());
  const Mat L = lower_cholesky_of_inverse(rate);
  const double detL = L.diagonal().prod();
  const GaussHermiteRule& rule = gauss_hermite_rule(nodes);
  const PrunedGrid grid = pruned_grid(rule, n, prune_budget);
  Vec u(n), z(n);
  cplx acc = 0.0;
  for (std::size_t o = 0; o < grid.size(); ++o) {
    double w = detL;
    for (int k = 0; k < n; ++k) {
      const int id = grid.idx[o * n + k];
      u(k) = rule.nodes[id];
      w *= rule.scaled_weights[id];
    }
    z = center + L.triangularView<Eigen::Lower>() * u;
    acc += w * F(z.data());
  }
  return acc;
}

double lp_power_gh(const EvaluableFunction& f, double p, int nodes, double prune_budget) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_power_gh: p must be >= 1");
  if (f.envelope().amplitude == 0.0) return 0.0;
  return gh_norm_power(f, p, nodes, prune_budget, 1);
}

NormResult lp_norm(const EvaluableFunction& f, double p, const QuadratureScheme& scheme) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  scheme.validate();
  if (f.envelope().amplitude == 0.0) return {};
  if (scheme.kind == QuadratureScheme::Kind::MonteCarlo) return mc_norm(f, p, scheme);
  const int N = scheme.nodes_per_axis;
  const double fine = gh_norm_power(f, p, N, scheme.prune_budget, scheme.threads);
  const double coarse = gh_norm_power(f, p, N / 2, scheme.prune_budget, scheme.threads);
  NormResult r;
  r.method = Method::GaussHermite;
  r.value = std::pow(fine, 1.0 / p);
  r.error = fine > 0.0 ? r.value * std::abs(fine - coarse) / (p * fine) : 0.0;
  return r;
}

PhiResult phi(const FunctionTriple& f, const ExponentTriple& p, const Mat& A, double b,
              const QuadratureScheme& scheme) {
  PhiResult r;
  double prod = 1.0, rel = 0.0;
  for (int j = 0; j < 3; ++j) {
    r.norms[j] = lp_norm(f[j], p.p(j), scheme);
    if (!(r.norms[j].value > 0.0)) throw std::invalid_argument("phi: zero norm");
    prod *= r.norms[j].value;
    rel += r.norms[j].error / r.norms[j].value;
  }
  r.trilinear = eval_trilinear(f, A, b, scheme);
  const double T = std::abs(r.trilinear.value);
  r.value = T / prod;
  r.error = r.trilinear.error / prod + r.value * rel;
  return r;
}

DeficitResult deficit_from_phi(double phi_value, double phi_error, const ExponentTriple& p, int n) {
  DeficitResult d;
  d.optimal = optimal_constant(p, n);
  d.phi = phi_value;
  d.phi_error = phi_error;
  d.deficit = 1.0 - phi_value / d.optimal;
  d.error = phi_error / d.optimal;
  d.young_violation = d.deficit < -3.0 * d.error - 1e-12;
  return d;
}

DeficitResult deficit(const FunctionTriple& f, const ExponentTriple& p, const Mat& A, double b,
                      const QuadratureScheme& scheme) {
  const PhiResult r = phi(f, p, A, b, scheme);
  return deficit_from_phi(r.value, r.error, p, f[0].dim());
}

}  // namespace hylab

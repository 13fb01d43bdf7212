#include "hylab/expansion.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace hylab {

SharpFlatSplit sharp_flat_split(const EvaluableFunction& f, const GaussianPolynomial& g, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("sharp_flat_split: eta must be positive");
  if (g.dim() != f.dim()) throw std::invalid_argument("sharp_flat_split: dimension mismatch");
  auto gc = std::make_shared<const CompiledGaussianPolynomial>(g);
  auto sharp = [f, gc, eta](const double* z) {
    const cplx v = f(z);
    return std::abs(v) <= eta * std::abs((*gc)(z)) ? v : cplx(0.0);
  };
  auto flat = [f, gc, eta](const double* z) {
    const cplx v = f(z);
    return std::abs(v) <= eta * std::abs((*gc)(z)) ? cplx(0.0) : v;
  };
  return {EvaluableFunction(f.dim(), sharp, f.envelope()), EvaluableFunction(f.dim(), flat, f.envelope()), eta};
}

namespace {

Method scheme_method(const QuadratureScheme& s) {
  return s.kind == QuadratureScheme::Kind::MonteCarlo ? Method::MonteCarlo : Method::GaussHermite;
}

Mat effective_A(const Mat& A, int d) {
  if (A.rows() != 2 * d || A.cols() != 2 * d) throw std::invalid_argument("expansion: A must be 2d x 2d");
  return symplectic_defect_norm(A) > 0.0 ? A : Mat::Identity(2 * d, 2 * d);
}

}  // namespace

TrilinearResult tprime(const FunctionTriple& h, const Mat& A, const QuadratureScheme& scheme) {
  if (A.size() == 0 || A.isZero(0.0)) {
    TrilinearResult r;
    r.method = scheme_method(scheme);
    return r;
  }
  return eval_trilinear(h, A, 0.0, scheme, TrilinearVariant::ShiftDifference);
}

TrilinearResult tdoubleprime(const FunctionTriple& h, const Mat& A, double b, const QuadratureScheme& scheme) {
  if (b == 0.0) {
    TrilinearResult r;
    r.method = scheme_method(scheme);
    return r;
  }
  return eval_trilinear(h, A, b, scheme, TrilinearVariant::TwistDifference);
}

ShiftExpansion tprime_gaussian_expansion(const ExponentTriple& p, const Mat& A, int d) {
  if (!p.admissible()) throw std::invalid_argument("tprime_gaussian_expansion: exponents not admissible");
  const Mat Ae = effective_A(A, d);
  const int n = 2 * d + 1;
  const auto g = standard_gaussians(p, n);
  ShiftExpansion e;
  e.tc00 = trilinear_closed(g[0], g[1], g[2], Ae, 0, 0);
  e.tc02 = trilinear_closed(g[0], g[1], g[2], Ae, 0, 2);
  e.tc22 = trilinear_closed(g[0], g[1], g[2], Ae, 2, 2);
  e.defect_norm = symplectic_defect_norm(Ae);
  const double g1 = p.gamma(0), g2 = p.gamma(1), g3 = p.gamma(2);
  const double d2 = e.defect_norm * e.defect_norm;
  e.c2 = g3 * (2.0 * g3 * e.tc22.real() - e.tc02.real()) / d2;
  e.t_factor = 2.0 * g3 * e.tc22.real() / e.tc02.real() - 1.0;
  e.t_factor_rational = (g1 * g3 + g2 * g3) / (g1 * g2 + g1 * g3 + g2 * g3) - 1.0;
  const auto g1d = standard_gaussians(p, 1);
  e.t_mass = trilinear_closed(g1d[0], g1d[1], g1d[2], Mat(0, 0)).real();
  e.x_factor = e.tc02.real() / (e.t_mass * d2);
  return e;
}

TwistExpansion tdoubleprime_gaussian_expansion(const ExponentTriple& p, const Mat& A, double b, int d) {
  if (!p.admissible()) throw std::invalid_argument("tdoubleprime_gaussian_expansion: exponents not admissible");
  const Mat Ae = effective_A(A, d);
  const auto g = standard_gaussians(p, 2 * d + 1);
  const cplx tc01 = trilinear_closed(g[0], g[1], g[2], Ae, 0, 1);
  const cplx tc02 = trilinear_closed(g[0], g[1], g[2], Ae, 0, 2);
  const double dn = symplectic_defect_norm(Ae);
  TwistExpansion t;
  t.first_order = cplx(0.0, b) * tc01;
  t.leading = -0.5 * b * b * tc02.real();
  t.constant = tc02.real() / (2.0 * dn * dn);
  return t;
}

double HermiteSystem::eval(int n, double x) const {
  const Vec& c = coeffs.at(static_cast<std::size_t>(n));
  double v = 0.0;
  for (Eigen::Index k = c.size() - 1; k >= 0; --k) v = v * x + c(k);
  return v;
}

Polynomial HermiteSystem::multi(const MultiIndex& alpha) const {
  const int n = static_cast<int>(alpha.size());
  Polynomial out = Polynomial::constant(n, 1.0);
  for (int k = 0; k < n; ++k) {
    if (alpha[k] > nmax()) throw std::invalid_argument("HermiteSystem::multi: degree exceeds nmax");
    Polynomial pk(n);
    const Vec& c = coeffs[alpha[k]];
    for (Eigen::Index e = 0; e < c.size(); ++e) {
      MultiIndex a(n, 0);
      a[k] = static_cast<int>(e);
      pk.add(a, c(e));
    }
    out = out * pk;
  }
  return out;
}

HermiteSystem hermite_system(double t, int nmax) {
  if (!(t > 0.0)) throw std::invalid_argument("hermite_system: t must be positive");
  if (nmax < 0 || nmax > 8) throw std::invalid_argument("hermite_system: nmax must lie in [0, 8]");
  using LD = long double;
  const LD a = 2.0L * static_cast<LD>(t) * static_cast<LD>(M_PI);
  std::vector<LD> mom(2 * nmax + 1, 0.0L);
  for (int k = 0; k <= 2 * nmax; k += 2) mom[k] = std::tgamma((k + 1) / 2.0L) / std::pow(a, (k + 1) / 2.0L);
  auto inner = [&](const std::vector<LD>& p, const std::vector<LD>& q) {
    LD s = 0.0L;
    for (std::size_t i = 0; i < p.size(); ++i) {
      for (std::size_t j = 0; j < q.size(); ++j) s += p[i] * q[j] * mom[i + j];
    }
    return s;
  };
  std::vector<std::vector<LD>> P;
  for (int n = 0; n <= nmax; ++n) {
    std::vector<LD> v(n + 1, 0.0L);
    v[n] = 1.0L;
    for (int pass = 0; pass < 2; ++pass) {
      for (int m = 0; m < n; ++m) {
        const LD c = inner(v, P[m]);
        for (int k = 0; k <= m; ++k) v[k] -= c * P[m][k];
      }
    }
    const LD nv = std::sqrt(inner(v, v));
    for (auto& x : v) x /= nv;
    P.push_back(std::move(v));
  }
  HermiteSystem H;
  H.t = t;
  for (const auto& v : P) {
    Vec c(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) c(k) = static_cast<double>(v[k]);
    H.coeffs.push_back(c);
  }
  H.gram = Mat::Zero(nmax + 1, nmax + 1);
  for (int i = 0; i <= nmax; ++i) {
    for (int j = 0; j <= nmax; ++j) {
      double s = 0.0;
      for (Eigen::Index a1 = 0; a1 < H.coeffs[i].size(); ++a1) {
        for (Eigen::Index b1 = 0; b1 < H.coeffs[j].size(); ++b1) {
          s += H.coeffs[i](a1) * H.coeffs[j](b1) * static_cast<double>(mom[a1 + b1]);
        }
      }
      H.gram(i, j) = s;
    }
  }
  return H;
}

GaussianPolynomial hermite_mode(const ExponentTriple& p, int j, const MultiIndex& alpha, int n) {
  if (static_cast<int>(alpha.size()) != n) throw std::invalid_argument("hermite_mode: alpha length mismatch");
  const int deg = *std::max_element(alpha.begin(), alpha.end());
  const HermiteSystem H = hermite_system(p.tau(j), std::max(deg, 0));
  return GaussianPolynomial::isotropic(n, p.gamma(j)).times(H.multi(alpha));
}

Vec OrthogonalityResidual::values() const {
  Vec v(count());
  for (int i = 0; i < count(); ++i) v(i) = entries[i].value;
  return v;
}

double OrthogonalityResidual::max_abs() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, std::abs(e.value));
  return m;
}

namespace {

std::vector<MultiIndex> indices_of_degree(int n, int deg) {
  std::vector<MultiIndex> out;
  MultiIndex a(n, 0);
  std::function<void(int, int)> rec = [&](int k, int left) {
    if (k == n - 1) {
      a[k] = left;
      out.push_back(a);
      return;
    }
    for (int e = left; e >= 0; --e) {
      a[k] = e;
      rec(k + 1, left - e);
    }
  };
  rec(0, deg);
  return out;
}

}  // namespace

std::vector<OrthogonalityEntry> orthogonality_index_set(int n) {
  std::vector<OrthogonalityEntry> out;
  auto push = [&](bool im, int j, int deg) {
    for (const auto& a : indices_of_degree(n, deg)) out.push_back({im, j, a, 0.0});
  };
  for (int j = 0; j < 3; ++j) push(false, j, 0);
  push(false, 0, 1);
  push(false, 1, 1);
  push(false, 2, 2);
  for (int j = 0; j < 3; ++j) push(true, j, 0);
  push(true, 2, 1);
  return out;
}

namespace {

struct Pairings {
  std::array<HermiteSystem, 3> H;
  explicit Pairings(const ExponentTriple& p)
      : H{hermite_system(p.tau(0), 2), hermite_system(p.tau(1), 2), hermite_system(p.tau(2), 2)} {}
};

}  // namespace

OrthogonalityResidual orthogonality_residuals(const GaussTriple& f, const ExponentTriple& p) {
  const int n = f[0].dim();
  const Pairings pr(p);
  OrthogonalityResidual r;
  r.entries = orthogonality_index_set(n);
  std::map<std::pair<int, MultiIndex>, cplx> cache;
  for (auto& e : r.entries) {
    const auto key = std::make_pair(e.j, e.alpha);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const GaussianPolynomial w = GaussianPolynomial::isotropic(n, M_PI * p.p(e.j)).times(pr.H[e.j].multi(e.alpha));
      it = cache.emplace(key, f[e.j].is_zero() ? cplx(0.0) : integrate(product(f[e.j], w)).value).first;
    }
    e.value = e.imaginary ? it->second.imag() : it->second.real();
  }
  return r;
}

OrthogonalityResidual orthogonality_residuals(const FunctionTriple& f, const ExponentTriple& p, int nodes) {
  const int n = f[0].dim();
  const Pairings pr(p);
  OrthogonalityResidual r;
  r.entries = orthogonality_index_set(n);
  std::map<std::pair<int, MultiIndex>, cplx> cache;
  for (auto& e : r.entries) {
    const auto key = std::make_pair(e.j, e.alpha);
    auto it = cache.find(key);
    if (it == cache.end()) {
      const EvaluableFunction& fj = f[e.j];
      cplx v = 0.0;
      if (fj.envelope().amplitude > 0.0) {
        const double wr = M_PI * p.p(e.j);
        const Mat R = fj.envelope().profile + wr * Mat::Identity(n, n);
        const Vec c = R.ldlt().solve(fj.envelope().profile * fj.envelope().center);
        const Polynomial P = pr.H[e.j].multi(e.alpha);
        auto F = [&](const double* z) {
          double r2 = 0.0;
          for (int k = 0; k < n; ++k) r2 += z[k] * z[k];
          return fj(z) * P(z) * std::exp(-wr * r2);
        };
        v = gh_integrate(F, c, R, nodes);
      }
      it = cache.emplace(key, v).first;
    }
    e.value = e.imaginary ? it->second.imag() : it->second.real();
  }
  return r;
}

}  // namespace hylab

#include "hylab/gausspoly.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "hylab/core.hpp"

namespace hylab {

namespace {

CMat symmetrized(const CMat& Q) { return 0.5 * (Q + Q.transpose()); }

bool same_gaussian(const CMat& Q1, const CVec& l1, const CMat& Q2, const CVec& l2) {
  return Q1 == Q2 && l1 == l2;
}

void check_term(int n, const GaussTerm& t) {
  if (static_cast<int>(t.powers.size()) != n || t.Q.rows() != n || t.Q.cols() != n || t.l.size() != n) {
    throw std::invalid_argument("GaussTerm: dimension mismatch");
  }
  for (int p : t.powers) {
    if (p < 0) throw std::invalid_argument("GaussTerm: negative power");
  }
}

}  // namespace

GaussTerm GaussTerm::pure(const CMat& Q, const CVec& l, cplx coeff) {
  GaussTerm t;
  t.coeff = coeff;
  t.powers.assign(static_cast<std::size_t>(l.size()), 0);
  t.Q = Q;
  t.l = l;
  return t;
}

GaussianPolynomial::GaussianPolynomial(int n, std::vector<GaussTerm> terms) : n_(n) {
  for (auto& t : terms) add_term(std::move(t));
}

void GaussianPolynomial::add_term(GaussTerm t) {
  check_term(n_, t);
  if (t.coeff == cplx(0.0)) return;
  terms_.push_back(std::move(t));
}

GaussianPolynomial GaussianPolynomial::from_groups(int n, const std::vector<GaussGroup>& groups) {
  GaussianPolynomial f(n);
  for (const auto& g : groups) {
    for (const auto& [a, c] : g.poly.terms()) {
      GaussTerm t;
      t.coeff = c;
      t.powers = a;
      t.Q = g.Q;
      t.l = g.l;
      f.add_term(std::move(t));
    }
  }
  return f;
}

GaussianPolynomial GaussianPolynomial::isotropic(int n, double gamma) {
  GaussianPolynomial f(n);
  f.add_term(GaussTerm::pure(CMat::Identity(n, n) * gamma, CVec::Zero(n)));
  return f;
}

std::vector<GaussGroup> GaussianPolynomial::groups() const {
  std::vector<GaussGroup> out;
  for (const auto& t : terms_) {
    GaussGroup* hit = nullptr;
    for (auto& g : out) {
      if (same_gaussian(g.Q, g.l, t.Q, t.l)) {
        hit = &g;
        break;
      }
    }
    if (!hit) {
      out.push_back({t.Q, t.l, Polynomial(n_)});
      hit = &out.back();
    }
    hit->poly.add(t.powers, t.coeff);
  }
  std::erase_if(out, [](const GaussGroup& g) { return g.poly.empty(); });
  return out;
}

GaussianPolynomial GaussianPolynomial::canonical() const { return from_groups(n_, groups()); }

bool GaussianPolynomial::is_pure_gaussian() const {
  const auto g = groups();
  if (g.size() != 1 || g[0].poly.terms().size() != 1) return false;
  return total_degree(g[0].poly.terms().begin()->first) == 0;
}

cplx GaussianPolynomial::operator()(const double* z) const {
  Eigen::Map<const Vec> zv(z, n_);
  const CVec zc = zv.cast<cplx>();
  cplx s = 0.0;
  for (const auto& t : terms_) {
    cplx e = -(zc.transpose() * t.Q * zc)(0, 0) + (t.l.transpose() * zc)(0, 0);
    double m = 1.0;
    for (int k = 0; k < n_; ++k) {
      for (int p = 0; p < t.powers[k]; ++p) m *= z[k];
    }
    s += t.coeff * m * std::exp(e);
  }
  return s;
}

GaussianPolynomial GaussianPolynomial::operator+(const GaussianPolynomial& o) const {
  if (o.n_ != n_) throw std::invalid_argument("GaussianPolynomial: dimension mismatch");
  GaussianPolynomial r = *this;
  for (const auto& t : o.terms_) r.add_term(t);
  return r;
}

GaussianPolynomial GaussianPolynomial::operator-(const GaussianPolynomial& o) const {
  return *this + o * cplx(-1.0);
}

GaussianPolynomial GaussianPolynomial::operator*(cplx c) const {
  GaussianPolynomial r(n_);
  for (auto t : terms_) {
    t.coeff *= c;
    r.add_term(std::move(t));
  }
  return r;
}

GaussianPolynomial operator*(cplx c, const GaussianPolynomial& f) { return f * c; }

GaussianPolynomial GaussianPolynomial::modulated(const Vec& xi) const {
  if (xi.size() != n_) throw std::invalid_argument("modulated: dimension mismatch");
  GaussianPolynomial r = *this;
  for (auto& t : r.terms_) t.l += cplx(0.0, 1.0) * xi.cast<cplx>();
  return r;
}

GaussianPolynomial GaussianPolynomial::times(const Polynomial& p) const {
  if (p.dim() != n_) throw std::invalid_argument("times: dimension mismatch");
  std::vector<GaussGroup> gs = groups();
  for (auto& g : gs) g.poly = g.poly * p;
  return from_groups(n_, gs);
}

void GaussianPolynomial::validate() const {
  for (const auto& t : terms_) {
    const Mat R = symmetrized(t.Q).real();
    Eigen::SelfAdjointEigenSolver<Mat> es(R, Eigen::EigenvaluesOnly);
    if (!(es.eigenvalues().minCoeff() > 0.0)) {
      throw std::domain_error("Gaussian term with Re(Q) not positive definite");
    }
  }
}

cplx det_inv_sqrt(const CMat& Qin) {
  const CMat Q = symmetrized(Qin);
  const Mat R = Q.real();
  Eigen::LLT<Mat> llt(R);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("Re(Q) not positive definite");
  }
  const Mat L = llt.matrixL();
  double logdet_r = 0.0;
  for (Eigen::Index k = 0; k < L.rows(); ++k) logdet_r += 2.0 * std::log(L(k, k));
  Mat H = L.triangularView<Eigen::Lower>().solve(Mat(Q.imag()));
  H = L.triangularView<Eigen::Lower>().solve(Mat(H.transpose())).eval();
  H = 0.5 * (H + H.transpose());
  Eigen::SelfAdjointEigenSolver<Mat> es(H, Eigen::EigenvaluesOnly);
  cplx r = std::exp(-0.5 * logdet_r);
  for (Eigen::Index k = 0; k < H.rows(); ++k) {
    r /= std::sqrt(cplx(1.0, es.eigenvalues()(k)));
  }
  return r;
}

GaussianMoments::GaussianMoments(const CMat& Qin, const CVec& l) {
  const CMat Q = symmetrized(Qin);
  const auto n = Q.rows();
  Eigen::JacobiSVD<CMat> svd(Q);
  const auto& sv = svd.singularValues();
  cond_ = sv(n - 1) > 0.0 ? sv(0) / sv(n - 1) : std::numeric_limits<double>::infinity();
  const cplx dis = det_inv_sqrt(Q);
  const CMat Qinv = Q.partialPivLu().inverse();
  mean_ = 0.5 * Qinv * l;
  cov_ = 0.5 * Qinv;
  const cplx quad = (l.transpose() * Qinv * l)(0, 0);
  mass_ = std::pow(M_PI, 0.5 * static_cast<double>(n)) * dis * std::exp(0.25 * quad);
}

cplx GaussianMoments::moment(const MultiIndex& alpha) {
  int first = -1;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] > 0) {
      first = static_cast<int>(i);
      break;
    }
  }
  if (first < 0) return 1.0;
  if (auto it = cache_.find(alpha); it != cache_.end()) return it->second;
  MultiIndex beta = alpha;
  beta[first] -= 1;
  cplx r = mean_(first) * moment(beta);
  for (std::size_t k = 0; k < beta.size(); ++k) {
    if (beta[k] == 0) continue;
    MultiIndex g = beta;
    g[k] -= 1;
    r += cov_(first, static_cast<Eigen::Index>(k)) * static_cast<double>(beta[k]) * moment(g);
  }
  cache_.emplace(alpha, r);
  return r;
}

IntegralValue integrate(const GaussianPolynomial& f) {
  IntegralValue out;
  for (const auto& g : f.groups()) {
    if (!(symmetrized(g.Q).real().llt().info() == Eigen::Success)) {
      throw std::domain_error("integrate: Re(Q) not positive definite");
    }
    GaussianMoments mom(g.Q, g.l);
    cplx s = 0.0;
    for (const auto& [a, c] : g.poly.terms()) s += c * mom.moment(a);
    out.value += s * mom.mass();
    out.max_condition = std::max(out.max_condition, mom.condition());
  }
  out.conditioning_warning = out.max_condition > kConditioningThreshold;
  return out;
}

GaussianPolynomial product(const GaussianPolynomial& f, const GaussianPolynomial& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("product: dimension mismatch");
  const auto gf = f.groups();
  const auto gg = g.groups();
  std::vector<GaussGroup> out;
  for (const auto& a : gf) {
    for (const auto& b : gg) out.push_back({a.Q + b.Q, a.l + b.l, a.poly * b.poly});
  }
  return GaussianPolynomial::from_groups(f.dim(), out).canonical();
}

GaussianPolynomial pullback(const GaussianPolynomial& f, const Mat& M, const Vec& v) {
  if (M.rows() != f.dim() || v.size() != f.dim()) {
    throw std::invalid_argument("pullback: dimension mismatch");
  }
  const int m = static_cast<int>(M.cols());
  const CMat Mc = M.cast<cplx>();
  const CVec vc = v.cast<cplx>();
  std::vector<GaussGroup> out;
  for (const auto& g : f.groups()) {
    const CMat Q = symmetrized(g.Q);
    GaussGroup h;
    h.Q = Mc.transpose() * Q * Mc;
    h.Q = symmetrized(h.Q);
    h.l = Mc.transpose() * g.l - 2.0 * Mc.transpose() * (Q * vc);
    const cplx c0 = std::exp(-(vc.transpose() * Q * vc)(0, 0) + (g.l.transpose() * vc)(0, 0));
    h.poly = g.poly.compose_affine(M, v);
    h.poly *= c0;
    out.push_back(std::move(h));
  }
  return GaussianPolynomial::from_groups(m, out);
}

GaussianPolynomial substitute_affine(const GaussianPolynomial& f, const Mat& M, const Vec& v,
                                     bool* singular_warning) {
  if (M.rows() != M.cols()) throw std::invalid_argument("substitute_affine: M must be square");
  if (singular_warning) *singular_warning = std::abs(M.determinant()) < 1e-12;
  return pullback(f, M, v);
}

double lp_norm_closed(const GaussianPolynomial& f, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm_closed: p must be >= 1");
  const auto gs = f.groups();
  if (gs.empty()) return 0.0;
  if (!f.is_pure_gaussian()) {
    throw Unsupported("lp_norm_closed: only single pure Gaussian terms have a closed form");
  }
  const int n = f.dim();
  const cplx c = gs[0].poly.terms().begin()->second;
  const Mat R = p * symmetrized(gs[0].Q).real();
  const Vec l = p * gs[0].l.real();
  Eigen::LLT<Mat> llt(R);
  if (llt.info() != Eigen::Success) throw std::domain_error("lp_norm_closed: Re(Q) not PD");
  const Mat L = llt.matrixL();
  double logdet = 0.0;
  for (int k = 0; k < n; ++k) logdet += 2.0 * std::log(L(k, k));
  const double quad = l.dot(llt.solve(l));
  const double logint = p * std::log(std::abs(c)) + 0.5 * n * std::log(M_PI) - 0.5 * logdet + 0.25 * quad;
  return std::exp(logint / p);
}

cplx trilinear_closed(const GaussianPolynomial& f1, const GaussianPolynomial& f2,
                      const GaussianPolynomial& f3, const Mat& A, int m, int k) {
  const int n = f1.dim();
  if (f2.dim() != n || f3.dim() != n || n < 1 || n % 2 == 0) {
    throw std::invalid_argument("trilinear_closed: functions must share an odd dimension 2d+1");
  }
  const int dd = n - 1;
  if (A.rows() != dd || A.cols() != dd) throw std::invalid_argument("trilinear_closed: A must be 2d x 2d");
  if (m < 0 || k < 0) throw std::invalid_argument("trilinear_closed: negative sigma power");
  if (f1.is_zero() || f2.is_zero() || f3.is_zero()) return 0.0;
  const Mat I = Mat::Identity(n, n);
  Mat P1 = Mat::Zero(n, 2 * n), P2 = Mat::Zero(n, 2 * n), P3(n, 2 * n);
  P1.leftCols(n) = I;
  P2.rightCols(n) = I;
  P3 << -I, -I;
  const Vec zero = Vec::Zero(n);
  GaussianPolynomial integrand =
      product(product(pullback(f1, P1, zero), pullback(f2, P2, zero)), pullback(f3, P3, zero));
  Polynomial weight = Polynomial::constant(2 * n, 1.0);
  if (m > 0) {
    CVec a = CVec::Zero(2 * n);
    a(n - 1) = 1.0;
    a(2 * n - 1) = 1.0;
    weight = weight * Polynomial::linear(a).pow(m);
  }
  if (k > 0) {
    Polynomial beta(2 * n);
    if (dd > 0) {
      const Mat B = A.transpose() * symplectic_matrix(dd / 2) * A;
      for (int i = 0; i < dd; ++i) {
        for (int j = 0; j < dd; ++j) {
          if (B(i, j) == 0.0) continue;
          MultiIndex e(2 * n, 0);
          e[i] += 1;
          e[n + j] += 1;
          beta.add(e, B(i, j));
        }
      }
    }
    weight = weight * beta.pow(k);
  }
  return integrate(integrand.times(weight)).value;
}

double phi_closed(const std::array<GaussianPolynomial, 3>& f, const ExponentTriple& p) {
  const int n = f[0].dim();
  const cplx T = trilinear_closed(f[0], f[1], f[2], Mat::Zero(n - 1, n - 1));
  double prod = 1.0;
  for (int j = 0; j < 3; ++j) prod *= lp_norm_closed(f[j], p.p(j));
  if (!(prod > 0.0)) throw std::invalid_argument("phi_closed: zero norm");
  return std::abs(T) / prod;
}

CompiledGaussianPolynomial::CompiledGaussianPolynomial(const GaussianPolynomial& f) : n_(f.dim()) {
  for (const auto& g : f.groups()) {
    Group cg;
    cg.Q = symmetrized(g.Q);
    cg.l = g.l;
    cg.maxpow = 0;
    for (const auto& [a, c] : g.poly.terms()) {
      cg.monos.push_back({a, c});
      for (int p : a) cg.maxpow = std::max(cg.maxpow, p);
    }
    maxpow_ = std::max(maxpow_, cg.maxpow);
    groups_.push_back(std::move(cg));
  }
}

cplx CompiledGaussianPolynomial::operator()(const double* z) const {
  constexpr int kBuf = 256;
  const int stride = maxpow_ + 1;
  double pwbuf[kBuf];
  std::vector<double> pwvec;
  double* pw = pwbuf;
  if (n_ * stride > kBuf) {
    pwvec.resize(static_cast<std::size_t>(n_ * stride));
    pw = pwvec.data();
  }
  for (int k = 0; k < n_; ++k) {
    pw[k * stride] = 1.0;
    for (int e = 1; e < stride; ++e) pw[k * stride + e] = pw[k * stride + e - 1] * z[k];
  }
  cplx total = 0.0;
  for (const auto& g : groups_) {
    cplx e = 0.0;
    for (int i = 0; i < n_; ++i) {
      cplx row = 0.0;
      for (int j = 0; j < n_; ++j) row += g.Q(i, j) * z[j];
      e += (g.l(i) - row) * z[i];
    }
    cplx s = 0.0;
    for (const auto& mo : g.monos) {
      double m = 1.0;
      for (int k = 0; k < n_; ++k) m *= pw[k * stride + mo.powers[k]];
      s += mo.coeff * m;
    }
    total += s * std::exp(e);
  }
  return total;
}

}  // namespace hylab

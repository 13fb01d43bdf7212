#include "hylab/evaluable.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace hylab {

Envelope::Envelope(Vec center_, Mat rate_, double amplitude_, Mat profile_)
    : center(std::move(center_)), rate(std::move(rate_)), amplitude(amplitude_), profile(std::move(profile_)) {
  const auto n = center.size();
  if (rate.rows() != n || rate.cols() != n) throw std::invalid_argument("Envelope: rate dimension mismatch");
  if (profile.size() == 0) profile = rate;
  if (profile.rows() != n || profile.cols() != n) throw std::invalid_argument("Envelope: profile dimension mismatch");
  if (!(amplitude >= 0.0)) throw std::invalid_argument("Envelope: negative amplitude");
  if (Eigen::LLT<Mat>(rate).info() != Eigen::Success || Eigen::LLT<Mat>(profile).info() != Eigen::Success) {
    throw std::invalid_argument("Envelope: rate must be positive definite");
  }
}

double Envelope::bound(const double* z) const {
  const Vec y = Eigen::Map<const Vec>(z, center.size()) - center;
  return amplitude * std::exp(-y.dot(rate * y));
}

Envelope Envelope::power(double s) const {
  return Envelope(center, s * rate, std::pow(amplitude, s), s * profile);
}

namespace {

double min_generalized_eigenvalue(const Mat& A, const Mat& B) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat> es(A, B, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

struct GroupShape {
  Mat R;
  Vec m;
  double kappa;
  double weight;
};

}  // namespace

Envelope derive_envelope(const GaussianPolynomial& f) {
  const int n = f.dim();
  const auto groups = f.groups();
  if (groups.empty()) return Envelope(Vec::Zero(n), Mat::Identity(n, n), 0.0);
  std::vector<GroupShape> shapes;
  for (const auto& g : groups) {
    GroupShape s;
    s.R = (0.5 * (g.Q + g.Q.transpose())).real();
    Eigen::LLT<Mat> llt(s.R);
    if (llt.info() != Eigen::Success) throw std::domain_error("derive_envelope: Re(Q) not positive definite");
    s.m = 0.5 * llt.solve(Vec(g.l.real()));
    s.kappa = s.m.dot(s.R * s.m);
    double csum = 0.0;
    for (const auto& [a, c] : g.poly.terms()) csum += std::abs(c);
    double logdet = 0.0;
    const Mat L = llt.matrixL();
    for (int k = 0; k < n; ++k) logdet += 2.0 * std::log(L(k, k));
    s.weight = std::log(csum) + s.kappa - 0.5 * logdet;
    shapes.push_back(std::move(s));
  }
  std::size_t ref = 0;
  for (std::size_t i = 1; i < shapes.size(); ++i) {
    if (shapes[i].weight > shapes[ref].weight) ref = i;
  }
  double scale = 1.0;
  for (const auto& s : shapes) scale = std::min(scale, min_generalized_eigenvalue(s.R, shapes[ref].R));
  const Mat Rbar = scale * shapes[ref].R;
  const Vec c = shapes[ref].m;

  const bool single = groups.size() == 1;
  const bool constant_poly = single && groups[0].poly.degree() == 0;
  if (constant_poly) {
    double amp = 0.0;
    for (const auto& [a, cc] : groups[0].poly.terms()) amp += std::abs(cc);
    return Envelope(c, Rbar, amp * std::exp(shapes[0].kappa), Rbar);
  }
  const double theta = single ? 0.9 : 0.5;
  Eigen::SelfAdjointEigenSolver<Mat> es(Rbar, Eigen::EigenvaluesOnly);
  const double lam = es.eigenvalues().minCoeff();
  const double decay = 0.5 * (1.0 - theta) * lam;
  double amplitude = 0.0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    const Vec delta = shapes[i].m - c;
    const double shift = (theta + 2.0 * theta * theta / (1.0 - theta)) * delta.dot(Rbar * delta);
    const double mnorm = shapes[i].m.norm();
    int maxdeg = groups[i].poly.degree();
    const double rho_max = mnorm + 12.0 * std::sqrt((maxdeg + 1.0) / decay);
    constexpr int kGrid = 4000;
    double sup = 0.0;
    for (int k = 0; k <= kGrid; ++k) {
      const double rho = rho_max * k / kGrid;
      double pv = 0.0;
      for (const auto& [a, cc] : groups[i].poly.terms()) pv += std::abs(cc) * std::pow(rho + mnorm, total_degree(a));
      sup = std::max(sup, pv * std::exp(-decay * rho * rho));
    }
    amplitude += 1.05 * sup * std::exp(shift + shapes[i].kappa);
  }
  return Envelope(c, theta * Rbar, amplitude, Rbar);
}

EvaluableFunction::EvaluableFunction(int dim, Evaluator f, Envelope env)
    : dim_(dim), f_(std::move(f)), env_(std::move(env)) {
  if (env_.dim() != dim_) throw std::invalid_argument("EvaluableFunction: envelope dimension mismatch");
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal;
  Eigen::LLT<Mat> llt(env_.rate);
  const Mat L = llt.matrixL();
  Vec z(dim_);
  for (int s = 0; s < kEnvelopeChecks; ++s) {
    Vec xi(dim_);
    for (int k = 0; k < dim_; ++k) xi(k) = normal(rng);
    z = env_.center + 2.0 * L.transpose().triangularView<Eigen::Upper>().solve(xi) / std::sqrt(2.0);
    const double v = std::abs(f_(z.data()));
    const double bnd = env_.bound(z.data());
    if (!(v <= bnd * (1.0 + 1e-9) + 1e-300)) {
      throw EnvelopeError("EvaluableFunction: |f| exceeds the declared envelope");
    }
  }
}

EvaluableFunction EvaluableFunction::from(const GaussianPolynomial& f) {
  EvaluableFunction e;
  e.dim_ = f.dim();
  auto src = std::make_shared<const GaussianPolynomial>(f.canonical());
  auto compiled = std::make_shared<const CompiledGaussianPolynomial>(*src);
  e.f_ = [compiled](const double* z) { return (*compiled)(z); };
  e.env_ = derive_envelope(*src);
  e.source_ = std::move(src);
  return e;
}

EvaluableFunction EvaluableFunction::zero(int dim) {
  EvaluableFunction e;
  e.dim_ = dim;
  e.f_ = [](const double*) { return cplx(0.0); };
  e.env_ = Envelope(Vec::Zero(dim), Mat::Identity(dim, dim), 0.0);
  e.source_ = std::make_shared<const GaussianPolynomial>(dim);
  return e;
}

}  // namespace hylab

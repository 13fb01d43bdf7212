#include "hylab/symmetry.hpp"

#include <cmath>

namespace hylab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

int triple_dim(const GaussTriple& f) {
  const int n = f[0].dim();
  if (f[1].dim() != n || f[2].dim() != n || n < 3 || n % 2 == 0) {
    throw std::invalid_argument("symmetry: triple must share dimension 2d+1 with d >= 1");
  }
  return n;
}

Mat block_x(const Mat& L) {
  const auto dx = L.rows();
  Mat M = Mat::Identity(dx + 1, dx + 1);
  M.topLeftCorner(dx, dx) = L;
  return M;
}

GaussTriple map_all(const GaussTriple& f, const Mat& M, const Vec& v) {
  return {pullback(f[0], M, v), pullback(f[1], M, v), pullback(f[2], M, v)};
}

Transformed apply_one(const Scale& g, const GaussTriple& f, const AttachedParams& pr) {
  for (const cplx& a : g.a) {
    if (a == cplx(0.0)) throw std::invalid_argument("Scale: coefficients must be nonzero");
  }
  return {{f[0] * g.a[0], f[1] * g.a[1], f[2] * g.a[2]}, pr};
}

Transformed apply_one(const Dilate& g, const GaussTriple& f, const AttachedParams& pr) {
  if (!(g.r > 0.0) || !std::isfinite(g.r)) throw std::invalid_argument("Dilate: r must be positive");
  const int n = f[0].dim();
  Mat M = g.r * Mat::Identity(n, n);
  M(n - 1, n - 1) = g.r * g.r;
  return {map_all(f, M, Vec::Zero(n)), {pr.A, g.r * g.r * pr.b}};
}

Transformed apply_one(const TranslateMod& g, const GaussTriple& f, const AttachedParams& pr) {
  const int n = f[0].dim();
  const int dx = n - 1;
  for (const auto& u : g.u) {
    if (u.x.size() != dx) throw std::invalid_argument("TranslateMod: point dimension mismatch");
  }
  const Mat B = pr.A.transpose() * symplectic_matrix(dx / 2) * pr.A;
  GaussTriple out;
  for (int j = 0; j < 3; ++j) {
    const HPoint& u = g.u[j];
    const HPoint w = group_inverse(g.u[(j + 1) % 3]);
    Mat M = Mat::Identity(n, n);
    M.block(dx, 0, 1, dx) = (B.transpose() * u.x + B * w.x).transpose();
    Vec v(n);
    v << u.x + w.x, u.t + w.t + u.x.dot(B * w.x);
    GaussianPolynomial h = pullback(f[j], M, v);
    Vec xi = Vec::Zero(n);
    if (j == 0) xi.head(dx) = pr.b * B * (g.u[1].x - g.u[2].x);
    if (j == 1) xi.head(dx) = pr.b * B.transpose() * (g.u[0].x - g.u[1].x);
    out[j] = xi.isZero(0.0) ? h : h.modulated(xi);
  }
  return {out, pr};
}

Transformed apply_one(const GlAction& g, const GaussTriple& f, const AttachedParams& pr) {
  const int n = f[0].dim();
  if (g.L.rows() != n - 1 || g.L.cols() != n - 1) throw std::invalid_argument("GlAction: L dimension mismatch");
  if (!(std::abs(g.L.determinant()) > 1e-12)) throw std::invalid_argument("GlAction: L must be invertible");
  return {map_all(f, block_x(g.L), Vec::Zero(n)), {pr.A * g.L, pr.b}};
}

Transformed apply_one(const SpAction& g, const GaussTriple& f, const AttachedParams& pr) {
  const int n = f[0].dim();
  const int dx = n - 1;
  if (g.S.rows() != dx || g.S.cols() != dx) throw std::invalid_argument("SpAction: S dimension mismatch");
  const Mat J = symplectic_matrix(dx / 2);
  if ((g.S.transpose() * J * g.S - J).norm() > 1e-10) throw std::invalid_argument("SpAction: S is not symplectic");
  const Mat B = pr.A.transpose() * J * pr.A;
  const Mat Sinv = g.S.inverse();
  if ((Sinv.transpose() * B * Sinv - B).norm() > 1e-10 * (1.0 + B.norm())) {
    throw std::invalid_argument("SpAction: S must preserve A^T J A");
  }
  return {map_all(f, block_x(g.S), Vec::Zero(n)), pr};
}

Transformed apply_one(const Shear& g, const GaussTriple& f, const AttachedParams& pr) {
  const int n = f[0].dim();
  if (g.phi.size() != n - 1) throw std::invalid_argument("Shear: phi dimension mismatch");
  Mat M = Mat::Identity(n, n);
  M.block(n - 1, 0, 1, n - 1) = g.phi.transpose();
  return {map_all(f, M, Vec::Zero(n)), pr};
}

Transformed apply_one(const ModulateX& g, const GaussTriple& f, const AttachedParams& pr) {
  const int n = f[0].dim();
  if (g.xi.size() != n - 1) throw std::invalid_argument("ModulateX: xi dimension mismatch");
  Vec xi = Vec::Zero(n);
  xi.head(n - 1) = g.xi;
  return {{f[0].modulated(xi), f[1].modulated(xi), f[2].modulated(xi)}, pr};
}

Transformed apply_one(const ModulateFull& g, const GaussTriple& f, const AttachedParams& pr) {
  const int n = f[0].dim();
  if (g.xi.size() != n) throw std::invalid_argument("ModulateFull: xi dimension mismatch");
  return {{f[0].modulated(g.xi), f[1].modulated(g.xi), f[2].modulated(g.xi)}, {pr.A, pr.b + g.xi(n - 1)}};
}

bool is_zero_matrix(const Mat& A) { return A.size() == 0 || A.isZero(0.0); }

}  // namespace

GroupClass group_class(const SymmetryGen& g) {
  return std::visit(overloaded{[](const GlAction&) { return GroupClass::G0; },
                               [](const ModulateFull&) { return GroupClass::G0; },
                               [](const auto&) { return GroupClass::G1; }},
                    g);
}

std::string generator_name(const SymmetryGen& g) {
  return std::visit(overloaded{[](const Scale&) { return std::string("Scale"); },
                               [](const Dilate&) { return std::string("Dilate"); },
                               [](const TranslateMod&) { return std::string("TranslateMod"); },
                               [](const GlAction&) { return std::string("GlAction"); },
                               [](const SpAction&) { return std::string("SpAction"); },
                               [](const Shear&) { return std::string("Shear"); },
                               [](const ModulateX&) { return std::string("ModulateX"); },
                               [](const ModulateFull&) { return std::string("ModulateFull"); }},
                    g);
}

std::vector<GroupClass> SymmetryWord::labels() const {
  std::vector<GroupClass> out;
  for (const auto& g : gens) out.push_back(group_class(g));
  return out;
}

Transformed apply(const SymmetryGen& gen, const GaussTriple& f, const AttachedParams& params) {
  const int n = triple_dim(f);
  if (params.A.rows() != n - 1 || params.A.cols() != n - 1) {
    throw std::invalid_argument("apply: A must be 2d x 2d");
  }
  return std::visit([&](const auto& g) { return apply_one(g, f, params); }, gen);
}

Transformed apply(const SymmetryWord& word, const GaussTriple& f, const AttachedParams& params) {
  Transformed cur{f, params};
  triple_dim(f);
  for (const auto& g : word.gens) cur = apply(g, cur.f, cur.params);
  return cur;
}

PhiResult phi_auto(const GaussTriple& f, const ExponentTriple& p, const AttachedParams& params,
                   const QuadratureScheme& scheme) {
  if (!is_zero_matrix(params.A)) return phi(to_evaluable(f), p, params.A, params.b, scheme);
  PhiResult r;
  r.trilinear.value = trilinear_closed(f[0], f[1], f[2], params.A);
  r.trilinear.method = Method::ClosedForm;
  double prod = 1.0, rel = 0.0;
  for (int j = 0; j < 3; ++j) {
    if (f[j].is_pure_gaussian()) {
      r.norms[j].value = lp_norm_closed(f[j], p.p(j));
      r.norms[j].method = Method::ClosedForm;
    } else {
      r.norms[j] = lp_norm(EvaluableFunction::from(f[j]), p.p(j), scheme);
    }
    if (!(r.norms[j].value > 0.0)) throw std::invalid_argument("phi: zero norm");
    prod *= r.norms[j].value;
    rel += r.norms[j].error / r.norms[j].value;
  }
  r.value = std::abs(r.trilinear.value) / prod;
  r.error = r.value * rel;
  return r;
}

InvarianceResidual invariance_residual(const SymmetryWord& word, const GaussTriple& f, const AttachedParams& params,
                                       const ExponentTriple& p, const QuadratureScheme& scheme) {
  const Transformed t = apply(word, f, params);
  const PhiResult before = phi_auto(f, p, params, scheme);
  const PhiResult after = phi_auto(t.f, p, t.params, scheme);
  InvarianceResidual r;
  r.phi_before = before.value;
  r.phi_after = after.value;
  r.residual = std::abs(after.value - before.value);
  r.error = before.error + after.error;
  const bool closed = before.trilinear.method == Method::ClosedForm && after.trilinear.method == Method::ClosedForm;
  r.method = closed ? Method::ClosedForm : before.trilinear.method;
  if (closed) {
    for (int j = 0; j < 3; ++j) {
      if (before.norms[j].method != Method::ClosedForm || after.norms[j].method != Method::ClosedForm) {
        r.method = before.norms[j].method != Method::ClosedForm ? before.norms[j].method : after.norms[j].method;
      }
    }
  }
  return r;
}

NormalizedEntry normalize_entry(const GaussTriple& f, const AttachedParams& params) {
  const int n = triple_dim(f);
  const int dx = n - 1;
  if (params.A.rows() != dx || params.A.cols() != dx) throw std::invalid_argument("normalize_entry: A must be 2d x 2d");
  if (!(std::abs(params.A.determinant()) > 1e-12)) {
    throw std::invalid_argument("normalize_entry: A must be invertible");
  }
  Vec xi = Vec::Zero(n);
  xi(n - 1) = -params.b;
  const SymmetryWord w{ModulateFull{xi}, GlAction{params.A.inverse()}};
  Transformed t = apply(w, f, params);
  NormalizedEntry e;
  e.f = std::move(t.f);
  e.params = AttachedParams::identity(dx / 2);
  e.source_A = params.A;
  e.source_b = params.b;
  return e;
}

}  // namespace hylab

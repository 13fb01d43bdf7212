#include "hylab/polynomial.hpp"

#include <numeric>

namespace hylab {

int total_degree(const MultiIndex& a) { return std::accumulate(a.begin(), a.end(), 0); }

Polynomial Polynomial::constant(int n, cplx c) {
  Polynomial p(n);
  p.add(MultiIndex(n, 0), c);
  return p;
}

Polynomial Polynomial::monomial(int n, const MultiIndex& powers, cplx c) {
  if (static_cast<int>(powers.size()) != n) {
    throw std::invalid_argument("Polynomial::monomial: powers length mismatch");
  }
  Polynomial p(n);
  p.add(powers, c);
  return p;
}

Polynomial Polynomial::linear(const CVec& a, cplx c) {
  const int n = static_cast<int>(a.size());
  Polynomial p(n);
  p.add(MultiIndex(n, 0), c);
  for (int k = 0; k < n; ++k) {
    MultiIndex e(n, 0);
    e[k] = 1;
    p.add(e, a[k]);
  }
  return p;
}

int Polynomial::degree() const {
  int deg = 0;
  for (const auto& [a, c] : terms_) deg = std::max(deg, total_degree(a));
  return deg;
}

void Polynomial::add(const MultiIndex& powers, cplx c) {
  if (static_cast<int>(powers.size()) != n_) {
    throw std::invalid_argument("Polynomial::add: powers length mismatch");
  }
  if (c == cplx(0.0)) return;
  auto [it, inserted] = terms_.emplace(powers, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cplx(0.0)) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.n_ != n_) throw std::invalid_argument("Polynomial: dimension mismatch");
  for (const auto& [a, c] : o.terms_) add(a, c);
  return *this;
}

Polynomial& Polynomial::operator*=(cplx c) {
  if (c == cplx(0.0)) {
    terms_.clear();
    return *this;
  }
  for (auto& [a, v] : terms_) v *= c;
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (o.n_ != n_) throw std::invalid_argument("Polynomial: dimension mismatch");
  Polynomial r(n_);
  MultiIndex s(n_);
  for (const auto& [a, c] : terms_) {
    for (const auto& [b, d] : o.terms_) {
      for (int k = 0; k < n_; ++k) s[k] = a[k] + b[k];
      r.add(s, c * d);
    }
  }
  return r;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial r = *this;
  r += o;
  return r;
}

Polynomial Polynomial::pow(int k) const {
  if (k < 0) throw std::invalid_argument("Polynomial::pow: negative exponent");
  Polynomial r = constant(n_, 1.0);
  Polynomial base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return r;
}

cplx Polynomial::operator()(const double* z) const {
  cplx s = 0.0;
  for (const auto& [a, c] : terms_) {
    double m = 1.0;
    for (int k = 0; k < n_; ++k) {
      for (int e = 0; e < a[k]; ++e) m *= z[k];
    }
    s += c * m;
  }
  return s;
}

Polynomial Polynomial::compose_affine(const Mat& M, const Vec& v) const {
  if (M.rows() != n_ || v.size() != n_) {
    throw std::invalid_argument("Polynomial::compose_affine: dimension mismatch");
  }
  const int m = static_cast<int>(M.cols());
  std::vector<std::vector<Polynomial>> powers(n_);
  std::vector<int> maxp(n_, 0);
  for (const auto& [a, c] : terms_) {
    for (int k = 0; k < n_; ++k) maxp[k] = std::max(maxp[k], a[k]);
  }
  for (int k = 0; k < n_; ++k) {
    CVec row = M.row(k).transpose().cast<cplx>();
    Polynomial lin = linear(row, v[k]);
    powers[k].push_back(constant(m, 1.0));
    for (int e = 1; e <= maxp[k]; ++e) powers[k].push_back(powers[k].back() * lin);
  }
  Polynomial r(m);
  for (const auto& [a, c] : terms_) {
    Polynomial t = constant(m, c);
    for (int k = 0; k < n_; ++k) {
      if (a[k] > 0) t = t * powers[k][a[k]];
    }
    r += t;
  }
  return r;
}

void Polynomial::prune(double tol) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= tol) {
      it = terms_.erase(it);
    } else {
      ++it;
    }
  }
}

}  // namespace hylab

#pragma once

#include <map>
#include <vector>

#include "hylab/types.hpp"

namespace hylab {

using MultiIndex = std::vector<int>;

int total_degree(const MultiIndex& a);

/// Sparse complex polynomial in n variables, keyed by multi-index.
class Polynomial {
 public:
  using Map = std::map<MultiIndex, cplx>;

  explicit Polynomial(int n = 0) : n_(n) {}
  static Polynomial constant(int n, cplx c);
  static Polynomial monomial(int n, const MultiIndex& powers, cplx c = 1.0);
  /// sum_k a_k z_k + c.
  static Polynomial linear(const CVec& a, cplx c = 0.0);

  int dim() const { return n_; }
  const Map& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int degree() const;

  void add(const MultiIndex& powers, cplx c);
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator*=(cplx c);
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial pow(int k) const;

  cplx operator()(const double* z) const;
  cplx operator()(const Vec& z) const { return (*this)(z.data()); }

  /// p(Mz + v) for an n x m matrix M, giving a polynomial in m variables.
  Polynomial compose_affine(const Mat& M, const Vec& v) const;

  /// Drops coefficients with modulus at most tol.
  void prune(double tol = 0.0);

 private:
  int n_;
  Map terms_;
};

}  // namespace hylab

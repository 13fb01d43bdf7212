#include "hylab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace hylab {

NelderMeadResult nelder_mead(const std::function<double(const Vec&)>& f, const Vec& x0, const Vec& step,
                             const NelderMeadOptions& opt) {
  const int n = static_cast<int>(x0.size());
  if (step.size() != n) throw std::invalid_argument("nelder_mead: step size mismatch");
  NelderMeadResult res;
  auto eval = [&](const Vec& x) {
    ++res.evaluations;
    const double v = f(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  };
  if (n == 0) {
    res.x = x0;
    res.value = eval(x0);
    res.converged = true;
    return res;
  }
  const double dn = n;
  const double alpha = 1.0, gamma = 1.0 + 2.0 / dn, rho = 0.75 - 0.5 / dn, sigma = 1.0 - 1.0 / dn;

  std::vector<Vec> s(n + 1, x0);
  std::vector<double> fv(n + 1);
  for (int i = 0; i < n; ++i) s[i + 1](i) += step(i);
  for (int i = 0; i <= n; ++i) fv[i] = eval(s[i]);
  std::vector<int> idx(n + 1);

  while (res.evaluations < opt.max_evaluations) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    const int best = idx[0], worst = idx[n], second = idx[n - 1];
    double xspread = 0.0;
    for (int i = 1; i <= n; ++i) xspread = std::max(xspread, (s[idx[i]] - s[best]).lpNorm<Eigen::Infinity>());
    if (std::isfinite(fv[worst]) &&
        fv[worst] - fv[best] <= opt.ftol_abs + opt.ftol_rel * std::abs(fv[best]) && xspread <= opt.xtol * 1e3) {
      res.converged = true;
      break;
    }
    if (xspread <= opt.xtol) {
      res.converged = true;
      break;
    }
    ++res.iterations;
    Vec centroid = Vec::Zero(n);
    for (int i = 0; i < n; ++i) centroid += s[idx[i]];
    centroid /= dn;
    const Vec xr = centroid + alpha * (centroid - s[worst]);
    const double fr = eval(xr);
    if (fr < fv[best]) {
      const Vec xe = centroid + gamma * (xr - centroid);
      const double fe = eval(xe);
      if (fe < fr) {
        s[worst] = xe;
        fv[worst] = fe;
      } else {
        s[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second]) {
      s[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr < fv[worst];
    const Vec xc = outside ? Vec(centroid + rho * (xr - centroid)) : Vec(centroid + rho * (s[worst] - centroid));
    const double fc = eval(xc);
    if (fc < std::min(fr, fv[worst])) {
      s[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    for (int i = 1; i <= n; ++i) {
      const int k = idx[i];
      s[k] = s[best] + sigma * (s[k] - s[best]);
      fv[k] = eval(s[k]);
    }
  }
  const int best = static_cast<int>(std::min_element(fv.begin(), fv.end()) - fv.begin());
  res.x = s[best];
  res.value = fv[best];
  return res;
}

}  // namespace hylab

#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "hylab/core.hpp"
#include "hylab/quadrature.hpp"

namespace hylab {

/// f_j -> a_j f_j.
struct Scale {
  std::array<cplx, 3> a{1.0, 1.0, 1.0};
};
/// f(x, t) -> f(r x, r^2 t), b -> r^2 b.
struct Dilate {
  double r = 1.0;
};
/// f_j -> (modulation) f_j(u_j . z . w_j) with w1 = u2^-1, w2 = u3^-1, w3 = u1^-1.
struct TranslateMod {
  std::array<HPoint, 3> u;
};
/// f -> f(L x, t), A -> A L.
struct GlAction {
  Mat L;
};
/// f -> f(S x, t) for symplectic S preserving A^T J A.
struct SpAction {
  Mat S;
};
/// f(x, t) -> f(x, t + phi . x).
struct Shear {
  Vec phi;
};
/// f -> e^{i xi . x} f.
struct ModulateX {
  Vec xi;
};
/// f -> e^{i xi . z} f, b -> b + xi_t.
struct ModulateFull {
  Vec xi;
};

using SymmetryGen = std::variant<Scale, Dilate, TranslateMod, GlAction, SpAction, Shear, ModulateX, ModulateFull>;

enum class GroupClass { G0, G1 };

GroupClass group_class(const SymmetryGen& g);
std::string generator_name(const SymmetryGen& g);

/// Generators applied left to right.
struct SymmetryWord {
  std::vector<SymmetryGen> gens;

  SymmetryWord() = default;
  SymmetryWord(std::initializer_list<SymmetryGen> g) : gens(g) {}
  std::vector<GroupClass> labels() const;
};

struct Transformed {
  GaussTriple f;
  AttachedParams params;
};

/// Exact action on Gaussian-polynomial triples; throws std::invalid_argument
/// for degenerate generators.
Transformed apply(const SymmetryWord& word, const GaussTriple& f, const AttachedParams& params);
Transformed apply(const SymmetryGen& gen, const GaussTriple& f, const AttachedParams& params);

struct InvarianceResidual {
  double residual = 0.0;
  double error = 0.0;
  double phi_before = 0.0;
  double phi_after = 0.0;
  Method method = Method::ClosedForm;
};

/// Phi evaluated on both sides; closed form when A = 0 on both sides.
InvarianceResidual invariance_residual(const SymmetryWord& word, const GaussTriple& f, const AttachedParams& params,
                                       const ExponentTriple& p, const QuadratureScheme& scheme);

/// Phi with the cheapest exact-enough method: closed form at A = 0 (norms in
/// closed form for pure Gaussians, by quadrature otherwise), else `scheme`.
PhiResult phi_auto(const GaussTriple& f, const ExponentTriple& p, const AttachedParams& params,
                   const QuadratureScheme& scheme);

struct NormalizedEntry {
  GaussTriple f;
  AttachedParams params;
  Mat source_A;
  double source_b = 0.0;
};

/// ((e^{-ibt} f_j) o A^{-1}, Id, 0); throws std::invalid_argument for singular A.
NormalizedEntry normalize_entry(const GaussTriple& f, const AttachedParams& params);

/// Coordinates of an orbit element relative to an input (f, A, b).
///
/// h_j(x,t) = a_j e^{i beta t} e^{i zeta.x} e^{-i b T_j} f_j(K x + V_j - V_{j+1}, T_j),
/// T_j = r^2 t + psi.x + s_j + V_j^T B K x - V_j^T B V_{j+1} - (K x)^T B V_{j+1},
/// with B = A^T J A, indices mod 3 and s_j = U'_j - U'_{j+1}. The attached
/// matrix M satisfies M^T J M = K^T B K / r^2 and the twist equals beta.
struct OrbitParams {
  Mat K;
  double log_r = 0.0;
  double beta = 0.0;
  Vec zeta;
  Vec psi;
  std::array<Vec, 3> V;
  std::array<double, 3> Up{0.0, 0.0, 0.0};
  std::array<cplx, 3> a{1.0, 1.0, 1.0};

  static OrbitParams identity(int d);
  /// Entry-chart start: K = I, beta = b.
  static OrbitParams start(int d, double b);
  int d() const { return static_cast<int>(K.rows() / 2); }
  static int size(int d);
  Vec pack() const;
  static OrbitParams unpack(const Vec& v, int d);
};

struct OrbitElement {
  GaussTriple h;
  /// M^T J M.
  Mat MtJM;
  double twist = 0.0;
};

OrbitElement orbit_element(const GaussTriple& f, const AttachedParams& params, const OrbitParams& q);

/// For invertible K, the symmetry word realizing `q` on the normalized entry
/// in the chart (Id, 0).
SymmetryWord orbit_word(const OrbitParams& q);

struct DistanceConfig {
  int restarts = 5;
  int max_evaluations = 3000;
  std::uint64_t seed = 7;
  int gh_nodes = 16;
  /// Nodes for the final exact re-evaluation.
  int gh_nodes_final = 32;
  double sharpness = 50.0;
  double ftol = 1e-12;
  /// Additional start points; the best of identity and hints seeds restart 0.
  std::vector<OrbitParams> hints;
};

struct DistanceBreakdown {
  double max_norm_sq = 0.0;
  std::array<double, 3> norm_sq{0.0, 0.0, 0.0};
  double mjm_sq = 0.0;
  double twist_mjm_sq = 0.0;
};

struct DistanceReport {
  double upper_bound = 0.0;
  OrbitParams argmin;
  DistanceBreakdown breakdown;
  double quadrature_gap = 0.0;
  int iterations = 0;
  int evaluations = 0;
  int restarts = 0;
  bool converged = false;
  /// Set when the bound is the limit a -> 0, r -> infinity, which gives
  /// the bound max_j ||g_j|| with a vanishing penalty; argmin then holds the best
  /// orbit point found by the optimizer.
  bool vanishing_limit = false;
};

/// Exact distance objective at an orbit point (norms by GH at `nodes`).
DistanceBreakdown distance_objective(const GaussTriple& f, const AttachedParams& params, const ExponentTriple& p,
                                     const OrbitParams& q, int nodes, double* gap = nullptr);

DistanceReport orbit_distance_upper(const GaussTriple& f, const AttachedParams& params, const ExponentTriple& p,
                                    const DistanceConfig& config = {});

/// exp(J Q) for symmetric Q given by its upper-triangle entries.
Mat symplectic_from_hamiltonian(const Vec& q_upper, int d);

struct SymplecticNormResult {
  double value = 0.0;
  Mat S;
  bool converged = false;
};

/// min over symplectic S of ||S^{-1} A||^2.
SymplecticNormResult min_symplectic_norm(const Mat& A, int restarts = 5, std::uint64_t seed = 11);

}  // namespace hylab

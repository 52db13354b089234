#include "gwv/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>

#include "gwv/qcore.hpp"

namespace gwv {

double tsallis_q_min() { return (5.0 - std::sqrt(13.0)) / 2.0; }
double tsallis_q_max() { return (5.0 + std::sqrt(13.0)) / 2.0; }
double renyi_alpha_min() { return (std::sqrt(7.0) - 1.0) / 2.0; }
double renyi_alpha_assist_max() { return (std::sqrt(13.0) - 1.0) / 2.0; }

bool parameter_in_validity_range(Family family, Variant variant, double parameter,
                                 std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!(parameter > 0.0)) return fail("parameter must be > 0");
  if (parameter == 1.0) return fail("parameter 1 excluded (kernel undefined there)");
  char buf[160];
  if (family == Family::tsallis) {
    const double lo = tsallis_q_min(), hi = tsallis_q_max();
    if (variant == Variant::standard) {
      if (parameter >= lo && parameter <= hi) return true;
      std::snprintf(buf, sizeof buf, "tsallis standard interval [%.6f, %.6f]", lo, hi);
      return fail(buf);
    }
    if ((parameter >= lo && parameter <= 2.0) || (parameter >= 3.0 && parameter <= hi)) return true;
    std::snprintf(buf, sizeof buf, "tsallis assistance interval [%.6f, 2] U [3, %.6f]", lo, hi);
    return fail(buf);
  }
  const double lo = renyi_alpha_min();
  if (variant == Variant::standard) {
    if (parameter >= lo) return true;
    std::snprintf(buf, sizeof buf, "renyi standard interval [%.6f, inf)", lo);
    return fail(buf);
  }
  const double hi = renyi_alpha_assist_max();
  if (parameter >= lo && parameter <= hi) return true;
  std::snprintf(buf, sizeof buf, "renyi assistance interval [%.6f, %.6f]", lo, hi);
  return fail(buf);
}

namespace {

void check_kernel_args(double parameter, double x, const char* who) {
  if (!(parameter > 0.0) || parameter == 1.0)
    throw std::domain_error(std::string(who) + ": parameter must be > 0 and != 1");
  if (!(x >= -1e-12 && x <= 1.0 + 1e-12))
    throw std::domain_error(std::string(who) + ": squared concurrence outside [0,1]");
}

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

double g_q(double q, double x) {
  check_kernel_args(q, x, "g_q");
  x = clamp01(x);
  const double s = std::sqrt(1.0 - x);
  const double lp = (1.0 + s) / 2.0, lm = (1.0 - s) / 2.0;
  const double powp = std::pow(lp, q);
  const double powm = lm > 0.0 ? std::pow(lm, q) : 0.0;
  return (1.0 - powp - powm) / (q - 1.0);
}

double f_alpha(double alpha, double x) {
  check_kernel_args(alpha, x, "f_alpha");
  x = clamp01(x);
  const double s = std::sqrt(1.0 - x);
  const double lp = (1.0 + s) / 2.0, lm = (1.0 - s) / 2.0;
  const double powp = std::pow(lp, alpha);
  const double powm = lm > 0.0 ? std::pow(lm, alpha) : 0.0;
  return std::log2(powp + powm) / (1.0 - alpha);
}

namespace {

struct Bipartition {
  std::vector<long> off_a;  // composite offsets of the cut side
  std::vector<long> off_b;  // composite offsets of the complement
};

Bipartition make_bipartition(const DimList& dims, const std::vector<int>& cut) {
  detail::check_subset(dims, cut, "measure cut");
  if (static_cast<int>(cut.size()) >= dims.size())
    throw std::invalid_argument("measure cut: must leave at least one subsystem on the other side");
  std::vector<int> rest;
  {
    std::vector<bool> in(static_cast<std::size_t>(dims.size()), false);
    for (int s : cut) in[static_cast<std::size_t>(s)] = true;
    for (int s = 0; s < dims.size(); ++s)
      if (!in[static_cast<std::size_t>(s)]) rest.push_back(s);
  }
  return {detail::subset_offsets(dims, cut), detail::subset_offsets(dims, rest)};
}

// Reshape an (unnormalized) vector on the composite space into a
// cut-side x rest-side matrix.
Matrix reshape_cut(const Vector& chi, const Bipartition& bp) {
  Matrix x(static_cast<long>(bp.off_a.size()), static_cast<long>(bp.off_b.size()));
  for (std::size_t a = 0; a < bp.off_a.size(); ++a)
    for (std::size_t b = 0; b < bp.off_b.size(); ++b)
      x(static_cast<long>(a), static_cast<long>(b)) = chi[bp.off_a[a] + bp.off_b[b]];
  return x;
}

// weight * concurrence of the normalized state, from the unnormalized reshaped
// amplitude matrix: sqrt(2 (q^2 - tr G^2)) with G = X X^dagger, q = tr G.
double weighted_pure_concurrence(const Matrix& x) {
  const Matrix g = x * x.adjoint();
  const double q = g.trace().real();
  const double g2 = g.squaredNorm();  // tr G^2 for Hermitian G
  return std::sqrt(std::max(0.0, 2.0 * (q * q - g2)));
}

// weight * (tsallis or renyi entropy of the reduced state of the normalized
// term); q is the term weight.
double weighted_pure_entropy(const Matrix& x, const MeasureParams& mp) {
  const Matrix g = x * x.adjoint();
  const double q = g.trace().real();
  if (q < 1e-14) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(g / q, Eigen::EigenvaluesOnly);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lam = std::max(0.0, es.eigenvalues()[i]);
    if (lam > 0.0) acc += std::pow(lam, mp.parameter);
  }
  if (mp.family == Family::tsallis) return q * (1.0 - acc) / (mp.parameter - 1.0);
  return q * std::log2(acc) / (1.0 - mp.parameter);
}

struct RoofProblem {
  Matrix w;  // columns sqrt(lambda_i) e_i spanning the range, h x rank
  Bipartition bp;
  int rank = 0;
};

RoofProblem make_roof_problem(const Matrix& rho, const DimList& dims,
                              const std::vector<int>& cut) {
  if (rho.rows() != rho.cols() || rho.rows() != dims.total())
    throw std::invalid_argument("convex roof: matrix size does not match dims");
  if (!is_hermitian(rho, 1e-10)) throw numeric_error("convex roof: state not Hermitian within 1e-10");
  RoofProblem pr;
  pr.bp = make_bipartition(dims, cut);
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
  if (es.info() != Eigen::Success) throw numeric_error("convex roof: eigensolver failed");
  const double lmax = es.eigenvalues().maxCoeff();
  if (es.eigenvalues().minCoeff() < -1e-10) throw numeric_error("convex roof: state not PSD within 1e-10");
  if (std::abs(es.eigenvalues().sum() - 1.0) > 1e-8)
    throw std::invalid_argument("convex roof: state trace must be 1");
  std::vector<long> idx;
  for (long i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i] > 1e-12 * std::max(1.0, lmax)) idx.push_back(i);
  pr.rank = static_cast<int>(idx.size());
  pr.w.resize(rho.rows(), pr.rank);
  for (int c = 0; c < pr.rank; ++c)
    pr.w.col(c) = es.eigenvectors().col(idx[static_cast<std::size_t>(c)]) *
                  std::sqrt(es.eigenvalues()[idx[static_cast<std::size_t>(c)]]);
  return pr;
}

// Decomposition average of the per-term objective for isometry v (m x rank).
double roof_objective(const RoofProblem& pr, const Matrix& v,
                      const std::function<double(const Matrix&)>& weighted_term) {
  const Matrix chi = pr.w * v.transpose();  // h x m, column k = term k
  double acc = 0.0;
  for (long k = 0; k < chi.cols(); ++k) {
    if (chi.col(k).squaredNorm() < 1e-16) continue;
    acc += weighted_term(reshape_cut(chi.col(k), pr.bp));
  }
  return acc;
}

Matrix random_isometry(int m, int r, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix a(m, r);
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) a(i, j) = Complex(gauss(rng), gauss(rng));
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(m, r);
  return q;
}

Matrix polar_retract(const Matrix& v) {
  Eigen::JacobiSVD<Matrix> svd(v, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// Projected-gradient optimization of the decomposition average over the
// isometry manifold. sign = +1 minimizes, -1 maximizes.
double optimize_roof(const RoofProblem& pr, const ConvexRoofConfig& cfg, double sign,
                     const std::function<double(const Matrix&)>& weighted_term) {
  const int r = pr.rank;
  const int m = cfg.ancilla_size > 0 ? cfg.ancilla_size : r * r;
  if (m < r) throw std::invalid_argument("convex roof: ancilla size below state rank");

  auto value = [&](const Matrix& v) { return sign * roof_objective(pr, v, weighted_term); };

  // Rank-1 states admit a single decomposition.
  Matrix ident = Matrix::Identity(m, r);
  if (r == 1) return sign * value(ident);

  // Probe a few schedule points first: on inputs whose decomposition average is
  // decomposition-independent (every W-class plus vacuum reduction) the probes
  // coincide and no optimization is needed.
  {
    std::mt19937_64 probe_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    double lo = value(ident), hi = lo;
    for (int i = 0; i < 3; ++i) {
      const double f = value(random_isometry(m, r, probe_rng));
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    if (hi - lo <= 1e-12 * std::max(1.0, std::abs(hi))) return sign * lo;
  }

  const double fd = 1e-6;
  double best = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    std::mt19937_64 rng(cfg.seed + 0x51aab8f1ULL * static_cast<std::uint64_t>(restart + 1));
    Matrix v = restart == 0 ? ident : random_isometry(m, r, rng);
    double fv = value(v);
    double step = 0.25;
    int stall = 0;
    for (int it = 0; it < cfg.max_iters && stall < 4 && step > 1e-13; ++it) {
      // finite-difference ambient gradient
      Matrix grad(m, r);
      for (long i = 0; i < v.rows(); ++i) {
        for (long j = 0; j < v.cols(); ++j) {
          Matrix vp = v, vm = v;
          vp(i, j) += fd;
          vm(i, j) -= fd;
          const double dre = (value(vp) - value(vm)) / (2 * fd);
          vp = v;
          vm = v;
          vp(i, j) += Complex(0, fd);
          vm(i, j) -= Complex(0, fd);
          const double dim_ = (value(vp) - value(vm)) / (2 * fd);
          grad(i, j) = Complex(dre, dim_);
        }
      }
      // tangent projection for the Stiefel constraint v^dagger v = I
      const Matrix vg = v.adjoint() * grad;
      const Matrix tangent = grad - v * (0.5 * (vg + vg.adjoint()));
      const double gnorm = tangent.norm();
      if (gnorm < 1e-12) break;

      bool accepted = false;
      while (step > 1e-13) {
        const Matrix vtry = polar_retract(v - (step / gnorm) * tangent);
        const double ftry = value(vtry);
        if (ftry < fv - 1e-15) {
          if (fv - ftry < cfg.tol * std::max(1.0, std::abs(fv)) * 1e-4)
            ++stall;
          else
            stall = 0;
          v = vtry;
          fv = ftry;
          step = std::min(step * 1.5, 2.0);
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
    }
    best = std::min(best, fv);
    // Later restarts cannot improve once several agree to well under tolerance.
    if (restart >= 3 && std::abs(fv - best) < 1e-13) break;
  }
  return sign * best;
}

}  // namespace

double pure_concurrence(const Vector& psi, const DimList& dims, const std::vector<int>& cut) {
  if (psi.size() != dims.total()) throw std::invalid_argument("pure_concurrence: state size does not match dims");
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-8)
    throw std::invalid_argument("pure_concurrence: state must be normalized");
  const Bipartition bp = make_bipartition(dims, cut);
  const Matrix x = reshape_cut(psi, bp);
  return weighted_pure_concurrence(x);  // weight is 1 for a normalized state
}

double wootters_concurrence(const Matrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("wootters_concurrence: needs a two-qubit (4x4) state");
  if (!is_hermitian(rho, 1e-10)) throw numeric_error("wootters_concurrence: state not Hermitian within 1e-10");
  if (std::abs(rho.trace().real() - 1.0) > 1e-8)
    throw std::invalid_argument("wootters_concurrence: state trace must be 1");

  Matrix yy = Matrix::Zero(4, 4);  // sigma_y tensor sigma_y
  yy(0, 3) = -1;
  yy(1, 2) = 1;
  yy(2, 1) = 1;
  yy(3, 0) = -1;
  // With rho = W W^dagger, the spectrum of rho * rho_tilde equals the squared
  // singular values of the complex-symmetric matrix W^T (yy) W. Reading the
  // lambdas off as singular values avoids the sqrt-of-near-zero blowup the
  // direct eigendecomposition of rho * rho_tilde suffers from.
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
  if (es.info() != Eigen::Success) throw numeric_error("wootters_concurrence: eigensolver failed");
  Matrix w = es.eigenvectors();
  for (int i = 0; i < 4; ++i) w.col(i) *= std::sqrt(std::max(0.0, es.eigenvalues()[i]));
  const Matrix tau = w.transpose() * yy * w;
  Eigen::JacobiSVD<Matrix> svd(tau);
  const auto& lam = svd.singularValues();  // sorted in decreasing order
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double convex_roof_concurrence(const Matrix& rho, const DimList& dims,
                               const std::vector<int>& cut, const ConvexRoofConfig& cfg) {
  const RoofProblem pr = make_roof_problem(rho, dims, cut);
  return optimize_roof(pr, cfg, +1.0, weighted_pure_concurrence);
}

namespace {

void require_valid_params(const MeasureParams& mp) {
  std::string why;
  if (!parameter_in_validity_range(mp.family, mp.variant, mp.parameter, &why)) {
    char buf[240];
    std::snprintf(buf, sizeof buf, "measure: parameter %g outside %s", mp.parameter, why.c_str());
    throw std::domain_error(buf);
  }
}

double kernel(const MeasureParams& mp, double c_squared) {
  return mp.family == Family::tsallis ? g_q(mp.parameter, c_squared)
                                      : f_alpha(mp.parameter, c_squared);
}

}  // namespace

double measure(const Vector& psi, const DimList& dims, const std::vector<int>& cut,
               const MeasureParams& mp) {
  require_valid_params(mp);
  const double c = pure_concurrence(psi, dims, cut);
  return kernel(mp, c * c);
}

double measure(const Matrix& rho, const DimList& dims, const std::vector<int>& cut,
               const MeasureParams& mp, const ConvexRoofConfig& cfg) {
  require_valid_params(mp);
  if (rho.rows() != rho.cols() || rho.rows() != dims.total())
    throw std::invalid_argument("measure: matrix size does not match dims");
  if (!is_hermitian(rho, 1e-10)) throw numeric_error("measure: state not Hermitian within 1e-10");
  make_bipartition(dims, cut);  // validates the cut for every dispatch branch

  double c = 0.0;
  const double purity = rho.squaredNorm();  // tr(rho^2) for Hermitian rho
  if (purity >= 1.0 - 1e-10) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
    if (es.info() != Eigen::Success) throw numeric_error("measure: eigensolver failed");
    Eigen::Index imax = 0;
    es.eigenvalues().maxCoeff(&imax);
    Vector psi = es.eigenvectors().col(imax);
    psi /= psi.norm();
    c = pure_concurrence(psi, dims, cut);
  } else if (dims.size() == 2 && dims[0] == 2 && dims[1] == 2) {
    c = wootters_concurrence(rho);
  } else {
    c = convex_roof_concurrence(rho, dims, cut, cfg);
  }
  return kernel(mp, c * c);
}

double convex_roof_measure(const Matrix& rho, const DimList& dims, const std::vector<int>& cut,
                           const MeasureParams& mp, const ConvexRoofConfig& cfg) {
  if (!(mp.parameter > 0.0) || mp.parameter == 1.0)
    throw std::domain_error("convex_roof_measure: parameter must be > 0 and != 1");
  const RoofProblem pr = make_roof_problem(rho, dims, cut);
  const double sign = mp.variant == Variant::standard ? +1.0 : -1.0;
  return optimize_roof(pr, cfg, sign,
                       [&mp](const Matrix& x) { return weighted_pure_entropy(x, mp); });
}

}  // namespace gwv

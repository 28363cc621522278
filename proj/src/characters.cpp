#include "ucr/characters.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "ucr/errors.hpp"

namespace ucr {

namespace {

constexpr double kInteriorMargin = 1e-12;

double core_conditions_residual(const BlockDecomposition& dec, const Vector& z,
                                const Vector& w) {
  double worst = 0.0;
  for (const Matrix& c : dec.c_matrices) {
    worst = std::max(worst, (c * w).cwiseAbs().maxCoeff());
    worst = std::max(worst, (c.transpose() * z).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

CharacterPoint variety_test(const RelationMatrix& rel, const Vector& z,
                            const Vector& w, double tol) {
  if (z.size() != rel.n() || w.size() != rel.m()) {
    throw DimensionMismatch("variety_test: vector dimensions must be (n, m)");
  }
  CharacterPoint p;
  p.z = z;
  p.w = w;

  const BlockDecomposition dec = blocks(rel);
  // Membership via the pairing form: <C_(i,j) w, conj(z)> = 0 for all i,j.
  double worst = 0.0;
  for (const Matrix& c : dec.c_matrices) {
    const Complex val = (c * w).transpose() * z;
    worst = std::max(worst, std::abs(val));
  }
  p.variety_residual = worst;
  p.in_variety = worst <= tol;

  const double nz = z.norm();
  const double nw = w.norm();
  p.in_omega = p.in_variety && nz <= 1.0 + kInteriorMargin &&
               nw <= 1.0 + kInteriorMargin;
  p.core_residual = core_conditions_residual(dec, z, w);
  p.in_core = p.in_omega && p.core_residual <= tol;
  p.interior = nz < 1.0 - kInteriorMargin && nw < 1.0 - kInteriorMargin;
  return p;
}

namespace {

// Columns spanning the numerical kernel of `a`, with rank decided at
// rank_tol relative to the largest singular value.  Values inside the
// ambiguity band are appended to `ambiguous`.
Matrix kernel_basis(const Matrix& a, double rank_tol,
                    std::vector<double>& ambiguous) {
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  const double cut = rank_tol * std::max(smax, 1.0);
  int rank = 0;
  for (int i = 0; i < s.size(); ++i) {
    const double rel = s(i) / std::max(smax, 1.0);
    if (rel > 1e-11 && rel < 1e-7) ambiguous.push_back(s(i));
    if (s(i) > cut) ++rank;
  }
  return svd.matrixV().rightCols(svd.matrixV().cols() - rank);
}

}  // namespace

CoreSubspaces core_subspaces(const RelationMatrix& rel, double rank_tol) {
  const int n = rel.n();
  const int m = rel.m();
  const BlockDecomposition dec = blocks(rel);

  Matrix c_stack(n * n * m, m);
  Matrix ct_stack(m * n * m, n);
  for (int p = 0; p < n * m; ++p) {
    c_stack.block(p * n, 0, n, m) = dec.c_matrices[p];
    ct_stack.block(p * m, 0, m, n) = dec.c_matrices[p].transpose();
  }

  CoreSubspaces out;
  out.W = kernel_basis(c_stack, rank_tol, out.ambiguous_singular_values);
  out.Z = kernel_basis(ct_stack, rank_tol, out.ambiguous_singular_values);

  Eigen::ComplexEigenSolver<Matrix> eig(rel.matrix());
  for (int i = 0; i < eig.eigenvalues().size(); ++i) {
    if (std::abs(eig.eigenvalues()(i) - Complex(1, 0)) <= 1e-9) {
      ++out.d_kernel;
    }
  }
  return out;
}

CharacterPoint random_core_point(const RelationMatrix& rel,
                                 const CoreSubspaces& core, double radius_z,
                                 double radius_w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  auto sample = [&](const Matrix& basis, double radius) {
    Vector v = Vector::Zero(basis.rows());
    if (basis.cols() == 0 || radius == 0.0) return v;
    Vector coeff(basis.cols());
    for (int i = 0; i < coeff.size(); ++i) {
      coeff(i) = Complex(gauss(rng), gauss(rng));
    }
    v = basis * coeff;
    const double nv = v.norm();
    if (nv > 0) {
      std::uniform_real_distribution<double> radial(0.05, 0.95);
      v *= radial(rng) * radius / nv;
    }
    return v;
  };
  const Vector z = sample(core.Z, radius_z);
  const Vector w = sample(core.W, radius_w);
  return variety_test(rel, z, w);
}

DimfixReport dimfix_check(const RelationMatrix& rel,
                          const CharacterPoint& point) {
  if (!point.in_core) {
    throw NotInCore("dimfix_check: point is not in the core");
  }
  const int n = rel.n();
  const int m = rel.m();
  const Matrix& u = rel.matrix();

  DimfixReport rep;
  const bool has_z = point.z.norm() > 1e-12;
  const bool has_w = point.w.norm() > 1e-12;
  // delta_i (x) w and z (x) delta_j must be fixed vectors of u.
  for (int i = 0; i < n && has_w; ++i) {
    Vector v = Vector::Zero(n * m);
    for (int l = 0; l < m; ++l) v(i * m + l) = point.w(l);
    rep.max_fixed_residual =
        std::max(rep.max_fixed_residual, (u * v - v).norm());
  }
  for (int j = 0; j < m && has_z; ++j) {
    Vector v = Vector::Zero(n * m);
    for (int k = 0; k < n; ++k) v(k * m + j) = point.z(k);
    rep.max_fixed_residual =
        std::max(rep.max_fixed_residual, (u * v - v).norm());
  }

  if (has_z && has_w) {
    rep.required_lower_bound = m + n - 1;
  } else if (has_w) {
    rep.required_lower_bound = n;
  } else if (has_z) {
    rep.required_lower_bound = m;
  } else {
    rep.required_lower_bound = 0;
  }
  rep.d_kernel = core_subspaces(rel).d_kernel;
  rep.bound_holds = rep.d_kernel >= rep.required_lower_bound;
  return rep;
}

Complex character_eval(const RelationMatrix& rel, const CharacterPoint& point,
                       const GeneratorPoly& poly) {
  if (!point.in_variety) {
    throw NotInVariety("character_eval: point is not in the variety");
  }
  Complex total(0, 0);
  for (const auto& [coeff, word] : poly.terms) {
    for (const auto& [w, c] : normal_order(rel, word)) {
      Complex val(1, 0);
      for (int i : w.e) val *= point.z(i);
      for (int j : w.f) val *= point.w(j);
      total += coeff * c * val;
    }
  }
  return total;
}

CharacterVectorResult character_vector(const TruncatedFock& fock,
                                       const CharacterPoint& point) {
  if (!point.interior) {
    throw NotInterior("character_vector: point must lie in the open balls");
  }
  CharacterVectorResult out;
  out.coefficients = Vector::Zero(fock.dim());
  for (int idx = 0; idx < fock.dim(); ++idx) {
    const FockWord& w = fock.word(idx);
    Complex val(1, 0);
    for (int i : w.e) val *= point.z(i);
    for (int j : w.f) val *= point.w(j);
    out.coefficients(idx) = std::conj(val);
  }
  out.norm_squared = out.coefficients.squaredNorm();
  const double a = point.z.squaredNorm();
  const double b = point.w.squaredNorm();
  out.norm_squared_formula = 1.0 / ((1.0 - a) * (1.0 - b));
  // Tail of sum_{k+l>N} ||z||^{2k} ||w||^{2l}.
  const double r = std::max(a, b);
  const int N = fock.max_degree();
  out.tail_bound = (N + 2) * std::pow(r, N + 1) / ((1.0 - a) * (1.0 - b));
  return out;
}

NestRep nest_rep(const RelationMatrix& rel, const CharacterPoint& point,
                 const Vector& lambda, const Vector& mu) {
  const int n = rel.n();
  const int m = rel.m();
  NestRep rep;
  rep.e_images.resize(n);
  rep.f_images.resize(m);
  for (int i = 0; i < n; ++i) {
    rep.e_images[i] << point.z(i), lambda(i), Complex(0, 0), point.z(i);
  }
  for (int j = 0; j < m; ++j) {
    rep.f_images[j] << point.w(j), mu(j), Complex(0, 0), point.w(j);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      Eigen::Matrix2cd rhs = Eigen::Matrix2cd::Zero();
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < m; ++l) {
          rhs += rel.entry(i, j, k, l) * rep.f_images[l] * rep.e_images[k];
        }
      }
      const double r = (rep.e_images[i] * rep.f_images[j] - rhs).norm();
      rep.relation_residual = std::max(rep.relation_residual, r);
    }
  }
  return rep;
}

std::pair<Vector, Vector> violating_pair(const RelationMatrix& rel,
                                         const CharacterPoint& point,
                                         double target) {
  const BlockDecomposition dec = blocks(rel);
  // Aim lambda along conj(C_(i,j) w) and mu along conj(C_(i,j)^t z) for the
  // block with the largest core defect; the pairing then sums two squares.
  double best = -1.0;
  Vector lam = Vector::Zero(rel.n());
  Vector mu = Vector::Zero(rel.m());
  for (const Matrix& c : dec.c_matrices) {
    const Vector cw = c * point.w;
    const Vector ctz = c.transpose() * point.z;
    const double mass = cw.squaredNorm() + ctz.squaredNorm();
    if (mass > best) {
      best = mass;
      lam = cw.conjugate();
      mu = ctz.conjugate();
    }
  }
  if (best <= 0) {
    throw NotInCore(
        "violating_pair: point satisfies the core conditions; no violation "
        "exists");
  }
  const double scalefactor = target / best;
  return {lam * scalefactor, mu * scalefactor};
}

}  // namespace ucr

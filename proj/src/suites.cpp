#include "ucr/suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "ucr/characters.hpp"
#include "ucr/errors.hpp"
#include "ucr/fock_space.hpp"
#include "ucr/mobius.hpp"

namespace ucr {

namespace {

void push(SuiteReport& rep, const std::string& name, double value,
          double tol) {
  const bool pass = value <= tol;
  rep.checks.push_back({name, value, tol, pass});
  rep.all_pass = rep.all_pass && pass;
}

// Frobenius norm over the columns of words of degree <= max_input_degree.
double sparse_restricted_norm(const TruncatedFock& fock, const SparseMatrix& m,
                              int max_input_degree) {
  const int cols = fock.degree_end(std::min(max_input_degree, fock.max_degree()));
  double sum = 0.0;
  for (int c = 0; c < std::min(cols, static_cast<int>(m.outerSize())); ++c) {
    for (SparseMatrix::InnerIterator it(m, c); it; ++it) {
      sum += std::norm(it.value());
    }
  }
  return std::sqrt(sum);
}

SparseMatrix sparse_identity(int d) {
  SparseMatrix id(d, d);
  id.setIdentity();
  return id;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"relations", "commutant", "intertwiner", "characters", "core",
          "mobius"};
}

SuiteReport relations_suite(const RelationMatrix& rel,
                            const SuiteOptions& opt) {
  SuiteReport rep;
  rep.suite = "relations";
  const int N = opt.degree;
  const TruncatedFock fock(rel, N);
  const int n = rel.n(), m = rel.m();

  push(rep, "unitarity max|u*u-I|", rel.unitarity_residual(), 1e-10);
  push(rep, "forward/swap mutual inverse",
       (swap_matrix(rel) * forward_matrix(rel) -
        Matrix::Identity(rel.dim(), rel.dim()))
           .cwiseAbs()
           .maxCoeff(),
       1e-12);
  push(rep, "blocks reassembly", (reassemble(blocks(rel)) - rel.matrix()).norm(),
       0.0);

  // Commutation relations between the two left families; the mixed products
  // L_{f_l} L_{e_k} are shared across all (i,j).
  std::vector<SparseMatrix> fe(n * m);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < m; ++l) {
      fe[k * m + l] = fock.left_f(l) * fock.left_e(k);
    }
  }
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      SparseMatrix lhs = fock.left_e(i) * fock.left_f(j);
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < m; ++l) {
          const Complex c = rel.entry(i, j, k, l);
          if (c != Complex(0, 0)) lhs -= c * fe[k * m + l];
        }
      }
      worst = std::max(worst, sparse_restricted_norm(fock, lhs, N - 2));
    }
  }
  push(rep, "relation residual (deg <= N-2)", worst, opt.relation_tol);

  // Isometry and range orthogonality of each family on degrees <= N-1.
  double iso = 0.0, orth = 0.0;
  auto family_checks = [&](bool f_side, int count) {
    for (int i = 0; i < count; ++i) {
      const SparseMatrix& gi = f_side ? fock.left_f(i) : fock.left_e(i);
      const SparseMatrix gram = SparseMatrix(gi.adjoint()) * gi;
      iso = std::max(iso, sparse_restricted_norm(
                              fock, gram - sparse_identity(fock.dim()), N - 1));
      for (int j = 0; j < count; ++j) {
        if (j == i) continue;
        const SparseMatrix& gj = f_side ? fock.left_f(j) : fock.left_e(j);
        const SparseMatrix cross = SparseMatrix(gi.adjoint()) * gj;
        orth = std::max(orth, sparse_restricted_norm(fock, cross, N - 1));
      }
    }
  };
  family_checks(false, n);
  family_checks(true, m);
  push(rep, "generator isometry (deg <= N-1)", iso, opt.relation_tol);
  push(rep, "range orthogonality (deg <= N-1)", orth, opt.relation_tol);

  // Defect identity: sum_l L_{f_l} L_{f_l}^* = I - P on degrees <= N-1.
  SparseMatrix defect = sparse_identity(fock.dim());
  for (int idx = 0; idx < fock.dim(); ++idx) {
    if (fock.word(idx).f.empty()) defect.coeffRef(idx, idx) -= Complex(1, 0);
  }
  for (int l = 0; l < m; ++l) {
    const SparseMatrix& lf = fock.left_f(l);
    defect -= SparseMatrix(lf * SparseMatrix(lf.adjoint()));
  }
  push(rep, "defect identity (deg <= N-1)",
       sparse_restricted_norm(fock, defect, N - 1), opt.relation_tol);
  return rep;
}

SuiteReport commutant_suite(const RelationMatrix& rel,
                            const SuiteOptions& opt) {
  SuiteReport rep;
  rep.suite = "commutant";
  const TruncatedFock fock(rel, opt.degree);
  double worst = 0.0;
  std::vector<const SparseMatrix*> lefts, rights;
  for (int i = 0; i < rel.n(); ++i) {
    lefts.push_back(&fock.left_e(i));
    rights.push_back(&fock.right_e(i));
  }
  for (int j = 0; j < rel.m(); ++j) {
    lefts.push_back(&fock.left_f(j));
    rights.push_back(&fock.right_f(j));
  }
  for (const auto* left : lefts) {
    for (const auto* right : rights) {
      const SparseMatrix commutator = (*left) * (*right) - (*right) * (*left);
      worst = std::max(
          worst, sparse_restricted_norm(fock, commutator, opt.degree - 2));
    }
  }
  push(rep, "left/right commutators (deg <= N-2)", worst, opt.relation_tol);
  return rep;
}

SuiteReport intertwiner_suite(const RelationMatrix& rel,
                              const SuiteOptions& opt) {
  SuiteReport rep;
  rep.suite = "intertwiner";
  const int N = std::min(opt.degree, 3);
  const TruncatedFock fock(rel, N);
  const RelationMatrix rel_star = RelationMatrix::validate(
      rel.n(), rel.m(), rel.matrix().adjoint(), 1e-8);
  const TruncatedFock fock_star(rel_star, N);
  const FockOperator w = reversal_unitary(fock, fock_star);

  push(rep, "reversal unitarity",
       (w.mat.adjoint() * w.mat - Matrix::Identity(fock.dim(), fock.dim()))
           .norm(),
       opt.intertwiner_tol);
  double worst = 0.0;
  for (int i = 0; i < rel.n(); ++i) {
    worst = std::max(
        worst, identity_residual(fock_star, compose(right_e_op(fock_star, i), w),
                                 compose(w, left_e_op(fock, i))));
  }
  for (int j = 0; j < rel.m(); ++j) {
    worst = std::max(
        worst, identity_residual(fock_star, compose(right_f_op(fock_star, j), w),
                                 compose(w, left_f_op(fock, j))));
  }
  push(rep, "R_x W = W L_x (deg <= N-1)", worst, opt.intertwiner_tol);
  return rep;
}

SuiteReport characters_suite(const RelationMatrix& rel,
                             const SuiteOptions& opt) {
  SuiteReport rep;
  rep.suite = "characters";
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss;
  const CoreSubspaces core = core_subspaces(rel);

  auto rand_vec = [&](int d) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    return v;
  };

  // Nest representations at sampled core points accept every (lambda, mu).
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    const CharacterPoint p =
        random_core_point(rel, core, 0.8, 0.8, opt.seed + t);
    for (int s = 0; s < 5; ++s) {
      const NestRep rep2 = nest_rep(rel, p, rand_vec(rel.n()), rand_vec(rel.m()));
      worst = std::max(worst, rep2.relation_residual);
    }
  }
  push(rep, "nest representations at core points", worst, opt.nest_tol);

  // The origin is always a character; its vector is the vacuum.
  const TruncatedFock fock(rel, std::min(opt.degree, 4));
  const CharacterPoint origin = variety_test(rel, Vector::Zero(rel.n()),
                                             Vector::Zero(rel.m()));
  const CharacterVectorResult cv = character_vector(fock, origin);
  push(rep, "origin character vector norm", std::abs(cv.norm_squared - 1.0),
       1e-14);

  // Interior core points: truncated norm against the closed form.
  double norm_dev = 0.0;
  for (int t = 0; t < 5; ++t) {
    const CharacterPoint p =
        random_core_point(rel, core, 0.45, 0.45, opt.seed + 100 + t);
    if (!p.interior) continue;
    const CharacterVectorResult c = character_vector(fock, p);
    norm_dev = std::max(
        norm_dev, std::abs(c.norm_squared - c.norm_squared_formula) -
                      c.tail_bound);
  }
  push(rep, "character vector norm within tail bound",
       std::max(norm_dev, 0.0), 1e-12);
  return rep;
}

SuiteReport core_suite(const RelationMatrix& rel, const SuiteOptions& opt) {
  SuiteReport rep;
  rep.suite = "core";
  const CoreSubspaces core = core_subspaces(rel);

  // Core points solve the defining conditions; the dimension bounds hold.
  double cond = 0.0;
  bool bounds = true;
  for (int t = 0; t < 100; ++t) {
    const CharacterPoint p =
        random_core_point(rel, core, 0.9, 0.9, opt.seed + t);
    cond = std::max(cond, p.core_residual);
    cond = std::max(cond, p.variety_residual);
    const DimfixReport d = dimfix_check(rel, p);
    cond = std::max(cond, d.max_fixed_residual);
    bounds = bounds && d.bound_holds;
  }
  push(rep, "sampled core points satisfy the core conditions", cond, 1e-9);
  push(rep, "kernel dimension bounds", bounds ? 0.0 : 1.0, 0.5);
  return rep;
}

SuiteReport mobius_suite(const RelationMatrix& rel, const SuiteOptions& opt) {
  SuiteReport rep;
  rep.suite = "mobius";
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss;
  auto sample_ball = [&](int d, double radius) {
    Vector v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    return Vector(v * (radius / std::max(v.norm(), 1e-12)));
  };

  // The U(1,n) identities.
  double lemma = 0.0;
  const Matrix J = [&] {
    Matrix j = -Matrix::Identity(rel.n() + 1, rel.n() + 1);
    j(0, 0) = Complex(1, 0);
    return j;
  }();
  for (int t = 0; t < 25; ++t) {
    const MobiusData d = mobius_data(sample_ball(rel.n(), 0.85));
    lemma = std::max(lemma, std::abs(d.eta.squaredNorm() - (d.x0 * d.x0 - 1)));
    lemma = std::max(lemma, (d.X1 * d.eta - d.x0 * d.eta).norm());
    lemma = std::max(
        lemma, (d.X1 * d.X1 - Matrix::Identity(rel.n(), rel.n()) -
                d.eta * d.eta.adjoint())
                   .norm());
    lemma = std::max(lemma, (d.X.adjoint() * J * d.X - J).cwiseAbs().maxCoeff());
  }
  push(rep, "hyperbolic matrix identities", lemma, 1e-12);

  // Ball-map round trip through the inverse parameter.
  double round_trip = 0.0;
  for (int t = 0; t < 25; ++t) {
    const Vector alpha = sample_ball(rel.n(), 0.7);
    const MobiusData d = mobius_data(alpha);
    const MobiusData dinv = mobius_data(-alpha);
    const Vector lam = sample_ball(rel.n(), 0.9);
    round_trip =
        std::max(round_trip, (ball_map(dinv, ball_map(d, lam)) - lam).norm());
  }
  push(rep, "ball map round trip", round_trip, 1e-10);

  // Lifted relations at sampled interior core points.
  const CoreSubspaces core = core_subspaces(rel);
  const TruncatedFock fock(rel, opt.degree);
  double lifted = 0.0;
  double orbit = 0.0;
  for (int t = 0; t < 5; ++t) {
    const CharacterPoint p =
        random_core_point(rel, core, 0.5, 0.5, opt.seed + 200 + t);
    const AutoOnFock lift = lift_to_au(fock, p);
    lifted = std::max({lifted, lift.relation_residual_e,
                       lift.relation_residual_f, lift.compressed_commutation});
    const OrbitCheckReport oc = corechar_orbit_check(fock, p);
    orbit = std::max({orbit, oc.max_deviation, oc.max_deviation_swapped});
  }
  push(rep, "lifted commutation relations at core points", lifted,
       opt.mobius_tol);
  push(rep, "vacuum orbit of lifted maps", orbit, opt.mobius_tol);
  return rep;
}

std::vector<SuiteReport> run_suites(const RelationMatrix& rel,
                                    const std::vector<std::string>& names,
                                    const SuiteOptions& options) {
  std::vector<std::string> expanded;
  for (const auto& name : names) {
    if (name == "all") {
      const auto every = suite_names();
      expanded.insert(expanded.end(), every.begin(), every.end());
    } else {
      expanded.push_back(name);
    }
  }
  std::vector<SuiteReport> out;
  for (const auto& name : expanded) {
    if (name == "relations") {
      out.push_back(relations_suite(rel, options));
    } else if (name == "commutant") {
      out.push_back(commutant_suite(rel, options));
    } else if (name == "intertwiner") {
      out.push_back(intertwiner_suite(rel, options));
    } else if (name == "characters") {
      out.push_back(characters_suite(rel, options));
    } else if (name == "core") {
      out.push_back(core_suite(rel, options));
    } else if (name == "mobius") {
      out.push_back(mobius_suite(rel, options));
    } else {
      throw Error("unknown suite: " + name);
    }
  }
  return out;
}

}  // namespace ucr

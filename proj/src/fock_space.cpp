#include "ucr/fock_space.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "ucr/errors.hpp"

namespace ucr {

namespace {

std::uint64_t pack_word(const FockWord& w, int n, int m) {
  std::uint64_t key = 1;  // leading sentinel keeps lengths unambiguous
  key = key * 33 + w.e.size();
  key = key * 33 + w.f.size();
  for (int i : w.e) key = key * static_cast<std::uint64_t>(n) + i;
  for (int j : w.f) key = key * static_cast<std::uint64_t>(m) + j;
  return key;
}

void enumerate_words(int alphabet, int length, std::vector<int>& scratch,
                     std::vector<std::vector<int>>& out) {
  if (static_cast<int>(scratch.size()) == length) {
    out.push_back(scratch);
    return;
  }
  for (int a = 0; a < alphabet; ++a) {
    scratch.push_back(a);
    enumerate_words(alphabet, length, scratch, out);
    scratch.pop_back();
  }
}

}  // namespace

TruncatedFock::TruncatedFock(const RelationMatrix& rel, int max_degree,
                             FockBuildOptions options)
    : rel_(rel), max_degree_(max_degree) {
  if (max_degree < 1) {
    throw TruncationTooSmall("truncation degree must be at least 1");
  }
  const int n = rel_.n();
  const int m = rel_.m();

  double planned = 0;
  for (int k = 0; k <= max_degree; ++k) {
    for (int l = 0; k + l <= max_degree; ++l) {
      planned += std::pow(double(n), k) * std::pow(double(m), l);
    }
  }
  if (planned * 32 > double(options.memory_budget_bytes)) {
    throw MemoryBudgetExceeded("basis size exceeds the memory budget");
  }

  offsets_.assign(1, 0);
  for (int d = 0; d <= max_degree; ++d) {
    for (int k = 0; k <= d; ++k) {
      const int l = d - k;
      std::vector<int> scratch;
      std::vector<std::vector<int>> ewords, fwords;
      enumerate_words(n, k, scratch, ewords);
      enumerate_words(m, l, scratch, fwords);
      for (const auto& ew : ewords) {
        for (const auto& fw : fwords) {
          basis_.push_back(FockWord{ew, fw});
          degrees_.push_back(d);
        }
      }
    }
    offsets_.push_back(static_cast<int>(basis_.size()));
  }
  index_.reserve(basis_.size() * 2);
  for (int idx = 0; idx < dim(); ++idx) {
    index_[pack_word(basis_[idx], n, m)] = idx;
  }

  std::size_t bytes = 0;
  auto charge = [&](std::size_t nnz) {
    bytes += nnz * 24;
    if (bytes > options.memory_budget_bytes) {
      throw MemoryBudgetExceeded("generator matrices exceed the memory budget");
    }
  };

  using Triplet = Eigen::Triplet<Complex>;
  // Builds one generator family; `column` emits the expansion of the image of
  // a basis word whose raised degree still fits the truncation.
  auto build_family =
      [&](int count,
          const std::function<void(int, int, const FockWord&,
                                   std::vector<Triplet>&)>& column) {
        std::vector<SparseMatrix> out;
        out.reserve(count);
        for (int g = 0; g < count; ++g) {
          std::vector<Triplet> trip;
          for (int idx = 0; idx < dim(); ++idx) {
            if (degrees_[idx] + 1 > max_degree_) continue;
            column(g, idx, basis_[idx], trip);
          }
          charge(trip.size());
          SparseMatrix M(dim(), dim());
          M.setFromTriplets(trip.begin(), trip.end());
          out.push_back(std::move(M));
        }
        return out;
      };

  // L_{e_i}: prepend, no rewriting.
  left_e_ = build_family(n, [&](int i, int col, const FockWord& w,
                                std::vector<Triplet>& trip) {
    FockWord t = w;
    t.e.insert(t.e.begin(), i);
    trip.emplace_back(index_of(t), col, Complex(1, 0));
  });

  // L_{f_j}: prepend then bubble the f rightward past every e-letter.
  left_f_ = build_family(m, [&](int j, int col, const FockWord& w,
                                std::vector<Triplet>& trip) {
    MixedWord mixed;
    mixed.push_back({true, j});
    for (int i : w.e) mixed.push_back({false, i});
    for (int jj : w.f) mixed.push_back({true, jj});
    for (const auto& [t, c] : normal_order(rel_, mixed)) {
      trip.emplace_back(index_of(t), col, c);
    }
  });

  // R_{e_i}: append then bubble the e leftward past every f-letter.
  right_e_ = build_family(n, [&](int i, int col, const FockWord& w,
                                 std::vector<Triplet>& trip) {
    MixedWord mixed = to_mixed(w);
    mixed.push_back({false, i});
    for (const auto& [t, c] : normal_order(rel_, mixed)) {
      trip.emplace_back(index_of(t), col, c);
    }
  });

  // R_{f_j}: append, no rewriting.
  right_f_ = build_family(m, [&](int j, int col, const FockWord& w,
                                 std::vector<Triplet>& trip) {
    FockWord t = w;
    t.f.push_back(j);
    trip.emplace_back(index_of(t), col, Complex(1, 0));
  });
}

int TruncatedFock::index_of(const FockWord& w) const {
  auto it = index_.find(pack_word(w, rel_.n(), rel_.m()));
  return it == index_.end() ? -1 : it->second;
}

Vector TruncatedFock::vacuum() const {
  Vector v = Vector::Zero(dim());
  v(0) = Complex(1, 0);
  return v;
}

Matrix TruncatedFock::f_free_projection() const {
  Matrix p = Matrix::Zero(dim(), dim());
  for (int idx = 0; idx < dim(); ++idx) {
    if (basis_[idx].f.empty()) p(idx, idx) = Complex(1, 0);
  }
  return p;
}

FockOperator identity_op(const TruncatedFock& fock) {
  return {Matrix::Identity(fock.dim(), fock.dim()), 0, 0, fock.max_degree()};
}

namespace {
FockOperator generator(const TruncatedFock& fock, const SparseMatrix& g) {
  return {Matrix(g), 1, 1, fock.max_degree() - 1};
}
}  // namespace

FockOperator left_e_op(const TruncatedFock& fock, int i) {
  return generator(fock, fock.left_e(i));
}
FockOperator left_f_op(const TruncatedFock& fock, int j) {
  return generator(fock, fock.left_f(j));
}
FockOperator right_e_op(const TruncatedFock& fock, int i) {
  return generator(fock, fock.right_e(i));
}
FockOperator right_f_op(const TruncatedFock& fock, int j) {
  return generator(fock, fock.right_f(j));
}

FockOperator compose(const FockOperator& a, const FockOperator& b) {
  FockOperator out;
  out.mat = a.mat * b.mat;
  out.lo = a.lo + b.lo;
  out.hi = a.hi + b.hi;
  out.validity = std::min(b.validity, a.validity - b.hi);
  return out;
}

FockOperator add(const FockOperator& a, const FockOperator& b) {
  FockOperator out;
  out.mat = a.mat + b.mat;
  out.lo = std::min(a.lo, b.lo);
  out.hi = std::max(a.hi, b.hi);
  out.validity = std::min(a.validity, b.validity);
  return out;
}

FockOperator scale(Complex c, const FockOperator& a) {
  return {c * a.mat, a.lo, a.hi, a.validity};
}

FockOperator add_scalar(const FockOperator& a, Complex c) {
  FockOperator out = a;
  out.mat += c * Matrix::Identity(a.mat.rows(), a.mat.cols());
  out.lo = std::min(a.lo, 0);
  out.hi = std::max(a.hi, 0);
  return out;
}

FockOperator adjoint_op(const TruncatedFock& fock, const FockOperator& a) {
  FockOperator out;
  out.mat = a.mat.adjoint();
  out.lo = -a.hi;
  out.hi = -a.lo;
  out.validity =
      std::min(a.validity + a.lo, fock.max_degree() + std::min(a.lo, 0));
  return out;
}

double restricted_norm(const TruncatedFock& fock, const Matrix& mat,
                       int max_input_degree) {
  const int d = std::min(max_input_degree, fock.max_degree());
  if (d < 0) throw Error("restricted_norm: no valid degrees left");
  const int cols = fock.degree_end(d);
  return mat.leftCols(cols).norm();
}

double identity_residual(const TruncatedFock& fock, const FockOperator& a,
                         const FockOperator& b) {
  const int v = std::min(a.validity, b.validity);
  return restricted_norm(fock, a.mat - b.mat, v);
}

FockOperator fourier_component(const TruncatedFock& fock,
                               const FockOperator& a, int k) {
  FockOperator out;
  out.mat = Matrix::Zero(fock.dim(), fock.dim());
  for (int p = 0; p <= fock.max_degree(); ++p) {
    const int q = p + k;
    if (q < 0 || q > fock.max_degree()) continue;
    const int r0 = fock.degree_begin(q), rn = fock.degree_end(q) - r0;
    const int c0 = fock.degree_begin(p), cn = fock.degree_end(p) - c0;
    out.mat.block(r0, c0, rn, cn) = a.mat.block(r0, c0, rn, cn);
  }
  out.lo = k;
  out.hi = k;
  out.validity = a.validity;
  return out;
}

FockOperator cesaro_sum(const TruncatedFock& fock, const FockOperator& a,
                        int p) {
  if (p < 1) throw Error("cesaro_sum: p must be >= 1");
  FockOperator out;
  out.mat = Matrix::Zero(fock.dim(), fock.dim());
  out.lo = 0;
  out.hi = 0;
  out.validity = a.validity;
  for (int k = 0; k <= p && k <= fock.max_degree(); ++k) {
    const double weight = 1.0 - double(k) / double(p);
    if (weight == 0.0) continue;
    out.mat += weight * fourier_component(fock, a, k).mat;
    out.hi = std::max(out.hi, k);
  }
  return out;
}

FockOperator reversal_unitary(const TruncatedFock& fock_u,
                              const TruncatedFock& fock_ustar) {
  const RelationMatrix& ru = fock_u.relation();
  const RelationMatrix& rs = fock_ustar.relation();
  if (ru.n() != rs.n() || ru.m() != rs.m() ||
      fock_u.max_degree() != fock_ustar.max_degree() ||
      (rs.matrix() - ru.matrix().adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
    throw RelationMismatch(
        "reversal_unitary: target space must be built from the adjoint "
        "relation matrix at the same truncation");
  }
  FockOperator out;
  out.mat = Matrix::Zero(fock_u.dim(), fock_u.dim());
  for (int col = 0; col < fock_u.dim(); ++col) {
    const FockWord& w = fock_u.word(col);
    MixedWord mixed;
    for (auto it = w.f.rbegin(); it != w.f.rend(); ++it)
      mixed.push_back({true, *it});
    for (auto it = w.e.rbegin(); it != w.e.rend(); ++it)
      mixed.push_back({false, *it});
    for (const auto& [t, c] : normal_order(rs, mixed)) {
      out.mat(fock_ustar.index_of(t), col) += c;
    }
  }
  out.lo = 0;
  out.hi = 0;
  out.validity = fock_u.max_degree();
  return out;
}

FockOperator regrade_f_first(const TruncatedFock& fock) {
  FockOperator out;
  out.mat = Matrix::Zero(fock.dim(), fock.dim());
  for (int col = 0; col < fock.dim(); ++col) {
    for (const auto& [t, c] :
         f_first_expansion(fock.relation(), fock.word(col))) {
      out.mat(fock.index_of(t), col) += c;
    }
  }
  out.lo = 0;
  out.hi = 0;
  out.validity = fock.max_degree();
  return out;
}

FockOperator regrade_f_first_inverse(const TruncatedFock& fock) {
  FockOperator out;
  out.mat = Matrix::Zero(fock.dim(), fock.dim());
  for (int col = 0; col < fock.dim(); ++col) {
    const FockWord& w = fock.word(col);  // letter content of f_J (x) e_I
    MixedWord mixed;
    for (int j : w.f) mixed.push_back({true, j});
    for (int i : w.e) mixed.push_back({false, i});
    for (const auto& [t, c] : normal_order(fock.relation(), mixed)) {
      out.mat(fock.index_of(t), col) += c;
    }
  }
  out.lo = 0;
  out.hi = 0;
  out.validity = fock.max_degree();
  return out;
}

FockOperator poly_operator(const TruncatedFock& fock, const GeneratorPoly& p) {
  FockOperator out;
  out.mat = Matrix::Zero(fock.dim(), fock.dim());
  out.lo = std::numeric_limits<int>::max();
  out.hi = std::numeric_limits<int>::min();
  out.validity = fock.max_degree();
  if (p.terms.empty()) {
    out.lo = out.hi = 0;
    return out;
  }
  for (const auto& [coeff, word] : p.terms) {
    FockOperator term = identity_op(fock);
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      const FockOperator g =
          it->from_f ? left_f_op(fock, it->index) : left_e_op(fock, it->index);
      term = compose(g, term);
    }
    out.mat += coeff * term.mat;
    out.lo = std::min(out.lo, term.lo);
    out.hi = std::max(out.hi, term.hi);
    out.validity = std::min(out.validity, term.validity);
  }
  return out;
}

}  // namespace ucr

#include "ucr/relation_matrix.hpp"

#include <sstream>

#include "ucr/errors.hpp"

namespace ucr {

RelationMatrix RelationMatrix::validate(int n, int m, const Matrix& u,
                                        double unitarity_tol) {
  if (n < 1 || m < 1) {
    throw DimensionMismatch("relation matrix needs n >= 1 and m >= 1");
  }
  const int d = n * m;
  if (u.rows() != d || u.cols() != d) {
    std::ostringstream msg;
    msg << "relation matrix must be " << d << "x" << d << " for n=" << n
        << ", m=" << m << "; got " << u.rows() << "x" << u.cols();
    throw DimensionMismatch(msg.str());
  }
  const double residual =
      (u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (residual > unitarity_tol) {
    std::ostringstream msg;
    msg << "matrix is not unitary: max|u*u - I| = " << residual
        << " exceeds tolerance " << unitarity_tol;
    throw NotUnitary(msg.str(), residual);
  }
  return RelationMatrix(n, m, u, residual);
}

BlockDecomposition blocks(const RelationMatrix& rel) {
  const int n = rel.n();
  const int m = rel.m();
  BlockDecomposition dec;
  dec.n = n;
  dec.m = m;
  dec.blocks.reserve(n * m);
  dec.c_matrices.reserve(n * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      Matrix b(n, m);
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < m; ++l) {
          b(k, l) = rel.entry(i, j, k, l);
        }
      }
      Matrix c = b;
      c(i, j) -= Complex(1, 0);
      dec.blocks.push_back(std::move(b));
      dec.c_matrices.push_back(std::move(c));
    }
  }
  return dec;
}

Matrix reassemble(const BlockDecomposition& dec) {
  const int n = dec.n;
  const int m = dec.m;
  Matrix u(n * m, n * m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const Matrix& b = dec.block(i, j);
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < m; ++l) {
          u(i * m + j, k * m + l) = b(k, l);
        }
      }
    }
  }
  return u;
}

RelationMatrix exchange_tilde(const RelationMatrix& rel) {
  const int n = rel.n();
  const int m = rel.m();
  // Output is indexed by pairs over {0..m-1} x {0..n-1}.
  Matrix t(n * m, n * m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < m; ++c) {
        for (int d = 0; d < n; ++d) {
          t(a * n + b, c * n + d) = std::conj(rel.entry(d, c, b, a));
        }
      }
    }
  }
  return RelationMatrix::validate(m, n, t, 1e-8);
}

std::vector<std::pair<std::pair<int, int>, Complex>> swap_coefficients(
    const RelationMatrix& rel, int l, int k) {
  if (k < 0 || k >= rel.n() || l < 0 || l >= rel.m()) {
    throw IndexOutOfRange("swap_coefficients: index out of range");
  }
  std::vector<std::pair<std::pair<int, int>, Complex>> out;
  out.reserve(rel.dim());
  for (int i = 0; i < rel.n(); ++i) {
    for (int j = 0; j < rel.m(); ++j) {
      const Complex c = std::conj(rel.entry(i, j, k, l));
      if (c != Complex(0, 0)) {
        out.push_back({{i, j}, c});
      }
    }
  }
  return out;
}

Matrix forward_matrix(const RelationMatrix& rel) {
  return rel.matrix().transpose();
}

Matrix swap_matrix(const RelationMatrix& rel) { return rel.matrix().conjugate(); }

}  // namespace ucr

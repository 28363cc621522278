#pragma once

#include <vector>

#include "ucr/types.hpp"

namespace ucr {

/// The Fock space of one free family of n creation operators, truncated to
/// word length <= N.  Indexing is closed-form (degree blocks, words in base-n
/// order with the first letter most significant), so the creation operators
/// act by index arithmetic on whole degree blocks; nothing is materialized
/// as a matrix.  Used where large truncation degrees are needed.
class FreeFock {
 public:
  FreeFock(int n, int max_degree);

  int n() const { return n_; }
  int max_degree() const { return max_degree_; }
  int dim() const { return offsets_.back(); }
  int degree_begin(int d) const { return offsets_[d]; }
  int degree_end(int d) const { return offsets_[d + 1]; }

  int word_index(const std::vector<int>& word) const;
  std::vector<std::vector<int>> words_up_to(int degree) const;

  Vector vacuum() const;

  /// out += coeff * L_{e_i} in.
  void accumulate_creation(int i, const Vector& in, Complex coeff,
                           Vector& out) const;
  Vector apply_creation(int i, const Vector& in) const;
  /// L_eta = sum_i eta_i L_{e_i} applied to a vector.
  Vector apply_creation_combination(const Vector& eta, const Vector& in) const;

  /// Truncation of the character vector sum_w conj(prod lam) w.
  Vector character_vector(const Vector& lam) const;

 private:
  int n_;
  int max_degree_;
  std::vector<int> offsets_;
};

}  // namespace ucr

#pragma once

#include <map>
#include <vector>

#include "ucr/relation_matrix.hpp"
#include "ucr/types.hpp"

namespace ucr {

/// A normal-form basis word e_{i_1}...e_{i_k} (x) f_{j_1}...f_{j_l}.
/// Letters are 0-based generator indices.
struct FockWord {
  std::vector<int> e;
  std::vector<int> f;

  int degree() const { return static_cast<int>(e.size() + f.size()); }

  friend bool operator==(const FockWord& a, const FockWord& b) {
    return a.e == b.e && a.f == b.f;
  }
  friend bool operator<(const FockWord& a, const FockWord& b) {
    if (a.e != b.e) return a.e < b.e;
    return a.f < b.f;
  }
};

/// One tensor letter of a mixed word, from either generator family.
struct Letter {
  bool from_f = false;
  int index = 0;
};

using MixedWord = std::vector<Letter>;

/// Linear combination of normal-form words.
using WordExpansion = std::map<FockWord, Complex>;

MixedWord to_mixed(const FockWord& w);

/// Rewrites an arbitrary interleaving of letters into the e-before-f normal
/// form by repeatedly replacing adjacent f (x) e pairs through
/// swap_coefficients().  The result spans words of the same total degree.
WordExpansion normal_order(const RelationMatrix& rel, const MixedWord& word);

/// Expands a normal-form word in the opposite f-before-e order by iterating
/// the forward identification e_i (x) f_j = sum u_{(i,j),(k,l)} f_l (x) e_k.
/// Keys hold the letter content of the target words: key.f before key.e.
WordExpansion f_first_expansion(const RelationMatrix& rel, const FockWord& w);

/// A formal polynomial in the generators; terms are (coefficient, word) with
/// words over both families in arbitrary order.
struct GeneratorPoly {
  std::vector<std::pair<Complex, MixedWord>> terms;

  static GeneratorPoly one();
  static GeneratorPoly e(int i);
  static GeneratorPoly f(int j);

  GeneratorPoly operator*(const GeneratorPoly& rhs) const;
  GeneratorPoly operator+(const GeneratorPoly& rhs) const;
  GeneratorPoly operator*(Complex c) const;
};

}  // namespace ucr

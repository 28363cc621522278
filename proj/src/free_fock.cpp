#include "ucr/free_fock.hpp"

#include "ucr/errors.hpp"

namespace ucr {

FreeFock::FreeFock(int n, int max_degree) : n_(n), max_degree_(max_degree) {
  if (n < 1) throw DimensionMismatch("FreeFock: n must be >= 1");
  if (max_degree < 1) {
    throw TruncationTooSmall("FreeFock: truncation degree must be >= 1");
  }
  offsets_.assign(1, 0);
  long long block = 1;
  for (int d = 0; d <= max_degree; ++d) {
    offsets_.push_back(offsets_.back() + static_cast<int>(block));
    block *= n;
    if (offsets_.back() > (1 << 28)) {
      throw MemoryBudgetExceeded("FreeFock: basis too large");
    }
  }
}

int FreeFock::word_index(const std::vector<int>& word) const {
  int idx = 0;
  for (int a : word) idx = idx * n_ + a;
  return offsets_[word.size()] + idx;
}

std::vector<std::vector<int>> FreeFock::words_up_to(int degree) const {
  std::vector<std::vector<int>> out;
  out.push_back({});
  for (int d = 1; d <= degree; ++d) {
    std::vector<int> w(d, 0);
    while (true) {
      out.push_back(w);
      int t = d - 1;
      while (t >= 0 && ++w[t] == n_) w[t--] = 0;
      if (t < 0) break;
    }
  }
  return out;
}

Vector FreeFock::vacuum() const {
  Vector v = Vector::Zero(dim());
  v(0) = Complex(1, 0);
  return v;
}

void FreeFock::accumulate_creation(int i, const Vector& in, Complex coeff,
                                   Vector& out) const {
  for (int d = 0; d < max_degree_; ++d) {
    const int a = offsets_[d];
    const int len = offsets_[d + 1] - a;
    // Prepending letter i maps the degree-d block to the i-th subblock of
    // degree d+1.
    const int target = offsets_[d + 1] + i * len;
    out.segment(target, len) += coeff * in.segment(a, len);
  }
}

Vector FreeFock::apply_creation(int i, const Vector& in) const {
  Vector out = Vector::Zero(dim());
  accumulate_creation(i, in, Complex(1, 0), out);
  return out;
}

Vector FreeFock::apply_creation_combination(const Vector& eta,
                                            const Vector& in) const {
  Vector out = Vector::Zero(dim());
  for (int i = 0; i < n_; ++i) {
    if (eta(i) != Complex(0, 0)) accumulate_creation(i, in, eta(i), out);
  }
  return out;
}

Vector FreeFock::character_vector(const Vector& lam) const {
  Vector v = Vector::Zero(dim());
  v(0) = Complex(1, 0);
  for (int d = 0; d < max_degree_; ++d) {
    const int a = offsets_[d];
    const int len = offsets_[d + 1] - a;
    for (int i = 0; i < n_; ++i) {
      const int target = offsets_[d + 1] + i * len;
      v.segment(target, len) += std::conj(lam(i)) * v.segment(a, len);
    }
  }
  return v;
}

}  // namespace ucr

#include "ucr/rewriting.hpp"

#include <algorithm>

namespace ucr {

namespace {

struct MixedKey {
  MixedWord word;

  friend bool operator<(const MixedKey& a, const MixedKey& b) {
    const std::size_t na = a.word.size(), nb = b.word.size();
    if (na != nb) return na < nb;
    for (std::size_t t = 0; t < na; ++t) {
      if (a.word[t].from_f != b.word[t].from_f) return b.word[t].from_f;
      if (a.word[t].index != b.word[t].index)
        return a.word[t].index < b.word[t].index;
    }
    return false;
  }
};

// Position of the first f-letter standing directly left of an e-letter, or -1
// if the word is already in normal form.
int first_inversion(const MixedWord& w) {
  for (std::size_t t = 0; t + 1 < w.size(); ++t) {
    if (w[t].from_f && !w[t + 1].from_f) return static_cast<int>(t);
  }
  return -1;
}

FockWord split_normal(const MixedWord& w) {
  FockWord out;
  for (const Letter& g : w) {
    (g.from_f ? out.f : out.e).push_back(g.index);
  }
  return out;
}

}  // namespace

MixedWord to_mixed(const FockWord& w) {
  MixedWord out;
  out.reserve(w.e.size() + w.f.size());
  for (int i : w.e) out.push_back({false, i});
  for (int j : w.f) out.push_back({true, j});
  return out;
}

WordExpansion normal_order(const RelationMatrix& rel, const MixedWord& word) {
  std::map<MixedKey, Complex> pending;
  pending[{word}] = Complex(1, 0);
  WordExpansion done;

  while (!pending.empty()) {
    std::map<MixedKey, Complex> next;
    for (const auto& [key, coeff] : pending) {
      const int t = first_inversion(key.word);
      if (t < 0) {
        done[split_normal(key.word)] += coeff;
        continue;
      }
      const int l = key.word[t].index;
      const int k = key.word[t + 1].index;
      for (const auto& [pair, c] : swap_coefficients(rel, l, k)) {
        MixedWord w2 = key.word;
        w2[t] = {false, pair.first};
        w2[t + 1] = {true, pair.second};
        next[{std::move(w2)}] += coeff * c;
      }
    }
    pending = std::move(next);
  }
  return done;
}

WordExpansion f_first_expansion(const RelationMatrix& rel, const FockWord& w) {
  // Same sorting loop with the opposite target order and the forward
  // relation: e_i (x) f_j = sum u_{(i,j),(k,l)} f_l (x) e_k.
  std::map<MixedKey, Complex> pending;
  pending[{to_mixed(w)}] = Complex(1, 0);
  WordExpansion done;

  auto first_ef = [](const MixedWord& word) {
    for (std::size_t t = 0; t + 1 < word.size(); ++t) {
      if (!word[t].from_f && word[t + 1].from_f) return static_cast<int>(t);
    }
    return -1;
  };

  while (!pending.empty()) {
    std::map<MixedKey, Complex> next;
    for (const auto& [key, coeff] : pending) {
      const int t = first_ef(key.word);
      if (t < 0) {
        done[split_normal(key.word)] += coeff;
        continue;
      }
      const int i = key.word[t].index;
      const int j = key.word[t + 1].index;
      for (int k = 0; k < rel.n(); ++k) {
        for (int l = 0; l < rel.m(); ++l) {
          const Complex c = rel.entry(i, j, k, l);
          if (c == Complex(0, 0)) continue;
          MixedWord w2 = key.word;
          w2[t] = {true, l};
          w2[t + 1] = {false, k};
          next[{std::move(w2)}] += coeff * c;
        }
      }
    }
    pending = std::move(next);
  }
  return done;
}

GeneratorPoly GeneratorPoly::one() { return {{{Complex(1, 0), {}}}}; }

GeneratorPoly GeneratorPoly::e(int i) {
  return {{{Complex(1, 0), {Letter{false, i}}}}};
}

GeneratorPoly GeneratorPoly::f(int j) {
  return {{{Complex(1, 0), {Letter{true, j}}}}};
}

GeneratorPoly GeneratorPoly::operator*(const GeneratorPoly& rhs) const {
  GeneratorPoly out;
  for (const auto& [ca, wa] : terms) {
    for (const auto& [cb, wb] : rhs.terms) {
      MixedWord w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      out.terms.push_back({ca * cb, std::move(w)});
    }
  }
  return out;
}

GeneratorPoly GeneratorPoly::operator+(const GeneratorPoly& rhs) const {
  GeneratorPoly out = *this;
  out.terms.insert(out.terms.end(), rhs.terms.begin(), rhs.terms.end());
  return out;
}

GeneratorPoly GeneratorPoly::operator*(Complex c) const {
  GeneratorPoly out = *this;
  for (auto& t : out.terms) t.first *= c;
  return out;
}

}  // namespace ucr

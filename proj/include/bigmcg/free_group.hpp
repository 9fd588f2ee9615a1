#ifndef BIGMCG_FREE_GROUP_HPP
#define BIGMCG_FREE_GROUP_HPP

// Free-group words and the braid action on the fundamental group of a
// punctured disk.  Generator k of F_n is the loop about puncture k; a word
// is a vector of signed indices (+k / -k), kept freely reduced.

#include <algorithm>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "bigmcg/braid_word.hpp"

namespace bigmcg {

using FWord = std::vector<int>;

inline void fw_push(FWord& w, int letter) {
  if (!w.empty() && w.back() == -letter)
    w.pop_back();
  else
    w.push_back(letter);
}

inline FWord fw_reduce(const FWord& w) {
  FWord r;
  r.reserve(w.size());
  for (int l : w) fw_push(r, l);
  return r;
}

inline FWord fw_inverse(const FWord& w) {
  FWord r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(-*it);
  return r;
}

inline FWord fw_concat(const FWord& a, const FWord& b) {
  FWord r = a;
  for (int l : b) fw_push(r, l);
  return r;
}

inline FWord fw_conjugate(const FWord& g, const FWord& u) {  // g u g^-1
  return fw_concat(fw_concat(g, u), fw_inverse(g));
}

inline FWord fw_cyclic_reduce(FWord w) {
  w = fw_reduce(w);
  while (w.size() >= 2 && w.front() == -w.back()) {
    w.erase(w.begin());
    w.pop_back();
  }
  return w;
}

// The action of one half twist on the free generators:
//   s_p:  x_p -> x_p x_{p+1} x_p^-1,  x_{p+1} -> x_p
//   s_p': x_p -> x_{p+1},             x_{p+1} -> x_{p+1}^-1 x_p x_{p+1}
// The boundary twist acts by conjugation with the boundary word x_1...x_n.
inline FWord artin_letter_image(const BraidLetter& l, int gen, int n) {
  int g = std::abs(gen), s = gen > 0 ? 1 : -1;
  auto lift = [&](std::initializer_list<int> xs) {
    FWord w(xs);
    if (s < 0) w = fw_inverse(w);
    return w;
  };
  if (l.index == 0) {
    FWord d;
    for (int k = 1; k <= n; ++k) d.push_back(k);
    if (l.sign < 0) d = fw_inverse(d);
    return fw_conjugate(d, lift({g}));
  }
  int p = l.index;
  if (l.sign > 0) {
    if (g == p) return lift({p, p + 1, -p});
    if (g == p + 1) return lift({p});
  } else {
    if (g == p) return lift({p + 1});
    if (g == p + 1) return lift({-(p + 1), p, p + 1});
  }
  return lift({g});
}

// Image of the word u under the automorphism of F_n induced by w.
inline FWord artin_apply(const BraidWord& w, const FWord& u, int n) {
  FWord cur = fw_reduce(u);
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    FWord next;
    for (int gen : cur) {
      FWord img = artin_letter_image(*it, gen, n);
      for (int l : img) fw_push(next, l);
    }
    cur = std::move(next);
  }
  return cur;
}

// For a pure word, the image of x_k is g x_k g^-1; return g.
inline FWord strand_conjugator(const BraidWord& w, int k, int n) {
  FWord img = artin_apply(w, FWord{k}, n);
  if (img.size() % 2 == 0) throw std::logic_error("strand_conjugator: even image length");
  std::size_t t = img.size() / 2;
  if (img[t] != k) throw std::logic_error("strand_conjugator: word is not pure at this strand");
  FWord g(img.begin(), img.begin() + static_cast<long>(t));
  return g;
}

// Quotient map F_n -> pi_1 of the sphere minus punctures 1..n-1:
// delete x_n, then eliminate x_{n-1} = (x_1...x_{n-2})^-1.  Empty result
// means the trivial element.
inline FWord sphere_pi1_reduce(const FWord& u, int n) {
  FWord nox;
  for (int l : u)
    if (std::abs(l) != n) fw_push(nox, l);
  FWord out;
  for (int l : nox) {
    if (std::abs(l) == n - 1) {
      if (l > 0)
        for (int k = n - 2; k >= 1; --k) fw_push(out, -k);
      else
        for (int k = 1; k <= n - 2; ++k) fw_push(out, k);
    } else {
      fw_push(out, l);
    }
  }
  return out;
}

// Whether a pure n-strand word represents the identity in the pure mapping
// class group of the n-punctured sphere.  Uses the action on the fundamental
// group of the sphere with puncture n treated as the observing marked point:
// the class is trivial iff that action is trivial.
inline bool sphere_trivial(const BraidWord& w, int n) {
  if (!is_pure(w, n)) throw std::invalid_argument("sphere_trivial: word is not pure");
  if (n <= 3) return true;
  FWord g = strand_conjugator(w, n, n);
  FWord ginv = fw_inverse(g);
  for (int i = 1; i < n; ++i) {
    FWord img = artin_apply(w, FWord{i}, n);
    FWord based = fw_concat(fw_concat(ginv, img), g);
    FWord lhs = sphere_pi1_reduce(based, n);
    FWord rhs = sphere_pi1_reduce(FWord{i}, n);
    if (fw_reduce(fw_concat(lhs, fw_inverse(rhs))) != FWord{}) return false;
  }
  return true;
}

}  // namespace bigmcg

#endif

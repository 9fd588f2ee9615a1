#ifndef BIGMCG_BRAID_WORD_HPP
#define BIGMCG_BRAID_WORD_HPP

// Words in half-twist generators s1, s2, ... plus the boundary twist d.
// Composition is written left-to-right with the leftmost letter acting last,
// so w = u·v means "apply v, then u".

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "bigmcg/detail/scan.hpp"

namespace bigmcg {

struct BraidLetter {
  int index = 0;  // 0 = boundary twist, k >= 1 = half twist of strands k, k+1
  int sign = 1;   // +1 or -1
  friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

struct BraidWord {
  std::vector<BraidLetter> letters;

  static BraidWord identity() { return {}; }
  static BraidWord halftwist(int i, int sign = 1) { return {{BraidLetter{i, sign}}}; }
  static BraidWord boundarytwist(int sign = 1) { return {{BraidLetter{0, sign}}}; }

  bool empty() const { return letters.empty(); }
  std::size_t size() const { return letters.size(); }

  BraidWord inverse() const {
    BraidWord r;
    r.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      r.letters.push_back({it->index, -it->sign});
    return r;
  }

  friend BraidWord operator*(const BraidWord& a, const BraidWord& b) {
    BraidWord r = a;
    r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
    return r;
  }

  BraidWord pow(long long k) const {
    BraidWord base = k >= 0 ? *this : inverse();
    BraidWord r;
    for (long long t = 0; t < (k >= 0 ? k : -k); ++t) r = r * base;
    return r;
  }

  // Cancel adjacent inverse pairs; keeps the group element.
  BraidWord freely_reduced() const {
    BraidWord r;
    for (const BraidLetter& l : letters) {
      if (!r.letters.empty() && r.letters.back().index == l.index &&
          r.letters.back().sign == -l.sign)
        r.letters.pop_back();
      else
        r.letters.push_back(l);
    }
    return r;
  }

  // Largest strand index mentioned (a word touching s_k needs k+1 strands).
  int max_strand() const {
    int m = 1;
    for (const BraidLetter& l : letters) m = std::max(m, l.index + 1);
    return m;
  }

  int boundary_exponent() const {
    int e = 0;
    for (const BraidLetter& l : letters)
      if (l.index == 0) e += l.sign;
    return e;
  }

  int halftwist_exponent_sum() const {
    int e = 0;
    for (const BraidLetter& l : letters)
      if (l.index != 0) e += l.sign;
    return e;
  }

  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

inline BraidWord commutator(const BraidWord& u, const BraidWord& v) {
  return u * v * u.inverse() * v.inverse();
}

// Pure twist generator A(i,j) = s_{j-1}...s_{i+1} s_i^2 s_{i+1}^{-1}...s_{j-1}^{-1}.
inline BraidWord pure_twist(int i, int j) {
  if (i > j) std::swap(i, j);
  if (i == j || i < 1) throw std::invalid_argument("pure_twist: need 1 <= i < j");
  BraidWord w;
  for (int k = j - 1; k > i; --k) w.letters.push_back({k, 1});
  w.letters.push_back({i, 1});
  w.letters.push_back({i, 1});
  for (int k = i + 1; k <= j - 1; ++k) w.letters.push_back({k, -1});
  return w;
}

// Dehn twist about the round curve enclosing strands i..j:
// (s_i s_{i+1} ... s_{j-1})^(j-i+1).
inline BraidWord round_twist(int i, int j) {
  if (i >= j) throw std::invalid_argument("round_twist: need i < j");
  BraidWord pass;
  for (int k = i; k <= j - 1; ++k) pass.letters.push_back({k, 1});
  return pass.pow(j - i + 1);
}

// Permutation induced on strand positions, as the image vector:
// perm[p] = final position of the strand starting at position p (1-based).
inline std::vector<int> strand_permutation(const BraidWord& w, int n) {
  std::vector<int> strand_at(n + 1);
  std::iota(strand_at.begin(), strand_at.end(), 0);
  // Apply letters right to left (rightmost acts first).
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (it->index == 0) continue;
    if (it->index + 1 > n) throw std::invalid_argument("braid letter exceeds frame");
    std::swap(strand_at[it->index], strand_at[it->index + 1]);
  }
  std::vector<int> perm(n + 1);
  for (int p = 1; p <= n; ++p) perm[strand_at[p]] = p;
  return perm;
}

inline bool is_pure(const BraidWord& w, int n) {
  std::vector<int> perm = strand_permutation(w, n);
  for (int p = 1; p <= n; ++p)
    if (perm[p] != p) return false;
  return true;
}

// Abelianization of the pure braid group: entry (i,j) is the exponent sum of
// A(i,j) in any rewriting, i.e. half the signed crossing count of strands i, j.
class LinkingMatrix {
 public:
  explicit LinkingMatrix(int n) : n_(n), m_(static_cast<std::size_t>(n) * n, 0) {}

  int n() const { return n_; }
  long long& at(int i, int j) { return m_[idx(i, j)]; }
  long long at(int i, int j) const { return m_[idx(i, j)]; }

  bool zero() const {
    return std::all_of(m_.begin(), m_.end(), [](long long v) { return v == 0; });
  }
  friend bool operator==(const LinkingMatrix&, const LinkingMatrix&) = default;
  LinkingMatrix& operator+=(const LinkingMatrix& o) {
    for (std::size_t k = 0; k < m_.size(); ++k) m_[k] += o.m_[k];
    return *this;
  }

 private:
  std::size_t idx(int i, int j) const {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(i - 1) * n_ + (j - 1);
  }
  int n_;
  std::vector<long long> m_;
};

inline LinkingMatrix linking_numbers(const BraidWord& w, int n) {
  if (!is_pure(w, n)) throw std::invalid_argument("linking_numbers: word is not pure");
  LinkingMatrix lk(n);
  std::vector<int> strand_at(n + 1);
  std::iota(strand_at.begin(), strand_at.end(), 0);
  std::vector<long long> cross(static_cast<std::size_t>(n + 1) * (n + 1), 0);
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (it->index == 0) continue;
    int a = strand_at[it->index], b = strand_at[it->index + 1];
    cross[static_cast<std::size_t>(std::min(a, b)) * (n + 1) + std::max(a, b)] += it->sign;
    std::swap(strand_at[it->index], strand_at[it->index + 1]);
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      long long c = cross[static_cast<std::size_t>(i) * (n + 1) + j];
      if (c % 2 != 0) throw std::logic_error("odd crossing count in a pure word");
      lk.at(i, j) = c / 2;
    }
  return lk;
}

// Forgetful homomorphism: delete every crossing involving a strand outside
// `keep` and reindex the kept strands in order.  Boundary letters survive.
inline BraidWord delete_strands(const BraidWord& w, int n, const std::vector<bool>& keep) {
  std::vector<int> strand_at(n + 1);
  std::iota(strand_at.begin(), strand_at.end(), 0);
  std::vector<BraidLetter> out_rev;
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (it->index == 0) {
      out_rev.push_back(*it);
      continue;
    }
    int p = it->index;
    if (p + 1 > n) throw std::invalid_argument("braid letter exceeds frame");
    int a = strand_at[p], b = strand_at[p + 1];
    if (keep[a] && keep[b]) {
      int q = 0;  // kept strands at positions 1..p
      for (int t = 1; t <= p; ++t)
        if (keep[strand_at[t]]) ++q;
      out_rev.push_back({q, it->sign});
    }
    std::swap(strand_at[p], strand_at[p + 1]);
  }
  BraidWord out;
  out.letters.assign(out_rev.rbegin(), out_rev.rend());
  return out;
}

// ---------------------------------------------------------------------------
// Text grammar: s<i>, s<i>' (inverse), A(<i>,<j>), d, juxtaposition,
// [u,v] commutator, u^k power, parentheses for grouping.

namespace detail {

// Hand-rolled scan for the braid grammar; generators need digit suffixes that
// the identifier lexer would swallow.
class BraidScanner {
 public:
  explicit BraidScanner(std::string_view t) : t_(t) {}
  void skip_ws() {
    while (p_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[p_]))) ++p_;
  }
  bool done() {
    skip_ws();
    return p_ >= t_.size();
  }
  char peek() {
    skip_ws();
    return p_ < t_.size() ? t_[p_] : '\0';
  }
  char get() {
    skip_ws();
    return t_[p_++];
  }
  void expect(char c) {
    skip_ws();
    if (p_ >= t_.size() || t_[p_] != c) throw ParseError(p_, std::string("expected '") + c + "'");
    ++p_;
  }
  long long integer() {
    skip_ws();
    std::size_t at = p_;
    bool neg = p_ < t_.size() && t_[p_] == '-';
    if (neg) ++p_;
    if (p_ >= t_.size() || !std::isdigit(static_cast<unsigned char>(t_[p_])))
      throw ParseError(at, "expected integer");
    long long v = 0;
    while (p_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[p_])))
      v = v * 10 + (t_[p_++] - '0');
    return neg ? -v : v;
  }
  std::size_t pos() const { return p_; }

 private:
  std::string_view t_;
  std::size_t p_ = 0;
};

inline BraidWord parse_braid_seq(BraidScanner& sc);

inline BraidWord parse_braid_factor(BraidScanner& sc) {
  char c = sc.peek();
  std::size_t at = sc.pos();
  BraidWord w;
  if (c == '(') {
    sc.expect('(');
    w = parse_braid_seq(sc);
    sc.expect(')');
  } else if (c == '[') {
    sc.expect('[');
    BraidWord u = parse_braid_seq(sc);
    sc.expect(',');
    BraidWord v = parse_braid_seq(sc);
    sc.expect(']');
    w = commutator(u, v);
  } else if (c == 's' || c == 'S') {
    sc.get();
    long long i = sc.integer();
    if (i < 1) throw ParseError(at, "generator index must be >= 1");
    w = BraidWord::halftwist(static_cast<int>(i));
  } else if (c == 'A' || c == 'a') {
    sc.get();
    sc.expect('(');
    long long i = sc.integer();
    sc.expect(',');
    long long j = sc.integer();
    sc.expect(')');
    w = pure_twist(static_cast<int>(i), static_cast<int>(j));
  } else if (c == 'd' || c == 'D') {
    sc.get();
    w = BraidWord::boundarytwist();
  } else {
    throw ParseError(at, "expected generator, '(', or '['");
  }
  // Postfix inverses and powers bind tightest.
  for (;;) {
    char p = sc.peek();
    if (p == '\'') {
      sc.get();
      w = w.inverse();
    } else if (p == '^') {
      sc.get();
      w = w.pow(sc.integer());
    } else {
      break;
    }
  }
  return w;
}

inline BraidWord parse_braid_seq(BraidScanner& sc) {
  BraidWord w;
  for (;;) {
    char c = sc.peek();
    if (c == '\0' || c == ')' || c == ']' || c == ',') break;
    w = w * parse_braid_factor(sc);
  }
  return w;
}

}  // namespace detail

inline BraidWord parse_braid(std::string_view text) {
  detail::BraidScanner sc(text);
  BraidWord w = detail::parse_braid_seq(sc);
  if (!sc.done()) throw ParseError(sc.pos(), "trailing input");
  return w;
}

inline std::string to_string(const BraidWord& w) {
  if (w.letters.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += " ";
    const BraidLetter& l = w.letters[i];
    out += l.index == 0 ? "d" : "s" + std::to_string(l.index);
    if (l.sign < 0) out += "'";
  }
  return out;
}

}  // namespace bigmcg

#endif

#ifndef BIGMCG_LAMINATION_HPP
#define BIGMCG_LAMINATION_HPP

// Integral laminations on the n-punctured disk in normal coordinates.
//
// Model: the punctures P_1..P_n sit on a horizontal axis; the disk boundary
// is collapsed to a hub vertex H, giving the (n+1)-punctured sphere with its
// standard triangulation:
//   A_k : axis segment P_k--P_{k+1}             (k = 1..n-1)
//   D_k : arc P_k--H below the axis             (k = 1..n)
//   U_k : arc P_k--H above the axis             (k = 2..n-1; the extreme
//         punctures have a single vertical arc, kept as D)
// A multicurve is stored as its minimal crossing numbers with these arcs.
// The half-twist action is computed by pulling the arcs back through the
// inverse twist and counting crossings face by face.

#include <array>
#include <cassert>
#include <cstdint>
#include <limits>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "bigmcg/braid_word.hpp"

namespace bigmcg {

namespace lam {

constexpr int kHub = 0;  // vertex id of the hub; punctures are 1..n

struct Face {
  std::array<int, 3> edge;
  std::array<int, 3> vert;  // vert[t] sits opposite edge[t]
};

// The standard triangulation for a given puncture count (n >= 3).
class Triangulation {
 public:
  explicit Triangulation(int n) : n_(n) {
    if (n < 3) throw std::invalid_argument("triangulation needs n >= 3");
    // below faces: (D_k, A_k, D_{k+1}), vertices (H, P_k, P_{k+1})
    for (int k = 1; k <= n - 1; ++k)
      faces_.push_back(Face{{A(k), D(k + 1), D(k)}, {kHub, k, k + 1}});
    // above faces: (LU(k), A_k, RU(k+1)) with the extreme arcs folding to D
    for (int k = 1; k <= n - 1; ++k)
      faces_.push_back(Face{{A(k), up_or_down(k + 1), up_or_down(k)}, {kHub, k, k + 1}});
    edge_faces_.assign(edge_count(), {-1, -1});
    for (int f = 0; f < static_cast<int>(faces_.size()); ++f)
      for (int e : faces_[f].edge) {
        if (edge_faces_[e].first < 0)
          edge_faces_[e].first = f;
        else
          edge_faces_[e].second = f;
      }
  }

  int n() const { return n_; }
  int edge_count() const { return 3 * n_ - 3; }

  int A(int k) const {
    assert(k >= 1 && k <= n_ - 1);
    return k - 1;
  }
  int D(int k) const {
    assert(k >= 1 && k <= n_);
    return (n_ - 1) + (k - 1);
  }
  bool has_U(int k) const { return k >= 2 && k <= n_ - 1; }
  int U(int k) const {
    assert(has_U(k));
    return (2 * n_ - 1) + (k - 2);
  }
  // The arc from P_k up to the hub, folding onto D at the extremes.
  int up_or_down(int k) const { return has_U(k) ? U(k) : D(k); }

  std::pair<int, int> ends(int e) const {  // (reference endpoint, other)
    if (e <= n_ - 2) return {e + 1, e + 2};              // A_{e+1}: (P_k, P_{k+1})
    if (e <= 2 * n_ - 2) return {kHub, e - (n_ - 1) + 1};  // D_k: (H, P_k)
    return {kHub, e - (2 * n_ - 1) + 2};                  // U_k: (H, P_k)
  }

  int face_below_A(int k) const { return k - 1; }
  int face_above_A(int k) const { return (n_ - 1) + (k - 1); }
  const Face& face(int f) const { return faces_[f]; }
  std::pair<int, int> faces_of(int e) const { return edge_faces_[e]; }
  int other_face(int e, int f) const {
    auto [a, b] = edge_faces_[e];
    return f == a ? b : a;
  }

 private:
  int n_;
  std::vector<Face> faces_;
  std::vector<std::pair<int, int>> edge_faces_;
};

inline const Triangulation& triangulation(int n) {
  static thread_local std::vector<std::unique_ptr<Triangulation>> cache;
  if (static_cast<int>(cache.size()) <= n) cache.resize(n + 1);
  if (!cache[n]) cache[n] = std::make_unique<Triangulation>(n);
  return *cache[n];
}

}  // namespace lam

// Normal coordinates of a multicurve; the empty vector of weights denotes the
// empty multicurve.  Validity is the usual normal-curve condition: in every
// triangle the three weights have even sum and satisfy the triangle
// inequalities.
class Lamination {
 public:
  Lamination() = default;
  Lamination(int n, std::vector<long long> w) : n_(n), w_(std::move(w)) {
    if (n_ >= 3 && static_cast<int>(w_.size()) != lam::triangulation(n_).edge_count())
      throw std::invalid_argument("weight vector has wrong length");
  }
  static Lamination empty(int n) {
    return Lamination(n, std::vector<long long>(n >= 3 ? 3 * n - 3 : 0, 0));
  }

  int punctures() const { return n_; }
  const std::vector<long long>& weights() const { return w_; }
  long long weight(int e) const { return w_[e]; }
  long long& weight(int e) { return w_[e]; }
  bool is_empty() const {
    for (long long v : w_)
      if (v) return false;
    return true;
  }

  bool valid() const {
    if (n_ < 3) return w_.empty();
    const auto& T = lam::triangulation(n_);
    for (long long v : w_)
      if (v < 0) return false;
    for (int f = 0; f < 2 * (n_ - 1); ++f) {
      const auto& F = T.face(f);
      long long a = w_[F.edge[0]], b = w_[F.edge[1]], c = w_[F.edge[2]];
      if ((a + b + c) % 2 != 0) return false;
      if (a > b + c || b > a + c || c > a + b) return false;
    }
    return true;
  }

  friend bool operator==(const Lamination&, const Lamination&) = default;

 private:
  int n_ = 0;
  std::vector<long long> w_;
};

namespace lam {

// Number of corner arcs of L cutting the corner of face f at vertex v.
inline long long corner(const Triangulation& T, const Lamination& L, int f, int v) {
  const Face& F = T.face(f);
  for (int t = 0; t < 3; ++t)
    if (F.vert[t] == v) {
      long long opp = L.weight(F.edge[t]);
      long long sum = 0;
      for (int s = 0; s < 3; ++s)
        if (s != t) sum += L.weight(F.edge[s]);
      return (sum - opp) / 2;
    }
  throw std::logic_error("vertex not on face");
}

// An embedded arc between vertices, recorded by its chain of crossed edges.
struct ArcPath {
  int start_vertex = 0;
  int start_face = 0;
  std::vector<int> edges;
  int end_vertex = 0;
  int end_face = 0;
};

namespace detail {

// Position of a crossing along edge e, counted from T.ends(e).first.
// Segment costs inside one face:

inline long long cost_vertex_to_edge(const Triangulation& T, const Lamination& L, int f, int v,
                                     int y, long long pos) {
  auto [p, q] = T.ends(y);
  long long b = pos;                       // distance from p
  if (v == p) return b;
  if (v == q) return L.weight(y) - b;
  long long cp = corner(T, L, f, p);       // corner of y at its p end
  long long cv = corner(T, L, f, v);
  long long d = b - cp;
  return cv + (d < 0 ? -d : d);
}

inline int shared_vertex(const Triangulation& T, int x, int y) {
  auto [a, b] = T.ends(x);
  auto [c, d] = T.ends(y);
  if (a == c || a == d) return a;
  if (b == c || b == d) return b;
  throw std::logic_error("edges do not share a vertex");
}

inline long long cost_edge_to_edge(const Triangulation& T, const Lamination& L, int f, int x,
                                   long long px, int y, long long py) {
  int v = shared_vertex(T, x, y);
  long long a = T.ends(x).first == v ? px : L.weight(x) - px;
  long long b = T.ends(y).first == v ? py : L.weight(y) - py;
  long long cv = corner(T, L, f, v);
  long long ma = a < cv ? a : cv, mb = b < cv ? b : cv;
  long long diff = ma - mb;
  if (diff < 0) diff = -diff;
  long long ea = a - cv > 0 ? a - cv : 0;
  long long eb = b - cv > 0 ? b - cv : 0;
  return diff + ea + eb;
}

inline long long cost_vertex_to_vertex(const Triangulation& T, const Lamination& L, int f, int v1,
                                       int v2) {
  if (v1 == v2) return 0;
  return corner(T, L, f, v1) + corner(T, L, f, v2);
}

}  // namespace detail

// Minimal number of crossings between L and the arc; exact.  The free
// variables are the crossing positions along the crossed edges; each cost
// term is piecewise linear, so the minimum is attained on a small candidate
// grid assembled from the corner breakpoints.
inline long long arc_crossings(const Lamination& L, const ArcPath& path) {
  const Triangulation& T = triangulation(L.punctures());
  std::size_t t = path.edges.size();
  if (t == 0)
    return detail::cost_vertex_to_vertex(T, L, path.start_face, path.start_vertex,
                                         path.end_vertex);
  // face sequence
  std::vector<int> faces{path.start_face};
  for (std::size_t s = 0; s < t; ++s) faces.push_back(T.other_face(path.edges[s], faces.back()));
  if (faces.back() != path.end_face) throw std::logic_error("arc path face chain mismatch");

  auto candidates = [&](std::size_t s) {
    int e = path.edges[s];
    long long w = L.weight(e);
    std::set<long long> cs{0, w};
    auto add = [&](long long v) {
      for (long long d = -1; d <= 1; ++d)
        if (v + d >= 0 && v + d <= w) cs.insert(v + d);
    };
    auto [p, q] = T.ends(e);
    for (int side = 0; side < 2; ++side) {
      int f = side == 0 ? faces[s] : faces[s + 1];
      add(corner(T, L, f, p));
      add(w - corner(T, L, f, q));
      // corner at p in local coordinates is measured from p; the q corner
      // group starts at w - corner(q)
    }
    return std::vector<long long>(cs.begin(), cs.end());
  };

  auto total = [&](const std::vector<long long>& pos) {
    long long c = detail::cost_vertex_to_edge(T, L, faces[0], path.start_vertex, path.edges[0],
                                              pos[0]);
    for (std::size_t s = 0; s + 1 < t; ++s)
      c += detail::cost_edge_to_edge(T, L, faces[s + 1], path.edges[s], pos[s], path.edges[s + 1],
                                     pos[s + 1]);
    c += detail::cost_vertex_to_edge(T, L, faces[t], path.end_vertex, path.edges[t - 1],
                                     pos[t - 1]);
    return c;
  };

  std::vector<std::vector<long long>> cand;
  for (std::size_t s = 0; s < t; ++s) cand.push_back(candidates(s));
  // For edge-to-edge terms the optimum may sit on the diagonal of a |a-b|
  // kink; seed each variable with its neighbours' candidate values too.
  if (t == 2) {
    for (long long v : cand[0])
      for (long long d = -1; d <= 1; ++d)
        if (v + d >= 0 && v + d <= L.weight(path.edges[1])) cand[1].push_back(v + d);
    std::set<long long> dedup(cand[1].begin(), cand[1].end());
    cand[1].assign(dedup.begin(), dedup.end());
  }

  long long best = std::numeric_limits<long long>::max();
  std::vector<long long> pos(t, 0);
  std::vector<std::size_t> idx(t, 0);
  for (;;) {
    for (std::size_t s = 0; s < t; ++s) pos[s] = cand[s][idx[s]];
    long long c = total(pos);
    if (c < best) best = c;
    std::size_t s = 0;
    while (s < t && ++idx[s] == cand[s].size()) idx[s++] = 0;
    if (s == t) break;
  }
  return best;
}

}  // namespace lam

// The multicurve boundary of a neighbourhood of the axis through punctures
// i..j (1 <= i <= j <= n).  i == j gives the peripheral circle about P_i.
inline Lamination round_lamination(int n, int i, int j) {
  if (n < 3) throw std::invalid_argument("round_lamination needs n >= 3");
  if (i < 1 || j > n || i > j) throw std::invalid_argument("round_lamination: bad range");
  const auto& T = lam::triangulation(n);
  Lamination L = Lamination::empty(n);
  if (i > 1) L.weight(T.A(i - 1)) = 1;
  if (j < n) L.weight(T.A(j)) = 1;
  for (int k = i; k <= j; ++k) {
    L.weight(T.D(k)) = 1;
    if (T.has_U(k)) L.weight(T.U(k)) = 1;
  }
  assert(L.valid());
  return L;
}

// Reflect left-to-right: P_k <-> P_{n+1-k}.
inline Lamination mirror(const Lamination& L) {
  int n = L.punctures();
  const auto& T = lam::triangulation(n);
  Lamination out = Lamination::empty(n);
  for (int k = 1; k <= n - 1; ++k) out.weight(T.A(k)) = L.weight(T.A(n - k));
  for (int k = 1; k <= n; ++k) out.weight(T.D(k)) = L.weight(T.D(n + 1 - k));
  for (int k = 2; k <= n - 1; ++k) out.weight(T.U(k)) = L.weight(T.U(n + 1 - k));
  return out;
}

// Image of L under the positive (counterclockwise) half twist of P_i, P_{i+1}.
// New weights are the crossings of L with the pulled-back arcs.
inline Lamination halftwist_act(const Lamination& L, int i) {
  int n = L.punctures();
  if (i < 1 || i + 1 > n) throw std::invalid_argument("halftwist_act: bad index");
  const auto& T = lam::triangulation(n);
  const int H = lam::kHub;
  auto FA = [&](int k) { return T.face_above_A(k); };
  auto FB = [&](int k) { return T.face_below_A(k); };
  auto ev = [&](int sv, int sf, std::vector<int> es, int tv, int tf) {
    lam::ArcPath p{sv, sf, std::move(es), tv, tf};
    return lam::arc_crossings(L, p);
  };

  Lamination out = L;
  if (i >= 2 && i <= n - 2) {
    out.weight(T.A(i - 1)) = ev(i - 1, FA(i - 1), {T.U(i), T.U(i + 1)}, i + 1, FA(i + 1));
    out.weight(T.A(i + 1)) = ev(i + 2, FB(i + 1), {T.D(i + 1), T.D(i)}, i, FB(i - 1));
    out.weight(T.U(i)) = ev(H, FA(i), {T.U(i + 1), T.A(i + 1)}, i + 1, FB(i + 1));
    out.weight(T.U(i + 1)) = ev(H, FA(i + 1), {T.A(i + 1), T.D(i + 1)}, i, FB(i));
    out.weight(T.D(i)) = ev(H, FB(i - 1), {T.A(i - 1), T.U(i)}, i + 1, FA(i));
    out.weight(T.D(i + 1)) = ev(H, FB(i), {T.D(i), T.A(i - 1)}, i, FA(i - 1));
  } else if (i == 1) {
    if (n >= 3) {
      out.weight(T.A(2)) = ev(3, FB(2), {T.D(2), T.D(1)}, 1, FA(1));
      out.weight(T.U(2)) = ev(H, FA(2), {T.A(2), T.D(2)}, 1, FB(1));
    }
    out.weight(T.D(1)) = ev(H, FA(1), {}, 2, FA(1));
    out.weight(T.D(2)) = ev(H, FB(1), {T.D(1)}, 1, FA(1));
  } else {  // i == n-1
    out.weight(T.A(n - 2)) = ev(n - 2, FA(n - 2), {T.U(n - 1)}, n, FA(n - 1));
    out.weight(T.U(n - 1)) = ev(H, FA(n - 1), {}, n, FA(n - 1));
    out.weight(T.D(n - 1)) = ev(H, FB(n - 2), {T.A(n - 2), T.U(n - 1)}, n, FA(n - 1));
    out.weight(T.D(n)) = ev(H, FB(n - 1), {T.D(n - 1), T.A(n - 2)}, n - 1, FA(n - 2));
  }
  assert(out.valid());
  return out;
}

// Left action: letters apply right to left; the boundary twist is invisible
// to closed curves.
inline Lamination act(const BraidWord& w, Lamination L) {
  int n = L.punctures();
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    if (it->index == 0) continue;
    if (it->index + 1 > n) throw std::invalid_argument("act: letter exceeds frame");
    if (n < 3) continue;  // no essential curves to move
    if (it->sign > 0)
      L = halftwist_act(L, it->index);
    else
      L = mirror(halftwist_act(mirror(L), n - it->index));
  }
  return L;
}

// Crossings with the wall separating punctures 1..k from k+1..n; equals the
// geometric intersection number with the round curve about 1..k.
inline long long wall_crossings(const Lamination& L, int k) {
  int n = L.punctures();
  if (k < 1 || k > n - 1) throw std::invalid_argument("wall_crossings: bad gap");
  const auto& T = lam::triangulation(n);
  lam::ArcPath p{lam::kHub, T.face_above_A(k), {T.A(k)}, lam::kHub, T.face_below_A(k)};
  return lam::arc_crossings(L, p);
}

// Exposed coordinate pairs, one per interior puncture: the (halved) up/down
// imbalance and the (halved) wall drop across the puncture.
inline std::vector<long long> dynnikov_coords(const Lamination& L) {
  int n = L.punctures();
  if (n < 3) return {};
  const auto& T = lam::triangulation(n);
  std::vector<long long> out;
  out.reserve(2 * (n - 2));
  for (int k = 2; k <= n - 1; ++k) {
    long long diff = L.weight(T.D(k)) - L.weight(T.U(k));
    long long drop = wall_crossings(L, k - 1) - wall_crossings(L, k);
    if (diff % 2 != 0 || drop % 2 != 0) throw std::logic_error("odd coordinate parity");
    out.push_back(diff / 2);
    out.push_back(drop / 2);
  }
  return out;
}

// Rebuild a lamination from coordinate pairs.  Returns nullopt when the data
// is not realizable by a peripheral-free multicurve.  Slab k sits between
// walls k-1 and k and owns puncture P_k; wall counts follow the drop
// coordinates with the least even base, wraps absorb wall differences, and
// transits switch sides west of the puncture as the imbalances demand.
inline std::optional<Lamination> lamination_from_coords(int n, const std::vector<long long>& c) {
  if (n < 3 || static_cast<int>(c.size()) != 2 * (n - 2)) return std::nullopt;
  const auto& T = lam::triangulation(n);
  std::vector<long long> a(n + 1, 0), b(n, 0);  // a[k]: imbalance at P_k; b[k]: drop at gap k
  for (int k = 2; k <= n - 1; ++k) {
    a[k] = c[2 * (k - 2)];
    b[k - 1] = c[2 * (k - 2) + 1];
  }
  std::vector<long long> pre(n, 0);
  for (int k = 2; k <= n - 1; ++k) pre[k] = pre[k - 1] + b[k - 1];
  long long base = 0;
  for (int k = 1; k <= n - 1; ++k) base = std::max(base, 2 * pre[k]);
  for (int k = 2; k <= n - 1; ++k)
    base = std::max(base, 2 * std::max(pre[k - 1], pre[k]) + 2 * (a[k] < 0 ? -a[k] : a[k]));
  std::vector<long long> W(n + 1, 0);
  for (int k = 1; k <= n - 1; ++k) W[k] = base - 2 * pre[k];

  Lamination L = Lamination::empty(n);
  long long wall_above = 0;  // above-axis crossings on the wall west of the current slab
  for (int k = 1; k <= n; ++k) {
    long long left = W[k - 1], right = W[k];
    long long wl = left > right ? (left - right) / 2 : 0;  // wraps on the left wall
    long long wr = right > left ? (right - left) / 2 : 0;  // wraps on the right wall
    long long t = std::min(left, right);                   // through strands
    long long in_above = wall_above - wl;                  // wraps pair one above, one below
    if (in_above < 0 || in_above > t) return std::nullopt;
    long long x = 0;  // net side switches, positive = above-to-below, routed west
    if (k >= 2 && k <= n - 1) {
      long long delta = 2 * a[k] - (t - 2 * in_above);
      if (delta % 2 != 0) return std::nullopt;
      x = delta / 2;
      if (x > 0 && x > in_above) return std::nullopt;
      if (x < 0 && -x > t - in_above) return std::nullopt;
    } else if (t != 0) {
      return std::nullopt;  // extreme slabs carry wraps only
    }
    long long above_stay = in_above - (x > 0 ? x : 0);
    long long below_stay = (t - in_above) - (x < 0 ? -x : 0);
    // Crossing counts: wraps meet both vertical arcs once; a west-routed
    // switch crosses A_{k-1} plus the vertical arc on its destination side.
    long long uu = above_stay + wl + wr + (x < 0 ? -x : 0);
    long long dd = below_stay + wl + wr + (x > 0 ? x : 0);
    if (T.has_U(k)) L.weight(T.U(k)) += uu;
    L.weight(T.D(k)) += dd;
    if (x != 0) L.weight(T.A(k - 1)) += (x < 0 ? -x : x);
    if (wl > 0 && k <= n - 1) L.weight(T.A(k)) += wl;  // east-facing caps
    if (wr > 0 && k >= 2) L.weight(T.A(k - 1)) += wr;  // west-facing caps
    wall_above = (in_above - x) + wr;
  }
  if (!L.valid()) return std::nullopt;
  return L;
}

}  // namespace bigmcg

#endif

#ifndef BIGMCG_ENDSPACE_HPP
#define BIGMCG_ENDSPACE_HPP

// Algebra of end spaces: finite expressions denoting closed subsets of the
// Cantor set, with Cantor-Bendixson machinery and a homeomorphism decision
// on the scattered class.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bigmcg/detail/scan.hpp"

namespace bigmcg {

enum class EndKind : std::uint8_t { Empty, Pt, Cantor, Sum, Omega };

// Expression tree over Empty | Pt | Cantor | Sum(...) | OmegaLim(.).
// Sum denotes a clopen disjoint union; OmegaLim(E) the one-point
// compactification of countably many disjoint copies of E.
struct EndSpaceExpr {
  EndKind kind = EndKind::Empty;
  std::vector<EndSpaceExpr> children;  // Sum: >= 1 child; Omega: exactly 1

  static EndSpaceExpr empty() { return {EndKind::Empty, {}}; }
  static EndSpaceExpr pt() { return {EndKind::Pt, {}}; }
  static EndSpaceExpr cantor() { return {EndKind::Cantor, {}}; }
  static EndSpaceExpr sum(std::vector<EndSpaceExpr> cs) { return {EndKind::Sum, std::move(cs)}; }
  static EndSpaceExpr omega(EndSpaceExpr body) {
    return {EndKind::Omega, std::vector<EndSpaceExpr>{std::move(body)}};
  }

  friend bool operator==(const EndSpaceExpr& a, const EndSpaceExpr& b) {
    return a.kind == b.kind && a.children == b.children;
  }
  friend std::strong_ordering operator<=>(const EndSpaceExpr& a, const EndSpaceExpr& b) {
    if (a.kind != b.kind) return a.kind <=> b.kind;
    return a.children <=> b.children;
  }
};

inline std::string to_string(const EndSpaceExpr& e) {
  switch (e.kind) {
    case EndKind::Empty: return "empty";
    case EndKind::Pt: return "pt";
    case EndKind::Cantor: return "cantor";
    case EndKind::Omega: return "omega(" + to_string(e.children[0]) + ")";
    case EndKind::Sum: {
      std::string s = "sum(";
      for (std::size_t i = 0; i < e.children.size(); ++i) {
        if (i) s += ",";
        s += to_string(e.children[i]);
      }
      return s + ")";
    }
  }
  return {};
}

namespace detail {

inline EndSpaceExpr parse_ends_expr(Scanner& sc) {
  std::size_t at = sc.pos();
  sc.skip_ws();
  at = sc.pos();
  std::string name = sc.ident();
  if (name == "empty") return EndSpaceExpr::empty();
  if (name == "pt") return EndSpaceExpr::pt();
  if (name == "cantor") return EndSpaceExpr::cantor();
  if (name == "omega") {
    sc.expect('(');
    EndSpaceExpr body = parse_ends_expr(sc);
    sc.expect(')');
    return EndSpaceExpr::omega(std::move(body));
  }
  if (name == "sum") {
    sc.expect('(');
    std::vector<EndSpaceExpr> cs;
    cs.push_back(parse_ends_expr(sc));
    while (sc.try_consume(',')) cs.push_back(parse_ends_expr(sc));
    if (cs.size() < 2) throw ParseError(sc.pos(), "sum needs at least two summands");
    sc.expect(')');
    return EndSpaceExpr::sum(std::move(cs));
  }
  throw ParseError(at, "unknown constructor '" + name + "'");
}

}  // namespace detail

// Grammar: expr := "empty" | "pt" | "cantor" | "sum(" expr ("," expr)+ ")" | "omega(" expr ")"
// Case- and whitespace-insensitive.  Returned tree is unnormalized.
inline EndSpaceExpr parse_ends(std::string_view text) {
  detail::Scanner sc(text);
  EndSpaceExpr e = detail::parse_ends_expr(sc);
  sc.expect_end();
  return e;
}

// A space is perfect when it has no isolated points.  Assumes argument is
// already normalized bottom-up (Omega(Empty) does not occur).
inline bool is_perfect(const EndSpaceExpr& e) {
  switch (e.kind) {
    case EndKind::Empty: return true;
    case EndKind::Pt: return false;
    case EndKind::Cantor: return true;
    case EndKind::Sum:
      return std::all_of(e.children.begin(), e.children.end(),
                         [](const EndSpaceExpr& c) { return is_perfect(c); });
    case EndKind::Omega:
      // Copies contribute isolated points iff the body does; the added point
      // is isolated iff the body is empty.
      return e.children[0].kind != EndKind::Empty && is_perfect(e.children[0]);
  }
  return false;
}

// Canonical form denoting a homeomorphic space.  Idempotent.
inline EndSpaceExpr normalize(const EndSpaceExpr& e) {
  switch (e.kind) {
    case EndKind::Empty:
    case EndKind::Pt:
    case EndKind::Cantor: return e;
    case EndKind::Omega: {
      EndSpaceExpr body = normalize(e.children[0]);
      if (body.kind == EndKind::Empty) return EndSpaceExpr::pt();
      // A compactified sequence of perfect blocks is a Cantor set (Brouwer).
      if (is_perfect(body)) return EndSpaceExpr::cantor();
      // Finitely many points per block compactify the same way as one.
      if (body.kind == EndKind::Sum &&
          std::all_of(body.children.begin(), body.children.end(),
                      [](const EndSpaceExpr& c) { return c.kind == EndKind::Pt; }))
        body = EndSpaceExpr::pt();
      return EndSpaceExpr::omega(std::move(body));
    }
    case EndKind::Sum: {
      std::vector<EndSpaceExpr> flat;
      for (const EndSpaceExpr& c : e.children) {
        EndSpaceExpr n = normalize(c);
        if (n.kind == EndKind::Empty) continue;
        if (n.kind == EndKind::Sum)
          for (EndSpaceExpr& g : n.children) flat.push_back(std::move(g));
        else
          flat.push_back(std::move(n));
      }
      // A clopen union of Cantor sets is a Cantor set.
      std::size_t cantors = 0;
      std::vector<EndSpaceExpr> kept;
      for (EndSpaceExpr& c : flat) {
        if (c.kind == EndKind::Cantor) {
          if (++cantors > 1) continue;
        }
        kept.push_back(std::move(c));
      }
      if (kept.empty()) return EndSpaceExpr::empty();
      if (kept.size() == 1) return kept[0];
      std::sort(kept.begin(), kept.end());
      return EndSpaceExpr::sum(std::move(kept));
    }
  }
  return e;
}

// The space minus its isolated points, as an expression.
inline EndSpaceExpr cb_derivative(const EndSpaceExpr& e) {
  switch (e.kind) {
    case EndKind::Empty: return EndSpaceExpr::empty();
    case EndKind::Pt: return EndSpaceExpr::empty();
    case EndKind::Cantor: return EndSpaceExpr::cantor();
    case EndKind::Sum: {
      std::vector<EndSpaceExpr> ds;
      for (const EndSpaceExpr& c : e.children) ds.push_back(cb_derivative(c));
      return EndSpaceExpr::sum(std::move(ds));
    }
    case EndKind::Omega: {
      const EndSpaceExpr& body = e.children[0];
      EndSpaceExpr d = normalize(cb_derivative(body));
      // All copies vanish but their limit point survives.
      if (d.kind == EndKind::Empty && body.kind != EndKind::Empty) return EndSpaceExpr::pt();
      return EndSpaceExpr::omega(std::move(d));
    }
  }
  return e;
}

enum class CbKernel : std::uint8_t { Scattered, Perfect };

struct CbDegree {
  int degree = 0;
  CbKernel kernel = CbKernel::Scattered;
  friend bool operator==(const CbDegree&, const CbDegree&) = default;
};

// Iterate normalize∘cb_derivative.  Scattered: least n with the n-th
// derivative empty.  Perfect kernel: least n at which the sequence stops
// changing.  The grammar only generates finite ranks, so this terminates.
inline CbDegree cb_degree(const EndSpaceExpr& e) {
  EndSpaceExpr cur = normalize(e);
  if (cur.kind == EndKind::Empty) return {0, CbKernel::Scattered};
  for (int n = 0;; ++n) {
    EndSpaceExpr next = normalize(cb_derivative(cur));
    if (next.kind == EndKind::Empty) return {n + 1, CbKernel::Scattered};
    if (next == cur) return {n, CbKernel::Perfect};
    cur = std::move(next);
  }
}

struct CardinalityClass {
  enum Kind : std::uint8_t { Finite, CountablyInfinite, Uncountable } kind;
  std::uint64_t count = 0;  // meaningful for Finite only
  friend bool operator==(const CardinalityClass&, const CardinalityClass&) = default;
};

namespace detail {
inline bool contains_kind(const EndSpaceExpr& e, EndKind k) {
  if (e.kind == k) return true;
  for (const EndSpaceExpr& c : e.children)
    if (contains_kind(c, k)) return true;
  return false;
}
inline std::uint64_t count_points(const EndSpaceExpr& e) {
  if (e.kind == EndKind::Pt) return 1;
  std::uint64_t n = 0;
  for (const EndSpaceExpr& c : e.children) n += count_points(c);
  return n;
}
}  // namespace detail

inline CardinalityClass cardinality_class(const EndSpaceExpr& e) {
  EndSpaceExpr n = normalize(e);
  if (detail::contains_kind(n, EndKind::Cantor)) return {CardinalityClass::Uncountable, 0};
  if (detail::contains_kind(n, EndKind::Omega)) return {CardinalityClass::CountablyInfinite, 0};
  return {CardinalityClass::Finite, detail::count_points(n)};
}

enum class Tri : std::uint8_t { Yes, No, Unknown };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::Yes: return "yes";
    case Tri::No: return "no";
    case Tri::Unknown: return "unknown";
  }
  return "";
}

// Complete invariant on the scattered class: (rank, number of points in the
// last nonempty derivative); the normal form here is ω^(d-1)·l + 1.
struct ScatteredInvariant {
  int degree = 0;
  std::uint64_t last_count = 0;
  friend bool operator==(const ScatteredInvariant&, const ScatteredInvariant&) = default;
};

inline std::optional<ScatteredInvariant> scattered_invariant(const EndSpaceExpr& e) {
  EndSpaceExpr cur = normalize(e);
  if (detail::contains_kind(cur, EndKind::Cantor)) return std::nullopt;
  if (cur.kind == EndKind::Empty) return ScatteredInvariant{0, 0};
  for (int n = 0;; ++n) {
    EndSpaceExpr next = normalize(cb_derivative(cur));
    if (next.kind == EndKind::Empty)
      return ScatteredInvariant{n + 1, detail::count_points(cur)};
    cur = std::move(next);
  }
}

// Complete on the scattered class; sound but not complete once a Cantor part
// is present (equal normal forms give Yes, anything else Unknown).
inline Tri homeomorphic(const EndSpaceExpr& e1, const EndSpaceExpr& e2) {
  EndSpaceExpr n1 = normalize(e1), n2 = normalize(e2);
  if (n1 == n2) return Tri::Yes;
  auto s1 = scattered_invariant(n1), s2 = scattered_invariant(n2);
  if (s1 && s2) return *s1 == *s2 ? Tri::Yes : Tri::No;
  return Tri::Unknown;
}

// ---------------------------------------------------------------------------
// Addresses of points: a path through the expression tree.

struct EndStep {
  enum Type : std::uint8_t { SumChild, OmegaCopy, OmegaInf, CantorPoint } type;
  std::uint32_t index = 0;        // SumChild / OmegaCopy
  std::string preperiod, period;  // CantorPoint, binary words

  friend bool operator==(const EndStep&, const EndStep&) = default;
};

struct EndAddress {
  std::vector<EndStep> steps;
  friend bool operator==(const EndAddress&, const EndAddress&) = default;
  friend bool operator<(const EndAddress& a, const EndAddress& b) {
    auto key = [](const EndStep& s) {
      return std::tuple<int, std::uint32_t, std::string, std::string>(
          static_cast<int>(s.type), s.index, s.preperiod, s.period);
    };
    return std::lexicographical_compare(
        a.steps.begin(), a.steps.end(), b.steps.begin(), b.steps.end(),
        [&](const EndStep& x, const EndStep& y) { return key(x) < key(y); });
  }
};

// (preperiod, period) with primitive period and shortest preperiod.
inline void canonicalize_cantor_word(std::string& pre, std::string& per) {
  if (per.empty()) per = "0";
  // Primitive root of the period.
  for (std::size_t d = 1; d <= per.size() / 2; ++d) {
    if (per.size() % d) continue;
    bool rep = true;
    for (std::size_t i = d; i < per.size() && rep; ++i) rep = per[i] == per[i - d];
    if (rep) {
      per.resize(d);
      break;
    }
  }
  while (!pre.empty() && pre.back() == per.back()) {
    pre.pop_back();
    std::rotate(per.begin(), per.begin() + per.size() - 1, per.end());
  }
}

inline EndStep canonicalize(EndStep s) {
  if (s.type == EndStep::CantorPoint) canonicalize_cantor_word(s.preperiod, s.period);
  return s;
}

inline EndAddress canonicalize(EndAddress a) {
  for (EndStep& s : a.steps) s = canonicalize(std::move(s));
  return a;
}

inline std::string to_string(const EndAddress& a) {
  std::string out;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    if (i) out += "/";
    const EndStep& s = a.steps[i];
    switch (s.type) {
      case EndStep::SumChild:
      case EndStep::OmegaCopy: out += std::to_string(s.index); break;
      case EndStep::OmegaInf: out += "inf"; break;
      case EndStep::CantorPoint: out += "b:" + s.preperiod + "(" + s.period + ")"; break;
    }
  }
  return out;
}

// Whether the address is a valid path through `e`, ending at Pt, at the
// compactification point of an OmegaLim, or at a Cantor selection.
inline bool address_valid(const EndAddress& a, const EndSpaceExpr& e) {
  const EndSpaceExpr* cur = &e;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    const EndStep& s = a.steps[i];
    switch (cur->kind) {
      case EndKind::Sum:
        if (s.type != EndStep::SumChild || s.index >= cur->children.size()) return false;
        cur = &cur->children[s.index];
        break;
      case EndKind::Omega:
        if (s.type == EndStep::OmegaInf) return i + 1 == a.steps.size();
        if (s.type != EndStep::OmegaCopy) return false;
        cur = &cur->children[0];
        break;
      case EndKind::Cantor:
        return s.type == EndStep::CantorPoint && i + 1 == a.steps.size();
      default: return false;
    }
  }
  return cur->kind == EndKind::Pt;
}

// Text form: slash-separated, e.g. "0/3", "0/inf", "b:0110(01)".  Steps are
// typed against the expression tree.
inline EndAddress parse_address(std::string_view text, const EndSpaceExpr& e) {
  EndAddress out;
  const EndSpaceExpr* cur = &e;
  std::size_t pos = 0;
  bool done = false;
  while (pos <= text.size()) {
    std::size_t next = text.find('/', pos);
    std::string_view tok = text.substr(pos, next == std::string_view::npos ? next : next - pos);
    if (tok.empty()) throw ParseError(pos, "empty address step");
    if (done) throw ParseError(pos, "address continues past a point");
    EndStep step;
    if (tok == "inf") {
      if (cur->kind != EndKind::Omega) throw ParseError(pos, "'inf' outside omega node");
      step.type = EndStep::OmegaInf;
      done = true;
    } else if (tok.substr(0, 2) == "b:") {
      if (cur->kind != EndKind::Cantor) throw ParseError(pos, "binary step outside cantor node");
      step.type = EndStep::CantorPoint;
      std::string_view w = tok.substr(2);
      std::size_t open = w.find('(');
      if (open == std::string_view::npos || w.back() != ')')
        throw ParseError(pos, "expected b:<pre>(<period>)");
      step.preperiod = std::string(w.substr(0, open));
      step.period = std::string(w.substr(open + 1, w.size() - open - 2));
      for (char c : step.preperiod + step.period)
        if (c != '0' && c != '1') throw ParseError(pos, "binary word expected");
      if (step.period.empty()) throw ParseError(pos, "empty period");
      done = true;
    } else {
      std::uint32_t idx = 0;
      for (char c : tok) {
        if (!std::isdigit(static_cast<unsigned char>(c))) throw ParseError(pos, "bad step");
        idx = idx * 10 + static_cast<std::uint32_t>(c - '0');
      }
      step.index = idx;
      if (cur->kind == EndKind::Sum) {
        if (idx >= cur->children.size()) throw ParseError(pos, "sum child out of range");
        step.type = EndStep::SumChild;
        cur = &cur->children[idx];
      } else if (cur->kind == EndKind::Omega) {
        step.type = EndStep::OmegaCopy;
        cur = &cur->children[0];
      } else {
        throw ParseError(pos, "index step at a leaf");
      }
      if (cur->kind == EndKind::Pt) done = true;
    }
    out.steps.push_back(canonicalize(std::move(step)));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  if (!address_valid(out, e)) throw ParseError(0, "address does not resolve to a point");
  return out;
}

// ---------------------------------------------------------------------------
// Surfaces: the classification quadruple (genus, boundary, Ends_inf, Ends).

struct SurfaceSpec {
  int genus = 0;  // -1 = infinite
  int boundary = 0;
  EndSpaceExpr ends;
  bool ladder = false;  // the two-end marking of the ladder surface

  bool infinite_genus() const { return genus < 0; }
  bool finite_type() const {
    return !infinite_genus() && cardinality_class(ends).kind == CardinalityClass::Finite;
  }
  friend bool operator==(const SurfaceSpec&, const SurfaceSpec&) = default;
};

// Grammar: surface{genus=<nat|"inf">, boundary=<nat>, ends=<expr>[, ladder]}
inline SurfaceSpec parse_surface(std::string_view text) {
  detail::Scanner sc(text);
  if (sc.ident() != "surface") throw ParseError(0, "expected 'surface'");
  sc.expect('{');
  SurfaceSpec spec;
  bool saw_ends = false;
  for (;;) {
    std::size_t at = sc.pos();
    std::string key = sc.ident();
    if (key == "ladder") {
      spec.ladder = true;
    } else if (key == "genus") {
      sc.expect('=');
      if (sc.peek() == 'i' || sc.peek() == 'I') {
        if (sc.ident() != "inf") throw ParseError(at, "expected 'inf' or a number");
        spec.genus = -1;
      } else {
        spec.genus = static_cast<int>(sc.integer());
        if (spec.genus < 0) throw ParseError(at, "genus must be nonnegative or 'inf'");
      }
    } else if (key == "boundary") {
      sc.expect('=');
      spec.boundary = static_cast<int>(sc.integer());
      if (spec.boundary < 0) throw ParseError(at, "boundary count must be nonnegative");
    } else if (key == "ends") {
      sc.expect('=');
      spec.ends = detail::parse_ends_expr(sc);
      saw_ends = true;
    } else {
      throw ParseError(at, "unknown surface field '" + key + "'");
    }
    if (!sc.try_consume(',')) break;
  }
  sc.expect('}');
  sc.expect_end();
  if (!saw_ends) throw ParseError(0, "surface needs ends=<expr>");
  if (spec.ladder && !spec.infinite_genus())
    throw ParseError(0, "ladder marking requires genus=inf");
  return spec;
}

inline std::string to_string(const SurfaceSpec& s) {
  std::string out = "surface{genus=";
  out += s.infinite_genus() ? "inf" : std::to_string(s.genus);
  out += ", boundary=" + std::to_string(s.boundary);
  out += ", ends=" + to_string(s.ends);
  if (s.ladder) out += ", ladder";
  return out + "}";
}

// Decide surface homeomorphism through the classification quadruple.
inline Tri surface_homeomorphic(const SurfaceSpec& a, const SurfaceSpec& b) {
  if (a.genus != b.genus || a.boundary != b.boundary) return Tri::No;
  if (a.ladder != b.ladder) return Tri::No;
  return homeomorphic(a.ends, b.ends);
}

}  // namespace bigmcg

#endif

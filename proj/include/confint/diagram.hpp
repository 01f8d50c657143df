#pragma once

// Labeled diagrams on an oriented interval: interval vertices (placed on the
// interval in order) and free vertices joined by edges. Orientation of a
// labeled diagram is the ordering of its vertex labels together with edge
// directions (always lower label -> higher label); relabeling by a
// permutation multiplies the diagram by the sign of the permutation times
// (-1) per edge whose direction flips.

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "confint/errors.hpp"
#include "confint/linalg.hpp"

namespace confint {

struct Edge {
  int lo = 0;
  int hi = 0;
  auto operator<=>(const Edge&) const = default;
};

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// General diagram. Trivalent diagrams additionally satisfy the valence
/// rules checked by `validate_trivalent`; images of the contraction boundary
/// may carry higher-valence vertices.
struct Diagram {
  std::vector<int> interval;  // labels in interval order
  std::vector<int> free;      // labels of free vertices, ascending
  std::vector<Edge> edges;    // ascending, lo < hi, repeats allowed

  int interval_count() const { return static_cast<int>(interval.size()); }
  int free_count() const { return static_cast<int>(free.size()); }
  int vertex_count() const { return interval_count() + free_count(); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  /// Edges minus free vertices; equals n for a trivalent diagram with 2n vertices.
  int degree() const { return edge_count() - free_count(); }
  bool empty() const { return vertex_count() == 0; }

  bool is_interval_vertex(int label) const {
    return std::find(interval.begin(), interval.end(), label) != interval.end();
  }
  bool is_chord(const Edge& e) const { return is_interval_vertex(e.lo) && is_interval_vertex(e.hi); }
  bool has_chord() const {
    return std::any_of(edges.begin(), edges.end(), [&](const Edge& e) { return is_chord(e); });
  }
  bool is_chord_diagram() const { return free.empty(); }
  bool has_multi_edge() const { return std::adjacent_find(edges.begin(), edges.end()) != edges.end(); }

  auto operator<=>(const Diagram&) const = default;
};

/// A diagram class with the sign relating a labeled input to its canonical
/// representative. sign == 0 means the class vanishes: the diagram has an
/// automorphism reversing its orientation.
struct SignedDiagram {
  int sign = 1;
  Diagram diagram;
};

/// A canonical class as produced by the enumerators.
struct DiagramClass {
  Diagram diagram;
  int automorphisms = 1;
  bool vanishes = false;
};

using DiagramVector = std::map<Diagram, Rational>;

inline void add_term(DiagramVector& v, const Diagram& d, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = v.try_emplace(d, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) v.erase(it);
  }
}

inline void add_term(DiagramVector& v, const SignedDiagram& d, const Rational& c) {
  if (d.sign == 0) return;
  add_term(v, d.diagram, c * d.sign);
}

// ---------------------------------------------------------------------------
// Validation

inline void validate_labels(const Diagram& d) {
  const int v = d.vertex_count();
  std::vector<int> seen(v + 1, 0);
  auto mark = [&](int label) {
    if (label < 1 || label > v) throw PreconditionError("vertex label " + std::to_string(label) + " out of range");
    if (seen[label]++) throw PreconditionError("vertex label " + std::to_string(label) + " repeated");
  };
  for (int l : d.interval) mark(l);
  for (int l : d.free) mark(l);
  for (const Edge& e : d.edges) {
    if (e.lo == e.hi) throw PreconditionError("self-loop at vertex " + std::to_string(e.lo));
    if (e.lo > e.hi) throw PreconditionError("edge not oriented low -> high");
    if (e.lo < 1 || e.hi > v) throw PreconditionError("edge endpoint out of range");
  }
}

inline std::vector<int> valences(const Diagram& d) {
  std::vector<int> val(d.vertex_count() + 1, 0);
  for (const Edge& e : d.edges) {
    ++val[e.lo];
    ++val[e.hi];
  }
  return val;
}

/// Connectivity with the interval acting as a path through its vertices.
inline bool is_connected(const Diagram& d) {
  const int v = d.vertex_count();
  if (v == 0) return true;
  std::vector<int> parent(v + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (std::size_t i = 1; i < d.interval.size(); ++i) unite(d.interval[i - 1], d.interval[i]);
  for (const Edge& e : d.edges) unite(e.lo, e.hi);
  const int root = find(1);
  for (int x = 2; x <= v; ++x)
    if (find(x) != root) return false;
  return true;
}

/// Throws PreconditionError unless d satisfies every trivalent-diagram invariant.
inline void validate_trivalent(const Diagram& d) {
  validate_labels(d);
  if (d.interval.empty()) throw PreconditionError("diagram has no interval vertices");
  const auto val = valences(d);
  for (int l : d.interval)
    if (val[l] != 1) throw PreconditionError("interval vertex " + std::to_string(l) + " must have valence 1");
  for (int l : d.free)
    if (val[l] != 3) throw PreconditionError("free vertex " + std::to_string(l) + " must have valence 3");
  if ((d.interval_count() + 3 * d.free_count()) % 2 != 0) throw PreconditionError("k + 3s must be even");
  if (!is_connected(d)) throw PreconditionError("diagram is not connected");
}

inline bool is_trivalent(const Diagram& d) {
  try {
    validate_trivalent(d);
    return true;
  } catch (const PreconditionError&) {
    return false;
  }
}

// ---------------------------------------------------------------------------
// Relabeling and orientation signs

/// Sign of a permutation given as a 1-based map perm[old] = new (perm[0] unused).
inline int permutation_sign(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size()) - 1;
  std::vector<char> seen(n + 1, 0);
  int sign = 1;
  for (int i = 1; i <= n; ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = perm[j]) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

/// Applies perm (perm[old] = new) to every label. Returns the relabeled
/// diagram together with the orientation sign relating it to the input.
inline SignedDiagram relabel(const Diagram& d, const std::vector<int>& perm) {
  SignedDiagram out;
  int sign = permutation_sign(perm);
  for (int l : d.interval) out.diagram.interval.push_back(perm[l]);
  for (int l : d.free) out.diagram.free.push_back(perm[l]);
  std::sort(out.diagram.free.begin(), out.diagram.free.end());
  for (const Edge& e : d.edges) {
    const int a = perm[e.lo];
    const int b = perm[e.hi];
    if (a > b) sign = -sign;
    out.diagram.edges.push_back(make_edge(a, b));
  }
  std::sort(out.diagram.edges.begin(), out.diagram.edges.end());
  out.sign = sign;
  return out;
}

namespace detail {

struct CanonState {
  std::vector<int> newlabel;  // old -> new, 0 = unassigned
  std::vector<int> queue;     // old labels in processing order
  std::size_t pos = 0;
  int next = 0;
};

struct CanonResult {
  std::vector<Edge> best;
  std::vector<int> best_perm;
  int best_sign = 0;
  int ties = 0;
  bool sign_conflict = false;
  bool have = false;
};

inline void canon_explore(const Diagram& d, const std::vector<std::map<int, int>>& adj, const std::vector<char>& is_free,
                          CanonState st, CanonResult& res) {
  while (st.pos < st.queue.size()) {
    const int v = st.queue[st.pos];
    // Unlabeled free neighbours, grouped by edge multiplicity (descending).
    std::map<int, std::vector<int>, std::greater<int>> groups;
    for (const auto& [nb, mult] : adj[v])
      if (is_free[nb] && st.newlabel[nb] == 0) groups[mult].push_back(nb);
    bool tie = false;
    for (const auto& [m, g] : groups) tie = tie || g.size() > 1;
    if (!tie) {
      for (const auto& [m, g] : groups) {
        st.newlabel[g[0]] = ++st.next;
        st.queue.push_back(g[0]);
      }
      ++st.pos;
      continue;
    }
    // Branch over every ordering inside each tied group.
    std::vector<std::vector<int>> gs;
    for (auto& [m, g] : groups) {
      std::sort(g.begin(), g.end());
      gs.push_back(g);
    }
    std::vector<std::vector<int>> current(gs.size());
    auto recurse = [&](auto&& self, std::size_t gi) -> void {
      if (gi == gs.size()) {
        CanonState next = st;
        for (const auto& g : current)
          for (int nb : g) {
            next.newlabel[nb] = ++next.next;
            next.queue.push_back(nb);
          }
        ++next.pos;
        canon_explore(d, adj, is_free, std::move(next), res);
        return;
      }
      std::vector<int> g = gs[gi];
      do {
        current[gi] = g;
        self(self, gi + 1);
      } while (std::next_permutation(g.begin(), g.end()));
    };
    recurse(recurse, 0);
    return;
  }
  const int nv = d.vertex_count();
  if (st.next != nv) throw PreconditionError("cannot canonicalize a disconnected diagram");
  std::vector<int> perm(nv + 1, 0);
  for (int l = 1; l <= nv; ++l) perm[l] = st.newlabel[l];
  int sign = permutation_sign(perm);
  std::vector<Edge> edges;
  edges.reserve(d.edges.size());
  for (const Edge& e : d.edges) {
    const int a = perm[e.lo];
    const int b = perm[e.hi];
    if (a > b) sign = -sign;
    edges.push_back(make_edge(a, b));
  }
  std::sort(edges.begin(), edges.end());
  if (!res.have || edges < res.best) {
    res.best = std::move(edges);
    res.best_perm = perm;
    res.best_sign = sign;
    res.ties = 1;
    res.sign_conflict = false;
    res.have = true;
  } else if (edges == res.best) {
    ++res.ties;
    if (sign != res.best_sign) res.sign_conflict = true;
  }
}

inline CanonResult canonical_search(const Diagram& d) {
  validate_labels(d);
  const int nv = d.vertex_count();
  std::vector<std::map<int, int>> adj(nv + 1);
  for (const Edge& e : d.edges) {
    ++adj[e.lo][e.hi];
    ++adj[e.hi][e.lo];
  }
  std::vector<char> is_free(nv + 1, 0);
  for (int l : d.free) is_free[l] = 1;
  CanonState st;
  st.newlabel.assign(nv + 1, 0);
  for (int l : d.interval) {
    st.newlabel[l] = ++st.next;
    st.queue.push_back(l);
  }
  CanonResult res;
  if (nv == 0) {
    res.have = true;
    res.best_sign = 1;
    res.ties = 1;
    res.best_perm = {0};
    return res;
  }
  canon_explore(d, adj, is_free, std::move(st), res);
  return res;
}

}  // namespace detail

/// Canonical representative of the class of d: interval vertices relabeled
/// 1..k along the interval, free vertices k+1.. in a breadth-first discovery
/// order from the interval, choosing the lexicographically smallest edge list
/// among all tie-breaks. The returned sign relates d to the representative
/// (d = sign * canonical); sign 0 marks a vanishing class.
inline SignedDiagram canonicalize(const Diagram& d) {
  const auto res = detail::canonical_search(d);
  SignedDiagram out;
  const int k = d.interval_count();
  const int nv = d.vertex_count();
  for (int i = 1; i <= k; ++i) out.diagram.interval.push_back(i);
  for (int i = k + 1; i <= nv; ++i) out.diagram.free.push_back(i);
  out.diagram.edges = res.best;
  out.sign = res.sign_conflict ? 0 : res.best_sign;
  return out;
}

/// Order of the automorphism group fixing the interval pointwise.
inline int automorphism_count(const Diagram& d) { return detail::canonical_search(d).ties; }

inline DiagramClass classify(const Diagram& d) {
  const auto res = detail::canonical_search(d);
  DiagramClass c;
  c.diagram = canonicalize(d).diagram;
  c.automorphisms = res.ties;
  c.vanishes = res.sign_conflict;
  return c;
}

/// Rotates the interval order by r positions (labels untouched): the first r
/// interval vertices move to the end.
inline Diagram rotate_interval(const Diagram& d, int r) {
  Diagram out = d;
  const int k = d.interval_count();
  if (k == 0) return out;
  r = ((r % k) + k) % k;
  std::rotate(out.interval.begin(), out.interval.begin() + r, out.interval.end());
  return out;
}

/// Canonical representative up to the closure relation: the minimum over all
/// cyclic rotations of the interval. Rotation keeps labels, so the closure
/// identification carries sign +1.
inline SignedDiagram closure_canonicalize(const Diagram& d) {
  std::optional<SignedDiagram> best;
  bool conflict = false;
  for (int r = 0; r < std::max(1, d.interval_count()); ++r) {
    SignedDiagram c = canonicalize(rotate_interval(d, r));
    if (!best || c.diagram < best->diagram) {
      best = c;
      conflict = false;
    } else if (c.diagram == best->diagram && c.sign != best->sign) {
      conflict = true;
    }
  }
  if (conflict || best->sign == 0) best->sign = 0;
  return *best;
}

// ---------------------------------------------------------------------------
// Enumeration

struct EnumerationGuards {
  int max_chord_degree = 6;
  int max_trivalent_degree = 4;
};

/// Chord diagrams with n chords on 2n linearly ordered points, in
/// lexicographic order of their edge lists.
inline std::vector<Diagram> enumerate_chord_diagrams(int n, const EnumerationGuards& g = {}) {
  if (n < 1) throw PreconditionError("degree must be positive");
  if (n > g.max_chord_degree) throw GuardExceeded("chord enumeration guard exceeded (n = " + std::to_string(n) + ")");
  std::vector<Diagram> out;
  std::vector<int> partner(2 * n + 1, 0);
  auto rec = [&](auto&& self) -> void {
    int first = 0;
    for (int i = 1; i <= 2 * n; ++i)
      if (!partner[i]) {
        first = i;
        break;
      }
    if (!first) {
      Diagram d;
      for (int i = 1; i <= 2 * n; ++i) d.interval.push_back(i);
      for (int i = 1; i <= 2 * n; ++i)
        if (partner[i] > i) d.edges.push_back({i, partner[i]});
      out.push_back(std::move(d));
      return;
    }
    for (int j = first + 1; j <= 2 * n; ++j) {
      if (partner[j]) continue;
      partner[first] = j;
      partner[j] = first;
      self(self);
      partner[first] = partner[j] = 0;
    }
  };
  rec(rec);
  return out;
}

namespace detail {

// Builds every connected labeled diagram with k interval and s free vertices
// whose free labels follow breadth-first discovery from the interval, so each
// isomorphism class is produced at least once.
inline void generate_bfs(int k, int s, const std::function<void(const Diagram&)>& emit) {
  const int nv = k + s;
  std::vector<int> rem(nv + 1, 0);
  for (int i = 1; i <= k; ++i) rem[i] = 1;
  for (int i = k + 1; i <= nv; ++i) rem[i] = 3;
  std::vector<Edge> edges;
  int discovered = 0;

  // Queue order equals label order: interval 1..k, then free labels in
  // discovery order k+1, k+2, ...
  auto rec = [&](auto&& self, int v, int min_target) -> void {
    if (v > k + discovered) {
      if (discovered == s) {
        bool done = true;
        for (int i = 1; i <= nv; ++i) done = done && rem[i] == 0;
        if (done) {
          Diagram d;
          for (int i = 1; i <= k; ++i) d.interval.push_back(i);
          for (int i = k + 1; i <= nv; ++i) d.free.push_back(i);
          d.edges = edges;
          std::sort(d.edges.begin(), d.edges.end());
          emit(d);
        }
      }
      return;
    }
    if (rem[v] == 0) {
      self(self, v + 1, 0);
      return;
    }
    const int lo = std::max(min_target, v + 1);
    const int limit = std::min(nv, k + discovered + 1);
    for (int t = lo; t <= limit; ++t) {
      const bool fresh = t == k + discovered + 1;
      if (fresh && discovered == s) break;
      if (!fresh && rem[t] == 0) continue;
      if (fresh) ++discovered;
      --rem[v];
      --rem[t];
      edges.push_back({v, t});
      self(self, v, t);
      edges.pop_back();
      ++rem[v];
      ++rem[t];
      if (fresh) --discovered;
    }
  };
  rec(rec, 1, 0);
}

}  // namespace detail

/// All canonical trivalent classes of degree n (every split k + s = 2n with
/// k >= 1), chord diagrams first. Vanishing classes are included and flagged.
inline std::vector<DiagramClass> enumerate_trivalent_diagrams(int n, const EnumerationGuards& g = {}) {
  if (n < 1) throw PreconditionError("degree must be positive");
  if (n > g.max_trivalent_degree)
    throw GuardExceeded("trivalent enumeration guard exceeded (n = " + std::to_string(n) + ")");
  std::vector<DiagramClass> out;
  for (int s = 0; s < 2 * n; ++s) {
    const int k = 2 * n - s;
    if ((k + 3 * s) % 2 != 0) continue;
    std::map<Diagram, DiagramClass> found;
    detail::generate_bfs(k, s, [&](const Diagram& d) {
      DiagramClass c = classify(d);
      found.try_emplace(c.diagram, c);
    });
    for (auto& [d, c] : found) out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Products and primality

/// Interval of d1 continued into the interval of d2. Returns the class under
/// the closure relation, which makes the product commutative and associative
/// on representatives.
inline SignedDiagram connected_sum(const Diagram& d1, const Diagram& d2) {
  const int shift = d1.vertex_count();
  Diagram d = d1;
  for (int l : d2.interval) d.interval.push_back(l + shift);
  for (int l : d2.free) d.free.push_back(l + shift);
  for (const Edge& e : d2.edges) d.edges.push_back({e.lo + shift, e.hi + shift});
  // Keep labels interval-first so positions in d1 and d2 stay put.
  std::vector<int> perm(d.vertex_count() + 1, 0);
  int next = 0;
  for (int l : d.interval) perm[l] = ++next;
  for (int l : d.free) perm[l] = ++next;
  SignedDiagram relabeled = relabel(d, perm);
  if (d.empty()) return relabeled;
  SignedDiagram c = closure_canonicalize(relabeled.diagram);
  c.sign *= relabeled.sign;
  return c;
}

/// Positions p (1 <= p < k) such that cutting the interval after position p
/// leaves no edge path joining the two sides.
inline std::vector<int> split_points(const Diagram& d) {
  const int nv = d.vertex_count();
  const int k = d.interval_count();
  std::vector<int> parent(nv + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const Edge& e : d.edges) parent[find(e.lo)] = find(e.hi);
  std::map<int, std::pair<int, int>> span;  // component root -> [min, max] interval position
  for (int p = 1; p <= k; ++p) {
    const int r = find(d.interval[p - 1]);
    auto [it, inserted] = span.try_emplace(r, p, p);
    if (!inserted) it->second.second = p;
  }
  std::vector<int> cover(k + 2, 0);  // difference array over gaps
  for (const auto& [r, mm] : span) {
    if (mm.first < mm.second) {
      ++cover[mm.first];
      --cover[mm.second];
    }
  }
  std::vector<int> out;
  int running = 0;
  for (int p = 1; p < k; ++p) {
    running += cover[p];
    if (running == 0) out.push_back(p);
  }
  return out;
}

inline bool is_prime(const Diagram& d) { return d.interval_count() > 0 && split_points(d).empty(); }

// ---------------------------------------------------------------------------
// Text format:  n; I=[labels...]; F=[labels...]; E=[(i,j),...]

inline std::string to_text(const Diagram& d) {
  std::ostringstream os;
  auto list = [&](const std::vector<int>& v) {
    os << '[';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
  };
  os << d.degree() << "; I=";
  list(d.interval);
  os << "; F=";
  list(d.free);
  os << "; E=[";
  for (std::size_t i = 0; i < d.edges.size(); ++i)
    os << (i ? "," : "") << '(' << d.edges[i].lo << ',' << d.edges[i].hi << ')';
  os << ']';
  return os.str();
}

/// Parses one diagram line. Edges may be written in either direction; they
/// are stored low -> high, and a reversed edge counts as a sign flip which is
/// returned in the sign field.
inline SignedDiagram parse_diagram(const std::string& line, int line_no = 0) {
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (i >= line.size() || line[i] != c)
      throw ParseError(std::string("expected '") + c + "' at column " + std::to_string(i + 1), line_no);
    ++i;
  };
  auto number = [&] {
    skip_ws();
    std::size_t start = i;
    if (i < line.size() && line[i] == '-') ++i;
    while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
    if (start == i) throw ParseError("expected integer at column " + std::to_string(i + 1), line_no);
    return std::stoi(line.substr(start, i - start));
  };
  auto keyword = [&](const char* kw) {
    skip_ws();
    for (const char* p = kw; *p; ++p) {
      if (i >= line.size() || line[i] != *p) throw ParseError(std::string("expected '") + kw + "'", line_no);
      ++i;
    }
  };
  auto int_list = [&] {
    std::vector<int> v;
    expect('[');
    skip_ws();
    if (i < line.size() && line[i] == ']') {
      ++i;
      return v;
    }
    while (true) {
      v.push_back(number());
      skip_ws();
      if (i < line.size() && line[i] == ',') {
        ++i;
        continue;
      }
      expect(']');
      return v;
    }
  };

  const int degree = number();
  expect(';');
  keyword("I=");
  SignedDiagram out;
  out.diagram.interval = int_list();
  expect(';');
  keyword("F=");
  out.diagram.free = int_list();
  std::sort(out.diagram.free.begin(), out.diagram.free.end());
  expect(';');
  keyword("E=");
  expect('[');
  skip_ws();
  if (i < line.size() && line[i] == ']') {
    ++i;
  } else {
    while (true) {
      expect('(');
      const int a = number();
      expect(',');
      const int b = number();
      expect(')');
      if (a == b) throw ParseError("self-loop edge", line_no);
      if (a > b) out.sign = -out.sign;
      out.diagram.edges.push_back(make_edge(a, b));
      skip_ws();
      if (i < line.size() && line[i] == ',') {
        ++i;
        continue;
      }
      expect(']');
      break;
    }
  }
  skip_ws();
  if (i != line.size()) throw ParseError("trailing characters", line_no);
  std::sort(out.diagram.edges.begin(), out.diagram.edges.end());
  try {
    validate_labels(out.diagram);
  } catch (const PreconditionError& e) {
    throw ParseError(e.what(), line_no);
  }
  if (out.diagram.degree() != degree)
    throw ParseError("declared degree " + std::to_string(degree) + " does not match edges - free vertices (" +
                         std::to_string(out.diagram.degree()) + ")",
                     line_no);
  return out;
}

inline std::vector<SignedDiagram> parse_diagrams(std::istream& in) {
  std::vector<SignedDiagram> out;
  std::string line;
  int no = 0;
  while (std::getline(in, line)) {
    ++no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    if (line.back() == '\r') line.pop_back();
    out.push_back(parse_diagram(line, no));
  }
  return out;
}

// Named diagrams used throughout.

inline Diagram single_chord() { return Diagram{{1, 2}, {}, {{1, 2}}}; }
inline Diagram side_by_side_chords() { return Diagram{{1, 2, 3, 4}, {}, {{1, 2}, {3, 4}}}; }
inline Diagram crossed_chords() { return Diagram{{1, 2, 3, 4}, {}, {{1, 3}, {2, 4}}}; }
inline Diagram nested_chords() { return Diagram{{1, 2, 3, 4}, {}, {{1, 4}, {2, 3}}}; }
/// Three interval vertices joined to one free vertex.
inline Diagram tripod() { return Diagram{{1, 2, 3}, {4}, {{1, 4}, {2, 4}, {3, 4}}}; }

}  // namespace confint

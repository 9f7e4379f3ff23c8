#pragma once

#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "ecgw/finset.hpp"

namespace ecgw {

// Finite monoid as a multiplication table; mul[a][b] = a*b.
struct Monoid {
  std::size_t unit = 0;
  std::vector<std::vector<std::size_t>> mul;

  std::size_t size() const { return mul.size(); }

  void validate() const {
    std::size_t n = mul.size();
    if (n == 0) throw Error(ErrorKind::ValidationError, "monoid: empty table");
    if (unit >= n) throw Error(ErrorKind::ValidationError, "monoid: identity index out of range");
    for (std::size_t a = 0; a < n; ++a) {
      if (mul[a].size() != n) throw Error(ErrorKind::ValidationError, "monoid: ragged table", static_cast<int>(a));
      for (auto v : mul[a])
        if (v >= n) throw Error(ErrorKind::ValidationError, "monoid: entry out of range", static_cast<int>(a));
      if (mul[unit][a] != a || mul[a][unit] != a)
        throw Error(ErrorKind::ValidationError, "monoid: identity law fails", static_cast<int>(a));
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (mul[mul[a][b]][c] != mul[a][mul[b][c]])
            throw Error(ErrorKind::ValidationError, "monoid: not associative", static_cast<int>(a));
  }

  static Monoid trivial() { return Monoid{0, {{0}}}; }

  // {1, m} with m*m = m.
  static Monoid idempotent_pair() { return Monoid{0, {{0, 1}, {1, 1}}}; }

  bool operator==(const Monoid&) const = default;
};

using MonoidPtr = std::shared_ptr<const Monoid>;

// Left action: act[m][x] = index of m.x in the carrier.
struct MSetObj {
  MonoidPtr monoid;
  FinSetObj carrier;
  std::vector<std::vector<std::size_t>> act;

  bool operator==(const MSetObj& o) const {
    return (monoid == o.monoid || (monoid && o.monoid && *monoid == *o.monoid)) && carrier == o.carrier &&
           act == o.act;
  }

  void validate() const {
    const Monoid& m = *monoid;
    if (act.size() != m.size()) throw Error(ErrorKind::ValidationError, "action: wrong number of rows");
    for (std::size_t a = 0; a < m.size(); ++a) {
      if (act[a].size() != carrier.size())
        throw Error(ErrorKind::ValidationError, "action: ragged row", static_cast<int>(a));
      for (auto v : act[a])
        if (v >= carrier.size()) throw Error(ErrorKind::ValidationError, "action: value out of range");
    }
    for (std::size_t x = 0; x < carrier.size(); ++x) {
      if (act[m.unit][x] != x) throw Error(ErrorKind::ValidationError, "action: identity moves " + carrier[x]);
      for (std::size_t a = 0; a < m.size(); ++a)
        for (std::size_t b = 0; b < m.size(); ++b)
          if (act[a][act[b][x]] != act[m.mul[a][b]][x])
            throw Error(ErrorKind::ValidationError, "action: not compatible with multiplication at " + carrier[x]);
    }
  }

  bool closed(const std::vector<bool>& keep) const {
    for (const auto& row : act)
      for (std::size_t x = 0; x < carrier.size(); ++x)
        if (keep[x] && !keep[row[x]]) return false;
    return true;
  }

  // Restriction of the action to a closed subset, reindexed.
  MSetObj restrict_to(const std::vector<bool>& keep) const {
    MSetObj out{monoid, carrier.select(keep), {}};
    std::vector<std::size_t> idx(carrier.size(), 0);
    for (std::size_t x = 0, k = 0; x < carrier.size(); ++x)
      if (keep[x]) idx[x] = k++;
    for (const auto& row : act) {
      std::vector<std::size_t> r;
      for (std::size_t x = 0; x < carrier.size(); ++x)
        if (keep[x]) r.push_back(idx[row[x]]);
      out.act.push_back(std::move(r));
    }
    return out;
  }

  // Connected components of the graph x -- m.x.
  std::vector<std::size_t> components() const {
    std::vector<std::size_t> parent(carrier.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& row : act)
      for (std::size_t x = 0; x < carrier.size(); ++x) parent[find(x)] = find(row[x]);
    std::vector<std::size_t> comp(carrier.size());
    for (std::size_t x = 0; x < carrier.size(); ++x) comp[x] = find(x);
    return comp;
  }
};

inline bool equivariant(const MSetObj& dom, const MSetObj& cod, const SetFun& f) {
  for (std::size_t a = 0; a < dom.act.size(); ++a)
    for (std::size_t x = 0; x < dom.carrier.size(); ++x)
      if (f.at(dom.act[a][x]) != cod.act[a][f.at(x)]) return false;
  return true;
}

struct MSetMor {
  MSetObj dom, cod;
  SetFun fun;
  bool operator==(const MSetMor&) const = default;
};

// Canonical relabelling of an M-set: colour refinement along the action,
// then individualise-and-refine with the lexicographically least table kept.
namespace detail {

using Table = std::vector<std::vector<std::size_t>>;

inline std::vector<std::size_t> refine(const Table& act, std::vector<std::size_t> colour) {
  std::size_t n = colour.size();
  while (true) {
    std::vector<std::pair<std::vector<std::size_t>, std::size_t>> sig(n);
    for (std::size_t x = 0; x < n; ++x) {
      sig[x].first.push_back(colour[x]);
      for (const auto& row : act) sig[x].first.push_back(colour[row[x]]);
      // in-degree profile keeps refinement invariant under relabelling
      for (std::size_t a = 0; a < act.size(); ++a) {
        std::vector<std::size_t> pre;
        for (std::size_t y = 0; y < n; ++y)
          if (act[a][y] == x) pre.push_back(colour[y]);
        std::sort(pre.begin(), pre.end());
        sig[x].first.push_back(pre.size());
        sig[x].first.insert(sig[x].first.end(), pre.begin(), pre.end());
      }
      sig[x].second = x;
    }
    std::vector<std::vector<std::size_t>> keys;
    for (auto& s : sig) keys.push_back(s.first);
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<std::size_t> next(n);
    for (std::size_t x = 0; x < n; ++x)
      next[x] = static_cast<std::size_t>(std::lower_bound(keys.begin(), keys.end(), sig[x].first) - keys.begin());
    std::size_t before = std::set<std::size_t>(colour.begin(), colour.end()).size();
    if (keys.size() == before) return next;
    colour = std::move(next);
  }
}

inline Table relabel(const Table& act, const std::vector<std::size_t>& pos) {
  Table out(act.size(), std::vector<std::size_t>(pos.size()));
  for (std::size_t a = 0; a < act.size(); ++a)
    for (std::size_t x = 0; x < pos.size(); ++x) out[a][pos[x]] = pos[act[a][x]];
  return out;
}

inline void search(const Table& act, std::vector<std::size_t> colour, std::optional<Table>& best) {
  colour = refine(act, colour);
  std::size_t n = colour.size();
  std::vector<std::size_t> count(n + 1, 0);
  for (auto c : colour) ++count[c];
  std::size_t target = n;
  for (std::size_t c = 0; c < n; ++c)
    if (count[c] > 1) {
      target = c;
      break;
    }
  if (target == n) {
    Table t = relabel(act, colour);
    if (!best || t < *best) best = std::move(t);
    return;
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (colour[x] != target) continue;
    std::vector<std::size_t> c2(n);
    for (std::size_t y = 0; y < n; ++y) c2[y] = 2 * colour[y] + (y == x ? 0 : 1);
    search(act, c2, best);
  }
}

// Isomorphism between two coloured structures with the same number of unary
// operations: refine the disjoint union, individualise one point from each
// side, and backtrack.
inline bool joint_search(const Table& act, std::size_t na, std::vector<std::size_t> colour) {
  colour = refine(act, colour);
  std::size_t n = colour.size();
  std::vector<std::size_t> ca(n, 0), cb(n, 0);
  for (std::size_t x = 0; x < n; ++x) ++(x < na ? ca : cb)[colour[x]];
  if (ca != cb) return false;
  std::size_t target = n;
  for (std::size_t c = 0; c < n; ++c)
    if (ca[c] > 1) {
      target = c;
      break;
    }
  if (target == n) {
    std::vector<std::size_t> partner(n);
    for (std::size_t y = na; y < n; ++y) partner[colour[y]] = y;
    for (const auto& row : act)
      for (std::size_t x = 0; x < na; ++x)
        if (partner[colour[row[x]]] != row[partner[colour[x]]]) return false;
    return true;
  }
  std::size_t x = 0;
  while (colour[x] != target) ++x;
  for (std::size_t y = na; y < n; ++y) {
    if (colour[y] != target) continue;
    std::vector<std::size_t> c2(n);
    for (std::size_t z = 0; z < n; ++z) c2[z] = 2 * colour[z] + (z == x || z == y ? 0 : 1);
    if (joint_search(act, na, c2)) return true;
  }
  return false;
}

inline bool isomorphic(const Table& a, const std::vector<std::size_t>& ca, const Table& b,
                       const std::vector<std::size_t>& cb) {
  if (a.size() != b.size() || ca.size() != cb.size()) return false;
  std::size_t na = ca.size(), n = na + cb.size();
  Table joint(a.size(), std::vector<std::size_t>(n));
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t x = 0; x < na; ++x) {
      joint[r][x] = a[r][x];
      joint[r][na + x] = na + b[r][x];
    }
  std::vector<std::size_t> colour(ca);
  colour.insert(colour.end(), cb.begin(), cb.end());
  return joint_search(joint, na, colour);
}

}  // namespace detail

inline detail::Table canonical_form(const MSetObj& x) {
  std::optional<detail::Table> best;
  detail::search(x.act, std::vector<std::size_t>(x.carrier.size(), 0), best);
  return *best;
}

}  // namespace ecgw

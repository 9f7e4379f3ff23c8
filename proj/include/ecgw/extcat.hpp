#pragma once

#include <concepts>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ecgw/finset.hpp"
#include "ecgw/mset.hpp"
#include "ecgw/random.hpp"

namespace ecgw {

template <class Obj, class Mor>
struct CoproductOf {
  Obj obj;
  Mor inl, inr;
};

template <class Obj, class Mor>
struct ConeOf {
  Obj obj;
  Mor p1, p2;
};

// Operations every model of an extensive category provides. Objects carry a
// finite carrier and morphisms an underlying set map; everything above this
// layer is written against this interface only.
template <class I>
concept Extensive = requires(const I& ins, const typename I::Obj& x, const typename I::Mor& f,
                             const std::vector<bool>& mask, Rng& rng) {
  { ins.name() } -> std::convertible_to<std::string>;
  { ins.initial() } -> std::same_as<typename I::Obj>;
  { ins.carrier(x) } -> std::convertible_to<const FinSetObj&>;
  { ins.fun(f) } -> std::convertible_to<const SetFun&>;
  { ins.dom(f) } -> std::convertible_to<const typename I::Obj&>;
  { ins.cod(f) } -> std::convertible_to<const typename I::Obj&>;
  { ins.identity(x) } -> std::same_as<typename I::Mor>;
  { ins.compose(f, f) } -> std::same_as<typename I::Mor>;
  { ins.coproduct(x, x) } -> std::same_as<CoproductOf<typename I::Obj, typename I::Mor>>;
  { ins.pullback(f, f) } -> std::same_as<ConeOf<typename I::Obj, typename I::Mor>>;
  { ins.is_coproduct_inclusion(f) } -> std::same_as<bool>;
  { ins.complement(f) } -> std::same_as<typename I::Mor>;
  { ins.is_iso(x, x) } -> std::same_as<bool>;
  { ins.factor(f, f) } -> std::same_as<std::optional<typename I::Mor>>;
  { ins.inverse(f) } -> std::same_as<typename I::Mor>;
  { ins.sub(x, mask) } -> std::same_as<typename I::Mor>;
  { ins.lift(x, x, ins.fun(f)) } -> std::same_as<typename I::Mor>;
  { ins.random_object(rng, std::size_t{}) } -> std::same_as<typename I::Obj>;
  { ins.random_summand(rng, x) } -> std::same_as<std::vector<bool>>;
  { ins.rename(rng, x) } -> std::same_as<typename I::Mor>;
  { ins.actions(x) } -> std::convertible_to<std::vector<std::vector<std::size_t>>>;
};

namespace detail {

inline std::vector<Elem> fresh_tokens(Rng& rng, std::size_t n, const std::string& prefix) {
  // distinct numbered tokens drawn from a small pool so names vary between trials
  std::vector<int> pool(40);
  for (int i = 0; i < 40; ++i) pool[i] = i;
  rng.shuffle(pool);
  std::vector<Elem> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(pool[i % 40] + 40 * static_cast<int>(i / 40)));
  return out;
}

}  // namespace detail

class FinSetInstance {
 public:
  using Obj = FinSetObj;
  using Mor = SetFun;
  using Coproduct = CoproductOf<Obj, Mor>;
  using Cone = ConeOf<Obj, Mor>;

  std::string name() const { return "finset"; }
  Obj initial() const { return {}; }
  const FinSetObj& carrier(const Obj& x) const { return x; }
  const SetFun& fun(const Mor& f) const { return f; }
  const Obj& dom(const Mor& f) const { return f.dom(); }
  const Obj& cod(const Mor& f) const { return f.cod(); }
  Mor identity(const Obj& x) const { return ecgw::identity(x); }
  Mor compose(const Mor& g, const Mor& f) const { return ecgw::compose(g, f); }
  Mor from_initial(const Obj& x) const { return SetFun(Obj{}, x, {}); }

  Coproduct coproduct(const Obj& a, const Obj& b) const {
    auto c = set_coproduct(a, b);
    return {c.obj, c.inl, c.inr};
  }
  Mor copair(const Coproduct& c, const Mor& u, const Mor& v) const {
    return set_copair(SetCoproduct{c.obj, c.inl, c.inr}, u, v);
  }
  Cone pullback(const Mor& f, const Mor& g) const {
    auto p = set_pullback(f, g);
    return {p.obj, p.p1, p.p2};
  }

  bool is_coproduct_inclusion(const Mor& f) const { return f.injective(); }

  Mor complement(const Mor& f) const {
    if (!is_coproduct_inclusion(f)) throw Error(ErrorKind::NotCoproductInclusion, to_string(f));
    auto m = f.image_mask();
    m.flip();
    return inclusion_of_mask(f.cod(), m);
  }

  bool is_iso(const Obj& a, const Obj& b) const { return a.size() == b.size(); }
  bool is_iso(const Mor& f) const { return f.bijective(); }
  std::optional<Mor> factor(const Mor& h, const Mor& j) const { return ecgw::factor(h, j); }
  Mor inverse(const Mor& f) const { return ecgw::inverse(f); }
  bool closed(const Obj&, const std::vector<bool>&) const { return true; }
  Mor sub(const Obj& x, const std::vector<bool>& keep) const { return inclusion_of_mask(x, keep); }

  // Lift a set map between carriers; always valid here.
  Mor lift(const Obj&, const Obj&, const SetFun& f) const { return f; }

  Obj random_object(Rng& rng, std::size_t max_size) const {
    auto n = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(max_size)));
    return Obj(detail::fresh_tokens(rng, n, "e"));
  }
  std::vector<std::vector<std::size_t>> actions(const Obj&) const { return {}; }
  std::vector<bool> random_summand(Rng& rng, const Obj& x) const { return rng.mask(x.size()); }
  std::vector<bool> random_closed(Rng& rng, const Obj& x) const { return rng.mask(x.size()); }

  Mor rename(Rng& rng, const Obj& x) const {
    auto names = detail::fresh_tokens(rng, x.size(), "r");
    Obj y(names);
    std::vector<std::size_t> m(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) m[i] = *y.index_of(names[i]);
    return SetFun(x, y, std::move(m));
  }
};

class MSetInstance {
 public:
  using Obj = MSetObj;
  using Mor = MSetMor;
  using Coproduct = CoproductOf<Obj, Mor>;
  using Cone = ConeOf<Obj, Mor>;

  explicit MSetInstance(Monoid m) : monoid_(std::make_shared<const Monoid>(std::move(m))) { monoid_->validate(); }

  const MonoidPtr& monoid() const { return monoid_; }
  std::string name() const { return "mset"; }

  Obj make(FinSetObj carrier, std::vector<std::vector<std::size_t>> act) const {
    Obj x{monoid_, std::move(carrier), std::move(act)};
    x.validate();
    return x;
  }

  Obj trivial_action(const FinSetObj& carrier) const {
    std::vector<std::vector<std::size_t>> act(monoid_->size());
    for (auto& row : act) {
      row.resize(carrier.size());
      for (std::size_t i = 0; i < carrier.size(); ++i) row[i] = i;
    }
    return Obj{monoid_, carrier, act};
  }

  Obj initial() const { return trivial_action(FinSetObj{}); }
  const FinSetObj& carrier(const Obj& x) const { return x.carrier; }
  const std::vector<std::vector<std::size_t>>& actions(const Obj& x) const { return x.act; }
  const SetFun& fun(const Mor& f) const { return f.fun; }
  const Obj& dom(const Mor& f) const { return f.dom; }
  const Obj& cod(const Mor& f) const { return f.cod; }
  Mor identity(const Obj& x) const { return {x, x, ecgw::identity(x.carrier)}; }

  Mor compose(const Mor& g, const Mor& f) const {
    if (!(f.cod == g.dom)) throw Error(ErrorKind::NotComposable, "M-set codomain/domain mismatch");
    return {f.dom, g.cod, ecgw::compose(g.fun, f.fun)};
  }

  Mor lift(const Obj& dom, const Obj& cod, const SetFun& f) const {
    if (f.dom() != dom.carrier || f.cod() != cod.carrier)
      throw Error(ErrorKind::NotComposable, "carrier mismatch");
    if (!equivariant(dom, cod, f)) throw Error(ErrorKind::ValidationError, "map is not equivariant");
    return {dom, cod, f};
  }

  Coproduct coproduct(const Obj& a, const Obj& b) const {
    auto c = set_coproduct(a.carrier, b.carrier);
    Obj s{monoid_, c.obj, std::vector<std::vector<std::size_t>>(monoid_->size())};
    for (std::size_t m = 0; m < monoid_->size(); ++m) {
      s.act[m].resize(c.obj.size());
      for (std::size_t x = 0; x < a.carrier.size(); ++x) s.act[m][c.inl.at(x)] = c.inl.at(a.act[m][x]);
      for (std::size_t x = 0; x < b.carrier.size(); ++x) s.act[m][c.inr.at(x)] = c.inr.at(b.act[m][x]);
    }
    return {s, {a, s, SetFun(a.carrier, s.carrier, c.inl.indices())}, {b, s, SetFun(b.carrier, s.carrier, c.inr.indices())}};
  }

  Mor copair(const Coproduct& c, const Mor& u, const Mor& v) const {
    auto f = set_copair(SetCoproduct{c.obj.carrier, c.inl.fun, c.inr.fun}, u.fun, v.fun);
    return {c.obj, u.cod, f};
  }

  Cone pullback(const Mor& f, const Mor& g) const {
    if (!(f.cod == g.cod)) throw Error(ErrorKind::NotComposable, "pullback: codomains differ");
    auto p = set_pullback(f.fun, g.fun);
    Obj s{monoid_, p.obj, std::vector<std::vector<std::size_t>>(monoid_->size())};
    for (std::size_t m = 0; m < monoid_->size(); ++m) {
      s.act[m].resize(p.obj.size());
      for (std::size_t k = 0; k < p.obj.size(); ++k) {
        auto a = f.dom.act[m][p.p1.at(k)];
        auto b = g.dom.act[m][p.p2.at(k)];
        s.act[m][k] = *p.obj.index_of(pair_token(f.dom.carrier[a], g.dom.carrier[b]));
      }
    }
    return {s, {s, f.dom, p.p1}, {s, g.dom, p.p2}};
  }

  bool is_coproduct_inclusion(const Mor& f) const {
    if (!f.fun.injective() || !equivariant(f.dom, f.cod, f.fun)) return false;
    auto m = f.fun.image_mask();
    m.flip();
    return f.cod.closed(m);
  }

  Mor complement(const Mor& f) const {
    if (!is_coproduct_inclusion(f)) throw Error(ErrorKind::NotCoproductInclusion, to_string(f.fun));
    auto m = f.fun.image_mask();
    m.flip();
    return sub(f.cod, m);
  }

  bool is_iso(const Obj& a, const Obj& b) const {
    return a.carrier.size() == b.carrier.size() && canonical_form(a) == canonical_form(b);
  }
  bool is_iso(const Mor& f) const { return f.fun.bijective(); }

  std::optional<Mor> factor(const Mor& h, const Mor& j) const {
    auto u = ecgw::factor(h.fun, j.fun);
    if (!u) return std::nullopt;
    return Mor{h.dom, j.dom, *u};
  }

  Mor inverse(const Mor& f) const { return {f.cod, f.dom, ecgw::inverse(f.fun)}; }
  bool closed(const Obj& x, const std::vector<bool>& keep) const { return x.closed(keep); }

  Mor sub(const Obj& x, const std::vector<bool>& keep) const {
    if (!x.closed(keep)) throw Error(ErrorKind::ValidationError, "subset not closed under the action");
    auto s = x.restrict_to(keep);
    return {s, x, inclusion(s.carrier, x.carrier)};
  }

  // Random M-sets are coproducts of left ideals of the regular representation
  // and fixed points; every finite monoid admits these.
  Obj random_object(Rng& rng, std::size_t max_size) const {
    std::size_t target = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(max_size)));
    std::size_t n = monoid_->size();
    std::vector<std::vector<std::size_t>> rows(n);
    std::size_t size = 0;
    while (size < target) {
      std::vector<bool> keep(n, false);
      if (rng.coin(0.3)) {
        for (std::size_t m = 0; m < n; ++m) rows[m].push_back(size);
        ++size;
        continue;
      }
      std::size_t g = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n) - 1));
      for (std::size_t m = 0; m < n; ++m) keep[monoid_->mul[m][g]] = true;
      std::vector<std::size_t> idx(n, 0);
      std::size_t k = 0;
      for (std::size_t m = 0; m < n; ++m)
        if (keep[m]) idx[m] = size + k++;
      if (size + k > max_size) {
        for (std::size_t m = 0; m < n; ++m) rows[m].push_back(size);
        ++size;
        continue;
      }
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t m = 0; m < n; ++m)
          if (keep[m]) rows[a].push_back(idx[monoid_->mul[a][m]]);
      size += k;
    }
    auto names = detail::fresh_tokens(rng, size, "e");
    return relabelled(names, rows);
  }

  std::vector<bool> random_summand(Rng& rng, const Obj& x) const {
    auto comp = x.components();
    std::vector<bool> pick(x.carrier.size()), keep(x.carrier.size());
    for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = rng.coin();
    for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = pick[comp[i]];
    return keep;
  }

  // Closed subset, not necessarily with a closed complement.
  std::vector<bool> random_closed(Rng& rng, const Obj& x) const {
    auto keep = rng.mask(x.carrier.size());
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& row : x.act)
        for (std::size_t i = 0; i < keep.size(); ++i)
          if (keep[i] && !keep[row[i]]) keep[row[i]] = changed = true;
    }
    return keep;
  }

  Mor rename(Rng& rng, const Obj& x) const {
    auto names = detail::fresh_tokens(rng, x.carrier.size(), "r");
    Obj y = relabelled(names, x.act);
    std::vector<std::size_t> m(x.carrier.size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = *y.carrier.index_of(names[i]);
    return {x, y, SetFun(x.carrier, y.carrier, std::move(m))};
  }

 private:
  // Build an M-set whose i-th point is called names[i] with the given action.
  Obj relabelled(const std::vector<Elem>& names, const std::vector<std::vector<std::size_t>>& rows) const {
    FinSetObj carrier(names);
    std::vector<std::size_t> pos(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) pos[i] = *carrier.index_of(names[i]);
    std::vector<std::vector<std::size_t>> act(rows.size(), std::vector<std::size_t>(names.size()));
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t i = 0; i < names.size(); ++i) act[a][pos[i]] = pos[rows[a][i]];
    return Obj{monoid_, carrier, act};
  }

  MonoidPtr monoid_;
};

static_assert(Extensive<FinSetInstance>);
static_assert(Extensive<MSetInstance>);

}  // namespace ecgw

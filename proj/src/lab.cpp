#include "shortlist/lab.hpp"

#include "shortlist/errors.hpp"

#include <algorithm>

namespace shortlist {

const ChainLevel& Chain::level(int ell) const {
  if (ell < bottom() || ell > top()) throw InputError("level " + std::to_string(ell) + " outside the chain");
  return *levels[static_cast<std::size_t>(ell - bottom())];
}

int Chain::seed_bits() const {
  int r = 0;
  for (const auto& l : levels) r = std::max(r, l->graph->d_out());
  return r;
}

Lab::Lab(LabConfig config)
    : config_(config),
      table_(complexity_table(config.table_n_max)),
      source_(searching_source(config.master_seed, config.search)) {}

const RichOwnerGraph& Lab::graph(const RichOwnerParams& p) {
  auto& slot = graphs_[key(p)];
  if (!slot)
    slot = std::make_unique<RichOwnerGraph>(build_rich_owner(p.n, p.ell, p.c, p.delta, source_));
  return *slot;
}

const BSet& Lab::plain(int n, int ell) {
  auto& slot = plain_[{n, ell}];
  if (!slot) slot = std::make_unique<BSet>(plain_B(table_, n, ell));
  return *slot;
}

const SplitAudit& Lab::plain_audit(const RichOwnerParams& p) {
  auto& slot = plain_audits_[key(p)];
  if (!slot) slot = std::make_unique<SplitAudit>(graph(p).split(), plain(p.n, p.ell).order);
  return *slot;
}

const Chain& Lab::chain(int n, const Rational& delta) {
  auto& slot = chains_[{n, delta.numerator(), delta.denominator()}];
  if (slot) return *slot;
  if (n < 1 || n > table_.n_max()) throw InputError("chain length outside the complexity table");
  auto chain = std::make_unique<Chain>();
  chain->n = n;
  chain->delta = delta;
  chain->e = table_.e_const();
  const int levels = chain->top() - chain->bottom() + 1;
  chain->levels.resize(static_cast<std::size_t>(levels));
  const ChainLevel* above = nullptr;
  for (int ell = chain->top(); ell >= chain->bottom(); --ell) {
    auto level = std::make_unique<ChainLevel>();
    level->ell = ell;
    level->graph = &graph(RichOwnerParams{n, ell, 2, delta});
    level->b = above == nullptr
                   ? augmented_B(table_, n, ell, nullptr, {})
                   : augmented_B(table_, n, ell, &above->b, above->non_rich);
    level->audit = std::make_unique<SplitAudit>(level->graph->split(), level->b.order);
    level->non_rich = level->audit->non_rich(delta);
    above = level.get();
    chain->levels[static_cast<std::size_t>(ell - chain->bottom())] = std::move(level);
  }
  slot = std::move(chain);
  return *slot;
}

std::optional<std::pair<const BSet*, const RichOwnerGraph*>> Lab::target(const GraphFields& f) {
  if (f.n < 1 || f.n > table_.n_max() || f.inv_delta < 1 || f.inv_delta > 64) return std::nullopt;
  if (f.ell <= f.c || f.ell > f.n + table_.e_const() + 1) return std::nullopt;
  const Rational delta(1, static_cast<std::int64_t>(f.inv_delta));
  try {
    if (f.augmented) {
      if (f.c != 2) return std::nullopt;
      const Chain& ch = chain(f.n, delta);
      if (f.ell < ch.bottom()) return std::nullopt;
      const ChainLevel& l = ch.level(f.ell);
      return std::make_pair(&l.b, l.graph);
    }
    const RichOwnerGraph& g = graph(RichOwnerParams{f.n, f.ell, f.c, delta});
    return std::make_pair(&plain(f.n, f.ell), &g);
  } catch (const std::runtime_error&) {
    return std::nullopt;  // no certified graph for these fields
  }
}

std::optional<int> Lab::z_width(const GraphFields& f) {
  const auto t = target(f);
  if (!t) return std::nullopt;
  return t->second->m_out();
}

GraphOutcome Lab::first_owner(const GraphFields& f, RightId z, std::uint64_t budget) {
  GraphOutcome out;
  const auto t = target(f);
  if (!t) return out;
  const SplitGraph& h = t->second->split();
  if (z >= h.right_size()) return out;
  const SplitRightId id = h.decode(z);
  const std::uint64_t cost = 1 + h.base().degree();
  for (LeftNode x : t->first->order) {
    out.steps += cost;
    if (out.steps > budget) return GraphOutcome{std::nullopt, out.steps};
    if (h.adjacent(x, id)) {
      out.x = x;
      return out;
    }
  }
  return out;
}

std::optional<LeftNode> Lab::first_owner_direct(const GraphFields& f, RightId z) {
  const auto t = target(f);
  if (!t) return std::nullopt;
  const SplitGraph& h = t->second->split();
  if (z >= h.right_size()) return std::nullopt;
  // Only edges j = b * t + prime_index can carry this prime index; compare
  // their encoded ids.
  const std::uint64_t idx = h.decode(z).prime_index;
  for (LeftNode x : t->first->order)
    for (std::uint64_t b = 0; b < h.base().degree(); ++b)
      if (h.neighbor(x, b * h.t() + idx) == z) return x;
  return std::nullopt;
}

}  // namespace shortlist

#include "shortlist/list_approx.hpp"

#include "shortlist/errors.hpp"

#include <algorithm>
#include <cmath>

namespace shortlist {

namespace {

std::uint64_t inverse_of(const Rational& delta) {
  if (delta.numerator() != 1) throw ParameterError("delta must be 1/inv_delta for an integer inv_delta");
  return static_cast<std::uint64_t>(delta.denominator());
}

Rational delta_of(std::uint64_t inv_delta) {
  if (inv_delta < 1) throw ParameterError("inv_delta must be >= 1");
  return Rational(1, static_cast<std::int64_t>(inv_delta));
}

std::size_t graph_program_length(const GraphFields& f, int z_width) {
  return kHeaderBits + 1 + gamma_length(f.ell) + gamma_length(f.c + 1) +
         gamma_length(f.inv_delta) + gamma_length(f.n) + z_width;
}

}  // namespace

AssociatedProgram associated_program(const RichOwnerGraph& g, RightId z, bool augmented) {
  const auto& p = g.params();
  if (z >= g.right_size()) throw InputError("right node outside the graph");
  AssociatedProgram out;
  out.fields = GraphFields{augmented, p.ell, p.c, inverse_of(p.delta), p.n};
  out.z = z;
  out.bits = graph_program(out.fields, z, g.m_out());
  return out;
}

std::uint64_t seed_prefix(const BitString& seed, int bits) {
  if (bits < 0 || bits > 64) throw InputError("seed prefix width out of range");
  if (seed.size() < static_cast<std::size_t>(bits))
    throw InputError("seed has " + std::to_string(seed.size()) + " bits, need " +
                     std::to_string(bits));
  std::uint64_t v = 0;
  for (int i = 0; i < bits; ++i) v = (v << 1) | (seed[static_cast<std::size_t>(i)] ? 1 : 0);
  return v;
}

AssociatedProgram fixed_length_generate(Lab& lab, LeftNode x, int n, int ell, int c,
                                        std::uint64_t inv_delta, const BitString& seed,
                                        bool augmented) {
  if (n < 1 || (x >> n) != 0) throw InputError("x is not an n-bit string");
  const Rational delta = delta_of(inv_delta);
  const RichOwnerGraph* g = nullptr;
  if (augmented) {
    if (c != 2) throw ParameterError("augmented chains use c = 2");
    g = lab.chain(n, delta).level(ell).graph;
  } else {
    g = &lab.graph(RichOwnerParams{n, ell, c, delta});
  }
  const std::uint64_t j = seed_prefix(seed, g->d_out());
  AssociatedProgram out = associated_program(*g, neighbor_at(*g, x, j), augmented);
  out.edge = j;
  out.seed_bits = g->d_out();
  return out;
}

CandidateProgramList generate_list(Lab& lab, LeftNode x, int n, std::uint64_t inv_delta,
                                   const BitString& seed) {
  const Chain& chain = lab.chain(n, delta_of(inv_delta));
  CandidateProgramList list;
  list.x = x;
  list.n = n;
  list.inv_delta = inv_delta;
  list.seed = seed;
  for (int ell = chain.bottom(); ell <= chain.top(); ++ell)
    list.entries.push_back(fixed_length_generate(lab, x, n, ell, 2, inv_delta, seed, true));
  return list;
}

int promise_c(int n) {
  if (n < 1 || n > 1 << 20) throw ParameterError("promise needs 1 <= n <= 2^20");
  const std::uint64_t cube = static_cast<std::uint64_t>(n) * n * n;
  return ceil_log2(cube);
}

PromiseResult short_program_given_C(Lab& lab, LeftNode x, int n, int C_of_x,
                                    std::uint64_t inv_delta, const BitString& seed) {
  PromiseResult out;
  out.ell = C_of_x + 1;
  out.c = promise_c(n);
  if (out.ell <= out.c) {
    out.degenerate = true;
    return out;
  }
  out.program = fixed_length_generate(lab, x, n, out.ell, out.c, inv_delta, seed, false);
  return out;
}

std::uint64_t count_failing(std::span<const LevelFailure> levels, int r) {
  if (r < 0 || r > 62) throw ParameterError("seed length out of range");
  std::vector<const LevelFailure*> sorted;
  for (const auto& l : levels) {
    if (l.width > r) throw InputError("level wider than the master seed");
    sorted.push_back(&l);
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const LevelFailure* a, const LevelFailure* b) { return a->width < b->width; });
  bool everything = true;
  int len = 0;
  std::vector<std::uint64_t> current;
  for (const LevelFailure* l : sorted) {
    if (l->all) continue;
    if (everything) {
      current = l->failing;
      len = l->width;
      everything = false;
      continue;
    }
    const int shift = l->width - len;
    std::vector<std::uint64_t> next;
    for (std::uint64_t w : l->failing)
      if (std::binary_search(current.begin(), current.end(), w >> shift)) next.push_back(w);
    current = std::move(next);
    len = l->width;
  }
  if (everything) return std::uint64_t{1} << r;
  return static_cast<std::uint64_t>(current.size()) << (r - len);
}

bool seed_fails(std::span<const LevelFailure> levels, const BitString& seed) {
  for (const auto& l : levels) {
    if (l.all) continue;
    const std::uint64_t prefix = seed_prefix(seed, l.width);
    if (!std::binary_search(l.failing.begin(), l.failing.end(), prefix)) return false;
  }
  return true;
}

std::uint64_t count_failing_brute(std::span<const LevelFailure> levels, int r) {
  if (r < 0 || r > 24) throw BudgetExceeded("brute-force seed enumeration is capped at r = 24");
  std::uint64_t failing = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << r); ++s) {
    bool fails = true;
    for (const auto& l : levels) {
      if (l.all) continue;
      if (!std::binary_search(l.failing.begin(), l.failing.end(), s >> (r - l.width))) {
        fails = false;
        break;
      }
    }
    if (fails) ++failing;
  }
  return failing;
}

std::vector<LevelView> chain_view(Lab& lab, LeftNode x, int n, std::uint64_t inv_delta) {
  const Chain& chain = lab.chain(n, delta_of(inv_delta));
  std::vector<LevelView> out;
  for (int ell = chain.bottom(); ell <= chain.top(); ++ell) {
    const ChainLevel& level = chain.level(ell);
    const RichOwnerGraph& g = *level.graph;
    LevelView v;
    v.ell = ell;
    v.width = g.d_out();
    v.program_length =
        graph_program_length(GraphFields{true, ell, 2, inv_delta, n}, g.m_out());
    v.member = level.b.contains(x);
    if (v.member) {
      const std::uint64_t pos = level.audit->position(x);
      const std::uint64_t steps = v.program_length + (pos + 1) * (1 + g.split().base().degree());
      v.within_budget = steps <= step_budget(v.program_length);
      const std::uint64_t t = g.t();
      for (std::uint64_t b = 0; b < g.split().base().degree(); ++b)
        for (std::uint64_t idx : level.audit->blocked_prime_indices(x, b))
          v.blocked.push_back(b * t + idx);
    }
    out.push_back(std::move(v));
  }
  return out;
}

Rational SuccessProfile::probability() const {
  if (r > 62) throw ParameterError("seed length too large for a rational");
  return Rational(static_cast<std::int64_t>(hits), std::int64_t{1} << r);
}

bool SuccessProfile::at_least(const Rational& target) const {
  return static_cast<__int128>(hits) * target.denominator() >=
         (static_cast<__int128>(target.numerator()) << r);
}

SuccessProfile profile_from_view(std::span<const LevelView> view, LeftNode x, int n,
                                 std::uint64_t inv_delta, int c_x, int c_star) {
  SuccessProfile p;
  p.x = x;
  p.n = n;
  p.inv_delta = inv_delta;
  p.c_star = c_star;
  std::vector<LevelFailure> levels;
  for (const LevelView& v : view) {
    p.r = std::max(p.r, v.width);
    LevelFailure f;
    f.width = v.width;
    const bool produces = v.member && v.within_budget &&
                          v.blocked.size() < (std::uint64_t{1} << v.width);
    if (produces) {
      const int overhead = static_cast<int>(v.program_length) - c_x;
      if (p.best_overhead < 0 || overhead < p.best_overhead) p.best_overhead = overhead;
    }
    if (produces && static_cast<int>(v.program_length) <= c_x + c_star) {
      f.all = false;
      f.failing = v.blocked;
    }
    levels.push_back(std::move(f));
  }
  p.hits = (std::uint64_t{1} << p.r) - count_failing(levels, p.r);
  return p;
}

SuccessProfile exact_success_profile(Lab& lab, LeftNode x, int n, std::uint64_t inv_delta,
                                     int c_star) {
  const auto view = chain_view(lab, x, n, inv_delta);
  return profile_from_view(view, x, n, inv_delta, lab.table().C(x, n), c_star);
}

SuccessProfile brute_success_profile(Lab& lab, LeftNode x, int n, std::uint64_t inv_delta,
                                     int c_star) {
  const Chain& chain = lab.chain(n, delta_of(inv_delta));
  SuccessProfile p;
  p.x = x;
  p.n = n;
  p.inv_delta = inv_delta;
  p.c_star = c_star;
  p.r = chain.seed_bits();
  if (p.r > 24) throw BudgetExceeded("brute-force profile needs r <= 24, have r = " + std::to_string(p.r));
  const int c_x = lab.table().C(x, n);
  const BitString want = BitString::from_value(x, n);
  const ToyMachine machine = lab.machine();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << p.r); ++s) {
    const auto list = generate_list(lab, x, n, inv_delta, BitString::from_value(s, p.r));
    for (const auto& entry : list.entries) {
      const RunResult run = run_program(machine, entry.bits);
      if (!run.output || *run.output != want) continue;
      const int overhead = static_cast<int>(entry.length()) - c_x;
      if (p.best_overhead < 0 || overhead < p.best_overhead) p.best_overhead = overhead;
      if (overhead <= c_star) {
        ++p.hits;
        break;
      }
    }
  }
  return p;
}

Calibration calibrate(Lab& lab, int n, std::uint64_t inv_delta) {
  const Rational target = Rational(1) - delta_of(inv_delta);
  const Chain& chain = lab.chain(n, delta_of(inv_delta));
  Calibration cal;
  const double scale = 2 + std::log2(static_cast<double>(n) * static_cast<double>(inv_delta));
  for (int ell = chain.bottom(); ell <= chain.top(); ++ell) {
    const auto& g = *chain.level(ell).graph;
    const double len = static_cast<double>(
        graph_program_length(GraphFields{true, ell, 2, inv_delta, n}, g.m_out()));
    cal.k_len = std::max(cal.k_len, (len - ell) / scale);
  }
  for (LeftNode x = 0; x < (LeftNode{1} << n); ++x) {
    const auto view = chain_view(lab, x, n, inv_delta);
    const int c_x = lab.table().C(x, n);
    // Success only changes at these overheads; below all of them it is zero,
    // which already meets a target of 0.
    std::vector<int> candidates{0};
    for (const auto& v : view)
      if (v.member) candidates.push_back(static_cast<int>(v.program_length) - c_x);
    std::sort(candidates.begin(), candidates.end());
    int found = -1;
    for (int c : candidates) {
      if (profile_from_view(view, x, n, inv_delta, c_x, std::max(c, 0)).at_least(target)) {
        found = std::max(c, 0);
        break;
      }
    }
    cal.per_x.push_back(found);
    if (found < 0)
      cal.c_star = -1;
    else if (cal.c_star >= 0)
      cal.c_star = std::max(cal.c_star, found);
  }
  return cal;
}

bool PromiseProfile::at_least(const Rational& target) const {
  return static_cast<__int128>(successes) * target.denominator() >=
         (static_cast<__int128>(target.numerator()) << r);
}

PromiseProfile promise_profile(Lab& lab, LeftNode x, int n, std::uint64_t inv_delta) {
  PromiseProfile p;
  p.x = x;
  p.ell = lab.table().C(x, n) + 1;
  p.c = promise_c(n);
  if (p.ell <= p.c) throw ParameterError("promise level has no graph (ell <= c)");
  const RichOwnerParams params{n, p.ell, p.c, delta_of(inv_delta)};
  const RichOwnerGraph& g = lab.graph(params);
  const SplitAudit& audit = lab.plain_audit(params);
  p.r = g.d_out();
  p.program_length =
      graph_program_length(GraphFields{false, p.ell, p.c, inv_delta, n}, g.m_out());
  p.in_bad_set = !audit.is_rich(x, params.delta);
  const std::uint64_t pos = audit.position(x);
  const std::uint64_t steps = p.program_length + (pos + 1) * (1 + g.split().base().degree());
  if (steps > step_budget(p.program_length)) return p;
  p.successes = (std::uint64_t{1} << p.r) - audit.blocked_slots(x);
  return p;
}

}  // namespace shortlist

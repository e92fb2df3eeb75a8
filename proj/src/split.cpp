#include "shortlist/split.hpp"

#include "shortlist/errors.hpp"
#include "shortlist/primes.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>

namespace shortlist {

namespace {

// Primes below 2^(n+1), shared between split graphs of the same n.
std::shared_ptr<const std::vector<std::uint64_t>> small_primes_for(int n) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const std::vector<std::uint64_t>>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[n];
  if (!slot)
    slot = std::make_shared<const std::vector<std::uint64_t>>(
        primes_below(std::uint64_t{1} << (n + 1)));
  return slot;
}

std::uint64_t mul_checked(std::uint64_t a, std::uint64_t b, const char* what) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw ParameterError(what);
  return out;
}

}  // namespace

SplitParams SplitParams::make(std::uint64_t s, int n, const Rational& delta) {
  if (s < 1) throw ParameterError("split needs s >= 1");
  if (delta <= 0 || delta > 1) throw ParameterError("split delta must lie in (0,1]");
  if (n < 0 || n > 40) throw ParameterError("split n out of range");
  SplitParams p;
  p.s = s;
  p.delta = delta;
  p.n = n;
  const auto t = ceil(Rational(static_cast<std::int64_t>(s) * std::max(n, 1)) / delta);
  p.t = static_cast<std::uint64_t>(std::max<std::int64_t>(t, 1));
  return p;
}

SplitParams SplitParams::padded() const {
  SplitParams p = *this;
  p.t = std::bit_ceil(t);
  return p;
}

Rational collision_fraction(std::span<const std::uint64_t> values, std::size_t i,
                            const SplitParams& params) {
  if (i >= values.size()) throw InputError("collision index out of range");
  if (values.size() > params.s) throw InputError("more values than the share threshold s");
  std::vector<std::uint64_t> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InputError("collision_fraction needs distinct values");
  for (std::uint64_t v : values)
    if (v >= (std::uint64_t{2} << params.n))
      throw InputError("value exceeds 2^(n+1)");

  const auto primes = first_primes(params.t);
  std::int64_t hits = 0;
  for (std::uint64_t p : primes) {
    const std::uint64_t r = values[i] % p;
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (j != i && values[j] % p == r) {
        ++hits;
        break;
      }
    }
  }
  return Rational(hits, static_cast<std::int64_t>(primes.size()));
}

SplitGraph::SplitGraph(LeftRegularGraph base, SplitParams params)
    : base_(std::move(base)), params_(params) {
  if (!is_power_of_two(params_.t)) throw ParameterError("split t must be a power of two");
  if (params_.n != base_.n()) throw ParameterError("split params n differs from graph n");
  d_ = base_.d() + std::countr_zero(params_.t);
  if (d_ > 62) throw ParameterError("split degree too large");
  block_ = prime_upper_bound(params_.t);
  right_size_ = mul_checked(mul_checked(base_.right_size(), params_.t, "split right ids overflow"),
                            block_, "split right ids overflow");
  auto all_small = small_primes_for(base_.n());
  if (all_small->size() > params_.t) {
    small_primes_ = std::make_shared<const std::vector<std::uint64_t>>(
        all_small->begin(), all_small->begin() + static_cast<std::ptrdiff_t>(params_.t));
  } else {
    small_primes_ = std::move(all_small);
  }
}

std::uint64_t SplitGraph::prime(std::uint64_t index) const {
  if (index >= params_.t) throw InputError("prime index out of range");
  if (index < small_primes_->size()) return (*small_primes_)[index];
  return first_primes(index + 1).back();
}

std::uint64_t SplitGraph::residue(LeftNode x, std::uint64_t prime_index) const {
  const std::uint64_t v = canonical_value(x, base_.n());
  if (prime_index < small_primes_->size()) return v % (*small_primes_)[prime_index];
  return v;  // p > 2^(n+1) > v
}

SplitRightId SplitGraph::neighbor_split(LeftNode x, std::uint64_t j) const {
  if (j >= degree()) throw InputError("split edge index out of range");
  const std::uint64_t base_edge = j / params_.t;
  const std::uint64_t index = j % params_.t;
  return SplitRightId{base_.neighbor(x, base_edge), index, residue(x, index)};
}

RightId SplitGraph::neighbor(LeftNode x, std::uint64_t j) const {
  return encode(neighbor_split(x, j));
}

RightId SplitGraph::encode(const SplitRightId& id) const {
  if (id.z >= base_.right_size() || id.prime_index >= params_.t || id.residue >= block_)
    throw InputError("split right id out of range");
  return (id.z * params_.t + id.prime_index) * block_ + id.residue;
}

SplitRightId SplitGraph::decode(RightId id) const {
  if (id >= right_size_) throw InputError("split right id out of range");
  SplitRightId out;
  out.residue = id % block_;
  id /= block_;
  out.prime_index = id % params_.t;
  out.z = id / params_.t;
  return out;
}

bool SplitGraph::adjacent(LeftNode x, const SplitRightId& id) const {
  if (!base_.has_left(x)) return false;
  if (residue(x, id.prime_index) != id.residue) return false;
  for (std::uint64_t j = 0; j < base_.degree(); ++j)
    if (base_.neighbor(x, j) == id.z) return true;
  return false;
}

LeftRegularGraph SplitGraph::graph() const {
  auto self = std::make_shared<const SplitGraph>(*this);
  LeftRegularGraph g(
      n(), d_, right_size_,
      [self](LeftNode x, std::uint64_t j) { return self->neighbor(x, j); },
      "split(" + base_.label() + ") t=" + std::to_string(params_.t));
  return base_.is_restricted() ? restrict(g, base_.domain()) : g;
}

SplitGraph split_graph(const LeftRegularGraph& g, std::uint64_t s, const Rational& delta) {
  return SplitGraph(g, SplitParams::make(s, g.n(), delta).padded());
}

SplitAudit::SplitAudit(const SplitGraph& h, std::span<const LeftNode> order)
    : h_(&h), order_(order.begin(), order.end()) {
  if (order_.size() > UINT32_MAX) throw ParameterError("audit set too large");
  pos_.reserve(order_.size());
  for (std::size_t i = 0; i < order_.size(); ++i) {
    if (!h.base().has_left(order_[i])) throw InputError("audit member outside the graph");
    pos_.emplace_back(order_[i], static_cast<std::uint32_t>(i));
  }
  std::sort(pos_.begin(), pos_.end());
  for (std::size_t i = 1; i < pos_.size(); ++i)
    if (pos_[i].first == pos_[i - 1].first) throw InputError("audit order repeats a member");

  std::vector<std::pair<RightId, std::uint32_t>> incidence;
  const auto& base = h.base();
  incidence.reserve(order_.size() * base.degree());
  for (std::size_t i = 0; i < order_.size(); ++i)
    for (std::uint64_t j = 0; j < base.degree(); ++j)
      incidence.emplace_back(base.neighbor(order_[i], j), static_cast<std::uint32_t>(i));
  std::sort(incidence.begin(), incidence.end());
  incidence.erase(std::unique(incidence.begin(), incidence.end()), incidence.end());
  for (std::size_t i = 0; i < incidence.size(); ++i) {
    if (i == 0 || incidence[i].first != incidence[i - 1].first) {
      right_keys_.push_back(incidence[i].first);
      right_offsets_.push_back(right_members_.size());
    }
    right_members_.push_back(incidence[i].second);
  }
  right_offsets_.push_back(right_members_.size());

  const std::uint64_t span = std::uint64_t{2} << h.n();
  if (span <= (std::uint64_t{1} << 22)) {
    divisor_memo_.resize(span);
    divisor_ready_.assign(span, false);
  }
}

bool SplitAudit::contains(LeftNode x) const {
  auto it = std::lower_bound(pos_.begin(), pos_.end(), std::make_pair(x, std::uint32_t{0}));
  return it != pos_.end() && it->first == x;
}

std::size_t SplitAudit::position(LeftNode x) const {
  auto it = std::lower_bound(pos_.begin(), pos_.end(), std::make_pair(x, std::uint32_t{0}));
  if (it == pos_.end() || it->first != x) throw InputError("node is not a member of B");
  return it->second;
}

std::span<const std::uint32_t> SplitAudit::members_at(RightId z) const {
  auto it = std::lower_bound(right_keys_.begin(), right_keys_.end(), z);
  if (it == right_keys_.end() || *it != z) return {};
  const auto k = static_cast<std::size_t>(it - right_keys_.begin());
  return std::span<const std::uint32_t>(right_members_).subspan(
      right_offsets_[k], right_offsets_[k + 1] - right_offsets_[k]);
}

const std::vector<std::uint64_t>& SplitAudit::divisor_indices(std::uint64_t diff) const {
  static thread_local std::vector<std::uint64_t> scratch;
  const bool memo = diff < divisor_memo_.size();
  if (memo && divisor_ready_[diff]) return divisor_memo_[diff];
  std::vector<std::uint64_t> out;
  const auto primes = h_->small_primes();
  for (std::uint64_t q : prime_factors(diff)) {
    auto it = std::lower_bound(primes.begin(), primes.end(), q);
    if (it != primes.end() && *it == q)
      out.push_back(static_cast<std::uint64_t>(it - primes.begin()));
  }
  if (!memo) {
    scratch = std::move(out);
    return scratch;
  }
  divisor_memo_[diff] = std::move(out);
  divisor_ready_[diff] = true;
  return divisor_memo_[diff];
}

void SplitAudit::collect(LeftNode x, std::span<const std::uint32_t> others,
                         bool earlier_only, std::size_t pos,
                         std::vector<std::uint64_t>& out) const {
  out.clear();
  for (std::uint32_t o : others) {
    if (o == pos) continue;
    if (earlier_only && o > pos) break;  // positions are ascending
    const LeftNode y = order_[o];
    const std::uint64_t diff = x > y ? x - y : y - x;
    for (std::uint64_t idx : divisor_indices(diff)) out.push_back(idx);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

std::uint64_t SplitAudit::shared_slots(LeftNode x) const {
  const std::size_t pos = position(x);
  auto zs = h_->base().neighbors(x);
  std::sort(zs.begin(), zs.end());
  std::vector<std::uint64_t> idx;
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < zs.size();) {
    std::size_t j = i;
    while (j < zs.size() && zs[j] == zs[i]) ++j;
    collect(x, members_at(zs[i]), false, pos, idx);
    total += (j - i) * idx.size();
    i = j;
  }
  return total;
}

bool SplitAudit::is_rich(LeftNode x, const Rational& delta) const {
  if (delta <= 0 || delta > 1) throw ParameterError("delta must lie in (0,1]");
  const auto shared = static_cast<__int128>(shared_slots(x));
  return shared * delta.denominator() <=
         static_cast<__int128>(delta.numerator()) * h_->degree();
}

std::vector<LeftNode> SplitAudit::non_rich(const Rational& delta) const {
  std::vector<LeftNode> out;
  for (const auto& [x, pos] : pos_)
    if (!is_rich(x, delta)) out.push_back(x);
  return out;
}

std::vector<std::uint64_t> SplitAudit::blocked_prime_indices(LeftNode x,
                                                             std::uint64_t base_edge) const {
  const std::size_t pos = position(x);
  std::vector<std::uint64_t> out;
  collect(x, members_at(h_->base().neighbor(x, base_edge)), true, pos, out);
  return out;
}

std::uint64_t SplitAudit::blocked_slots(LeftNode x) const {
  const std::size_t pos = position(x);
  std::uint64_t total = 0;
  std::vector<std::uint64_t> idx;
  for (std::uint64_t j = 0; j < h_->base().degree(); ++j) {
    collect(x, members_at(h_->base().neighbor(x, j)), true, pos, idx);
    total += idx.size();
  }
  return total;
}

}  // namespace shortlist

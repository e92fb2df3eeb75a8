#include "shortlist/extractor.hpp"

#include "shortlist/bits.hpp"
#include "shortlist/errors.hpp"
#include "shortlist/random.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <istream>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

namespace shortlist {

std::string to_string(const VerificationStatus& s) {
  switch (s.kind) {
    case Verification::unverified:
      return "unverified";
    case Verification::exact_verified:
      return "exact-verified(worst=" + to_string(s.worst) + ")";
    case Verification::sampled_audited:
      return "sampled-audited(trials=" + std::to_string(s.trials) +
             ",worst=" + to_string(s.worst) + ")";
  }
  return "unverified";
}

VerificationStatus parse_status(const std::string& text) {
  VerificationStatus s;
  auto value_of = [&](const std::string& key) {
    const auto pos = text.find(key + "=");
    if (pos == std::string::npos) throw InputError("status lacks " + key);
    const auto start = pos + key.size() + 1;
    const auto stop = text.find_first_of(",)", start);
    return text.substr(start, stop - start);
  };
  if (text == "unverified") return s;
  if (text.starts_with("exact-verified")) {
    s.kind = Verification::exact_verified;
    s.worst = parse_rational(value_of("worst"));
    return s;
  }
  if (text.starts_with("sampled-audited")) {
    s.kind = Verification::sampled_audited;
    s.trials = std::stoull(value_of("trials"));
    s.worst = parse_rational(value_of("worst"));
    return s;
  }
  throw InputError("unknown status '" + text + "'");
}

ExtractorInstance::ExtractorInstance(int n, int k, int d, int m, Rational eps,
                                     std::vector<std::uint32_t> table,
                                     std::uint64_t seed)
    : n_(n), k_(k), d_(d), m_(m), eps_(eps), seed_(seed) {
  if (n < 0 || n > 16) throw ParameterError("extractor n must lie in [0,16]");
  if (k < 0 || k > n) throw ParameterError("need 0 <= k <= n");
  if (d < 0 || n + d > 28) throw ParameterError("seed length d out of range");
  if (m < 0 || m > 31) throw ParameterError("output length m out of range");
  if (m > k + d) throw ParameterError("need m <= k + d");
  if (eps <= 0 || eps > 1) throw ParameterError("eps must lie in (0,1]");
  if (table.size() != (std::size_t{1} << (n + d)))
    throw InputError("extractor table has wrong size");
  for (std::uint32_t z : table)
    if ((z >> m) != 0) throw InputError("extractor output wider than m bits");
  table_ = std::make_shared<const std::vector<std::uint32_t>>(std::move(table));
}

bool ExtractorInstance::certified() const {
  switch (status_.kind) {
    case Verification::exact_verified:
      return true;
    case Verification::sampled_audited:
      return status_.worst < eps_;
    default:
      return false;
  }
}

LeftRegularGraph ExtractorInstance::graph() const {
  auto table = table_;
  const int d = d_;
  return LeftRegularGraph(
      n_, d_, RightId{1} << m_,
      [table, d](LeftNode x, std::uint64_t y) -> RightId { return (*table)[(x << d) | y]; },
      "extractor n=" + std::to_string(n_) + " k=" + std::to_string(k_) +
          " d=" + std::to_string(d_) + " m=" + std::to_string(m_));
}

FlatSource::FlatSource(LeftSubset support) : support_(std::move(support)) {
  if (!is_power_of_two(support_.size()))
    throw InputError("flat source support must have power-of-two size");
  k_ = ceil_log2(support_.size());
}

namespace {

// Incremental histogram of E(X, U_d) for a growing/shrinking support, keeping
// S = sum_y |h_y * M - K * D| current. deviation = S / (2 K D M).
class Histogram {
 public:
  Histogram(const ExtractorInstance& e, std::uint64_t support_size)
      : e_(e),
        m_(std::int64_t{1} << e.m()),
        target_(static_cast<std::int64_t>(support_size) << e.d()),
        h_(m_, 0),
        sum_(m_ * target_) {}

  void add(LeftNode x) { shift(x, +1); }
  void remove(LeftNode x) { shift(x, -1); }
  std::int64_t sum() const { return sum_; }

  Rational deviation() const {
    return Rational(sum_, 2 * target_ * m_);
  }

 private:
  void shift(LeftNode x, int delta) {
    const std::uint64_t degree = std::uint64_t{1} << e_.d();
    for (std::uint64_t y = 0; y < degree; ++y) {
      std::int64_t& h = h_[e_(x, y)];
      sum_ -= std::abs(h * m_ - target_);
      h += delta;
      sum_ += std::abs(h * m_ - target_);
    }
  }

  const ExtractorInstance& e_;
  std::int64_t m_;
  std::int64_t target_;
  std::vector<std::int64_t> h_;
  std::int64_t sum_;
};

struct Best {
  std::int64_t sum = -1;
  std::vector<LeftNode> witness;
  std::uint64_t checked = 0;
};

// Depth-first enumeration of all size-K combinations with fixed first element.
void enumerate_from(const ExtractorInstance& e, std::uint64_t first,
                    std::uint64_t support_size, Best& best) {
  const std::uint64_t n_left = std::uint64_t{1} << e.n();
  Histogram hist(e, support_size);
  std::vector<LeftNode> combo{first};
  hist.add(first);
  auto visit = [&](auto&& self, std::uint64_t next) -> void {
    if (combo.size() == support_size) {
      ++best.checked;
      if (hist.sum() > best.sum) {
        best.sum = hist.sum();
        best.witness = combo;
      }
      return;
    }
    const std::uint64_t need = support_size - combo.size();
    for (std::uint64_t x = next; x + need <= n_left; ++x) {
      combo.push_back(x);
      hist.add(x);
      self(self, x + 1);
      hist.remove(x);
      combo.pop_back();
    }
  };
  visit(visit, first + 1);
}

}  // namespace

Rational tv_deviation(const ExtractorInstance& e, const FlatSource& x) {
  if (x.support().n() != e.n())
    throw InputError("flat source bit-length differs from extractor n");
  Histogram hist(e, x.support().size());
  for (LeftNode v : x.support()) hist.add(v);
  return hist.deviation();
}

std::uint64_t flat_source_count(int n, int k) {
  const std::uint64_t total = std::uint64_t{1} << n;
  std::uint64_t choose = std::uint64_t{1} << k;
  if (choose > total) return 0;
  choose = std::min(choose, total - choose);
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= choose; ++i) {
    acc = acc * (total - choose + i) / i;
    if (acc > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(acc);
}

ExactVerdict verify_exact(ExtractorInstance& e, std::uint64_t budget,
                          unsigned workers) {
  const std::uint64_t count = flat_source_count(e.n(), e.k());
  if (count > budget)
    throw BudgetExceeded("binomial(2^" + std::to_string(e.n()) + ", 2^" +
                         std::to_string(e.k()) + ") = " +
                         (count == UINT64_MAX ? std::string("overflow")
                                              : std::to_string(count)) +
                         " flat sources exceed the exact budget " +
                         std::to_string(budget) + "; use a sampled audit");
  const std::uint64_t support = std::uint64_t{1} << e.k();
  const std::uint64_t n_left = std::uint64_t{1} << e.n();
  const std::uint64_t firsts = n_left - support + 1;

  // Per-first-element results keep the merge independent of scheduling.
  std::vector<Best> results(firsts);
  std::atomic<std::uint64_t> next{0};
  auto work = [&] {
    for (std::uint64_t f; (f = next.fetch_add(1)) < firsts;)
      enumerate_from(e, f, support, results[f]);
  };
  workers = std::max(1u, workers);
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  Best best;
  for (auto& r : results) {
    best.checked += r.checked;
    if (r.sum > best.sum) {
      best.sum = r.sum;
      best.witness = std::move(r.witness);
    }
  }
  ExactVerdict verdict;
  verdict.sources_checked = best.checked;
  const std::int64_t m = std::int64_t{1} << e.m();
  const std::int64_t target = static_cast<std::int64_t>(support) << e.d();
  verdict.worst = Rational(best.sum, 2 * target * m);
  verdict.witness = FlatSource(LeftSubset(e.n(), best.witness));
  verdict.verified = verdict.worst < e.eps();
  if (verdict.verified) {
    e.set_status({Verification::exact_verified, 0, verdict.worst});
  } else if (e.status().kind == Verification::exact_verified) {
    e.set_status({});
  }
  return verdict;
}

Rational audit_sampled(ExtractorInstance& e, std::uint64_t trials,
                       std::uint64_t seed) {
  const std::uint64_t support = std::uint64_t{1} << e.k();
  const std::uint64_t n_left = std::uint64_t{1} << e.n();
  Rng rng(seed);
  std::vector<LeftNode> pool(n_left);
  Rational worst(0);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    std::iota(pool.begin(), pool.end(), 0);
    // Partial Fisher-Yates: the first `support` slots form the sample.
    for (std::uint64_t i = 0; i < support; ++i)
      std::swap(pool[i], pool[i + rng.below(n_left - i)]);
    Histogram hist(e, support);
    for (std::uint64_t i = 0; i < support; ++i) hist.add(pool[i]);
    worst = std::max(worst, hist.deviation());
  }
  if (e.status().kind != Verification::exact_verified)
    e.set_status({Verification::sampled_audited, trials, worst});
  return worst;
}

ExtractorShape extractor_shape(int n, int k, const Rational& eps,
                               const ExtractorConstants& constants) {
  if (k < 0 || k > n) throw ParameterError("need 0 <= k <= n");
  const int log_inv_eps = ceil_log2_inverse(eps);
  ExtractorShape shape;
  shape.d = ceil_log2(static_cast<std::uint64_t>(std::max(n - k, 1))) +
            2 * log_inv_eps + constants.a_d;
  shape.m = k + shape.d - 2 * log_inv_eps - constants.a_m;
  if (shape.d < 0) throw ParameterError("calibrated seed length is negative");
  if (shape.m < 0) throw ParameterError("calibrated output length is negative");
  if (shape.m > k + shape.d) throw ParameterError("need m <= k + d (A_m < 0?)");
  return shape;
}

ExtractorInstance random_extractor(int n, int k, int d, int m,
                                   const Rational& eps, std::uint64_t seed) {
  if (n + d > 28) throw ParameterError("extractor table too large");
  Rng rng(seed);
  std::vector<std::uint32_t> table(std::size_t{1} << (n + d));
  for (auto& z : table) z = static_cast<std::uint32_t>(rng.bits(m));
  return ExtractorInstance(n, k, d, m, eps, std::move(table), seed);
}

SearchFailed::SearchFailed(ExtractorInstance best, Rational worst)
    : std::runtime_error("no verified extractor within the retry cap; best worst "
                         "deviation " + to_string(worst)),
      best_(std::move(best)),
      worst_(worst) {}

ExtractorInstance search_extractor(int n, int k, const Rational& eps,
                                   std::uint64_t seed,
                                   const SearchOptions& options) {
  const ExtractorShape shape = extractor_shape(n, k, eps, options.constants);
  const bool exact = flat_source_count(n, k) <= options.exact_budget;
  if (!exact && options.sampled_trials == 0)
    throw BudgetExceeded("exact verification of n=" + std::to_string(n) +
                         " k=" + std::to_string(k) +
                         " is over budget and no sampled regime was accepted");
  std::optional<ExtractorInstance> best;
  Rational best_worst(2);
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    const std::uint64_t s = derive_seed(seed, {static_cast<std::uint64_t>(attempt)});
    ExtractorInstance e = random_extractor(n, k, shape.d, shape.m, eps, s);
    Rational worst;
    if (exact) {
      worst = verify_exact(e, options.exact_budget, options.workers).worst;
    } else {
      worst = audit_sampled(e, options.sampled_trials, derive_seed(s, {0x5a}));
    }
    if (e.certified()) return e;
    if (worst < best_worst) {
      best_worst = worst;
      best = e;
    }
  }
  throw SearchFailed(*best, best_worst);
}

Rational avg_right_degree(const LeftRegularGraph& g, const LeftSubset& b) {
  return average_right_degree(g, b);
}

RichLemmaAudit audit_rich_lemma(const ExtractorInstance& e, const Rational& a,
                                const LeftSubset& b) {
  if (e.status().kind != Verification::exact_verified)
    throw Refused("rich-node lemma audit needs an exact-verified extractor");
  RichLemmaAudit audit;
  audit.s = static_cast<std::uint64_t>(ceil(a / e.eps()));
  audit.delta = std::min(Rational(2) * e.eps(), Rational(1));
  audit.allowed = std::uint64_t{1} << e.k();
  if (b.empty()) return audit;
  const LeftRegularGraph g = e.graph();
  if (avg_right_degree(g, b) > a)
    throw ParameterError("average right degree of B exceeds a = " + to_string(a));
  const auto report = rich_nodes(restrict(g, b), b, std::max<std::uint64_t>(audit.s, 1),
                                 audit.delta);
  audit.offending.assign(report.non_rich.begin(), report.non_rich.end());
  return audit;
}

void write_extractor(std::ostream& out, const ExtractorInstance& e) {
  out << "EXTRACTOR n=" << e.n() << " k=" << e.k() << " d=" << e.d()
      << " m=" << e.m() << " eps=" << to_string(e.eps())
      << " status=" << to_string(e.status()) << " seed=" << e.seed() << "\n";
  const int width = std::max(1, (e.m() + 3) / 4);
  const std::uint64_t degree = std::uint64_t{1} << e.d();
  std::string line;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << e.n()); ++x) {
    line.clear();
    for (std::uint64_t y = 0; y < degree; ++y) line += to_hex(e(x, y), width);
    out << line << "\n";
  }
}

namespace {

std::string header_field(const std::string& header, const std::string& key) {
  const std::string tag = " " + key + "=";
  auto pos = header.find(tag);
  if (pos == std::string::npos) throw ParseError(1, "missing field " + key);
  pos += tag.size();
  return header.substr(pos, header.find(' ', pos) - pos);
}

int header_int(const std::string& header, const std::string& key) {
  const std::string v = header_field(header, key);
  int out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ParseError(1, "bad integer for " + key);
  return out;
}

}  // namespace

ExtractorInstance read_extractor(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || !header.starts_with("EXTRACTOR "))
    throw ParseError(1, "expected EXTRACTOR header");
  const int n = header_int(header, "n");
  const int k = header_int(header, "k");
  const int d = header_int(header, "d");
  const int m = header_int(header, "m");
  if (n < 0 || n > 16 || d < 0 || n + d > 28 || m < 0 || m > 31)
    throw ParseError(1, "extractor dimensions out of range");
  Rational eps;
  VerificationStatus status;
  std::uint64_t seed = 0;
  try {
    eps = parse_rational(header_field(header, "eps"));
    status = parse_status(header_field(header, "status"));
    seed = std::stoull(header_field(header, "seed"));
  } catch (const std::exception& ex) {
    throw ParseError(1, ex.what());
  }

  const std::uint64_t degree = std::uint64_t{1} << d;
  const std::uint64_t rows = std::uint64_t{1} << n;
  const std::size_t width = static_cast<std::size_t>(std::max(1, (m + 3) / 4));
  std::vector<std::uint32_t> table(rows * degree, 0);
  std::vector<bool> filled(table.size(), false);
  std::string line;
  std::size_t lineno = 1;
  std::uint64_t dense_row = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      if (line.find("->") != std::string::npos) {
        std::istringstream ss(line);
        std::string xs, ys, arrow, zs;
        if (!(ss >> xs >> ys >> arrow >> zs) || arrow != "->")
          throw ParseError(lineno, "expected '<x> <y> -> <z>'");
        const std::uint64_t x = parse_hex(xs), y = parse_hex(ys), z = parse_hex(zs);
        if (x >= rows || y >= degree) throw ParseError(lineno, "index out of range");
        if ((z >> m) != 0) throw ParseError(lineno, "output wider than m bits");
        table[(x << d) | y] = static_cast<std::uint32_t>(z);
        filled[(x << d) | y] = true;
      } else {
        if (dense_row >= rows) throw ParseError(lineno, "too many rows");
        if (line.size() != width * degree)
          throw ParseError(lineno, "dense row must hold 2^d entries of " +
                                       std::to_string(width) + " hex digits");
        for (std::uint64_t y = 0; y < degree; ++y) {
          const std::uint64_t z = parse_hex(std::string_view(line).substr(y * width, width));
          if ((z >> m) != 0) throw ParseError(lineno, "output wider than m bits");
          table[(dense_row << d) | y] = static_cast<std::uint32_t>(z);
          filled[(dense_row << d) | y] = true;
        }
        ++dense_row;
      }
    } catch (const InputError& ex) {
      throw ParseError(lineno, ex.what());
    }
  }
  if (std::find(filled.begin(), filled.end(), false) != filled.end())
    throw ParseError(lineno, "extractor table incomplete");
  try {
    ExtractorInstance e(n, k, d, m, eps, std::move(table), seed);
    e.set_status(status);
    return e;
  } catch (const std::exception& ex) {
    throw ParseError(1, ex.what());
  }
}

}  // namespace shortlist

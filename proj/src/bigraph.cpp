#include "shortlist/bigraph.hpp"

#include "shortlist/bits.hpp"
#include "shortlist/errors.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace shortlist {

LeftSubset::LeftSubset(int n, std::vector<LeftNode> members)
    : n_(n), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (!members_.empty() && n < 64 && (members_.back() >> n) != 0)
    throw InputError("left node wider than " + std::to_string(n) + " bits");
}

LeftSubset LeftSubset::full(int n) {
  std::vector<LeftNode> all(std::size_t{1} << n);
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return LeftSubset(n, std::move(all));
}

bool LeftSubset::contains(LeftNode x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

LeftSubset LeftSubset::intersect(const LeftSubset& other) const {
  std::vector<LeftNode> out;
  std::set_intersection(members_.begin(), members_.end(), other.members_.begin(),
                        other.members_.end(), std::back_inserter(out));
  return LeftSubset(n_, std::move(out));
}

bool LeftSubset::is_subset_of(const LeftSubset& other) const {
  return std::includes(other.members_.begin(), other.members_.end(),
                       members_.begin(), members_.end());
}

LeftRegularGraph::LeftRegularGraph(int n, int d, RightId right_size,
                                   Oracle oracle, std::string label)
    : n_(n),
      d_(d),
      right_size_(right_size),
      oracle_(std::make_shared<const Oracle>(std::move(oracle))),
      label_(std::move(label)) {
  if (n < 0 || n > 40) throw ParameterError("left bit-length out of range");
  if (d < 0 || d > 48) throw ParameterError("log2 degree out of range");
  if (right_size == 0) throw ParameterError("right set must be nonempty");
}

LeftRegularGraph LeftRegularGraph::from_table(int n, int d, RightId right_size,
                                              std::vector<RightId> table,
                                              std::string label) {
  if (table.size() != (std::size_t{1} << (n + d)))
    throw InputError("edge table has wrong size");
  for (RightId z : table)
    if (z >= right_size) throw InputError("right id out of range in table");
  auto shared = std::make_shared<const std::vector<RightId>>(std::move(table));
  return LeftRegularGraph(
      n, d, right_size,
      [shared, d](LeftNode x, std::uint64_t j) { return (*shared)[(x << d) | j]; },
      std::move(label));
}

const LeftSubset& LeftRegularGraph::domain() const {
  if (!domain_) throw InputError("graph is not restricted");
  return *domain_;
}

std::uint64_t LeftRegularGraph::left_size() const {
  return domain_ ? domain_->size() : (std::uint64_t{1} << n_);
}

bool LeftRegularGraph::has_left(LeftNode x) const {
  if ((x >> n_) != 0) return false;
  return !domain_ || domain_->contains(x);
}

RightId LeftRegularGraph::neighbor(LeftNode x, std::uint64_t j) const {
  if ((x >> n_) != 0)
    throw InputError("left node has more than " + std::to_string(n_) + " bits");
  if (domain_ && !domain_->contains(x))
    throw InputError("left node not in the restricted domain");
  if (j >= degree()) throw InputError("edge index out of range");
  return (*oracle_)(x, j);
}

std::vector<RightId> LeftRegularGraph::neighbors(LeftNode x) const {
  std::vector<RightId> out(degree());
  for (std::uint64_t j = 0; j < out.size(); ++j) out[j] = neighbor(x, j);
  return out;
}

std::vector<RightId> LeftRegularGraph::materialize() const {
  if (n_ + d_ > 24) throw BudgetExceeded("graph too large to materialize");
  std::vector<RightId> out;
  out.reserve(std::size_t{1} << (n_ + d_));
  for (LeftNode x = 0; x < (LeftNode{1} << n_); ++x)
    for (std::uint64_t j = 0; j < degree(); ++j) out.push_back((*oracle_)(x, j));
  return out;
}

namespace {

void require_members(const LeftRegularGraph& g, const LeftSubset& b) {
  if (b.empty()) return;
  if (b.n() != g.n()) throw InputError("subset bit-length differs from graph");
  for (LeftNode x : b)
    if (!g.has_left(x)) throw InputError("subset member is not a left node of the graph");
}

// Distinct-left-neighbor count per right id, over members of B.
std::map<RightId, std::uint64_t> distinct_in_degree(const LeftRegularGraph& g,
                                                    const LeftSubset& b) {
  std::map<RightId, std::uint64_t> count;
  std::vector<RightId> nbrs;
  for (LeftNode x : b) {
    nbrs = g.neighbors(x);
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    for (RightId z : nbrs) ++count[z];
  }
  return count;
}

}  // namespace

std::vector<RightId> s_shared_right(const LeftRegularGraph& g,
                                    const LeftSubset& b, std::uint64_t s) {
  if (s == 0) throw ParameterError("share threshold s must be >= 1");
  require_members(g, b);
  std::vector<RightId> out;
  for (auto [z, cnt] : distinct_in_degree(g, b))
    if (cnt >= s) out.push_back(z);
  return out;
}

RichnessReport rich_nodes(const LeftRegularGraph& g, const LeftSubset& b,
                          std::uint64_t s, const Rational& delta) {
  if (delta <= 0 || delta > 1) throw ParameterError("delta must lie in (0,1]");
  RichnessReport report;
  report.s = s;
  report.delta = delta;
  report.s_shared_right = s_shared_right(g, b, s);
  std::vector<LeftNode> rich, non_rich;
  const std::uint64_t degree = g.degree();
  for (LeftNode x : b) {
    std::uint64_t on_shared = 0;
    for (std::uint64_t j = 0; j < degree; ++j)
      if (std::binary_search(report.s_shared_right.begin(),
                             report.s_shared_right.end(), g.neighbor(x, j)))
        ++on_shared;
    // on_shared / degree <= delta
    const bool ok = static_cast<__int128>(on_shared) * delta.denominator() <=
                    static_cast<__int128>(delta.numerator()) * degree;
    (ok ? rich : non_rich).push_back(x);
  }
  report.rich = LeftSubset(g.n(), std::move(rich));
  report.non_rich = LeftSubset(g.n(), std::move(non_rich));
  return report;
}

std::vector<RichOwnerAudit> check_rich_owner(const LeftRegularGraph& g, int ell,
                                             int c, const Rational& delta,
                                             std::span<const LeftSubset> family) {
  if (c < 0 || ell < c) throw ParameterError("need ell >= c >= 0");
  std::vector<RichOwnerAudit> out;
  for (const LeftSubset& b : family) {
    if (ell < 63 && b.size() > (std::uint64_t{1} << ell))
      throw InputError("subset of size " + std::to_string(b.size()) +
                       " exceeds 2^ell = 2^" + std::to_string(ell));
    RichOwnerAudit audit;
    audit.set_size = b.size();
    audit.non_rich = b.empty() ? 0 : rich_nodes(g, b, 2, delta).non_rich.size();
    audit.allowed = std::uint64_t{1} << (ell - c);
    audit.pass = audit.non_rich <= audit.allowed;
    out.push_back(audit);
  }
  return out;
}

LeftRegularGraph restrict(const LeftRegularGraph& g, const LeftSubset& kept) {
  if (kept.empty()) throw InputError("restriction to an empty left set");
  require_members(g, kept);
  LeftRegularGraph out = g;
  out.domain_ = std::make_shared<const LeftSubset>(kept);
  return out;
}

Rational average_right_degree(const LeftRegularGraph& g, const LeftSubset& b) {
  return Rational(static_cast<std::int64_t>(b.size() * g.degree()),
                  static_cast<std::int64_t>(g.right_size()));
}

void write_adjacency(std::ostream& out, const LeftRegularGraph& g) {
  if (g.n() + g.d() > 20) throw BudgetExceeded("adjacency files are limited to 2^20 edges");
  out << "BIGRAPH n=" << g.n() << " d=" << g.d() << " M=" << g.right_size()
      << " label=" << g.label() << "\n";
  const int digits = std::max(1, (g.n() + 3) / 4);
  auto emit = [&](LeftNode x) {
    out << to_hex(x, digits) << ":";
    for (std::uint64_t j = 0; j < g.degree(); ++j)
      out << (j == 0 ? " " : ",") << g.neighbor(x, j);
    out << "\n";
  };
  if (g.is_restricted()) {
    for (LeftNode x : g.domain()) emit(x);
  } else {
    for (LeftNode x = 0; x < (LeftNode{1} << g.n()); ++x) emit(x);
  }
}

namespace {

std::string field(const std::string& header, const std::string& key,
                  std::size_t line) {
  const std::string tag = " " + key + "=";
  auto pos = header.find(tag);
  if (pos == std::string::npos) throw ParseError(line, "missing field " + key);
  pos += tag.size();
  if (key == "label") return header.substr(pos);
  return header.substr(pos, header.find(' ', pos) - pos);
}

std::uint64_t to_u64(const std::string& s, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || s.empty())
    throw ParseError(line, "expected an unsigned integer, got '" + s + "'");
  return v;
}

}  // namespace

LeftRegularGraph read_adjacency(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || !header.starts_with("BIGRAPH "))
    throw ParseError(1, "expected BIGRAPH header");
  const int n = static_cast<int>(to_u64(field(header, "n", 1), 1));
  const int d = static_cast<int>(to_u64(field(header, "d", 1), 1));
  const RightId m = to_u64(field(header, "M", 1), 1);
  const std::string label = field(header, "label", 1);
  if (n + d > 20) throw ParseError(1, "adjacency files are limited to 2^20 edges");
  const std::uint64_t degree = std::uint64_t{1} << d;

  std::vector<RightId> table(std::size_t{1} << (n + d), 0);
  std::vector<LeftNode> seen;
  std::string line;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(lineno, "expected '<hex>: ...'");
    LeftNode x;
    try {
      x = parse_hex(line.substr(0, colon));
    } catch (const InputError& e) {
      throw ParseError(lineno, e.what());
    }
    if ((x >> n) != 0) throw ParseError(lineno, "left node out of range");
    std::stringstream rest(line.substr(colon + 1));
    std::string item;
    std::uint64_t j = 0;
    while (std::getline(rest, item, ',')) {
      const auto first = item.find_first_not_of(' ');
      if (first == std::string::npos) throw ParseError(lineno, "empty entry");
      if (j >= degree) throw ParseError(lineno, "more than 2^d entries");
      const RightId z = to_u64(item.substr(first), lineno);
      if (z >= m) throw ParseError(lineno, "right id >= M");
      table[(x << d) | j] = z;
      ++j;
    }
    if (j != degree) throw ParseError(lineno, "expected exactly 2^d entries");
    seen.push_back(x);
  }
  auto g = LeftRegularGraph::from_table(n, d, m, std::move(table), label);
  LeftSubset domain(n, seen);
  if (domain.size() != seen.size()) throw ParseError(lineno, "duplicate left node");
  if (domain.size() == (std::uint64_t{1} << n)) return g;
  return restrict(g, domain);
}

}  // namespace shortlist

#include "shortlist/rich_owner.hpp"

#include "shortlist/errors.hpp"
#include "shortlist/random.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <map>
#include <sstream>

namespace shortlist {

using boost::multiprecision::cpp_int;

ExtractorSource searching_source(std::uint64_t master, SearchOptions options) {
  return [master, options](int n, int k, const Rational& eps) {
    const std::uint64_t seed =
        derive_seed(master, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k),
                             static_cast<std::uint64_t>(eps.numerator()),
                             static_cast<std::uint64_t>(eps.denominator())});
    return search_extractor(n, k, eps, seed, options);
  };
}

RichOwnerGraph::RichOwnerGraph(RichOwnerParams params, ExtractorInstance extractor,
                               std::uint64_t a, SplitGraph split)
    : params_(params), extractor_(std::move(extractor)), a_(a), split_(std::move(split)) {}

namespace {

double log_term(const RichOwnerParams& p) {
  const double ratio = static_cast<double>(p.n) * static_cast<double>(p.delta.denominator()) /
                       static_cast<double>(p.delta.numerator());
  return p.c + std::log2(ratio);
}

// v <= K (c + log2(n/delta))  <=>  2^v * num^K <= (2^c * n * den)^K.
bool below_scaled_log(int v, int big_k, const RichOwnerParams& p) {
  if (v <= 0) return true;
  const cpp_int base = (cpp_int(1) << p.c) * p.n * p.delta.denominator();
  const cpp_int lhs = (cpp_int(1) << v) * boost::multiprecision::pow(cpp_int(p.delta.numerator()),
                                                                     static_cast<unsigned>(big_k));
  return lhs <= boost::multiprecision::pow(base, static_cast<unsigned>(big_k));
}

}  // namespace

double RichOwnerGraph::d_ratio() const { return d_out() / log_term(params_); }

double RichOwnerGraph::m_ratio() const {
  return (m_out() - params_.ell) / log_term(params_);
}

bool RichOwnerGraph::within_bounds(const BuilderConstants& k) const {
  return below_scaled_log(d_out(), k.k_d, params_) &&
         below_scaled_log(m_out() - params_.ell, k.k_m, params_);
}

namespace {

RichOwnerGraph assemble(const RichOwnerParams& p, ExtractorInstance e) {
  // a = ceil(|B| * D / M) with |B| <= min(2^ell, 2^n).
  const int exponent = std::min(p.ell, p.n) + e.d() - e.m();
  if (exponent > 40) throw ParameterError("average degree bound too large");
  const std::uint64_t a = exponent <= 0 ? 1 : std::uint64_t{1} << exponent;
  const auto s = ceil(Rational(static_cast<std::int64_t>(a)) / e.eps());
  const SplitParams sp = SplitParams::make(static_cast<std::uint64_t>(s), p.n, e.eps()).padded();
  SplitGraph split(e.graph(), sp);
  return RichOwnerGraph(p, std::move(e), a, std::move(split));
}

}  // namespace

RichOwnerGraph build_rich_owner(int n, int ell, int c, const Rational& delta,
                                const ExtractorSource& source) {
  if (n < 1) throw ParameterError("rich owner graph needs n >= 1");
  if (c < 0 || ell <= c) throw ParameterError("need ell > c >= 0 (k = ell - c >= 1)");
  if (delta <= 0 || delta > 1) throw ParameterError("delta must lie in (0,1]");
  const Rational eps = delta / 4;
  const int k = std::min(ell - c, n);
  ExtractorInstance e = source(n, k, eps);
  if (e.n() != n || e.k() != k || e.eps() != eps)
    throw InputError("extractor source returned mismatched parameters");
  if (!e.certified()) throw Refused("rich owner build needs a certified extractor");
  return assemble(RichOwnerParams{n, ell, c, delta}, std::move(e));
}

RightId neighbor_at(const RichOwnerGraph& g, LeftNode x, std::uint64_t j) {
  if (j >= g.split().degree()) throw InputError("edge index out of range");
  return g.split().neighbor(x, j);
}

RichOwnerManifest manifest_of(const RichOwnerGraph& g) {
  RichOwnerManifest m;
  m.params = g.params();
  m.eps = g.eps();
  m.k = g.k();
  m.s = g.s();
  m.t = g.t();
  m.d_out = g.d_out();
  m.m_out = g.m_out();
  m.extractor_seed = g.extractor().seed();
  m.ext_d = g.extractor().d();
  m.ext_m = g.extractor().m();
  m.status = to_string(g.extractor().status());
  return m;
}

std::string format_manifest(const RichOwnerManifest& m) {
  std::ostringstream out;
  out << "RICHOWNER n=" << m.params.n << " ell=" << m.params.ell << " c=" << m.params.c
      << " delta=" << to_string(m.params.delta) << " eps=" << to_string(m.eps)
      << " k=" << m.k << " s=" << m.s << " t=" << m.t << " d_out=" << m.d_out
      << " m_out=" << m.m_out << " extractor_seed=" << m.extractor_seed
      << " ext_d=" << m.ext_d << " ext_m=" << m.ext_m << " status=" << m.status;
  return out.str();
}

RichOwnerManifest parse_manifest(const std::string& line) {
  std::istringstream in(line);
  std::string word;
  if (!(in >> word) || word != "RICHOWNER") throw InputError("not a RICHOWNER manifest");
  std::map<std::string, std::string> kv;
  while (in >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos) throw InputError("malformed manifest field '" + word + "'");
    kv[word.substr(0, eq)] = word.substr(eq + 1);
  }
  auto get = [&](const char* key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw InputError(std::string("manifest lacks ") + key);
    return it->second;
  };
  RichOwnerManifest m;
  try {
    m.params.n = std::stoi(get("n"));
    m.params.ell = std::stoi(get("ell"));
    m.params.c = std::stoi(get("c"));
    m.params.delta = parse_rational(get("delta"));
    m.eps = parse_rational(get("eps"));
    m.k = std::stoi(get("k"));
    m.s = std::stoull(get("s"));
    m.t = std::stoull(get("t"));
    m.d_out = std::stoi(get("d_out"));
    m.m_out = std::stoi(get("m_out"));
    m.extractor_seed = std::stoull(get("extractor_seed"));
    m.ext_d = std::stoi(get("ext_d"));
    m.ext_m = std::stoi(get("ext_m"));
  } catch (const std::logic_error&) {
    throw InputError("malformed number in manifest");
  }
  m.status = get("status");
  return m;
}

RichOwnerGraph rebuild(const RichOwnerManifest& m) {
  ExtractorInstance e =
      random_extractor(m.params.n, m.k, m.ext_d, m.ext_m, m.eps, m.extractor_seed);
  e.set_status(parse_status(m.status));
  if (!e.certified()) throw Refused("manifest records an uncertified extractor");
  RichOwnerGraph g = assemble(m.params, std::move(e));
  if (!(manifest_of(g) == m)) throw InputError("rebuilt graph does not match its manifest");
  return g;
}

}  // namespace shortlist

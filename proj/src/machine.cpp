#include "shortlist/machine.hpp"

#include "shortlist/errors.hpp"

#include <algorithm>
#include <fstream>
#include <map>

namespace shortlist {

std::uint64_t step_budget(std::size_t program_length) {
  if (program_length >= 12) return kBudgetCap;  // 4096 * 2^12 > 2^22
  return std::min(kBudgetFactor << program_length, kBudgetCap);
}

namespace {

RunResult bottom(std::uint64_t steps) { return RunResult{std::nullopt, steps}; }

}  // namespace

RunResult run_program(const ToyMachine& m, const BitString& p) {
  const std::uint64_t budget = step_budget(p.size());
  const std::uint64_t base_steps = p.size();
  if (p.size() < kHeaderBits) return bottom(base_steps);
  BitReader in(p);
  const std::uint64_t mode = *in.fixed(kHeaderBits);

  if (mode == kModeLiteral) return RunResult{in.rest(), base_steps};

  if (mode == kModeRepeat) {
    const auto len = in.gamma();
    if (!len) return bottom(base_steps);
    const auto block = in.take(*len);
    if (!block) return bottom(base_steps);
    const auto count = in.gamma();
    if (!count || !in.at_end()) return bottom(base_steps);
    const std::uint64_t remaining = budget > base_steps ? budget - base_steps : 0;
    if (*count > remaining / *len) return bottom(budget);
    return RunResult{block->repeated(*count), base_steps + *len * *count};
  }

  if (mode == kModeGraph) {
    if (m.resolver() == nullptr) return bottom(base_steps);
    const auto decoded = decode_graph_program(p);
    if (!decoded) return bottom(base_steps);
    const auto width = m.resolver()->z_width(decoded->fields);
    if (!width || decoded->z_bits.size() != static_cast<std::size_t>(*width))
      return bottom(base_steps);
    const RightId z = decoded->z_bits.empty() ? 0 : decoded->z_bits.value();
    const std::uint64_t remaining = budget > base_steps ? budget - base_steps : 0;
    const GraphOutcome out = m.resolver()->first_owner(decoded->fields, z, remaining);
    if (!out.x) return bottom(base_steps + out.steps);
    return RunResult{BitString::from_value(*out.x, decoded->fields.n), base_steps + out.steps};
  }

  return bottom(base_steps);
}

BitString literal_program(const BitString& x) {
  BitString p;
  p.append(kModeLiteral, kHeaderBits);
  p.append(x);
  return p;
}

BitString repeat_program(const BitString& block, std::uint64_t count) {
  if (block.empty() || count == 0) throw InputError("repeat needs a nonempty block and count >= 1");
  BitString p;
  p.append(kModeRepeat, kHeaderBits);
  p.append(gamma_encode(block.size()));
  p.append(block);
  p.append(gamma_encode(count));
  return p;
}

BitString graph_program(const GraphFields& f, RightId z, int z_width) {
  if (f.ell < 1 || f.c < 0 || f.inv_delta < 1 || f.n < 1)
    throw InputError("graph program fields out of range");
  if (z_width < 0 || z_width > 64 || (z_width < 64 && (z >> z_width) != 0))
    throw InputError("right node does not fit the z field");
  BitString p;
  p.append(kModeGraph, kHeaderBits);
  p.push_back(f.augmented);
  p.append(gamma_encode(static_cast<std::uint64_t>(f.ell)));
  p.append(gamma_encode(static_cast<std::uint64_t>(f.c) + 1));
  p.append(gamma_encode(f.inv_delta));
  p.append(gamma_encode(static_cast<std::uint64_t>(f.n)));
  p.append(z, z_width);
  return p;
}

std::optional<DecodedGraphProgram> decode_graph_program(const BitString& p) {
  BitReader in(p);
  const auto mode = in.fixed(kHeaderBits);
  if (!mode || *mode != kModeGraph) return std::nullopt;
  const auto variant = in.bit();
  const auto ell = in.gamma();
  const auto c1 = in.gamma();
  const auto inv = in.gamma();
  const auto n = in.gamma();
  if (!variant || !ell || !c1 || !inv || !n) return std::nullopt;
  if (*ell > 4096 || *c1 > 4096 || *n > 64) return std::nullopt;
  DecodedGraphProgram out;
  out.fields = GraphFields{*variant, static_cast<int>(*ell), static_cast<int>(*c1 - 1), *inv,
                           static_cast<int>(*n)};
  out.z_bits = in.rest();
  return out;
}

std::string machine_definition_path() {
  return std::string(SHORTLIST_DATA_DIR) + "/machine-" + kMachineVersion + ".def";
}

std::vector<std::string> check_machine_definition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open machine definition " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key=value");
    kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  const std::map<std::string, std::string> pinned = {
      {"version", kMachineVersion},
      {"header.literal", "00"},
      {"header.repeat", "01"},
      {"header.graph", "10"},
      {"header.bottom", "11"},
      {"int.code", "elias-gamma"},
      {"budget.factor", std::to_string(kBudgetFactor)},
      {"budget.cap", std::to_string(kBudgetCap)},
      {"complexity.modes", "00,01"},
      {"rng.engine", "mt19937_64"},
      {"rng.mix", "splitmix64"},
  };
  std::vector<std::string> bad;
  for (const auto& [key, value] : pinned) {
    auto it = kv.find(key);
    if (it == kv.end() || it->second != value) bad.push_back(key);
  }
  return bad;
}

}  // namespace shortlist

#pragma once

#include "shortlist/bigraph.hpp"
#include "shortlist/bits.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace shortlist {

inline constexpr const char* kMachineVersion = "toy-v1";

// Mode headers (2 bits, first bits of every program).
inline constexpr std::uint64_t kModeLiteral = 0b00;
inline constexpr std::uint64_t kModeRepeat = 0b01;
inline constexpr std::uint64_t kModeGraph = 0b10;
inline constexpr int kHeaderBits = 2;
inline constexpr std::uint64_t kBudgetFactor = 4096;
inline constexpr std::uint64_t kBudgetCap = std::uint64_t{1} << 22;

// Step budget for a program of the given length: min(4096 * 2^len, 2^22).
std::uint64_t step_budget(std::size_t program_length);

// Fields of a mode-10 program, in encoding order after the header:
// variant bit (0 plain B, 1 augmented B), gamma(ell), gamma(c + 1),
// gamma(inv_delta), gamma(n), then z as a fixed-width field whose width is
// m_out of the graph G_{n,ell} built for (n, ell, c, 1/inv_delta).
struct GraphFields {
  bool augmented = false;
  int ell = 0;
  int c = 0;
  std::uint64_t inv_delta = 1;
  int n = 0;

  friend bool operator==(const GraphFields&, const GraphFields&) = default;
};

struct GraphOutcome {
  std::optional<LeftNode> x;
  std::uint64_t steps = 0;
};

// Supplies the semantics of mode-10 programs: the B-sets and graphs the
// program refers to. Without a resolver mode-10 programs run to bottom.
class GraphResolver {
 public:
  virtual ~GraphResolver() = default;
  // Width of the z field, or nullopt when the fields name no graph.
  virtual std::optional<int> z_width(const GraphFields& f) = 0;
  // Scans B_{n,ell} in enumeration order and returns the first member
  // adjacent to right node z. Every scanned member costs 1 + (base degree)
  // steps; exceeding `budget` yields bottom.
  virtual GraphOutcome first_owner(const GraphFields& f, RightId z, std::uint64_t budget) = 0;
};

class ToyMachine {
 public:
  ToyMachine() = default;
  explicit ToyMachine(GraphResolver* resolver) : resolver_(resolver) {}
  const char* version() const { return kMachineVersion; }
  GraphResolver* resolver() const { return resolver_; }

 private:
  GraphResolver* resolver_ = nullptr;
};

struct RunResult {
  std::optional<BitString> output;  // nullopt = bottom
  std::uint64_t steps = 0;
  bool halted() const { return output.has_value(); }
};

RunResult run_program(const ToyMachine& m, const BitString& p);

BitString literal_program(const BitString& x);
// Needs block nonempty and count >= 1.
BitString repeat_program(const BitString& block, std::uint64_t count);
BitString graph_program(const GraphFields& f, RightId z, int z_width);

struct DecodedGraphProgram {
  GraphFields fields;
  BitString z_bits;  // everything after the fixed fields
};
// Parses the header and fixed fields of a mode-10 program; nullopt if the
// program is not one.
std::optional<DecodedGraphProgram> decode_graph_program(const BitString& p);

// The machine definition file shipped with the sources.
std::string machine_definition_path();
// Checks the key=value pins of a definition file against the compiled
// constants; returns the mismatching keys.
std::vector<std::string> check_machine_definition(const std::string& path);

}  // namespace shortlist

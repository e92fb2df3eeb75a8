// Command-line front end: extractor search/verify/audit, complexity tables,
// chain builds, list/promise/profile runs, calibration report.

#include "shortlist/config.hpp"
#include "shortlist/errors.hpp"
#include "shortlist/list_approx.hpp"
#include "shortlist/random.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace shortlist;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitRefused = 2;
constexpr int kExitMismatch = 3;

struct Context {
  std::string config_path = default_config_path();
  ExperimentConfig config;
  std::string hash;

  void load() {
    config = load_config(config_path);
    if (const char* env = std::getenv("SHORTLIST_OUT")) config.output_dir = env;
    hash = config_hash(config);
  }
  std::string stamp() const {
    return "# config=" + hash + " machine=" + config.machine_version;
  }
  fs::path out_dir() const { return fs::path(config.output_dir); }
};

// Writes through one stream per file; outputs are fully formed before the
// file is touched.
void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
}

std::string delta_tag(const Rational& delta) {
  return std::to_string(delta.numerator()) + "_" + std::to_string(delta.denominator());
}

std::uint64_t inverse(const Rational& delta) {
  if (delta.numerator() != 1) throw ParameterError("delta must have the form 1/q");
  return static_cast<std::uint64_t>(delta.denominator());
}

BitString seed_bits(const std::string& hex, int r, std::uint64_t master, LeftNode x) {
  if (hex.empty()) {
    Rng rng(derive_seed(master, {0x11, x}));
    BitString s;
    for (int left = r; left > 0; left -= 64) {
      const int w = std::min(left, 64);
      s.append(rng.bits(w), w);
    }
    return s;
  }
  const std::uint64_t v = parse_hex(hex);
  if (r < 64 && (v >> r) != 0) throw InputError("seed does not fit in " + std::to_string(r) + " bits");
  return BitString::from_value(v, r);
}

LeftNode parse_x(const std::string& hex, int n) {
  const std::uint64_t x = parse_hex(hex);
  if ((x >> n) != 0) throw InputError("x does not fit in n bits");
  return x;
}

// ---- extractor ------------------------------------------------------------

int extractor_search(const Context& ctx, int n, int k, const std::string& eps_text,
                     std::uint64_t seed, std::uint64_t trials, const std::string& out_path) {
  SearchOptions opt;
  opt.constants = ExtractorConstants{ctx.config.a_d, ctx.config.a_m};
  opt.exact_budget = ctx.config.exact_budget;
  opt.sampled_trials = trials;
  opt.workers = ctx.config.workers;
  try {
    const ExtractorInstance e = search_extractor(n, k, parse_rational(eps_text), seed, opt);
    std::ostringstream text;
    write_extractor(text, e);
    if (out_path.empty())
      std::cout << text.str();
    else
      write_file(out_path, text.str());
    std::cerr << "status " << to_string(e.status()) << '\n';
    return kExitOk;
  } catch (const BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kExitRefused;
  } catch (const SearchFailed& e) {
    std::cerr << e.what() << '\n';
    return kExitFail;
  }
}

ExtractorInstance read_extractor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  return read_extractor(in);
}

int extractor_verify(const Context& ctx, const std::string& path) {
  ExtractorInstance e = read_extractor_file(path);
  try {
    const ExactVerdict v = verify_exact(e, ctx.config.exact_budget, ctx.config.workers);
    std::cout << "sources=" << v.sources_checked << " worst=" << to_string(v.worst)
              << " eps=" << to_string(e.eps()) << '\n';
    if (v.verified) {
      std::cout << "exact-verified\n";
      return kExitOk;
    }
    std::cout << "violated witness=";
    for (LeftNode x : v.witness->support().members()) std::cout << to_hex(x) << ' ';
    std::cout << '\n';
    return kExitFail;
  } catch (const BudgetExceeded& err) {
    std::cerr << "refused: " << err.what() << " (use a sampled audit)\n";
    return kExitRefused;
  }
}

int extractor_audit(const std::string& path, std::uint64_t trials, std::uint64_t seed) {
  ExtractorInstance e = read_extractor_file(path);
  const Rational worst = audit_sampled(e, trials, seed);
  std::cout << "trials=" << trials << " worst=" << to_string(worst) << " eps=" << to_string(e.eps())
            << '\n';
  return worst < e.eps() ? kExitOk : kExitFail;
}

// ---- machine --------------------------------------------------------------

int machine_table(const Context& ctx, int n_max, const std::string& out_path) {
  const ComplexityTable t = complexity_table(n_max);
  std::ostringstream text;
  write_table(text, t);
  if (out_path.empty())
    std::cout << text.str();
  else
    write_file(out_path, text.str());
  std::cerr << ctx.stamp() << " e_const=" << t.e_const() << '\n';
  return kExitOk;
}

int machine_run(const Context& ctx, const std::string& program) {
  Lab lab(lab_config(ctx.config));
  const RunResult r = run_program(lab.machine(), BitString::from_text(program));
  std::cout << "steps=" << r.steps << " output=" << (r.output ? r.output->to_text() : "bottom")
            << '\n';
  return kExitOk;
}

// ---- build ----------------------------------------------------------------

std::string chain_summary(const Context& ctx, const Chain& chain) {
  std::ostringstream out;
  out << ctx.stamp() << '\n'
      << "CHAIN n=" << chain.n << " delta=" << to_string(chain.delta) << " e=" << chain.e
      << " levels=" << chain.bottom() << ".." << chain.top() << " r=" << chain.seed_bits() << '\n';
  for (const auto& l : chain.levels) out << format_manifest(manifest_of(*l->graph)) << '\n';
  return out.str();
}

std::string bset_text(const Context& ctx, const ChainLevel& l) {
  std::ostringstream out;
  out << ctx.stamp() << '\n'
      << "BSET n=" << l.b.n << " ell=" << l.ell << " size=" << l.b.size()
      << " first=" << l.b.first_type.size() << " second=" << l.b.second_type.size()
      << " non_rich=" << l.non_rich.size() << '\n';
  for (LeftNode x : l.b.order) {
    const bool second = std::binary_search(l.b.second_type.begin(), l.b.second_type.end(), x);
    out << BitString::from_value(x, l.b.n).to_hex() << (second ? " second" : " first") << '\n';
  }
  return out.str();
}

fs::path chain_dir(const Context& ctx, int n, const Rational& delta) {
  return ctx.out_dir() / ("chain-n" + std::to_string(n) + "-d" + delta_tag(delta));
}

int build_chain(const Context& ctx, int n, const Rational& delta) {
  Lab lab(lab_config(ctx.config));
  const Chain& chain = lab.chain(n, delta);
  const BuilderConstants k = builder_constants(ctx.config);
  bool ok = true;
  for (const auto& l : chain.levels) {
    const std::uint64_t allowed = std::uint64_t{1} << std::max(l->ell - 2, 0);
    const bool size_ok = l->b.size() <= (std::uint64_t{1} << std::min(l->ell, 62));
    const bool rich_ok = l->non_rich.size() <= allowed;
    const bool bounds_ok = l->graph->within_bounds(k);
    std::cout << "level ell=" << l->ell << " |B|=" << l->b.size() << " non_rich=" << l->non_rich.size()
              << "/" << allowed << " d_out=" << l->graph->d_out() << " m_out=" << l->graph->m_out()
              << (size_ok && rich_ok && bounds_ok ? " ok" : " FAILED") << '\n';
    if (!(size_ok && rich_ok && bounds_ok)) {
      std::cerr << "level " << l->ell << " audit failed: |B|=" << l->b.size()
                << " non_rich=" << l->non_rich.size() << " allowed=" << allowed
                << (bounds_ok ? "" : " (outside K_d/K_m bounds)") << '\n';
      ok = false;
      break;
    }
  }
  if (!ok) return kExitFail;
  const fs::path dir = chain_dir(ctx, n, delta);
  write_file(dir / "chain.manifest", chain_summary(ctx, chain));
  for (const auto& l : chain.levels)
    write_file(dir / ("level-" + std::to_string(l->ell) + ".bset"), bset_text(ctx, *l));
  std::cout << "wrote " << dir.string() << '\n';
  return kExitOk;
}

// A previously built chain directory must match this config and build.
bool check_chain_dir(const Context& ctx, Lab& lab, int n, const Rational& delta,
                     const std::string& dir) {
  std::ifstream in(fs::path(dir) / "chain.manifest");
  if (!in) throw InputError("no chain.manifest in " + dir);
  std::stringstream buf;
  buf << in.rdbuf();
  if (buf.str() != chain_summary(ctx, lab.chain(n, delta))) {
    std::cerr << "refused: " << dir << " does not match this config and build\n";
    return false;
  }
  return true;
}

// ---- run ------------------------------------------------------------------

std::string entry_line(const AssociatedProgram& e) {
  std::ostringstream out;
  out << "level=" << e.fields.ell << " z=" << to_hex(e.z) << " edge=" << to_hex(e.edge)
      << " seed_prefix=" << e.seed_bits << " length=" << e.length()
      << " program=" << e.bits.to_hex();
  return out.str();
}

int run_list(const Context& ctx, int n, const Rational& delta, const std::string& x_hex,
             const std::string& seed_hex, const std::string& dir) {
  Lab lab(lab_config(ctx.config));
  if (!dir.empty() && !check_chain_dir(ctx, lab, n, delta, dir)) return kExitMismatch;
  const LeftNode x = parse_x(x_hex, n);
  const Chain& chain = lab.chain(n, delta);
  const BitString seed = seed_bits(seed_hex, chain.seed_bits(), ctx.config.master_seed, x);
  const auto list = generate_list(lab, x, n, inverse(delta), seed);
  const int c_x = lab.table().C(x, n);
  const ToyMachine machine = lab.machine();
  const BitString want = BitString::from_value(x, n);
  bool hit = false;
  int best = -1;
  std::ostringstream out;
  out << ctx.stamp() << '\n'
      << "LIST n=" << n << " delta=" << to_string(delta) << " x=" << want.to_hex()
      << " seed=" << seed.to_hex() << " entries=" << list.entries.size() << '\n';
  for (const auto& e : list.entries) {
    const RunResult r = run_program(machine, e.bits);
    const bool outputs_x = r.output && *r.output == want;
    const int overhead = static_cast<int>(e.length()) - c_x;
    if (outputs_x && (best < 0 || overhead < best)) best = overhead;
    if (outputs_x && overhead <= ctx.config.c_star) hit = true;
    out << entry_line(e) << " output=" << (r.output ? r.output->to_hex() : "bottom") << '\n';
  }
  out << "x=" << to_hex(x) << " seed=" << to_hex(seed_prefix(seed, std::min<int>(64, seed.size())))
      << " hit=" << (hit ? 1 : 0) << " best_overhead=" << best << '\n';
  const fs::path path = ctx.out_dir() / ("list-n" + std::to_string(n) + "-d" + delta_tag(delta) +
                                         "-x" + to_hex(x) + "-s" + seed.to_hex().substr(seed.to_hex().find(':') + 1) + ".txt");
  write_file(path, out.str());
  std::cout << out.str();
  return kExitOk;
}

int run_promise(const Context& ctx, int n, const Rational& delta, const std::string& x_hex,
                int c_of_x, const std::string& seed_hex) {
  Lab lab(lab_config(ctx.config));
  const LeftNode x = parse_x(x_hex, n);
  const int true_c = lab.table().C(x, n);
  const bool violated = c_of_x != true_c;
  const int ell = c_of_x + 1, c = promise_c(n);
  int r = 0;
  if (ell > c) r = lab.graph(RichOwnerParams{n, ell, c, delta}).d_out();
  const BitString seed = seed_bits(seed_hex, r, ctx.config.master_seed, x);
  const PromiseResult res = short_program_given_C(lab, x, n, c_of_x, inverse(delta), seed);
  const RunResult run = run_program(lab.machine(), res.program.bits);
  std::ostringstream out;
  out << ctx.stamp() << '\n'
      << "PROMISE n=" << n << " delta=" << to_string(delta) << " x=" << BitString::from_value(x, n).to_hex()
      << " C_of_x=" << c_of_x << " ell=" << res.ell << " c=" << res.c
      << " promise=" << (violated ? "violated" : "kept") << (res.degenerate ? " degenerate=1" : "")
      << '\n'
      << "program=" << res.program.bits.to_hex() << " length=" << res.program.length()
      << " output=" << (run.output ? run.output->to_hex() : "bottom") << '\n';
  std::cout << out.str();
  write_file(ctx.out_dir() / ("promise-n" + std::to_string(n) + "-x" + to_hex(x) + ".txt"), out.str());
  return kExitOk;
}

int run_profile(const Context& ctx, int n, const Rational& delta, int c_star, bool decimals) {
  Lab lab(lab_config(ctx.config));
  const std::uint64_t inv = inverse(delta);
  const Rational target = Rational(1) - delta;
  std::ostringstream out;
  out << ctx.stamp() << '\n'
      << "PROFILE n=" << n << " delta=" << to_string(delta) << " c_star=" << c_star << '\n';
  bool all = true;
  Rational worst(1);
  for (LeftNode x = 0; x < (LeftNode{1} << n); ++x) {
    const SuccessProfile p = exact_success_profile(lab, x, n, inv, c_star);
    all = all && p.at_least(target);
    worst = std::min(worst, p.probability());
    out << "x=" << to_hex(x) << " hits=" << p.hits << "/" << (std::uint64_t{1} << p.r)
        << " best_overhead=" << p.best_overhead;
    if (decimals) out << " p=" << to_decimal(p.probability());
    out << '\n';
  }
  out << "summary min_probability=" << to_string(worst) << " target=" << to_string(target)
      << " pass=" << (all ? 1 : 0) << '\n';
  std::cout << out.str();
  write_file(ctx.out_dir() / ("profile-n" + std::to_string(n) + "-d" + delta_tag(delta) + ".txt"),
             out.str());
  return all ? kExitOk : kExitFail;
}

// ---- report ---------------------------------------------------------------

int report(const Context& ctx, int n, const Rational& delta) {
  Lab lab(lab_config(ctx.config));
  const Calibration cal = calibrate(lab, n, inverse(delta));
  const Chain& chain = lab.chain(n, delta);
  std::ostringstream out;
  out << ctx.stamp() << '\n'
      << "REPORT n=" << n << " delta=" << to_string(delta) << '\n'
      << "c_star measured=" << cal.c_star << " frozen=" << ctx.config.c_star << '\n'
      << "k_len measured=" << to_decimal(Rational(static_cast<std::int64_t>(cal.k_len * 1e6), 1000000))
      << " pinned=" << ctx.config.k_len << '\n';
  for (const auto& l : chain.levels)
    out << "level ell=" << l->ell << " d_ratio=" << l->graph->d_ratio()
        << " m_ratio=" << l->graph->m_ratio() << '\n';
  std::cout << out.str();
  write_file(ctx.out_dir() / ("report-n" + std::to_string(n) + "-d" + delta_tag(delta) + ".txt"),
             out.str());
  return cal.c_star == ctx.config.c_star ? kExitOk : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shortlist: list approximation for short programs on a toy machine"};
  app.require_subcommand(1);
  Context ctx;
  app.add_option("--config", ctx.config_path, "key=value configuration file");

  int exit_code = kExitOk;

  // extractor
  auto* ext = app.add_subcommand("extractor", "search, verify, or audit extractor tables");
  ext->require_subcommand(1);
  int n = 4, k = 2;
  std::string eps = "1/2", in_path, out_path;
  std::uint64_t seed = 1, trials = 0;
  auto* search = ext->add_subcommand("search", "random search with verification");
  search->add_option("--n", n)->required();
  search->add_option("--k", k)->required();
  search->add_option("--eps", eps)->required();
  search->add_option("--seed", seed);
  search->add_option("--trials", trials, "accept a sampled audit with this many trials");
  search->add_option("--out", out_path);
  auto* verify = ext->add_subcommand("verify", "exact verification over all flat sources");
  verify->add_option("--in", in_path)->required();
  auto* audit = ext->add_subcommand("audit", "sampled audit");
  audit->add_option("--in", in_path)->required();
  audit->add_option("--trials", trials)->required();
  audit->add_option("--seed", seed);

  // machine
  auto* mach = app.add_subcommand("machine", "toy machine utilities");
  mach->require_subcommand(1);
  int n_max = 12;
  std::string program;
  auto* table = mach->add_subcommand("table", "exact complexity table");
  table->add_option("--n-max", n_max);
  table->add_option("--out", out_path);
  auto* mrun = mach->add_subcommand("run", "run one program");
  mrun->add_option("--program", program, "program as 0/1 text")->required();

  // build
  auto* build = app.add_subcommand("build", "build graphs");
  build->require_subcommand(1);
  std::string delta_text = "1/4";
  auto* bchain = build->add_subcommand("chain", "augmented chain with per-level audits");
  bchain->add_option("--n", n)->required();
  bchain->add_option("--delta", delta_text);

  // run
  auto* run = app.add_subcommand("run", "list, promise, and profile experiments");
  run->require_subcommand(1);
  std::string x_hex, seed_hex, dir;
  int c_of_x = 0, c_star = -1;
  bool decimals = false;
  auto* rlist = run->add_subcommand("list", "one candidate list");
  rlist->add_option("--n", n)->required();
  rlist->add_option("--delta", delta_text);
  rlist->add_option("--x", x_hex)->required();
  rlist->add_option("--seed", seed_hex, "master seed string as hex (default: derived)");
  rlist->add_option("--chain-dir", dir, "check a built chain directory first");
  auto* rpromise = run->add_subcommand("promise", "short program given C(x)");
  rpromise->add_option("--n", n)->required();
  rpromise->add_option("--delta", delta_text);
  rpromise->add_option("--x", x_hex)->required();
  rpromise->add_option("--c-of-x", c_of_x)->required();
  rpromise->add_option("--seed", seed_hex);
  auto* rprofile = run->add_subcommand("profile", "exact success probability for every x");
  rprofile->add_option("--n", n)->required();
  rprofile->add_option("--delta", delta_text);
  rprofile->add_option("--c-star", c_star, "default: the frozen value from the config");
  rprofile->add_flag("--decimals", decimals, "also print decimal probabilities");

  // report
  auto* rep = app.add_subcommand("report", "calibration report (c*, K_len, bound ratios)");
  rep->add_option("--n", n);
  rep->add_option("--delta", delta_text);

  CLI11_PARSE(app, argc, argv);

  try {
    ctx.load();
    if (*ext) {
      if (*search) exit_code = extractor_search(ctx, n, k, eps, seed, trials, out_path);
      if (*verify) exit_code = extractor_verify(ctx, in_path);
      if (*audit) exit_code = extractor_audit(in_path, trials, seed);
    } else if (*mach) {
      if (*table) exit_code = machine_table(ctx, n_max, out_path);
      if (*mrun) exit_code = machine_run(ctx, program);
    } else if (*build) {
      exit_code = build_chain(ctx, n, parse_rational(delta_text));
    } else if (*run) {
      const Rational delta = parse_rational(delta_text);
      if (*rlist) exit_code = run_list(ctx, n, delta, x_hex, seed_hex, dir);
      if (*rpromise) exit_code = run_promise(ctx, n, delta, x_hex, c_of_x, seed_hex);
      if (*rprofile)
        exit_code = run_profile(ctx, n, delta, c_star < 0 ? ctx.config.c_star : c_star, decimals);
    } else if (*rep) {
      if (!rep->count("--n")) n = 8;
      exit_code = report(ctx, n, parse_rational(delta_text));
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitFail;
  } catch (const BudgetExceeded& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kExitRefused;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return exit_code;
}

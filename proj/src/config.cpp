#include "shortlist/config.hpp"

#include "shortlist/bits.hpp"
#include "shortlist/errors.hpp"

#include <fstream>
#include <sstream>

namespace shortlist {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

template <class T, class F>
std::vector<T> split_list(const std::string& v, F parse) {
  std::vector<T> out;
  std::istringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse(trim(item)));
  return out;
}

template <class T>
std::string join(const std::vector<T>& xs, auto fmt) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + fmt(xs[i]);
  return out;
}

std::string format_results(const ExperimentConfig& c) {
  std::ostringstream out;
  out << "machine_version=" << c.machine_version << '\n'
      << "n_values=" << join(c.n_values, [](int n) { return std::to_string(n); }) << '\n'
      << "deltas=" << join(c.deltas, [](const Rational& r) { return to_string(r); }) << '\n'
      << "a_d=" << c.a_d << '\n'
      << "a_m=" << c.a_m << '\n'
      << "k_d=" << c.k_d << '\n'
      << "k_m=" << c.k_m << '\n'
      << "c_star=" << c.c_star << '\n'
      << "k_len=" << c.k_len << '\n'
      << "k_ch=" << c.k_ch << '\n'
      << "table_n_max=" << c.table_n_max << '\n'
      << "master_seed=0x" << to_hex(c.master_seed) << '\n'
      << "exact_budget=" << c.exact_budget << '\n'
      << "sampled_trials=" << c.sampled_trials << '\n';
  return out.str();
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig c;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(lineno, "expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "machine_version") c.machine_version = value;
      else if (key == "n_values") c.n_values = split_list<int>(value, [](const std::string& s) { return std::stoi(s); });
      else if (key == "deltas") c.deltas = split_list<Rational>(value, [](const std::string& s) { return parse_rational(s); });
      else if (key == "a_d") c.a_d = std::stoi(value);
      else if (key == "a_m") c.a_m = std::stoi(value);
      else if (key == "k_d") c.k_d = std::stoi(value);
      else if (key == "k_m") c.k_m = std::stoi(value);
      else if (key == "c_star") c.c_star = std::stoi(value);
      else if (key == "k_len") c.k_len = std::stoi(value);
      else if (key == "k_ch") c.k_ch = std::stoi(value);
      else if (key == "table_n_max") c.table_n_max = std::stoi(value);
      else if (key == "master_seed") c.master_seed = parse_hex(value);
      else if (key == "exact_budget") c.exact_budget = std::stoull(value);
      else if (key == "sampled_trials") c.sampled_trials = std::stoull(value);
      else if (key == "output_dir") c.output_dir = value;
      else if (key == "workers") c.workers = static_cast<unsigned>(std::stoul(value));
      else throw ParseError(lineno, "unknown key '" + key + "'");
    } catch (const std::logic_error&) {
      throw ParseError(lineno, "bad value for '" + key + "'");
    } catch (const InputError& e) {
      throw ParseError(lineno, e.what());
    }
  }
  if (c.machine_version != kMachineVersion)
    throw InputError("config is for machine '" + c.machine_version + "', this build runs " +
                     kMachineVersion);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string format_config(const ExperimentConfig& c) {
  return format_results(c) + "output_dir=" + c.output_dir + "\nworkers=" +
         std::to_string(c.workers) + "\n";
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string config_hash(const ExperimentConfig& c) { return to_hex(fnv1a64(format_results(c)), 16); }

LabConfig lab_config(const ExperimentConfig& c) {
  LabConfig lab;
  lab.table_n_max = c.table_n_max;
  lab.master_seed = c.master_seed;
  lab.search.constants = ExtractorConstants{c.a_d, c.a_m};
  lab.search.exact_budget = c.exact_budget;
  lab.search.sampled_trials = c.sampled_trials;
  lab.search.workers = c.workers;
  return lab;
}

BuilderConstants builder_constants(const ExperimentConfig& c) { return BuilderConstants{c.k_d, c.k_m}; }

std::string default_config_path() {
  return std::string(SHORTLIST_DATA_DIR) + "/../config/default.conf";
}

}  // namespace shortlist

#include "qorder/cli.hpp"

#include "qorder/exact_core.hpp"
#include "qorder/interval_maps.hpp"
#include "qorder/minkowski.hpp"
#include "qorder/stochastic.hpp"
#include "qorder/tree_gen.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qorder::cli {

namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct Common {
  int threads = 0;  // 0: all available
  bool unsafe_cap = false;
  std::string output;
  std::string format = "csv";

  Exec exec() const { return threads > 0 ? Exec{threads} : Exec::all(); }
  Format fmt() const { return format == "json" ? Format::json : Format::csv; }
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--threads", c.threads, "worker threads, 0 for all")->check(CLI::NonNegativeNumber);
  sub->add_flag("--unsafe-cap", c.unsafe_cap, "lift the default size caps");
  sub->add_option("--output,-o", c.output, "output file; relative paths go under $" + std::string(kOutputDirEnv));
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

// Rows go straight to the stream for CSV and are collected for JSON.
class Sink {
 public:
  Sink(std::ostream& os, Format f, json meta, std::vector<std::string> columns)
      : os_(os), format_(f), doc_{{"meta", std::move(meta)}, {"columns", columns}, {"rows", json::array()}} {
    if (format_ == Format::csv) write_csv(columns);
  }

  void row(const std::vector<std::string>& cells) {
    if (format_ == Format::csv) write_csv(cells);
    else doc_["rows"].push_back(cells);
  }

  void finish(const json& extra = json::object()) {
    if (format_ == Format::json) {
      for (const auto& [k, v] : extra.items()) doc_[k] = v;
      os_ << doc_.dump(1) << "\n";
    }
    os_.flush();
  }

 private:
  void write_csv(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << csv_cell(cells[i]);
    os_ << "\n";
  }

  std::ostream& os_;
  Format format_;
  json doc_;
};

json metadata(const std::string& command, std::optional<std::uint64_t> seed, json flags) {
  return {{"version", kVersion}, {"command", command}, {"seed", seed ? json(*seed) : json(nullptr)},
          {"flags", std::move(flags)}};
}

std::filesystem::path output_path(const std::string& requested) {
  std::filesystem::path p(requested);
  if (p.is_relative())
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir) p = std::filesystem::path(dir) / p;
  return p;
}

void require_cap(bool ok, const Common& c, const std::string& what) {
  if (!ok && !c.unsafe_cap) throw UsageError(what + "; pass --unsafe-cap to exceed it");
}

ExtRat parse_fraction(const std::string& text, const std::string& flag) {
  try {
    return ExtRat::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(flag + ": malformed fraction '" + text + "' (" + e.what() + ")");
  }
}

Interval parse_interval(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw UsageError("--interval must look like a/b,c/d");
  Interval in{parse_fraction(text.substr(0, comma), "--interval"), parse_fraction(text.substr(comma + 1), "--interval")};
  if (!(in.lo < in.hi)) throw UsageError("--interval is empty: " + text);
  return in;
}

// ---------------------------------------------------------------- tree

struct TreeArgs {
  std::string kind = "sb";
  bool permuted = false;
  unsigned depth = 0;
  bool all_levels = false;
};

void cmd_tree(const TreeArgs& a, const Common& c, std::ostream& os) {
  require_cap(a.depth <= kTreeDepthCap, c, "tree depth " + std::to_string(a.depth) + " exceeds the cap 24");
  const TreeSpec spec{a.kind == "sb" ? TreeKind::SB : (a.kind == "farey" ? TreeKind::Farey : TreeKind::Dyadic),
                      a.permuted};
  Sink sink(os, c.fmt(),
            metadata("tree", std::nullopt,
                     {{"kind", a.kind}, {"permuted", a.permuted}, {"depth", a.depth}, {"all_levels", a.all_levels}}),
            {"level", "index", "num", "den"});
  for (unsigned k = a.all_levels ? 1 : a.depth; k <= a.depth; ++k) {
    const std::string lvl = std::to_string(k);
    for_each_in_level(
        spec, k,
        [&](std::uint64_t i, const ExtRat& x) { sink.row({lvl, std::to_string(i), x.num().get_str(), x.den().get_str()}); },
        std::max(k, kTreeDepthCap));
  }
  sink.finish();
}

// ---------------------------------------------------------------- enumerate

struct EnumerateArgs {
  std::string map = "R";
  std::string start;
  std::uint64_t count = 0;
};

void cmd_enumerate(const EnumerateArgs& a, const Common& c, std::ostream& os) {
  require_cap(a.count <= kOrbitCountCap, c, "orbit count " + std::to_string(a.count) + " exceeds the cap 2^24");
  const MapId m = parse_map(a.map);
  const std::string start_text = a.start.empty() ? (m == MapId::R ? "1/0" : "1/1") : a.start;
  ExtRat x = parse_fraction(start_text, "--start");
  if (m != MapId::R && ExtRat(1, 1) < x) throw UsageError("--start for " + a.map + " must lie in [0,1]");
  Sink sink(os, c.fmt(), metadata("enumerate", std::nullopt, {{"map", a.map}, {"start", start_text}, {"count", a.count}}),
            {"i", "num", "den"});
  for (std::uint64_t i = 0; i < a.count; ++i) {
    if (i) x = apply(m, x);
    sink.row({std::to_string(i), x.num().get_str(), x.den().get_str()});
  }
  sink.finish();
}

// ---------------------------------------------------------------- qmark

struct QmarkArgs {
  std::vector<std::string> inputs;
  bool inverse = false;
  bool extended = false;
  std::vector<std::string> enclosure;
};

void cmd_qmark(const QmarkArgs& a, const Common& c, std::ostream& os) {
  const json meta = metadata("qmark", std::nullopt,
                             {{"inputs", a.inputs}, {"inverse", a.inverse}, {"extended", a.extended}, {"enclosure", a.enclosure}});
  if (a.inputs.empty() == a.enclosure.empty()) throw UsageError("qmark needs either inputs or --enclosure");
  if (!a.enclosure.empty()) {
    if (a.inverse) throw UsageError("--enclosure cannot be combined with --inverse");
    Sink sink(os, c.fmt(), meta, {"input", "lower", "upper", "lower_decimal", "upper_decimal", "function"});
    for (const auto& in : a.enclosure) {
      ContFrac prefix;
      try {
        prefix = ContFrac::parse(in.starts_with('[') ? in : "[" + in + "]");
      } catch (const std::exception& e) {
        throw UsageError("malformed continued fraction '" + in + "' (" + e.what() + ")");
      }
      const Enclosure e = qmark_enclosure(prefix);
      sink.row({in, e.lower.str(), e.upper.str(), e.lower.decimal(), e.upper.decimal(), e.extended ? "rho" : "qmark"});
    }
    sink.finish();
    return;
  }
  Sink sink(os, c.fmt(), meta, {"input", "value", "decimal"});
  for (const auto& in : a.inputs) {
    if (a.inverse) {
      Dyadic d;
      try {
        d = Dyadic::parse(in);
      } catch (const std::exception& e) {
        throw UsageError("malformed dyadic '" + in + "' (" + e.what() + ")");
      }
      const ExtRat x = a.extended ? rho_inv(d) : qmark_inv(d);
      sink.row({in, x.str(), x.is_infinite() ? "inf" : num(x.to_double())});
    } else {
      const ExtRat x = parse_fraction(in, "input");
      const Dyadic d = a.extended ? rho(x) : qmark(x);
      sink.row({in, d.str(), d.decimal()});
    }
  }
  sink.finish();
}

// ---------------------------------------------------------------- fourier

struct FourierArgs {
  std::string method = "tree";
  std::vector<long> ns;
  std::uint64_t size = 0;  // tree level, or ergodic iterations
  std::string start = "1/1";
};

void cmd_fourier(const FourierArgs& a, const Common& c, std::ostream& os) {
  const bool tree = a.method == "tree";
  const std::uint64_t size = a.size ? a.size : (tree ? 18 : (std::uint64_t{1} << 18));
  if (tree) require_cap(size <= kPowerCap, c, "tree level " + std::to_string(size) + " exceeds the cap 24");
  else require_cap(size <= kOrbitCountCap, c, "iteration count " + std::to_string(size) + " exceeds the cap 2^24");
  const ExtRat start = parse_fraction(a.start, "--start");
  Sink sink(os, c.fmt(),
            metadata("fourier", std::nullopt, {{"method", a.method}, {"n", a.ns}, {"size", size}, {"start", a.start}}),
            {"n", "re", "im", "method", "size"});
  std::vector<Complex> values;
  if (tree) {
    for (long n : a.ns) values.push_back(stieltjes_mean(observables::fourier(n), static_cast<unsigned>(size), TreeKind::SB, c.exec()));
  } else {
    values = ergodic_fourier(a.ns, start, size, MapId::R);
  }
  for (std::size_t i = 0; i < a.ns.size(); ++i)
    sink.row({std::to_string(a.ns[i]), num(values[i].real()), num(values[i].imag()), a.method, std::to_string(size)});
  sink.finish();
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  std::string chain = "mc0";
  std::string start;
  std::uint64_t walks = 1000;
  std::uint64_t horizon = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::string interval;
};

void cmd_simulate(const SimulateArgs& a, const Common& c, std::ostream& os) {
  require_cap(a.walks <= kWalkCap, c, "walk count " + std::to_string(a.walks) + " exceeds the cap 10^6");
  if (a.walks == 0) throw UsageError("--walks must be at least 1");
  const std::string start_text = a.start.empty() ? "1/1" : a.start;
  const ExtRat start = parse_fraction(start_text, "--start");
  if (a.chain == "rw" && start != ExtRat(1, 1)) throw UsageError("the rw chain starts at 1/1");
  const ChainSpec spec{a.chain == "mc1" ? MarkovKind::MC1 : MarkovKind::MC0, start, a.horizon, a.seed};
  std::optional<Interval> interval;
  if (!a.interval.empty()) interval = parse_interval(a.interval);

  Sink sink(os, c.fmt(),
            metadata("simulate", a.seed,
                     {{"chain", a.chain}, {"start", start_text}, {"walks", a.walks}, {"horizon", a.horizon},
                      {"interval", a.interval}}),
            {"walk", "hit_time", "final_num", "final_den"});
  std::vector<std::uint64_t> first_hits(interval ? a.horizon + 1 : 0, 0);
  std::uint64_t hits = 0;
  for (std::uint64_t first = 0; first < a.walks; first += kWalkCap) {
    const std::uint64_t batch = std::min(kWalkCap, a.walks - first);
    const auto summaries = simulate_range(spec, first, batch, interval, c.exec());
    for (std::uint64_t i = 0; i < batch; ++i) {
      const WalkSummary& s = summaries[i];
      if (s.hit_time >= 0) {
        ++hits;
        ++first_hits[static_cast<std::size_t>(s.hit_time)];
      }
      sink.row({std::to_string(first + i), std::to_string(s.hit_time), s.final_state.num().get_str(),
                s.final_state.den().get_str()});
    }
  }
  json summary{{"walks", a.walks}};
  if (interval) {
    std::vector<double> curve;
    std::uint64_t cumulative = 0;
    for (auto n : first_hits) {
      cumulative += n;
      curve.push_back(static_cast<double>(cumulative) / static_cast<double>(a.walks));
    }
    summary["hit_fraction"] = static_cast<double>(hits) / static_cast<double>(a.walks);
    summary["curve"] = curve;
  }
  sink.finish({{"summary", summary}});
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 7;
  bool list = false;
};

int cmd_verify(const VerifyArgs& a, const Common& c, std::ostream& os) {
  std::vector<const Check*> selection;
  try {
    selection = select_checks(full_registry(), a.suite);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const json meta = metadata("verify", a.seed, {{"suite", a.suite}, {"list", a.list}});
  if (a.list) {
    Sink sink(os, c.fmt(), meta, {"check", "description"});
    for (const Check* ch : selection) sink.row({ch->id(), ch->description});
    sink.finish();
    return kSuccess;
  }
  const auto results = run_checks(selection, {a.seed, c.exec()});
  Sink sink(os, c.fmt(), meta, {"check", "status", "description", "detail"});
  std::size_t failed = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    failed += results[i].passed ? 0 : 1;
    sink.row({results[i].id, results[i].passed ? "PASS" : "FAIL", selection[i]->description, results[i].detail});
  }
  sink.finish({{"summary", {{"checks", results.size()}, {"failed", failed}}}});
  return failed ? kVerificationFailed : kSuccess;
}

// ---------------------------------------------------------------- checks on the command line itself

std::string run_captured(std::vector<std::string> args, int* code = nullptr) {
  std::ostringstream out, err;
  const int rc = run(args, out, err);
  if (code) *code = rc;
  return out.str();
}

const std::vector<std::vector<std::string>> kDeterminismRuns = {
    {"tree", "--kind", "sb", "--permuted", "--depth", "12", "--all-levels"},
    {"tree", "--kind", "dyadic", "--depth", "10", "--format", "json"},
    {"enumerate", "--map", "S", "--count", "3000"},
    {"qmark", "2/5", "3/7", "--extended"},
    {"fourier", "--method", "tree", "-n", "1,2,3", "--size", "12"},
    {"fourier", "--method", "ergodic", "-n", "1,2", "--size", "4096", "--format", "json"},
    {"simulate", "--chain", "mc1", "--start", "3/2", "--walks", "700", "--horizon", "300", "--interval", "2/5,3/5"},
    {"simulate", "--chain", "rw", "--walks", "700", "--horizon", "200", "--interval", "2/5,3/5", "--format", "json"},
    {"verify", "--suite", "tree-gen"},
};

CheckOutcome byte_identical(const VerifyOptions&) {
  for (const auto& base : kDeterminismRuns) {
    auto with_threads = [&](int t) {
      auto args = base;
      args.insert(args.end(), {"--threads", std::to_string(t)});
      int code = 0;
      std::string text = run_captured(args, &code);
      if (code != kSuccess) throw std::runtime_error("'" + base[0] + "' exited with " + std::to_string(code));
      return text;
    };
    const std::string ref = with_threads(1);
    std::string cmd;
    for (const auto& s : base) cmd += (cmd.empty() ? "" : " ") + s;
    if (with_threads(1) != ref) return {false, "repeat differs: " + cmd};
    for (int t : {2, 8})
      if (with_threads(t) != ref) return {false, std::to_string(t) + " workers differ: " + cmd};
  }
  return {true, std::to_string(kDeterminismRuns.size()) + " command lines, repeated and at 1/2/8 workers"};
}

CheckOutcome examples(const VerifyOptions&) {
  auto last_line = [](const std::string& text) {
    std::string t = text;
    if (!t.empty() && t.back() == '\n') t.pop_back();
    return t.substr(t.rfind('\n') + 1);
  };
  auto line_count = [](const std::string& text) { return std::count(text.begin(), text.end(), '\n'); };
  int code = 0;
  const std::string tree = run_captured({"tree", "--kind", "sb", "--permuted", "--depth", "4", "--format", "csv"}, &code);
  if (code != kSuccess || line_count(tree) != 9 || last_line(tree) != "4,7,4,1") return {false, "tree depth 4: " + tree};
  const std::string orbit = run_captured({"enumerate", "--map", "R", "--start", "1/0", "--count", "9"}, &code);
  if (code != kSuccess || last_line(orbit) != "8,3,1") return {false, "orbit of R: " + orbit};
  run_captured({"tree", "--depth", "25"}, &code);
  if (code != kUsageError) return {false, "depth 25 without --unsafe-cap was accepted"};
  run_captured({"enumerate", "--start", "2/x", "--count", "3"}, &code);
  if (code != kUsageError) return {false, "malformed fraction was accepted"};
  run_captured({"verify", "--suite", "no-such-module"}, &code);
  if (code != kUsageError) return {false, "unknown suite was accepted"};
  return {true, "tree and orbit examples, cap and parse errors exit 1"};
}

CheckOutcome coverage(const VerifyOptions&) {
  const std::vector<std::string> modules = {"exact-core", "lr-coding",  "tree-gen",   "minkowski",
                                            "interval-maps", "operators", "stochastic", "cli"};
  std::set<std::string> ids;
  std::map<std::string, int> per_module;
  for (const auto& c : full_registry()) {
    if (!ids.insert(c.id()).second) return {false, "duplicate id " + c.id()};
    const auto sel = select_checks(full_registry(), c.id());
    if (sel.size() != 1 || sel[0]->id() != c.id()) return {false, c.id() + " is not addressable"};
    ++per_module[c.module];
  }
  std::string detail;
  for (const auto& m : modules) {
    if (per_module[m] == 0) return {false, "no checks for " + m};
    detail += (detail.empty() ? "" : " ") + m + "=" + std::to_string(per_module[m]);
  }
  return {true, detail};
}

std::vector<Check> build_full_registry() {
  std::vector<Check> r = check_registry();
  r.push_back({"cli", "byte-identical", "command output is byte-identical across repeats and worker counts", byte_identical});
  r.push_back({"cli", "examples", "documented command examples and usage-error exit codes", examples});
  r.push_back({"cli", "coverage", "every module has named checks, each addressable on its own", coverage});
  return r;
}

}  // namespace

const std::vector<Check>& full_registry() {
  static const std::vector<Check> registry = build_full_registry();
  return registry;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact orderings of the rationals: trees, question mark function, interval maps, chains", "qorder"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  TreeArgs tree;
  auto* tree_cmd = app.add_subcommand("tree", "list tree levels as level,index,num,den");
  tree_cmd->add_option("--kind", tree.kind, "sb, farey or dyadic")->check(CLI::IsMember({"sb", "farey", "dyadic"}));
  tree_cmd->add_flag("--permuted", tree.permuted, "use the permuted tree");
  tree_cmd->add_option("--depth", tree.depth, "level to list")->required()->check(CLI::PositiveNumber);
  tree_cmd->add_flag("--all-levels", tree.all_levels, "list levels 1..depth");
  add_common(tree_cmd, common);

  EnumerateArgs en;
  auto* en_cmd = app.add_subcommand("enumerate", "orbit of R, S or T as i,num,den");
  en_cmd->add_option("--map", en.map, "R, S or T")->check(CLI::IsMember({"R", "S", "T"}));
  en_cmd->add_option("--start", en.start, "p/q, default 1/0 for R and 1/1 otherwise");
  en_cmd->add_option("--count", en.count, "number of orbit points")->required();
  add_common(en_cmd, common);

  QmarkArgs qm;
  auto* qm_cmd = app.add_subcommand("qmark", "evaluate or invert ? and rho exactly");
  qm_cmd->add_option("inputs", qm.inputs, "p/q, or k/2^s with --inverse");
  qm_cmd->add_flag("--inverse", qm.inverse, "invert: dyadic in, rational out");
  qm_cmd->add_flag("--extended", qm.extended, "use rho on [0,inf] instead of ?");
  qm_cmd->add_option("--enclosure", qm.enclosure, "CF prefix a0;a1,...: bounds over all numbers sharing it")
      ->allow_extra_args(false);
  add_common(qm_cmd, common);

  FourierArgs fo;
  auto* fo_cmd = app.add_subcommand("fourier", "Fourier coefficients of d rho by tree sums or ergodic means of R");
  fo_cmd->add_option("--method", fo.method, "tree or ergodic")->check(CLI::IsMember({"tree", "ergodic"}));
  fo_cmd->add_option("-n", fo.ns, "frequencies, comma separated")->required()->delimiter(',');
  fo_cmd->add_option("--size", fo.size, "tree level (default 18) or iterations (default 2^18)");
  fo_cmd->add_option("--start", fo.start, "start of the ergodic orbit");
  add_common(fo_cmd, common);

  SimulateArgs si;
  auto* si_cmd = app.add_subcommand("simulate", "walks of MC0, MC1 or the tree walk rw");
  si_cmd->add_option("--chain", si.chain, "mc0, mc1 or rw")->check(CLI::IsMember({"mc0", "mc1", "rw"}));
  si_cmd->add_option("--start", si.start, "p/q, default 1/1");
  si_cmd->add_option("--walks", si.walks, "number of walks");
  si_cmd->add_option("--horizon", si.horizon, "steps per walk");
  si_cmd->add_option("--seed", si.seed, "seed");
  si_cmd->add_option("--interval", si.interval, "open interval a/b,c/d for hitting times");
  add_common(si_cmd, common);

  VerifyArgs ve;
  auto* ve_cmd = app.add_subcommand("verify", "run the invariant checks");
  ve_cmd->add_option("--suite", ve.suite, "all, a module name or module/check");
  ve_cmd->add_option("--seed", ve.seed, "seed");
  ve_cmd->add_flag("--list", ve.list, "list the selected checks without running them");
  add_common(ve_cmd, common);

  std::vector<std::string> storage{"qorder"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kSuccess : kUsageError;
  }

  std::ofstream file;
  std::ostream* os = &out;
  if (!common.output.empty()) {
    const auto path = output_path(common.output);
    file.open(path);
    if (!file) {
      err << "error: cannot write " << path.string() << "\n";
      return kUsageError;
    }
    os = &file;
  }

  try {
    if (tree_cmd->parsed()) cmd_tree(tree, common, *os);
    else if (en_cmd->parsed()) cmd_enumerate(en, common, *os);
    else if (qm_cmd->parsed()) cmd_qmark(qm, common, *os);
    else if (fo_cmd->parsed()) cmd_fourier(fo, common, *os);
    else if (si_cmd->parsed()) cmd_simulate(si, common, *os);
    else if (ve_cmd->parsed()) return cmd_verify(ve, common, *os);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kSuccess;
}

}  // namespace qorder::cli

// torus-ledger: command-line front end for the verification library.
//
// Exit codes: 0 decided / pass, 1 verified property violated, 2 invalid
// input, 3 UNKNOWN or INDISTINGUISHABLE_AT_HORIZON.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "torus_ledger/torus_ledger.hpp"

namespace tl = torus_ledger;
using tl::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitUndecided = 3;

struct Globals {
  bool json = false;
  std::optional<unsigned> depth;
  std::optional<std::size_t> horizon;
};

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw tl::Error(tl::ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw tl::Error(tl::ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

std::uint64_t max_search() {
  const char* env = std::getenv("TORUS_LEDGER_MAX_SEARCH");
  if (!env || !*env) return tl::kDefaultSearchBudget;
  const tl::Rational r = tl::parse_rational(env);
  if (boost::multiprecision::denominator(r) != 1 || r < 1)
    throw tl::Error(tl::ErrorKind::InvalidInput, "TORUS_LEDGER_MAX_SEARCH must be a positive integer");
  return boost::multiprecision::numerator(r).convert_to<std::uint64_t>();
}

int verdict_exit(tl::Verdict v) {
  return v == tl::Verdict::Unknown || v == tl::Verdict::IndistinguishableAtHorizon ? kExitUndecided : kExitPass;
}

tl::Manifest load_manifest(const std::string& path, const Globals& g) {
  tl::Manifest m = tl::manifest_from_json(read_json(path));
  if (g.depth) {
    if (*g.depth < 4 || *g.depth > 64) throw tl::Error(tl::ErrorKind::InvalidInput, "--depth must lie in [4,64]");
    m.options.depth = g.depth;
  }
  if (g.horizon) {
    if (*g.horizon < 1 || *g.horizon > 100000)
      throw tl::Error(tl::ErrorKind::InvalidInput, "--horizon must lie in [1,100000]");
    m.options.horizon = *g.horizon;
  }
  return m;
}

std::string seq_text(const tl::DefiningSequence& s) {
  std::string out;
  for (const auto& l : s.prefix) out += tl::to_string(l) + " ";
  out += "(";
  for (std::size_t i = 0; i < s.period.size(); ++i) out += (i ? " " : "") + tl::to_string(s.period[i]);
  return out + ")^w";
}

void print_certificate(const tl::Certificate& c) {
  std::cout << "subject: " << c.subject << "\nverdict: " << tl::to_string(c.verdict) << "\n";
  if (const auto* ex = std::get_if<tl::ExhaustionEvidence>(&c.evidence)) {
    std::cout << "evidence: exhaustion over " << ex->horizon << " levels\n";
    for (const auto& r : ex->induction.setup_reports)
      std::cout << "  setup n=" << r.n << " depth=" << r.depth << " " << (r.passed() ? "pass" : "FAIL") << "\n";
    std::cout << "  level  order  setup  ab  v0-nested\n";
    for (const auto& s : ex->induction.steps)
      std::cout << "  " << s.level << "  " << s.order << "  " << s.setup_pass << "  " << s.ab_pass << "  "
                << s.v0_nested << "\n";
    std::cout << "  V0 measures:";
    for (const auto& v : ex->induction.v0_chain) std::cout << " " << tl::to_string(v.measure());
    std::cout << "\n";
  } else if (const auto* dv = std::get_if<tl::DivergenceEvidence>(&c.evidence)) {
    std::cout << "evidence: divergence trace over " << dv->horizon << " links\n  step  level  order  bound\n";
    for (const auto& t : dv->trace)
      std::cout << "  " << t.step << "  " << t.link_level << "  " << t.order << "  " << t.bound.value.str() << "\n";
  } else if (const auto* pe = std::get_if<tl::PrimeEvidence>(&c.evidence)) {
    std::cout << "evidence: prime " << pe->prime << " up to level " << pe->horizon << "\n";
    for (const auto* d : {&pe->a, &pe->b}) {
      std::cout << "  " << d->name << ": divides " << d->period_hits.size() << " period orders, levels";
      for (auto l : d->levels) std::cout << " " << l;
      std::cout << "\n";
    }
  } else {
    const auto& un = std::get<tl::UnknownEvidence>(c.evidence);
    std::cout << "evidence: " << un.reason << "\n  kinds:";
    for (const auto& k : un.kinds) std::cout << " " << k;
    std::cout << "\n";
  }
}

int emit_certificate(const tl::Certificate& c, const Globals& g) {
  if (g.json)
    std::cout << tl::certificate_to_json(c).dump(2) << "\n";
  else
    print_certificate(c);
  return verdict_exit(c.verdict);
}

// interlace / cover-lift input: {"mode": "points"|"intervals", "a": [...], "b": [...]}
// where points are "p/q" strings and intervals are interval records.
struct InterlaceInput {
  std::string mode;
  tl::LabeledConfig config;
  tl::IntervalSet a, b;
};

InterlaceInput read_interlace_input(const std::string& path, const std::string& mode_flag) {
  const json doc = read_json(path);
  InterlaceInput in;
  in.mode = mode_flag;
  if (in.mode.empty()) in.mode = doc.contains("mode") ? tl::detail::as_string(doc.at("mode"), "mode") : "points";
  const json& a = tl::detail::field(doc, "a");
  const json& b = tl::detail::field(doc, "b");
  if (!a.is_array() || !b.is_array()) throw tl::Error(tl::ErrorKind::InvalidInput, "\"a\" and \"b\" must be arrays");
  if (in.mode == "points") {
    std::vector<tl::RationalPoint> pa, pb;
    for (const auto& x : a) pa.emplace_back(tl::rational_from_json(x));
    for (const auto& x : b) pb.emplace_back(tl::rational_from_json(x));
    in.config = tl::label_points(pa, pb);
  } else if (in.mode == "intervals") {
    in.a = a.get<tl::IntervalSet>();
    in.b = b.get<tl::IntervalSet>();
    in.config = tl::label_components(in.a, in.b);
  } else {
    throw tl::Error(tl::ErrorKind::InvalidInput, "mode must be \"points\" or \"intervals\"");
  }
  return in;
}

int cmd_interlace(const std::string& path, const std::string& mode, bool brute, const Globals& g) {
  const InterlaceInput in = read_interlace_input(path, mode);
  const tl::InterlaceBound k = tl::interlace(in.config);
  std::optional<tl::InterlaceBound> check;
  if (brute) check = tl::interlace_exhaustive(in.config);
  if (g.json) {
    json out{{"mode", in.mode}, {"interlace", k}};
    if (check) out["brute_force"] = *check;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << k.value.str() << "\n";
    if (check) std::cout << "brute force: " << check->value.str() << (*check == k ? " (agrees)" : " (DISAGREES)") << "\n";
  }
  if (check && *check != k) {
    std::cerr << "error: block count and exhaustive search disagree\n";
    return kExitViolation;
  }
  return kExitPass;
}

int cmd_cover_lift(const std::string& path, unsigned fold, const Globals& g) {
  if (fold < 1) throw tl::Error(tl::ErrorKind::InvalidInput, "--fold must be >= 1");
  const InterlaceInput in = read_interlace_input(path, "intervals");
  const tl::InterlaceBound base = tl::interlace_intervals(in.a, in.b);
  tl::InterlaceBound lifted;
  try {
    lifted = tl::cover_interlace(in.a, in.b, fold);
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitViolation;
  }
  if (g.json) {
    std::cout << json{{"fold", fold}, {"base", base}, {"lifted", lifted}, {"lift_a", tl::lift(in.a, fold)},
                      {"lift_b", tl::lift(in.b, fold)}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "base " << base.value.str() << ", " << fold << "-fold cover " << lifted.value.str() << "\n";
  }
  return kExitPass;
}

int cmd_tubes(std::uint64_t n, bool verify, const Globals& g) {
  const tl::TubeParams p = tl::tube_parameters(n);
  std::optional<tl::PlanSearch> found;
  if (verify) found = tl::find_verified_plan(n, g.depth.value_or(tl::default_depth(p)), max_search());
  const tl::TubePlan plan = found ? found->plan : tl::build_tube_plan(n);
  const tl::Rational short_len = tl::inverse_power_of_three(p.m + 1);
  const tl::Rational long_len = tl::inverse_power_of_three(p.m);
  if (g.json) {
    json out{{"params", {{"n", p.n}, {"m", p.m}, {"k", p.k}}},
             {"census",
              {{"tubes", p.tube_count()},
               {"short", {{"count", p.short_tubes()}, {"length", tl::rational_to_json(short_len)}}},
               {"long", {{"count", p.long_tubes()}, {"length", tl::rational_to_json(long_len)}}}}},
             {"plan", plan}};
    if (found) out["report"] = found->report;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "m=" << p.m << " k=" << p.k << ", " << p.tube_count() << " tubes (";
    if (p.short_tubes()) std::cout << p.short_tubes() << "×" << tl::to_string(short_len) << ", ";
    std::cout << p.long_tubes() << "×" << tl::to_string(long_len) << ")\n";
    if (found) {
      const auto& r = found->report;
      auto all = [](const auto& v) {
        return std::all_of(v.begin(), v.end(), [](const auto& c) { return c.pass; });
      };
      std::cout << "depth " << r.depth << ": cond_AB " << (r.cond_AB ? "pass" : "FAIL") << ", cond_V0 "
                << (r.cond_V0 ? "pass" : "FAIL") << ", cond_drop " << (all(r.cond_drop) ? "pass" : "FAIL")
                << ", shifts " << (all(r.shift_checks) ? "pass" : "FAIL") << ", disk hits " << r.disk_hits_low << "/"
                << r.disk_hits_high << "\n"
                << (r.passed() ? "PASS" : "FAIL") << "\n";
    }
  }
  return found && !found->report.passed() ? kExitViolation : kExitPass;
}

int cmd_classify(const std::string& path, const Globals& g) {
  const tl::Manifest m = load_manifest(path, g);
  return emit_certificate(tl::classify_double3(m.sequence, m.options.depth, m.options.horizon, max_search()), g);
}

int cmd_distinguish(const std::string& pa, const std::string& pb, std::uint64_t prime, const Globals& g) {
  const tl::Manifest a = load_manifest(pa, g);
  const tl::Manifest b = load_manifest(pb, g);
  return emit_certificate(tl::distinguish_by_prime(a.sequence, b.sequence, prime, a.options.horizon), g);
}

int cmd_index(const std::string& path, std::size_t i, std::size_t j, const Globals& g) {
  const tl::Manifest m = load_manifest(path, g);
  const tl::BigInt idx = tl::index_between(m.sequence, i, j);
  if (g.json) {
    json levels = json::array();
    for (std::size_t l = i + 1; l <= j; ++l)
      levels.push_back({{"level", l}, {"link", m.sequence.link(l)}, {"index", tl::link_index(m.sequence.link(l)).str()}});
    std::cout << json{{"name", m.sequence.name}, {"i", i}, {"j", j}, {"index", idx.str()}, {"levels", levels}}.dump(2)
              << "\n";
  } else {
    std::cout << m.sequence.name << " " << seq_text(m.sequence) << "\nN(T_" << i << ", T_" << j << ") = " << idx.str()
              << "\n";
  }
  return kExitPass;
}

int cmd_trace(const std::string& path, const Globals& g) {
  const tl::Manifest m = load_manifest(path, g);
  tl::detail::require_periodic(m.sequence);
  if (!m.sequence.all_links([](const tl::LinkType& l) { return l.kind == tl::LinkKind::McMillan; }))
    throw tl::Error(tl::ErrorKind::TraceRefused, "trace needs an all-McMillan sequence");
  const auto orders = tl::detail::orders_outer_to_inner(m.sequence, m.options.horizon);
  const auto trace = tl::detail::build_trace(orders);
  const bool diverges = tl::detail::trace_diverges(trace, m.options.horizon);
  if (g.json) {
    json rows = json::array();
    for (const auto& t : trace)
      rows.push_back({{"step", t.step}, {"link_level", t.link_level}, {"order", t.order}, {"bound", t.bound}});
    std::cout << json{{"name", m.sequence.name}, {"horizon", m.options.horizon}, {"trace", rows}, {"diverges", diverges}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << "step  level  order  bound\n";
    for (const auto& t : trace)
      std::cout << t.step << "  " << t.link_level << "  " << t.order << "  " << t.bound.value.str() << "\n";
    std::cout << (diverges ? "exceeds horizon" : "does NOT exceed horizon") << "\n";
  }
  return diverges ? kExitPass : kExitViolation;
}

int cmd_replay(const std::string& path, const Globals& g) {
  const json doc = read_json(path);
  const tl::Certificate c = tl::certificate_from_json(doc);
  if (tl::certificate_to_json(c) != doc)
    throw tl::Error(tl::ErrorKind::ReplayMismatch, "certificate does not re-serialize identically");
  const tl::Verdict v = tl::replay(c, max_search());
  if (g.json)
    std::cout << json{{"verdict", tl::to_string(v)}, {"replayed", true}}.dump(2) << "\n";
  else
    std::cout << "replayed: " << tl::to_string(v) << "\n";
  return verdict_exit(v);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of Gabai/McMillan tube constructions, interlacing bounds and defining sequences"};
  app.require_subcommand(1);
  Globals g;
  std::optional<unsigned> depth;
  std::optional<std::size_t> horizon;
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--depth", depth, "Cantor verification depth");
  app.add_option("--horizon", horizon, "Number of levels examined");

  std::string path, path_b, mode;
  bool brute = false, verify = false;
  std::uint64_t n = 0, prime = 0;
  std::size_t i = 0, j = 0;
  unsigned fold = 1;

  auto* interlace = app.add_subcommand("interlace", "Interlacing number of two labelled sets");
  interlace->add_option("file", path, "JSON input with \"a\" and \"b\"")->required();
  interlace->add_option("--mode", mode, "points or intervals (default: file's \"mode\", else points)");
  interlace->add_flag("--brute-force", brute, "Cross-check with exhaustive search");

  auto* tubes = app.add_subcommand("tubes", "Tube parameters and census of the order-n Gabai construction");
  tubes->add_option("n", n, "Gabai order")->required();
  tubes->add_flag("--verify", verify, "Find and verify a tube assignment");

  auto* classify = app.add_subcommand("classify", "Decide the double 3-space property of a manifest");
  classify->add_option("manifest", path)->required();

  auto* distinguish = app.add_subcommand("distinguish", "Prime-divisibility distinguisher for two manifests");
  distinguish->add_option("a", path)->required();
  distinguish->add_option("b", path_b)->required();
  distinguish->add_option("--prime,-p", prime, "Witness prime")->required();

  auto* index = app.add_subcommand("index", "Geometric index N(T_i, T_j) of a manifest");
  index->add_option("manifest", path)->required();
  index->add_option("i", i)->required();
  index->add_option("j", j)->required();

  auto* trace = app.add_subcommand("trace", "Interlacing divergence trace of an all-McMillan manifest");
  trace->add_option("manifest", path)->required();

  auto* cover = app.add_subcommand("cover-lift", "Interlacing of interval sets and of their lift to an n-fold cover");
  cover->add_option("file", path)->required();
  cover->add_option("--fold,-n", fold, "Cover degree")->required();

  auto* replay = app.add_subcommand("replay", "Re-verify a certificate document");
  replay->add_option("certificate", path)->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }
  g.depth = depth;
  g.horizon = horizon;

  try {
    if (*interlace) return cmd_interlace(path, mode, brute, g);
    if (*tubes) return cmd_tubes(n, verify, g);
    if (*classify) return cmd_classify(path, g);
    if (*distinguish) return cmd_distinguish(path, path_b, prime, g);
    if (*index) return cmd_index(path, i, j, g);
    if (*trace) return cmd_trace(path, g);
    if (*cover) return cmd_cover_lift(path, fold, g);
    if (*replay) return cmd_replay(path, g);
  } catch (const tl::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == tl::ErrorKind::PropertyViolation || e.kind() == tl::ErrorKind::ReplayMismatch ? kExitViolation
                                                                                                     : kExitInvalid;
  } catch (const json::exception& e) {
    std::cerr << "error: invalid-input: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

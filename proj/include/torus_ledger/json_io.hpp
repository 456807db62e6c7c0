#pragma once

// JSON documents: interval sets, maps, tube plans, reports, manifests and
// certificates. Rationals are always "p/q" strings; no field is a float.

#include <string>
#include <vector>

#include <json.hpp>

#include "torus_ledger/manifolds.hpp"

namespace torus_ledger {

using json = nlohmann::json;

inline constexpr const char* kCertificateFormat = "torus-ledger-certificate/1";

namespace detail {

[[noreturn]] inline void bad_document(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

inline const json& field(const json& j, const char* key) {
  if (!j.is_object()) bad_document(std::string("expected an object holding \"") + key + "\"");
  auto it = j.find(key);
  if (it == j.end()) bad_document(std::string("missing field \"") + key + "\"");
  return *it;
}

inline std::uint64_t as_count(const json& j, const char* what) {
  if (!j.is_number_integer()) bad_document(std::string(what) + " must be an integer");
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  const auto v = j.get<std::int64_t>();
  if (v < 0) bad_document(std::string(what) + " must be non-negative");
  return static_cast<std::uint64_t>(v);
}

inline bool as_bool(const json& j, const char* what) {
  if (!j.is_boolean()) bad_document(std::string(what) + " must be a boolean");
  return j.get<bool>();
}

inline const std::string& as_string(const json& j, const char* what) {
  if (!j.is_string()) bad_document(std::string(what) + " must be a string");
  return j.get_ref<const std::string&>();
}

}  // namespace detail

inline json rational_to_json(const Rational& r) { return to_string(r); }

/// Accepts "p/q" strings and integer literals.
inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get_ref<const std::string&>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  detail::bad_document("rational must be a \"p/q\" string, got " + j.dump());
}

inline BigInt bigint_from_json(const json& j) {
  const Rational r = rational_from_json(j);
  if (denominator(r) != 1) detail::bad_document("expected an integer, got " + j.dump());
  return numerator(r);
}

// Interval / IntervalSet.

inline void to_json(json& j, const Interval& iv) {
  j = json{{"lo", rational_to_json(iv.lo)}, {"hi", rational_to_json(iv.hi)}, {"lo_closed", iv.lo_closed},
           {"hi_closed", iv.hi_closed}};
  if (iv.wraps) j["wraps"] = true;
}

inline void from_json(const json& j, Interval& iv) {
  iv.lo = rational_from_json(detail::field(j, "lo"));
  iv.hi = rational_from_json(detail::field(j, "hi"));
  iv.lo_closed = detail::as_bool(detail::field(j, "lo_closed"), "lo_closed");
  iv.hi_closed = detail::as_bool(detail::field(j, "hi_closed"), "hi_closed");
  iv.wraps = j.contains("wraps") ? detail::as_bool(j.at("wraps"), "wraps") : false;
}

inline void to_json(json& j, const IntervalSet& s) { j = s.segments(); }

inline void from_json(const json& j, IntervalSet& s) {
  if (!j.is_array()) detail::bad_document("interval set must be an array of interval records");
  s = IntervalSet(j.get<std::vector<Interval>>());
}

// PLCircleMap.

inline void to_json(json& j, const PLCircleMap& f) {
  j = json::array();
  for (const auto& p : f.pieces())
    j.push_back({{"domain", p.domain}, {"slope", rational_to_json(p.slope)}, {"offset", rational_to_json(p.offset)}});
}

inline void from_json(const json& j, PLCircleMap& f) {
  if (!j.is_array()) detail::bad_document("map must be an array of pieces");
  std::vector<AffinePiece> pieces;
  for (const auto& p : j)
    pieces.push_back({detail::field(p, "domain").get<Interval>(), rational_from_json(detail::field(p, "slope")),
                      rational_from_json(detail::field(p, "offset"))});
  f = PLCircleMap(std::move(pieces));
}

// Tube plans and reports.

inline void to_json(json& j, const TubePlan& plan) {
  json tubes = json::array();
  for (const auto& t : plan.tubes)
    tubes.push_back({{"interval", t.interval}, {"stage", t.stage}, {"target", to_string(t.target)},
                     {"orientation", t.orientation}});
  j = json{{"n", plan.params.n},   {"m", plan.params.m},         {"k", plan.params.k},
           {"tubes", tubes},       {"u_tilde", plan.u_tilde},    {"shadow", plan.shadow}};
}

inline void to_json(json& j, const SetupReport& r) {
  json drops = json::array();
  for (const auto& c : r.cond_drop) drops.push_back({{"level", c.level}, {"pass", c.pass}});
  json shifts = json::array();
  for (const auto& c : r.shift_checks) shifts.push_back({{"tube", c.tube}, {"ell", c.ell}, {"pass", c.pass}});
  j = json{{"n", r.n},
           {"depth", r.depth},
           {"cond_AB", r.cond_AB},
           {"cond_V0", r.cond_V0},
           {"cond_drop", drops},
           {"shift_checks", shifts},
           {"disk_hits_low", r.disk_hits_low},
           {"disk_hits_high", r.disk_hits_high},
           {"pass", r.passed()}};
}

inline void from_json(const json& j, SetupReport& r) {
  using namespace detail;
  r.n = as_count(field(j, "n"), "n");
  r.depth = static_cast<unsigned>(as_count(field(j, "depth"), "depth"));
  r.cond_AB = as_bool(field(j, "cond_AB"), "cond_AB");
  r.cond_V0 = as_bool(field(j, "cond_V0"), "cond_V0");
  r.cond_drop.clear();
  for (const auto& c : field(j, "cond_drop"))
    r.cond_drop.push_back({static_cast<unsigned>(as_count(field(c, "level"), "level")), as_bool(field(c, "pass"), "pass")});
  r.shift_checks.clear();
  for (const auto& c : field(j, "shift_checks"))
    r.shift_checks.push_back({as_count(field(c, "tube"), "tube"), static_cast<unsigned>(as_count(field(c, "ell"), "ell")),
                              as_bool(field(c, "pass"), "pass")});
  r.disk_hits_low = as_count(field(j, "disk_hits_low"), "disk_hits_low");
  r.disk_hits_high = as_count(field(j, "disk_hits_high"), "disk_hits_high");
}

inline void to_json(json& j, const InterlaceBound& b) { j = json{{"value", b.value.str()}, {"kind", to_string(b.kind)}}; }

inline void from_json(const json& j, InterlaceBound& b) {
  b.value = bigint_from_json(detail::field(j, "value"));
  const auto& kind = detail::as_string(detail::field(j, "kind"), "kind");
  if (kind == "EXACT") b.kind = BoundKind::Exact;
  else if (kind == "LOWER") b.kind = BoundKind::Lower;
  else detail::bad_document("unknown bound kind \"" + kind + "\"");
}

inline void to_json(json& j, const InductionReport& r) {
  json steps = json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"level", s.level}, {"order", s.order}, {"setup_pass", s.setup_pass}, {"ab_pass", s.ab_pass},
                     {"v0_nested", s.v0_nested}});
  j = json{{"orders", r.orders}, {"setup_reports", r.setup_reports}, {"steps", steps}, {"v0_chain", r.v0_chain}};
  if (r.embedding_consistent) j["embedding_consistent"] = *r.embedding_consistent;
}

inline void from_json(const json& j, InductionReport& r) {
  using namespace detail;
  r.orders.clear();
  for (const auto& o : field(j, "orders")) r.orders.push_back(as_count(o, "order"));
  r.setup_reports = field(j, "setup_reports").get<std::vector<SetupReport>>();
  r.steps.clear();
  for (const auto& s : field(j, "steps"))
    r.steps.push_back({as_count(field(s, "level"), "level"), as_count(field(s, "order"), "order"),
                       as_bool(field(s, "setup_pass"), "setup_pass"), as_bool(field(s, "ab_pass"), "ab_pass"),
                       as_bool(field(s, "v0_nested"), "v0_nested")});
  r.v0_chain = field(j, "v0_chain").get<std::vector<IntervalSet>>();
  r.embedding_consistent.reset();
  if (j.contains("embedding_consistent")) r.embedding_consistent = as_bool(j.at("embedding_consistent"), "embedding_consistent");
}

// Links, sequences, manifests.

inline void to_json(json& j, const LinkType& l) { j = json{{"type", to_string(l.kind)}, {"order", l.order}}; }

inline void from_json(const json& j, LinkType& l) {
  const auto& type = detail::as_string(detail::field(j, "type"), "type");
  if (type == "whitehead") l.kind = LinkKind::Whitehead;
  else if (type == "bing") l.kind = LinkKind::Bing;
  else if (type == "gabai") l.kind = LinkKind::Gabai;
  else if (type == "mcmillan") l.kind = LinkKind::McMillan;
  else detail::bad_document("unknown link type \"" + type + "\"");
  l.order = j.contains("order") ? detail::as_count(j.at("order"), "order") : 1;
  if (l.order < 1) detail::bad_document("link order must be >= 1");
  if ((l.kind == LinkKind::Whitehead || l.kind == LinkKind::Bing) && l.order != 1)
    detail::bad_document("whitehead and bing links have no order other than 1");
}

struct ManifestOptions {
  std::optional<unsigned> depth;
  std::size_t horizon = 4;
};

struct Manifest {
  DefiningSequence sequence;
  ManifestOptions options;
};

inline Manifest manifest_from_json(const json& j) {
  Manifest m;
  m.sequence.name = detail::as_string(detail::field(j, "name"), "name");
  const json& seq = detail::field(j, "sequence");
  auto links = [](const json& arr, const char* what) {
    if (!arr.is_array()) detail::bad_document(std::string(what) + " must be an array");
    return arr.get<std::vector<LinkType>>();
  };
  m.sequence.prefix = seq.contains("prefix") ? links(seq.at("prefix"), "prefix") : std::vector<LinkType>{};
  m.sequence.period = links(detail::field(seq, "period"), "period");
  if (j.contains("options")) {
    const json& opt = j.at("options");
    if (opt.contains("depth")) {
      const auto d = detail::as_count(opt.at("depth"), "depth");
      if (d < 4 || d > 64) detail::bad_document("depth must lie in [4,64]");
      m.options.depth = static_cast<unsigned>(d);
    }
    if (opt.contains("horizon")) {
      const auto h = detail::as_count(opt.at("horizon"), "horizon");
      if (h < 1 || h > 100000) detail::bad_document("horizon must lie in [1,100000]");
      m.options.horizon = static_cast<std::size_t>(h);
    }
  }
  return m;
}

inline json manifest_to_json(const Manifest& m) {
  json options{{"horizon", m.options.horizon}};
  if (m.options.depth) options["depth"] = *m.options.depth;
  return json{{"name", m.sequence.name},
              {"sequence", {{"prefix", m.sequence.prefix}, {"period", m.sequence.period}}},
              {"options", options}};
}

// Certificates.

inline json divisibility_to_json(const Divisibility& d) {
  return json{{"name", d.name},           {"prefix", d.prefix},           {"period", d.period},
              {"prefix_hits", d.prefix_hits}, {"period_hits", d.period_hits}, {"levels", d.levels}};
}

inline Divisibility divisibility_from_json(const json& j) {
  using namespace detail;
  Divisibility d;
  d.name = as_string(field(j, "name"), "name");
  d.prefix = field(j, "prefix").get<std::vector<LinkType>>();
  d.period = field(j, "period").get<std::vector<LinkType>>();
  for (const auto& x : field(j, "prefix_hits")) d.prefix_hits.push_back(as_count(x, "prefix_hits"));
  for (const auto& x : field(j, "period_hits")) d.period_hits.push_back(as_count(x, "period_hits"));
  for (const auto& x : field(j, "levels")) d.levels.push_back(as_count(x, "levels"));
  return d;
}

inline Verdict verdict_from_string(const std::string& s) {
  for (auto v : {Verdict::Double3SpaceYes, Verdict::Double3SpaceNo, Verdict::Unknown, Verdict::Distinct,
                 Verdict::IndistinguishableAtHorizon})
    if (s == to_string(v)) return v;
  detail::bad_document("unknown verdict \"" + s + "\"");
}

inline json certificate_to_json(const Certificate& c) {
  json ev;
  if (const auto* ex = std::get_if<ExhaustionEvidence>(&c.evidence)) {
    ev = json{{"type", "exhaustion"}, {"horizon", ex->horizon}, {"induction", ex->induction}};
    if (ex->depth) ev["depth"] = *ex->depth;
  } else if (const auto* dv = std::get_if<DivergenceEvidence>(&c.evidence)) {
    json trace = json::array();
    for (const auto& t : dv->trace)
      trace.push_back({{"step", t.step}, {"link_level", t.link_level}, {"order", t.order}, {"bound", t.bound}});
    ev = json{{"type", "divergence"}, {"horizon", dv->horizon}, {"trace", trace}};
  } else if (const auto* pe = std::get_if<PrimeEvidence>(&c.evidence)) {
    ev = json{{"type", "prime"},
              {"prime", pe->prime},
              {"horizon", pe->horizon},
              {"a", divisibility_to_json(pe->a)},
              {"b", divisibility_to_json(pe->b)}};
  } else {
    const auto& un = std::get<UnknownEvidence>(c.evidence);
    ev = json{{"type", "unknown"}, {"reason", un.reason}, {"kinds", un.kinds}};
  }
  return json{{"format", kCertificateFormat}, {"verdict", to_string(c.verdict)}, {"subject", c.subject}, {"evidence", ev}};
}

inline Certificate certificate_from_json(const json& j) {
  using namespace detail;
  if (as_string(field(j, "format"), "format") != kCertificateFormat) bad_document("unsupported certificate format");
  Certificate c;
  c.verdict = verdict_from_string(as_string(field(j, "verdict"), "verdict"));
  c.subject = as_string(field(j, "subject"), "subject");
  const json& ev = field(j, "evidence");
  const auto& type = as_string(field(ev, "type"), "type");
  if (type == "exhaustion") {
    ExhaustionEvidence ex;
    ex.horizon = as_count(field(ev, "horizon"), "horizon");
    if (ev.contains("depth")) ex.depth = static_cast<unsigned>(as_count(ev.at("depth"), "depth"));
    ex.induction = field(ev, "induction").get<InductionReport>();
    c.evidence = std::move(ex);
  } else if (type == "divergence") {
    DivergenceEvidence dv;
    dv.horizon = as_count(field(ev, "horizon"), "horizon");
    for (const auto& t : field(ev, "trace"))
      dv.trace.push_back({as_count(field(t, "step"), "step"), as_count(field(t, "link_level"), "link_level"),
                          as_count(field(t, "order"), "order"), field(t, "bound").get<InterlaceBound>()});
    c.evidence = std::move(dv);
  } else if (type == "prime") {
    c.evidence = PrimeEvidence{as_count(field(ev, "prime"), "prime"), as_count(field(ev, "horizon"), "horizon"),
                               divisibility_from_json(field(ev, "a")), divisibility_from_json(field(ev, "b"))};
  } else if (type == "unknown") {
    UnknownEvidence un;
    un.reason = as_string(field(ev, "reason"), "reason");
    for (const auto& k : field(ev, "kinds")) un.kinds.push_back(as_string(k, "kinds"));
    c.evidence = std::move(un);
  } else {
    bad_document("unknown evidence type \"" + type + "\"");
  }
  return c;
}

}  // namespace torus_ledger

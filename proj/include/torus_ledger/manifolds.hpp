#pragma once

// Defining sequences of genus-one open 3-manifolds, geometric-index algebra,
// and certificate-producing decisions about the double 3-space property and
// about distinguishing two manifolds by a prime.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "torus_ledger/gabai_tubes.hpp"
#include "torus_ledger/interlacing.hpp"

namespace torus_ledger {

enum class LinkKind { Whitehead, Bing, Gabai, McMillan };

inline const char* to_string(LinkKind k) {
  switch (k) {
    case LinkKind::Whitehead: return "whitehead";
    case LinkKind::Bing: return "bing";
    case LinkKind::Gabai: return "gabai";
    case LinkKind::McMillan: return "mcmillan";
  }
  return "?";
}

struct LinkType {
  LinkKind kind = LinkKind::Whitehead;
  std::uint64_t order = 1;

  static LinkType whitehead() { return {LinkKind::Whitehead, 1}; }
  static LinkType bing() { return {LinkKind::Bing, 1}; }
  static LinkType gabai(std::uint64_t n) { return {LinkKind::Gabai, n}; }
  static LinkType mcmillan(std::uint64_t n) { return {LinkKind::McMillan, n}; }

  friend bool operator==(const LinkType&, const LinkType&) = default;
};

inline std::string to_string(const LinkType& l) {
  if (l.kind == LinkKind::Whitehead || l.kind == LinkKind::Bing) return to_string(l.kind);
  return std::string(to_string(l.kind)) + "(" + std::to_string(l.order) + ")";
}

/// T_0 ⊂ T_1 ⊂ ... where link i (1-based) describes the pair (T_{i-1}, T_i):
/// the finite prefix, then the period repeated forever.
struct DefiningSequence {
  std::string name;
  std::vector<LinkType> prefix;
  std::vector<LinkType> period;

  bool periodic() const { return !period.empty(); }
  std::size_t finite_length() const { return prefix.size(); }

  const LinkType& link(std::size_t level) const {
    if (level < 1) throw Error(ErrorKind::InvalidInput, "link levels start at 1");
    if (level <= prefix.size()) return prefix[level - 1];
    if (period.empty())
      throw Error(ErrorKind::InvalidSequence, "level " + std::to_string(level) + " beyond a finite sequence");
    return period[(level - 1 - prefix.size()) % period.size()];
  }

  std::vector<LinkType> first(std::size_t count) const {
    std::vector<LinkType> out;
    out.reserve(count);
    for (std::size_t i = 1; i <= count; ++i) out.push_back(link(i));
    return out;
  }

  template <typename Pred>
  bool all_links(Pred&& pred) const {
    return std::all_of(prefix.begin(), prefix.end(), pred) && std::all_of(period.begin(), period.end(), pred);
  }

  friend bool operator==(const DefiningSequence&, const DefiningSequence&) = default;
};

inline void validate(const LinkType& l) {
  if (l.order < 1) throw Error(ErrorKind::InvalidInput, "link order must be >= 1");
}

/// Geometric index of the inner torus in the outer one.
inline BigInt link_index(const LinkType& l) {
  validate(l);
  switch (l.kind) {
    case LinkKind::Whitehead:
    case LinkKind::Bing: return 2;
    case LinkKind::Gabai:
    case LinkKind::McMillan: return BigInt(2) * BigInt(l.order);
  }
  return 0;
}

/// N(T_i, T_j): the product of the link indices of levels i+1..j.
inline BigInt index_between(const DefiningSequence& seq, std::size_t i, std::size_t j) {
  if (i >= j) throw Error(ErrorKind::InvalidInput, "index_between needs i < j");
  BigInt product = 1;
  for (std::size_t level = i + 1; level <= j; ++level) product *= link_index(seq.link(level));
  return product;
}

/// Geometric index 2n of a Gabai link of order n, from both sides: the two
/// meridional disks meet the core in 2n points, and the link splits into n-1
/// Bing links and one Whitehead link, each of index 2.
struct IndexLedger {
  std::uint64_t n = 1;
  std::uint64_t disk_hits = 2;
  std::uint64_t bing_count = 0;
  std::uint64_t whitehead_count = 1;
  std::uint64_t lower = 2;
  std::uint64_t upper = 2;

  bool consistent() const { return lower == upper && upper == 2 * n && disk_hits == upper; }
  friend bool operator==(const IndexLedger&, const IndexLedger&) = default;
};

inline IndexLedger gabai_index_certificate(std::uint64_t n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "Gabai order must be >= 1");
  IndexLedger ledger;
  ledger.n = n;
  ledger.disk_hits = 2 * n;
  ledger.upper = ledger.disk_hits;
  ledger.bing_count = n - 1;
  ledger.whitehead_count = 1;
  const BigInt bing = link_index(LinkType::bing());
  const BigInt whitehead = link_index(LinkType::whitehead());
  ledger.lower = static_cast<std::uint64_t>(bing * ledger.bing_count + whitehead * ledger.whitehead_count);
  if (!ledger.consistent())
    throw Error(ErrorKind::PropertyViolation, "index ledger for n = " + std::to_string(n) + " is inconsistent");
  return ledger;
}

/// Every link with a contractible inner torus has even geometric index.
inline bool parity_check(std::span<const BigInt> indices) {
  return std::all_of(indices.begin(), indices.end(), [](const BigInt& x) { return x > 0 && x % 2 == 0; });
}
inline bool parity_check(const DefiningSequence& seq) {
  std::vector<BigInt> indices;
  for (const auto* part : {&seq.prefix, &seq.period})
    for (const auto& l : *part) indices.push_back(link_index(l));
  return parity_check(indices);
}

/// k_j = mcmillan_bound(k_{j-1}, n_j) starting from k_0.
inline std::vector<InterlaceBound> divergence_trace(std::span<const std::uint64_t> orders, const BigInt& start = 1) {
  std::vector<InterlaceBound> out;
  out.reserve(orders.size());
  BigInt k = start;
  for (auto n : orders) {
    if (n < 2) throw Error(ErrorKind::TraceRefused, "McMillan order " + std::to_string(n) + " < 2 does not raise the bound");
    out.push_back(mcmillan_bound(k, n));
    k = out.back().value;
  }
  return out;
}

enum class Verdict { Double3SpaceYes, Double3SpaceNo, Unknown, Distinct, IndistinguishableAtHorizon };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Double3SpaceYes: return "DOUBLE3SPACE_YES";
    case Verdict::Double3SpaceNo: return "DOUBLE3SPACE_NO";
    case Verdict::Unknown: return "UNKNOWN";
    case Verdict::Distinct: return "DISTINCT";
    case Verdict::IndistinguishableAtHorizon: return "INDISTINGUISHABLE_AT_HORIZON";
  }
  return "?";
}

/// The tower over the first `horizon` Gabai links: one setup report per
/// distinct order and a strictly nested V^0 chain.
struct ExhaustionEvidence {
  std::size_t horizon = 0;
  std::optional<unsigned> depth;
  InductionReport induction;

  friend bool operator==(const ExhaustionEvidence&, const ExhaustionEvidence&) = default;
};

/// Step 0 holds the starting interlacing 1 of the two disks in the outermost
/// torus; step j pushes it through the link at `link_level` = horizon - j + 1.
struct TraceEntry {
  std::size_t step = 0;
  std::size_t link_level = 0;
  std::uint64_t order = 0;
  InterlaceBound bound;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct DivergenceEvidence {
  std::size_t horizon = 0;
  std::vector<TraceEntry> trace;

  friend bool operator==(const DivergenceEvidence&, const DivergenceEvidence&) = default;
};

struct Divisibility {
  std::string name;
  std::vector<LinkType> prefix;
  std::vector<LinkType> period;
  std::vector<std::size_t> prefix_hits;  // 0-based positions whose order p divides
  std::vector<std::size_t> period_hits;
  std::vector<std::size_t> levels;  // 1-based levels <= horizon whose order p divides

  bool infinitely_often() const { return !period_hits.empty(); }
  friend bool operator==(const Divisibility&, const Divisibility&) = default;
};

struct PrimeEvidence {
  std::uint64_t prime = 2;
  std::size_t horizon = 0;
  Divisibility a;
  Divisibility b;

  friend bool operator==(const PrimeEvidence&, const PrimeEvidence&) = default;
};

struct UnknownEvidence {
  std::string reason;
  std::vector<std::string> kinds;

  friend bool operator==(const UnknownEvidence&, const UnknownEvidence&) = default;
};

using Evidence = std::variant<ExhaustionEvidence, DivergenceEvidence, PrimeEvidence, UnknownEvidence>;

struct Certificate {
  Verdict verdict = Verdict::Unknown;
  std::string subject;
  Evidence evidence;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

namespace detail {

inline std::vector<TraceEntry> build_trace(std::span<const std::uint64_t> orders_outer_to_inner) {
  std::vector<TraceEntry> trace;
  const std::size_t horizon = orders_outer_to_inner.size();
  trace.push_back({0, 0, 0, {BigInt(1), BoundKind::Lower}});
  const auto bounds = divergence_trace(orders_outer_to_inner);
  for (std::size_t j = 0; j < bounds.size(); ++j)
    trace.push_back({j + 1, horizon - j, orders_outer_to_inner[j], bounds[j]});
  return trace;
}

inline bool trace_diverges(const std::vector<TraceEntry>& trace, std::size_t horizon) {
  if (trace.size() != horizon + 1) return false;
  for (std::size_t j = 1; j < trace.size(); ++j)
    if (!(trace[j].bound.value > trace[j - 1].bound.value)) return false;
  return trace.back().bound.value > BigInt(horizon);
}

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Order used by the prime criterion: half the geometric index.
inline std::uint64_t prime_order(const LinkType& l) {
  return (l.kind == LinkKind::Gabai || l.kind == LinkKind::McMillan) ? l.order : 1;
}

inline Divisibility divisibility(const std::string& name, const std::vector<LinkType>& prefix,
                                 const std::vector<LinkType>& period, std::uint64_t p, std::size_t horizon) {
  Divisibility d{name, prefix, period, {}, {}, {}};
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (prime_order(prefix[i]) % p == 0) d.prefix_hits.push_back(i);
  for (std::size_t i = 0; i < period.size(); ++i)
    if (prime_order(period[i]) % p == 0) d.period_hits.push_back(i);
  const DefiningSequence seq{name, prefix, period};
  for (std::size_t level = 1; level <= horizon; ++level)
    if (prime_order(seq.link(level)) % p == 0) d.levels.push_back(level);
  return d;
}

inline std::vector<std::string> kinds_of(const DefiningSequence& seq) {
  std::set<std::string> kinds;
  for (const auto* part : {&seq.prefix, &seq.period})
    for (const auto& l : *part) kinds.insert(to_string(l.kind));
  return {kinds.begin(), kinds.end()};
}

inline void require_periodic(const DefiningSequence& seq) {
  if (!seq.periodic()) throw Error(ErrorKind::InvalidSequence, "sequence \"" + seq.name + "\" has an empty period");
  for (const auto* part : {&seq.prefix, &seq.period})
    for (const auto& l : *part) validate(l);
}

inline std::vector<std::uint64_t> orders_outer_to_inner(const DefiningSequence& seq, std::size_t horizon) {
  std::vector<std::uint64_t> orders;
  for (std::size_t level = horizon; level >= 1; --level) orders.push_back(seq.link(level).order);
  return orders;
}

}  // namespace detail

/// Decides the double 3-space property for the two families this library can
/// certify. All-Gabai sequences get YES with the tower evidence over
/// `horizon` levels; all-McMillan sequences of order >= 2 get NO with a
/// divergence trace through `horizon` links; anything else is UNKNOWN.
inline Certificate classify_double3(const DefiningSequence& seq, std::optional<unsigned> depth, std::size_t horizon,
                                    std::uint64_t max_search = kDefaultSearchBudget) {
  detail::require_periodic(seq);
  if (horizon < 1) throw Error(ErrorKind::InvalidInput, "horizon must be >= 1");

  if (seq.all_links([](const LinkType& l) { return l.kind == LinkKind::Gabai; })) {
    std::vector<std::uint64_t> orders;
    for (const auto& l : seq.first(horizon)) orders.push_back(l.order);
    Induction tower = build_induction(orders, depth, false, max_search);
    if (!tower.report.passed())
      throw Error(ErrorKind::PropertyViolation, "Gabai tower for \"" + seq.name + "\" failed verification");
    return {Verdict::Double3SpaceYes, seq.name, ExhaustionEvidence{horizon, depth, std::move(tower.report)}};
  }

  if (seq.all_links([](const LinkType& l) { return l.kind == LinkKind::McMillan && l.order >= 2; })) {
    auto trace = detail::build_trace(detail::orders_outer_to_inner(seq, horizon));
    if (!detail::trace_diverges(trace, horizon))
      throw Error(ErrorKind::PropertyViolation, "divergence trace for \"" + seq.name + "\" does not exceed the horizon");
    return {Verdict::Double3SpaceNo, seq.name, DivergenceEvidence{horizon, std::move(trace)}};
  }

  return {Verdict::Unknown, seq.name,
          UnknownEvidence{"only all-Gabai or all-McMillan (order >= 2) sequences are decided", detail::kinds_of(seq)}};
}

/// McMillan's criterion: if p divides infinitely many orders of one sequence
/// and only finitely many of the other, the manifolds are not homeomorphic.
inline Certificate distinguish_by_prime(const DefiningSequence& a, const DefiningSequence& b, std::uint64_t p,
                                        std::size_t horizon) {
  if (!detail::is_prime(p)) throw Error(ErrorKind::InvalidInput, std::to_string(p) + " is not prime");
  detail::require_periodic(a);
  detail::require_periodic(b);
  PrimeEvidence ev{p, horizon, detail::divisibility(a.name, a.prefix, a.period, p, horizon),
                   detail::divisibility(b.name, b.prefix, b.period, p, horizon)};
  const Verdict v = ev.a.infinitely_often() != ev.b.infinitely_often() ? Verdict::Distinct
                                                                      : Verdict::IndistinguishableAtHorizon;
  return {v, a.name + " vs " + b.name, std::move(ev)};
}

/// Re-derives the verdict from the evidence alone. Every recomputed piece of
/// evidence must equal the stored one; otherwise ReplayMismatch is thrown.
inline Verdict replay(const Certificate& cert, std::uint64_t max_search = kDefaultSearchBudget) {
  auto mismatch = [&](const std::string& what) { throw Error(ErrorKind::ReplayMismatch, what); };
  Verdict derived = Verdict::Unknown;

  if (const auto* ex = std::get_if<ExhaustionEvidence>(&cert.evidence)) {
    const auto& orders = ex->induction.orders;
    if (orders.size() != ex->horizon) mismatch("tower length differs from horizon");
    const Induction again = build_induction(orders, ex->depth, false, max_search);
    if (again.report != ex->induction) mismatch("recomputed tower evidence differs");
    if (!again.report.passed() || ex->horizon < 1) mismatch("tower evidence does not pass");
    derived = Verdict::Double3SpaceYes;
  } else if (const auto* dv = std::get_if<DivergenceEvidence>(&cert.evidence)) {
    std::vector<std::uint64_t> orders;
    for (std::size_t j = 1; j < dv->trace.size(); ++j) orders.push_back(dv->trace[j].order);
    if (detail::build_trace(orders) != dv->trace) mismatch("recomputed divergence trace differs");
    if (!detail::trace_diverges(dv->trace, dv->horizon)) mismatch("trace does not exceed the horizon");
    derived = Verdict::Double3SpaceNo;
  } else if (const auto* pe = std::get_if<PrimeEvidence>(&cert.evidence)) {
    if (!detail::is_prime(pe->prime)) mismatch("witness is not prime");
    const auto a = detail::divisibility(pe->a.name, pe->a.prefix, pe->a.period, pe->prime, pe->horizon);
    const auto b = detail::divisibility(pe->b.name, pe->b.prefix, pe->b.period, pe->prime, pe->horizon);
    if (a != pe->a || b != pe->b) mismatch("recomputed divisibility sets differ");
    derived = a.infinitely_often() != b.infinitely_often() ? Verdict::Distinct : Verdict::IndistinguishableAtHorizon;
  } else {
    derived = Verdict::Unknown;
  }
  if (derived != cert.verdict)
    mismatch(std::string("evidence supports ") + to_string(derived) + ", certificate says " + to_string(cert.verdict));
  return derived;
}

}  // namespace torus_ledger

#include "psiorder/verify.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "psiorder/errors.hpp"

namespace psiorder {

OrderVector project(const OrderVector& v, const std::vector<Label>& subcollection) {
  std::set<Label> wanted(subcollection.begin(), subcollection.end());
  for (const auto& label : subcollection) {
    if (std::find(v.labels.begin(), v.labels.end(), label) == v.labels.end()) {
      throw UnknownLabel("label '" + label + "' does not occur in the order vector");
    }
  }
  OrderVector out;
  for (const auto& label : v.labels) {
    if (wanted.count(label)) out.labels.push_back(label);
  }
  return out;
}

std::vector<OrderVector> preimage(const OrderVector& u, const std::vector<OrderVector>& V,
                                  const std::vector<Label>& subcollection) {
  std::vector<OrderVector> out;
  for (const auto& v : V) {
    if (project(v, subcollection) == u) out.push_back(v);
  }
  return out;
}

std::string to_string(ItemStatus s) {
  switch (s) {
    case ItemStatus::Pass: return "pass";
    case ItemStatus::Fail: return "fail";
    case ItemStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
    case CheckStatus::HypothesisNotMet: return "hypothesis_not_met";
  }
  return "?";
}

bool VerificationReport::consistent() const {
  return !(items[5].status == ItemStatus::Pass && items[1].status == ItemStatus::Fail);
}

bool VerificationReport::all_pass() const {
  return std::all_of(items.begin(), items.end(),
                     [](const ItemResult& r) { return r.status == ItemStatus::Pass; });
}

namespace {

using Entries = std::vector<TraceEntry>;

bool contains(const std::vector<Label>& xs, const Label& x) {
  return std::find(xs.begin(), xs.end(), x) != xs.end();
}

ItemResult fail(const Entries& e, std::size_t base, std::size_t i, std::vector<OrderVector> vectors,
                std::string detail) {
  ItemResult r;
  r.status = ItemStatus::Fail;
  r.witness = Witness{e[i].t, base + i, std::move(vectors), std::move(detail)};
  return r;
}

ItemResult pass(const Entries& e) {
  return {ItemStatus::Pass, "consistent at horizon " + to_string(e.back().t), std::nullopt};
}

// Residue class of t_e, e >= 1, in 1..k.
int residue(std::size_t e, int k) { return static_cast<int>((e - 1) % static_cast<std::size_t>(k)) + 1; }

ItemResult check_tau(const Entries& e, std::size_t base, int k) {
  for (std::size_t i = 1; i < e.size(); ++i) {
    if (e[i].jumping.size() != static_cast<std::size_t>(k)) {
      return fail(e, base, i, {e[i - 1].order, e[i].order},
                  "tau = " + std::to_string(e[i].jumping.size()) + ", expected " + std::to_string(k));
    }
  }
  return pass(e);
}

ItemResult check_period(const Entries& e, std::size_t base, int k) {
  const auto kk = static_cast<std::size_t>(k);
  for (std::size_t i = 0; i + kk < e.size(); ++i) {
    if (!(e[i + kk].order == e[i].order)) {
      return fail(e, base, i + kk, {e[i].order, e[i + kk].order},
                  "v(t_" + std::to_string(base + i + kk) + ") != v(t_" + std::to_string(base + i) + ")");
    }
  }
  return pass(e);
}

ItemResult check_calendar(const Entries& e, std::size_t base, int k,
                          const std::map<Label, TriangularIndex>& role, bool diagonal) {
  for (std::size_t i = 1; i < e.size(); ++i) {
    const int r = residue(i, k);
    for (const auto& [label, idx] : role) {
      if ((idx.j == idx.l) != diagonal) continue;
      const bool expected = idx.j == r || idx.l == r;
      const bool jumped = contains(e[i].jumping, label);
      if (expected != jumped) {
        return fail(e, base, i, {e[i - 1].order, e[i].order},
                    label + " (" + to_string(idx) + ") " + (jumped ? "jumps" : "does not jump") +
                        " at t_" + std::to_string(base + i));
      }
      if (!diagonal) {
        for (const auto& q : e[i].quiet) {
          if (contains(q.jumping, label)) {
            return fail(e, base, i, {e[i - 1].order, e[i].order},
                        label + " (" + to_string(idx) + ") jumps at t = " + to_string(q.t) +
                            " between scheduled jumps");
          }
        }
      }
    }
  }
  return pass(e);
}

ItemResult check_largest(const Entries& e, std::size_t base, int k,
                         const std::map<TriangularIndex, Label>& by_index) {
  const auto kk = static_cast<std::size_t>(k);
  for (std::size_t i = 1; i < e.size(); ++i) {
    const auto& prev = e[i - 1].order.labels;
    std::set<Label> top(prev.begin(), prev.begin() + static_cast<std::ptrdiff_t>(std::min(kk, prev.size())));
    std::set<Label> jumped(e[i].jumping.begin(), e[i].jumping.end());
    if (top != jumped) {
      return fail(e, base, i, {e[i - 1].order, e[i].order},
                  "jumping set differs from the " + std::to_string(k) + " largest at t_" +
                      std::to_string(base + i - 1));
    }
    const int r = residue(i, k);
    const auto& expected = by_index.at({r, r});
    if (prev.front() != expected) {
      return fail(e, base, i, {e[i - 1].order, e[i].order},
                  "largest at t_" + std::to_string(base + i - 1) + " is " + prev.front() + ", expected " +
                      expected);
    }
  }
  return pass(e);
}

ItemResult check_orbit(const Entries& e, std::size_t base, const TrianglePermutation& pi) {
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    auto image = pi.apply(std::span<const Label>(e[i].order.labels));
    if (image != e[i + 1].order.labels) {
      return fail(e, base, i + 1, {e[i].order, e[i + 1].order, OrderVector{image}},
                  "v(t_" + std::to_string(base + i + 1) + ") != pi(v(t_" + std::to_string(base + i) + "))");
    }
  }
  return pass(e);
}

ItemResult inconclusive(std::string why) { return {ItemStatus::Inconclusive, std::move(why), std::nullopt}; }

std::size_t failures(const std::array<ItemResult, 6>& items) {
  return static_cast<std::size_t>(std::count_if(
      items.begin(), items.end(), [](const ItemResult& r) { return r.status == ItemStatus::Fail; }));
}

}  // namespace

VerificationReport verify_structure(const ChangeTrace& trace, int k) {
  if (k < 2) throw InvalidArgument("verify_structure needs k >= 2");
  if (trace.entries.empty()) throw InvalidArgument("verify_structure needs a nonempty trace");
  VerificationReport report;
  report.k = k;
  report.n = trace.entries.front().order.size();
  report.horizon = trace.entries.back().t;
  report.trace_length = trace.entries.size();
  report.distinct_vectors = distinct_vectors(trace).size();

  const std::size_t need = 2 * static_cast<std::size_t>(k) + 1;
  if (trace.entries.size() < need) {
    for (auto& item : report.items) {
      item = inconclusive("trace has " + std::to_string(trace.entries.size()) +
                          " entries, need at least 2k+1 = " + std::to_string(need));
    }
    return report;
  }
  const bool extremal = report.n == triangle_size(k);
  if (!extremal) {
    report.warnings.push_back("tuple size " + std::to_string(report.n) + " differs from k(k+1)/2 = " +
                              std::to_string(triangle_size(k)));
  }

  std::optional<std::array<ItemResult, 6>> best;
  for (std::size_t offset = 0; offset < static_cast<std::size_t>(k); ++offset) {
    if (trace.entries.size() - offset < need) break;
    Entries e(trace.entries.begin() + static_cast<std::ptrdiff_t>(offset), trace.entries.end());
    std::array<ItemResult, 6> items;
    items[0] = check_tau(e, offset, k);
    items[1] = check_period(e, offset, k);
    std::vector<std::pair<TriangularIndex, Label>> enumeration;
    if (extremal) {
      std::map<Label, TriangularIndex> role;
      std::map<TriangularIndex, Label> by_index;
      for (std::size_t p = 0; p < e.front().order.size(); ++p) {
        auto idx = inverse_index(k, p + 1);
        const auto& label = e.front().order.labels[p];
        role[label] = idx;
        by_index[idx] = label;
        enumeration.emplace_back(idx, label);
      }
      items[2] = check_calendar(e, offset, k, role, true);
      items[3] = check_calendar(e, offset, k, role, false);
      items[4] = check_largest(e, offset, k, by_index);
      items[5] = check_orbit(e, offset, TrianglePermutation(k));
    } else {
      const std::string why = "EnumerationInferenceFailed: order vectors of length " +
                              std::to_string(report.n) + " cannot take the triangular form for k = " +
                              std::to_string(k);
      for (std::size_t i = 2; i < 6; ++i) items[i] = inconclusive(why);
    }
    if (!best || failures(items) < failures(*best)) {
      best = items;
      report.offset = offset;
      report.enumeration = std::move(enumeration);
    }
  }
  report.items = *best;
  return report;
}

namespace {

// Index of the first denominator >= t.
std::size_t first_index_at_or_after(ConvergentTable& table, const BigInt& t) {
  std::size_t m = table.level_at(t);
  return table.q(m) < t ? m + 1 : m;
}

}  // namespace

BeforeJumpResult check_before_jump(const FunctionTuple& pair, const BigInt& t_start, std::size_t events,
                          int depth_limit) {
  if (pair.size() != 2) throw InvalidArgument("check_before_jump needs exactly two functions");
  const BigInt start = std::max(t_start, earliest_start(pair));
  std::array<PsiFunction, 2> f{PsiFunction(pair.members[0].label, pair.members[0].source),
                               PsiFunction(pair.members[1].label, pair.members[1].source)};
  std::array<std::size_t, 2> next{first_index_at_or_after(f[0].convergents(), start),
                                  first_index_at_or_after(f[1].convergents(), start)};

  BeforeJumpResult result;
  std::size_t undecided = 0;
  for (std::size_t seen = 0; seen < events; ++seen) {
    // A finite source ends the window.
    if (!f[0].convergents().try_ensure(next[0]) || !f[1].convergents().try_ensure(next[1])) break;
    const BigInt qa = f[0].convergents().q(next[0]);
    const BigInt qb = f[1].convergents().q(next[1]);
    const BigInt t = std::min(qa, qb);
    const bool shared = qa == qb;
    const std::array<std::size_t, 2> at{next[0], next[1]};
    if (qa == t) ++next[0];
    if (qb == t) ++next[1];
    if (!shared) continue;

    for (int x = 0; x < 2; ++x) {
      const int y = 1 - x;
      auto& X = f[static_cast<std::size_t>(x)];
      auto& Y = f[static_cast<std::size_t>(y)];
      const std::size_t m = at[static_cast<std::size_t>(x)] - 1;  // X: q_{m+1} = t
      const BigInt q_m = X.convergents().q(m);
      if (q_m < start || m == 0) continue;
      const std::size_t j = at[static_cast<std::size_t>(y)];  // Y: h_j = t
      ++result.instances;
      BeforeJumpInstance inst{{X.label(), Y.label()}, t, q_m, false, false};
      try {
        auto x_before = X.level(m);
        auto y_before = Y.level(j - 1);
        inst.premise = compare_levels(X, x_before, Y, y_before, depth_limit).order == Ordering::Less;
        if (!inst.premise) continue;
        ++result.premise_held;
        auto x_prev = X.level(m - 1);
        auto y_prev = Y.level(Y.level_at(q_m - 1));
        inst.conclusion = compare_levels(X, x_prev, Y, y_prev, depth_limit).order == Ordering::Greater;
        if (!inst.conclusion) result.violations.push_back(inst);
      } catch (const ComparisonUndecided&) {
        ++undecided;
      } catch (const SourceExhausted&) {
        ++undecided;
      }
    }
  }
  if (!result.violations.empty()) {
    result.status = CheckStatus::Fail;
  } else if (undecided) {
    result.status = CheckStatus::Inconclusive;
    result.reason = std::to_string(undecided) + " comparisons undecided";
  } else if (result.instances == 0) {
    result.status = CheckStatus::HypothesisNotMet;
    result.reason = "no shared denominator in the window";
  } else {
    result.status = CheckStatus::Pass;
  }
  return result;
}

CoincidenceResult check_coincidences(const PartialQuotientSource& alpha, const PartialQuotientSource& beta,
                          const PartialQuotientSource& gamma, const CoincidenceIndices& idx,
                          int depth_limit) {
  PsiFunction a("alpha", alpha), b("beta", beta), c("gamma", gamma);
  auto& q = a.convergents();
  auto& h = b.convergents();
  auto& r = c.convergents();
  const auto [m, s, l] = idx;
  struct Equality {
    const char* text;
    bool holds;
  };
  const Equality eqs[] = {
      {"q_m = h_s", q.q(m) == h.q(s)},
      {"q_{m+1} = r_l", q.q(m + 1) == r.q(l)},
      {"r_{l+1} = h_{s+1}", r.q(l + 1) == h.q(s + 1)},
      {"q_{m+2} = h_{s+2}", q.q(m + 2) == h.q(s + 2)},
      {"q_{m+3} = r_{l+2}", q.q(m + 3) == r.q(l + 2)},
      {"r_{l+3} = h_{s+3}", r.q(l + 3) == h.q(s + 3)},
  };
  for (const auto& e : eqs) {
    if (!e.holds) throw PatternMismatch(std::string("coincidence ") + e.text + " fails");
  }
  if (m < 1) throw PatternMismatch("pattern needs m >= 1");

  CoincidenceResult result;
  auto eta = b.level(s + 1);
  auto xi = a.level(m + 1);
  try {
    auto v = compare_levels(b, eta, a, xi, depth_limit);
    result.status = v.order == Ordering::Greater ? CheckStatus::Pass : CheckStatus::Fail;
    if (result.status == CheckStatus::Fail) result.reason = "eta_{s+1} < xi_{m+1}";
  } catch (const ComparisonUndecided& e) {
    result.status = CheckStatus::Inconclusive;
    result.reason = e.what();
  }
  result.eta = eta.value;
  result.xi = xi.value;
  return result;
}

std::optional<CoincidenceIndices> find_coincidence_pattern(const PartialQuotientSource& alpha,
                                                 const PartialQuotientSource& beta,
                                                 const PartialQuotientSource& gamma,
                                                 const BigInt& horizon) {
  ConvergentTable q(alpha), h(beta), r(gamma);
  auto index = [](ConvergentTable& table, const BigInt& t) -> std::optional<std::size_t> {
    try {
      return table.index_of_denominator(t);
    } catch (const SourceExhausted&) {
      return std::nullopt;
    }
  };
  for (std::size_t m = 1; q.try_ensure(m + 3) && q.q(m) <= horizon; ++m) {
    auto s = index(h, q.q(m));
    auto l = index(r, q.q(m + 1));
    if (!s || !l || !h.try_ensure(*s + 3) || !r.try_ensure(*l + 3)) continue;
    if (r.q(*l + 1) == h.q(*s + 1) && q.q(m + 2) == h.q(*s + 2) && q.q(m + 3) == r.q(*l + 2) &&
        r.q(*l + 3) == h.q(*s + 3)) {
      return CoincidenceIndices{m, *s, *l};
    }
  }
  return std::nullopt;
}

std::size_t sign_changes(const FunctionTuple& pair, const BigInt& horizon, const BigInt& t0,
                         int depth_limit) {
  if (pair.size() != 2) throw InvalidArgument("sign_changes needs exactly two functions");
  TraceOptions options;
  options.depth_limit = depth_limit;
  options.horizon = horizon;
  options.max_events = std::numeric_limits<std::size_t>::max();
  auto trace = change_trace(pair, t0, std::numeric_limits<std::size_t>::max(), options);
  return trace.moments();
}

BoundCheck bound_check(std::size_t n, std::size_t k_lower) {
  if (k_lower < 1) throw InvalidArgument("bound_check needs an observed count >= 1");
  const std::size_t limit = k_lower * (k_lower + 1) / 2;
  BoundCheck out;
  out.consistent = n <= limit;
  out.message = out.consistent
                    ? "consistent so far: n = " + std::to_string(n) + " <= " + std::to_string(limit)
                    : "would violate n <= k(k+1)/2 if k = " + std::to_string(k_lower) + " were final (n = " +
                          std::to_string(n) + " > " + std::to_string(limit) + ")";
  return out;
}

}  // namespace psiorder

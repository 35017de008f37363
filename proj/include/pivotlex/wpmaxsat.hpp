#pragma once

#include <cstdint>
#include <cstdlib>
#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "pivotlex/cnf.hpp"
#include "pivotlex/error.hpp"

namespace pivotlex {

// Truth value per variable id; index 0 is unused.
using Assignment = std::vector<bool>;

struct SolveOutcome {
  Assignment assignment;
  std::int64_t soft_cost_micro = 0;

  double soft_cost() const { return static_cast<double>(soft_cost_micro) / kWeightScale; }
  bool value(int var) const { return assignment.at(static_cast<std::size_t>(var)); }

  friend bool operator==(const SolveOutcome&, const SolveOutcome&) = default;
};

struct HardViolation {
  std::size_t clause_index = 0;  // position in CnfFormula::hard
};

inline constexpr int kBruteForceVarLimit = 25;

namespace detail {

// Exact branch and bound. Variables are decided in id order, false first, and
// the incumbent is replaced only on strict improvement, so the optimum found
// is the lexicographically smallest optimal assignment (false < true).
class BranchAndBound {
 public:
  explicit BranchAndBound(const CnfFormula& cnf) : n_(cnf.num_vars) {
    for (const auto& cl : cnf.hard) add_clause(cl.literals, -1);
    for (const auto& cl : cnf.soft) add_clause(cl.literals, to_micro(*cl.weight));
    value_.assign(static_cast<std::size_t>(n_) + 1, kUnset);
    sat_.assign(clauses_.size(), 0);
    falsified_.assign(clauses_.size(), 0);
  }

  std::optional<SolveOutcome> run() {
    std::vector<int> trail;
    bool ok = true;
    for (std::size_t i = 0; i < clauses_.size() && ok; ++i) {
      if (clauses_[i].weight < 0 && clauses_[i].lits.size() == 1) {
        ok = assign_and_propagate(clauses_[i].lits[0], trail);
      }
    }
    if (ok) search(1);
    if (!best_) return std::nullopt;
    return best_;
  }

 private:
  static constexpr signed char kUnset = -1;

  struct Clause {
    std::vector<int> lits;
    std::int64_t weight;  // -1 for hard
  };
  struct Occurrence {
    std::size_t clause;
    bool positive;
  };

  void add_clause(const std::vector<int>& lits, std::int64_t weight) {
    const std::size_t idx = clauses_.size();
    clauses_.push_back({lits, weight});
    if (occ_.size() < static_cast<std::size_t>(n_) + 1) occ_.resize(static_cast<std::size_t>(n_) + 1);
    for (int lit : lits) occ_[static_cast<std::size_t>(std::abs(lit))].push_back({idx, lit > 0});
  }

  bool literal_true(int lit) const {
    const auto v = value_[static_cast<std::size_t>(std::abs(lit))];
    return v != kUnset && (v == 1) == (lit > 0);
  }

  // Assigns the literal true, propagates hard units and records every
  // assignment on the trail. Returns false on a hard conflict.
  bool assign_and_propagate(int lit, std::vector<int>& trail) {
    std::vector<int> queue{lit};
    while (!queue.empty()) {
      const int l = queue.back();
      queue.pop_back();
      const auto var = static_cast<std::size_t>(std::abs(l));
      if (value_[var] != kUnset) {
        if (!literal_true(l)) return false;
        continue;
      }
      value_[var] = l > 0 ? 1 : 0;
      trail.push_back(l);
      bool conflict = false;
      for (const auto& o : occ_[var]) {
        Clause& cl = clauses_[o.clause];
        if (o.positive == (l > 0)) {
          ++sat_[o.clause];
          continue;
        }
        ++falsified_[o.clause];
        if (sat_[o.clause] != 0) continue;
        const std::size_t left = cl.lits.size() - falsified_[o.clause];
        if (cl.weight >= 0) {
          if (left == 0) cost_ += cl.weight;
        } else if (left == 0) {
          conflict = true;
        } else if (left == 1) {
          for (int other : cl.lits) {
            if (value_[static_cast<std::size_t>(std::abs(other))] == kUnset) {
              queue.push_back(other);
              break;
            }
          }
        }
      }
      if (conflict) return false;
    }
    return true;
  }

  void undo(std::vector<int>& trail, std::size_t mark) {
    while (trail.size() > mark) {
      const int l = trail.back();
      trail.pop_back();
      const auto var = static_cast<std::size_t>(std::abs(l));
      for (const auto& o : occ_[var]) {
        const Clause& cl = clauses_[o.clause];
        if (o.positive == (l > 0)) {
          --sat_[o.clause];
          continue;
        }
        if (cl.weight >= 0 && sat_[o.clause] == 0 && falsified_[o.clause] == cl.lits.size()) {
          cost_ -= cl.weight;
        }
        --falsified_[o.clause];
      }
      value_[var] = kUnset;
    }
  }

  void search(int from) {
    if (best_ && cost_ >= best_->soft_cost_micro) return;
    int var = from;
    while (var <= n_ && value_[static_cast<std::size_t>(var)] != kUnset) ++var;
    if (var > n_) {
      SolveOutcome out;
      out.assignment.assign(static_cast<std::size_t>(n_) + 1, false);
      for (int v = 1; v <= n_; ++v) out.assignment[static_cast<std::size_t>(v)] = value_[static_cast<std::size_t>(v)] == 1;
      out.soft_cost_micro = cost_;
      best_ = std::move(out);
      return;
    }
    for (int lit : {-var, var}) {
      std::vector<int> trail;
      if (assign_and_propagate(lit, trail)) search(var + 1);
      undo(trail, 0);
    }
  }

  int n_;
  std::vector<Clause> clauses_;
  std::vector<std::vector<Occurrence>> occ_;
  std::vector<signed char> value_;
  std::vector<std::size_t> sat_;
  std::vector<std::size_t> falsified_;
  std::int64_t cost_ = 0;
  std::optional<SolveOutcome> best_;
};

}  // namespace detail

/// Minimum-cost assignment satisfying every hard clause; nullopt when the
/// hard clauses are unsatisfiable. Among optimal assignments the
/// lexicographically smallest one (false before true, lowest id first) is
/// returned.
inline std::optional<SolveOutcome> solve(const CnfFormula& cnf) {
  if (cnf.clause_count() == 0) throw Error("cannot solve an empty formula");
  return detail::BranchAndBound(cnf).run();
}

/// Exhaustive enumeration with the same contract and tie-break as `solve`.
inline std::optional<SolveOutcome> brute_force_solve(const CnfFormula& cnf) {
  if (cnf.clause_count() == 0) throw Error("cannot solve an empty formula");
  const int n = cnf.num_vars;
  if (n > kBruteForceVarLimit) {
    throw Error("brute force is limited to " + std::to_string(kBruteForceVarLimit) + " variables");
  }
  // Variable v maps to bit n - v, so ascending masks enumerate assignments in
  // lexicographic order with variable 1 most significant.
  struct Masks {
    std::uint32_t pos = 0, neg = 0;
    std::int64_t weight = 0;
  };
  auto masks_of = [n](const WeightedClause& cl) {
    Masks m;
    for (int lit : cl.literals) {
      const std::uint32_t bit = std::uint32_t{1} << (n - std::abs(lit));
      (lit > 0 ? m.pos : m.neg) |= bit;
    }
    if (!cl.hard()) m.weight = to_micro(*cl.weight);
    return m;
  };
  std::vector<Masks> hard, soft;
  for (const auto& cl : cnf.hard) hard.push_back(masks_of(cl));
  for (const auto& cl : cnf.soft) soft.push_back(masks_of(cl));

  const std::uint32_t all = n == 32 ? ~std::uint32_t{0} : (std::uint32_t{1} << n) - 1;
  std::optional<std::uint32_t> best_mask;
  std::int64_t best_cost = std::numeric_limits<std::int64_t>::max();
  for (std::uint64_t x64 = 0; x64 <= all; ++x64) {
    const auto x = static_cast<std::uint32_t>(x64);
    bool feasible = true;
    for (const auto& m : hard) {
      if (((x & m.pos) | (~x & m.neg)) == 0) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    std::int64_t cost = 0;
    for (const auto& m : soft) {
      if (((x & m.pos) | (~x & m.neg)) == 0) cost += m.weight;
    }
    if (cost < best_cost) {
      best_cost = cost;
      best_mask = x;
    }
  }
  if (!best_mask) return std::nullopt;
  SolveOutcome out;
  out.assignment.assign(static_cast<std::size_t>(n) + 1, false);
  for (int v = 1; v <= n; ++v) {
    out.assignment[static_cast<std::size_t>(v)] = ((*best_mask >> (n - v)) & 1U) != 0;
  }
  out.soft_cost_micro = best_cost;
  return out;
}

/// Cost of the falsified soft clauses, or the first violated hard clause.
inline std::variant<double, HardViolation> check_assignment(const CnfFormula& cnf,
                                                            const Assignment& assignment) {
  if (assignment.size() != static_cast<std::size_t>(cnf.num_vars) + 1) {
    throw Error("assignment does not cover every variable");
  }
  auto satisfied = [&](const WeightedClause& cl) {
    for (int lit : cl.literals) {
      if (assignment[static_cast<std::size_t>(std::abs(lit))] == (lit > 0)) return true;
    }
    return false;
  };
  for (std::size_t i = 0; i < cnf.hard.size(); ++i) {
    if (!satisfied(cnf.hard[i])) return HardViolation{i};
  }
  std::int64_t cost = 0;
  for (const auto& cl : cnf.soft) {
    if (!satisfied(cl)) cost += to_micro(*cl.weight);
  }
  return static_cast<double>(cost) / kWeightScale;
}

}  // namespace pivotlex

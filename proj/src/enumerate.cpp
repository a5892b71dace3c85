#include <algorithm>
#include <numeric>

#include <omp.h>

#include "sofic/kernel.hpp"
#include "sofic/sofic.hpp"

namespace sofic {

namespace {

using kernel::CompiledProblem;
using kernel::PackedPerm;

struct TaskResult {
  std::uint64_t count = 0;
  std::vector<std::uint32_t> keys;  // flattened |E|-tuples
  std::vector<std::uint32_t> members;  // flattened B-tuples of candidate ids
};

class Search {
 public:
  Search(const CompiledProblem &prob, const std::vector<PackedPerm> &space, const std::vector<std::vector<std::uint32_t>> &cand,
         const std::vector<std::size_t> &order, const std::vector<std::size_t> &E, bool collect, std::size_t member_limit)
      : prob_(prob), space_(space), cand_(cand), order_(order), E_(E), collect_(collect), member_limit_(member_limit) {
    const std::size_t B = prob.base;
    std::vector<std::size_t> ready(prob.total, 0);
    std::vector<std::size_t> pos(B);
    for (std::size_t l = 0; l < B; ++l) pos[order[l]] = l;
    for (std::size_t i = 0; i < B; ++i) ready[i] = pos[i];
    level_sums_.assign(B, {});
    level_constraints_.assign(B, {});
    for (std::size_t i = B; i < prob.total; ++i) {
      std::size_t r = 0;
      for (std::uint32_t s : prob.summands[i]) r = std::max(r, pos[s]);
      ready[i] = r;
      level_sums_[r].push_back(i);
    }
    for (const auto &c : prob.constraints) {
      std::size_t r = std::max({ready[c.i], ready[c.j], ready[c.k]});
      level_constraints_[r].push_back(c);
    }
  }

  struct State {
    std::vector<PackedPerm> values;
    std::vector<std::uint32_t> chosen;
  };

  State fresh() const { return State{std::vector<PackedPerm>(prob_.total), std::vector<std::uint32_t>(prob_.base, 0)}; }

  // Assigns candidate c at level l and runs the tests that become decidable.
  bool place(State &st, std::size_t l, std::uint32_t c) const {
    const std::size_t i = order_[l];
    st.values[i] = space_[c];
    st.chosen[i] = c;
    for (std::size_t s : level_sums_[l]) {
      PackedPerm acc = st.values[prob_.summands[s][0]];
      for (std::size_t k = 1; k < prob_.summands[s].size(); ++k) kernel::corrected_add(acc, st.values[prob_.summands[s][k]], prob_.d);
      st.values[s] = acc;
    }
    for (const auto &con : level_constraints_[l]) {
      if (static_cast<std::int64_t>(kernel::product_gap(st.values[con.k], st.values[con.i], st.values[con.j], prob_.d)) >
          prob_.max_gap) {
        return false;
      }
    }
    return true;
  }

  void dfs(State &st, std::size_t l, TaskResult &out) const {
    if (l == prob_.base) {
      ++out.count;
      for (std::size_t e : E_) out.keys.push_back(st.chosen[e]);
      if (collect_) {
        if (out.members.size() / std::max<std::size_t>(prob_.base, 1) >= member_limit_) {
          throw CapError("member collection exceeds limit " + std::to_string(member_limit_));
        }
        out.members.insert(out.members.end(), st.chosen.begin(), st.chosen.end());
      }
      return;
    }
    for (std::uint32_t c : cand_[order_[l]]) {
      if (place(st, l, c)) dfs(st, l + 1, out);
    }
  }

 private:
  const CompiledProblem &prob_;
  const std::vector<PackedPerm> &space_;
  const std::vector<std::vector<std::uint32_t>> &cand_;
  const std::vector<std::size_t> &order_;
  const std::vector<std::size_t> &E_;
  bool collect_;
  std::size_t member_limit_;
  std::vector<std::vector<std::size_t>> level_sums_;
  std::vector<std::vector<kernel::Constraint>> level_constraints_;
};

void dedup_tuples(std::vector<std::uint32_t> &flat, std::size_t width) {
  if (width == 0) {
    if (!flat.empty()) flat.clear();
    return;
  }
  std::vector<std::vector<std::uint32_t>> rows;
  for (std::size_t i = 0; i < flat.size(); i += width) rows.emplace_back(flat.begin() + i, flat.begin() + i + width);
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  flat.clear();
  for (const auto &r : rows) flat.insert(flat.end(), r.begin(), r.end());
}

std::vector<std::size_t> restriction_set(const SAParams &p, const EnumerationOptions &opt) {
  std::vector<std::size_t> E = opt.restrict_to.empty() ? p.source->generators() : opt.restrict_to;
  for (std::size_t e : E) {
    if (e >= p.source->base_count()) throw std::invalid_argument("restriction index outside the base elements");
  }
  return E;
}

} // namespace

EnumerationResult enumerate_sa(const SAParams &p, const EnumerationOptions &opt) {
  CompiledProblem prob(p);
  const BigInt per_element = p.space == CandidateSpace::total ? factorial(static_cast<unsigned>(p.d))
                                                              : partial_permutation_count(static_cast<unsigned>(p.d));
  if (per_element > BigInt(kernel::kCandidateCap)) {
    throw InfeasibleError("candidate space of " + per_element.str() + " maps per element exceeds " +
                              std::to_string(kernel::kCandidateCap),
                          per_element, BigInt(kernel::kCandidateCap));
  }
  const std::vector<PackedPerm> space = kernel::candidate_space(p.d, p.space);
  const std::size_t B = prob.base;
  EnumerationResult result;
  result.raw_space = pow(BigInt(space.size()), static_cast<unsigned>(B));

  std::vector<std::vector<std::uint32_t>> cand(B);
  result.search_space = 1;
  for (std::size_t i = 0; i < B; ++i) {
    for (std::size_t c = 0; c < space.size(); ++c) {
      if (prob.unary_ok(i, space[c])) cand[i].push_back(static_cast<std::uint32_t>(c));
    }
    result.search_space *= cand[i].size();
  }
  if (result.search_space > BigInt(opt.cap)) {
    throw InfeasibleError("search space " + result.search_space.str() + " (raw " + result.raw_space.str() +
                              ") exceeds feasibility cap " + std::to_string(opt.cap),
                          result.search_space, BigInt(opt.cap));
  }
  if (result.search_space == 0) return result;

  std::vector<std::size_t> order(B);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return cand[a].size() < cand[b].size(); });
  const std::vector<std::size_t> E = restriction_set(p, opt);
  Search search(prob, space, cand, order, E, opt.collect_members, opt.member_limit);

  // Forced prefix: levels with a single admissible value.
  Search::State prefix = search.fresh();
  std::size_t split = 0;
  while (split < B && cand[order[split]].size() == 1) {
    if (!search.place(prefix, split, cand[order[split]][0])) return result;
    ++split;
  }

  std::vector<TaskResult> tasks;
  if (split == B) {
    tasks.resize(1);
    search.dfs(prefix, B, tasks[0]);
  } else {
    const auto &first = cand[order[split]];
    tasks.resize(first.size());
    const int threads = opt.threads > 0 ? opt.threads : omp_get_max_threads();
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
    for (std::size_t t = 0; t < first.size(); ++t) {
      try {
        Search::State st = prefix;
        if (search.place(st, split, first[t])) search.dfs(st, split + 1, tasks[t]);
        dedup_tuples(tasks[t].keys, E.size());
      } catch (...) {
#pragma omp critical
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<std::uint32_t> keys;
  std::vector<std::uint32_t> members;
  for (auto &t : tasks) {
    result.count += t.count;
    keys.insert(keys.end(), t.keys.begin(), t.keys.end());
    members.insert(members.end(), t.members.begin(), t.members.end());
  }
  dedup_tuples(keys, E.size());
  result.restricted_count = E.empty() ? (result.count > 0 ? 1 : 0) : keys.size() / E.size();
  if (opt.collect_members && members.size() / std::max<std::size_t>(B, 1) > opt.member_limit) {
    throw CapError("member collection exceeds limit " + std::to_string(opt.member_limit));
  }
  for (std::size_t m = 0; m < members.size(); m += B) {
    SoficCandidate c;
    c.degree = p.d;
    for (std::size_t i = 0; i < B; ++i) c.values.push_back(kernel::unpack(space[members[m + i]], p.d));
    result.members.push_back(std::move(c));
  }
  return result;
}

} // namespace sofic

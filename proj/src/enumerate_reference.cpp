#include <algorithm>
#include <set>

#include "sofic/sofic.hpp"

namespace sofic {

EnumerationResult enumerate_sa_reference(const SAParams &p, const EnumerationOptions &opt) {
  std::vector<PartialPermutation> space;
  auto push = [&](const PartialPermutation &x) { space.push_back(x); };
  if (p.space == CandidateSpace::total) {
    for_each_permutation(p.d, push);
  } else {
    for_each_partial_permutation(p.d, push);
  }
  const std::size_t B = p.source->base_count();
  EnumerationResult result;
  result.raw_space = pow(BigInt(space.size()), static_cast<unsigned>(B));
  result.search_space = result.raw_space;
  if (result.raw_space > BigInt(opt.cap)) {
    throw InfeasibleError("raw space " + result.raw_space.str() + " exceeds feasibility cap " + std::to_string(opt.cap),
                          result.raw_space, BigInt(opt.cap));
  }
  std::vector<std::size_t> E = opt.restrict_to.empty() ? p.source->generators() : opt.restrict_to;
  std::set<std::vector<std::size_t>> keys;

  std::vector<std::size_t> digits(B, 0);
  SoficCandidate sigma;
  sigma.degree = p.d;
  sigma.values.assign(B, space.empty() ? PartialPermutation(p.d) : space[0]);
  while (true) {
    for (std::size_t i = 0; i < B; ++i) sigma.values[i] = space[digits[i]];
    if (verify_membership(p, sigma).is_member) {
      ++result.count;
      std::vector<std::size_t> key;
      for (std::size_t e : E) key.push_back(digits[e]);
      keys.insert(key);
      if (opt.collect_members) result.members.push_back(sigma);
    }
    std::size_t pos = 0;
    while (pos < B && ++digits[pos] == space.size()) digits[pos++] = 0;
    if (pos == B) break;
  }
  result.restricted_count = keys.size();
  return result;
}

} // namespace sofic

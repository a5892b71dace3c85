#ifndef SOFIC_SOFIC_HPP_
#define SOFIC_SOFIC_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sofic/pperm.hpp"
#include "sofic/source.hpp"

namespace sofic {

class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(const std::string &what, BigInt space, BigInt cap)
      : std::runtime_error(what), space_(std::move(space)), cap_(std::move(cap)) {}
  const BigInt &space() const { return space_; }
  const BigInt &cap() const { return cap_; }

 private:
  BigInt space_;
  BigInt cap_;
};

// Candidate values for sigma on each base element.
enum class CandidateSpace { partial, total };

struct SAParams {
  SourcePtr source;
  Rational delta;
  std::size_t d = 0;
  CandidateSpace space = CandidateSpace::partial;
};

// Default space: total permutations for group sources, all of [[d]] for
// groupoid sources.
SAParams make_params(SourcePtr source, Rational delta, std::size_t d);

// sigma on the base elements; values on sums are derived.
struct SoficCandidate {
  std::size_t degree = 0;
  std::vector<PartialPermutation> values;
};

struct Extension {
  std::vector<PartialPermutation> values;  // every element of the source
  std::size_t overlapping_sums = 0;        // sums whose summand images clash
};

// Additive extension to sums. Summands are added in order with the corrected
// sum, which is the orthogonal sum whenever the images are orthogonal.
Extension extend(const SoficSource &source, const SoficCandidate &sigma);

struct MembershipReport {
  bool is_member = false;
  Rational delta;
  std::size_t degree = 0;
  Rational worst_multiplicativity_gap;
  std::optional<std::pair<std::size_t, std::size_t>> multiplicativity_witness;
  Rational worst_trace_gap;
  std::optional<std::size_t> trace_witness;
  std::size_t pairs_checked = 0;
  std::size_t overlapping_sums = 0;
  std::vector<std::string> witness_labels;  // s, t of the worst pair, then the trace witness
};

// Checks |sigma(st) - sigma(s)sigma(t)| < delta over pairs with st in the set
// and |tr sigma(s) - tau(s)| < delta over base elements, exactly.
MembershipReport verify_membership(const SAParams &p, const SoficCandidate &sigma);

struct EnumerationOptions {
  std::uint64_t cap = 100'000'000;         // bound on the filtered search space
  int threads = 0;                         // 0: OpenMP default
  std::vector<std::size_t> restrict_to;    // E, as base indices; empty means generators
  bool collect_members = false;
  std::size_t member_limit = 1'000'000;
};

struct EnumerationResult {
  std::uint64_t count = 0;
  std::uint64_t restricted_count = 0;
  BigInt raw_space;               // |C|^{|F^n_pm|}
  BigInt search_space;            // product of per-element filtered candidate counts
  std::vector<SoficCandidate> members;
};

// Pruned backtracking enumeration of SA, parallel over the first element
// with more than one admissible value. Results do not depend on the thread
// count.
EnumerationResult enumerate_sa(const SAParams &p, const EnumerationOptions &opt = {});
// Brute force over the unfiltered candidate space using verify_membership.
// Serial reference for testing; cap applies to the raw space.
EnumerationResult enumerate_sa_reference(const SAParams &p, const EnumerationOptions &opt = {});

std::uint64_t count_sa(const SAParams &p, const EnumerationOptions &opt = {});

struct RestrictedStatistic {
  std::uint64_t count = 0;
  // log count / (d log d); 0 when count <= 1, -inf when count == 0.
  double statistic = 0.0;
};
double restricted_statistic_value(std::uint64_t count, std::size_t d);
RestrictedStatistic restricted_statistic(const SAParams &p, const std::vector<std::size_t> &E,
                                         const EnumerationOptions &opt = {});

struct MonteCarloEstimate {
  std::uint64_t trials = 0;
  std::uint64_t hits = 0;
  BigInt space;
  double estimate = 0.0;
  double standard_error = 0.0;
};
// Uniform sampling of the candidate space. Trial k draws from the stream
// Rng::stream(seed, k), so the result is the same for any thread count.
MonteCarloEstimate monte_carlo_count(const SAParams &p, std::uint64_t trials, std::uint64_t seed, int threads = 0);

// Number of permutations pi of d points with pi^m = id and
// |fix(pi^j)|/d < delta for 0 < j < m: the members of SA for Z/m at a radius
// covering the group, with multiplicativity exact and total candidates.
BigInt closed_form_count(std::size_t m, std::size_t d, const Rational &delta);
double closed_form_statistic(std::size_t m, std::size_t d, const Rational &delta);

} // namespace sofic

#endif // SOFIC_SOFIC_HPP_

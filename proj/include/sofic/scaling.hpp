#ifndef SOFIC_SCALING_HPP_
#define SOFIC_SCALING_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "sofic/groupoid.hpp"
#include "sofic/sofic.hpp"

namespace sofic {

// p with h(p) = (N-k)/N and s_1..s_k with s_i^-1 s_i <= p, h(s_i^-1 s_i) = 1/N
// and sum s_i s_i^-1 = 1 - p, all inside the ambient groupoid.
struct CornerData {
  GroupoidPtr ambient;
  Corner corner;
  PartialBisection p;  // the projection, in the ambient groupoid
  std::size_t N = 1, k = 0;
  std::vector<PartialBisection> S;
};

// Uniform unit weights only: N = number of units, one s_i per unit outside
// p, each a single arrow from the smallest unit of p that reaches it.
CornerData make_corner_data(const GroupoidPtr &g, const std::vector<UnitId> &p);
// Throws std::invalid_argument if one of the three conditions fails.
void validate_corner_data(const CornerData &cd);

// F (embedded) together with S.
std::vector<PartialBisection> ambient_generators(const CornerData &cd, const std::vector<PartialBisection> &F_corner);

struct ScalingResult {
  SourcePtr source;  // where sigma lives
  SoficCandidate sigma;
  Rational delta;  // the tolerance the result was verified at
  std::size_t degree = 0;
  MembershipReport report;
  // expansion: B_1..B_k inside A_0; restriction: the single set B
  std::vector<std::vector<std::size_t>> blocks;
};

struct ExpansionOptions {
  std::optional<std::uint64_t> gamma_seed;  // order-preserving bijections when unset
  bool check_hypothesis = true;
};

// sigma_gamma(u) = sum over i, j of gamma(s_i) sigma(s_i^-1 u s_j) gamma(s_j)^-1
// on d' = N d / (N - k) points, s_0 = p and gamma(s_0) the identity on A_0.
// The result is checked in SA_G(F u S, n, delta', d') with
// delta' = 5 N^2 delta + 150 N^2 (2|F u S| + 1)^{2(2n+5)} delta.
ScalingResult expand_sigma(const SourcePtr &corner_source, const SoficCandidate &sigma, const CornerData &cd,
                           std::size_t n, const Rational &delta, const ExpansionOptions &opt = {});

// sigma' = p_B sigma p_B on B, |B| = floor(h(p) d), B = Fix sigma(p) trimmed from
// the top or padded from the bottom. Checked in SA_pGp(F, n, 20 delta / h(p), d').
ScalingResult restrict_sigma(const SourcePtr &ambient_source, const SoficCandidate &sigma, const CornerData &cd,
                             const std::vector<PartialBisection> &F_corner, std::size_t n, const Rational &delta,
                             bool check_hypothesis = true);

// s(G) - 1 = h(p) (s(pGp) - 1)
Rational scaling_value(const Rational &s_corner, const Rational &h_p);
Rational scaling_inverse(const Rational &s_ambient, const Rational &h_p);
double scaling_value(double s_corner, double h_p);
double scaling_inverse(double s_ambient, double h_p);

} // namespace sofic

#endif // SOFIC_SCALING_HPP_

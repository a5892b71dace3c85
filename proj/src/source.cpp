#include <algorithm>
#include "sofic/source.hpp"

#include <functional>

namespace sofic {

std::vector<PartialBisection> bisection_ball(const GroupoidPtr &g, const std::vector<PartialBisection> &F, std::size_t n,
                                             std::size_t cap) {
  std::vector<PartialBisection> steps{PartialBisection::identity(g)};
  for (const auto &f : F) {
    if (f.host() != g && !(*f.host() == *g)) throw std::invalid_argument("generator lives on another groupoid");
    steps.push_back(f);
    steps.push_back(f.inverse());
  }
  std::vector<PartialBisection> out;
  std::unordered_map<PartialBisection, std::size_t, PartialBisectionHash> seen;
  auto add = [&](PartialBisection s) {
    if (seen.count(s)) return;
    if (out.size() >= cap) throw CapError("bisection ball exceeds cap " + std::to_string(cap));
    seen.emplace(s, out.size());
    out.push_back(std::move(s));
  };
  add(steps[0]);
  if (n == 0) return out;
  for (const auto &s : steps) add(s);
  std::size_t layer_begin = 1;
  for (std::size_t len = 2; len <= n; ++len) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto &s : steps) add(compose(out[i], s));
    }
    if (out.size() == layer_end) break;
    layer_begin = layer_end;
  }
  return out;
}

void SoficSource::build_table(const std::function<std::optional<std::size_t>(std::size_t, std::size_t)> &mult) {
  const std::size_t n = size();
  table_.assign(n * n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (auto k = mult(i, j)) table_[i * n + j] = static_cast<std::int64_t>(*k);
    }
  }
}

std::shared_ptr<const SoficSource> SoficSource::from_ball(const Ball &ball, std::size_t sum_bound) {
  std::shared_ptr<SoficSource> s(new SoficSource());
  s->kind_ = Kind::group;
  s->base_count_ = ball.size();
  s->radius_ = ball.radius;
  s->sum_bound_ = sum_bound;
  s->identity_ = 0;
  s->summands_.assign(ball.size(), {});
  for (std::size_t i = 0; i < ball.size(); ++i) {
    s->traces_.push_back(ball.system->tau(ball.elements[i]));
    s->labels_.push_back(ball.system->format(ball.elements[i]));
  }
  for (Letter l : ball.generating_set) {
    auto idx = ball.index_of(ball.system->reduce(Word{l}));
    if (idx && std::find(s->generators_.begin(), s->generators_.end(), *idx) == s->generators_.end()) {
      s->generators_.push_back(*idx);
    }
  }
  // Group elements are total, so no two are orthogonal: the sum closure adds
  // nothing.
  s->build_table([&](std::size_t i, std::size_t j) { return ball.product(i, j); });
  s->description_ = ball.system->descriptor() + " radius " + std::to_string(ball.radius);
  s->ball_ = ball;
  return s;
}

std::shared_ptr<const SoficSource> SoficSource::from_groupoid(const GroupoidPtr &g, const std::vector<PartialBisection> &F,
                                                              std::size_t n, std::size_t sum_bound, std::size_t cap) {
  std::shared_ptr<SoficSource> s(new SoficSource());
  s->kind_ = Kind::groupoid;
  s->groupoid_ = g;
  s->radius_ = n;
  s->sum_bound_ = sum_bound;
  s->bisections_ = bisection_ball(g, F, n, cap);
  s->base_count_ = s->bisections_.size();
  for (std::size_t i = 0; i < s->bisections_.size(); ++i) s->index_.emplace(s->bisections_[i], i);
  s->summands_.assign(s->base_count_, {});
  s->identity_ = 0;
  for (const auto &f : F) {
    std::size_t idx = s->index_.at(f);
    if (std::find(s->generators_.begin(), s->generators_.end(), idx) == s->generators_.end()) s->generators_.push_back(idx);
  }

  // Sum closure: DFS over increasing index tuples of pairwise orthogonal,
  // non-empty base elements.
  const std::size_t B = s->base_count_;
  const std::size_t U = g->unit_count();
  std::vector<std::vector<char>> dom(B, std::vector<char>(U, 0)), ran(B, std::vector<char>(U, 0));
  std::vector<char> nonempty(B, 0);
  for (std::size_t i = 0; i < B; ++i) {
    for (UnitId u : s->bisections_[i].domain_units()) dom[i][u] = 1;
    for (UnitId u : s->bisections_[i].range_units()) ran[i][u] = 1;
    nonempty[i] = !s->bisections_[i].empty();
  }
  std::vector<std::size_t> tuple;
  std::vector<int> dom_used(U, 0), ran_used(U, 0);
  std::function<void(std::size_t)> dfs = [&](std::size_t start) {
    if (tuple.size() >= 2) {
      std::vector<ArrowId> arrows;
      for (std::size_t i : tuple) {
        auto a = s->bisections_[i].arrows();
        arrows.insert(arrows.end(), a.begin(), a.end());
      }
      PartialBisection sum(g, arrows);
      if (!s->index_.count(sum)) {
        if (s->bisections_.size() >= cap) throw CapError("sum closure exceeds cap " + std::to_string(cap));
        s->index_.emplace(sum, s->bisections_.size());
        s->bisections_.push_back(std::move(sum));
        s->summands_.push_back(tuple);
      }
    }
    if (tuple.size() >= sum_bound) return;
    for (std::size_t j = start; j < B; ++j) {
      if (!nonempty[j]) continue;
      bool ok = true;
      for (std::size_t u = 0; u < U && ok; ++u) ok = !(dom[j][u] && dom_used[u]) && !(ran[j][u] && ran_used[u]);
      if (!ok) continue;
      for (std::size_t u = 0; u < U; ++u) {
        dom_used[u] += dom[j][u];
        ran_used[u] += ran[j][u];
      }
      tuple.push_back(j);
      dfs(j + 1);
      tuple.pop_back();
      for (std::size_t u = 0; u < U; ++u) {
        dom_used[u] -= dom[j][u];
        ran_used[u] -= ran[j][u];
      }
    }
  };
  dfs(0);

  for (std::size_t i = 0; i < B; ++i) s->traces_.push_back(tau(s->bisections_[i]));
  for (const auto &b : s->bisections_) s->labels_.push_back(b.to_string());
  s->build_table([&](std::size_t i, std::size_t j) -> std::optional<std::size_t> {
    auto it = s->index_.find(compose(s->bisections_[i], s->bisections_[j]));
    if (it == s->index_.end()) return std::nullopt;
    return it->second;
  });
  s->description_ = "groupoid with " + std::to_string(g->unit_count()) + " units, |F|=" + std::to_string(F.size()) +
                    ", radius " + std::to_string(n);
  return s;
}

std::optional<std::size_t> SoficSource::find(const PartialBisection &b) const {
  auto it = index_.find(b);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

} // namespace sofic

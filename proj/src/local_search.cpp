#include <algorithm>
#include <memory>
#include <set>

#include "rlmoc/errors.hpp"
#include "rlmoc/zeus.hpp"

namespace rlmoc {

namespace {

struct Score {
  double value = 0.0;
  // Nodes at the maximum distance; only tracked for k-center.
  int count = 0;
};

// A pending relocation of `nodes` from block `from` to block `to`.
struct Move {
  std::vector<NodeId> nodes;
  int from = 0;
  int to = 0;
};

struct Shared {
  const GraphInstance& h;
  std::vector<int> assign;
  // Scratch flag per node, set for the nodes of the move under evaluation.
  std::vector<char> moving;

  int block_after(NodeId u, const Move& m) const { return moving[u] ? m.to : assign[u]; }
};

class Tracker {
 public:
  virtual ~Tracker() = default;
  virtual Score score() const = 0;
  virtual Score score_after(const Move& m) = 0;
  // Called before `assign` is updated.
  virtual void commit(const Move& m) = 0;
};

class KCenterTracker : public Tracker {
 public:
  KCenterTracker(Shared& s, const std::vector<NodeId>& centers) : s_(s), centers_(centers) {
    dist_.resize(s.assign.size());
    for (std::size_t u = 0; u < dist_.size(); ++u) {
      dist_[u] = s.h.d(static_cast<NodeId>(u), centers_[s.assign[u]]);
      all_.insert(dist_[u]);
    }
  }
  Score score() const override { return top(); }
  Score score_after(const Move& m) override {
    swap_in(m);
    const Score out = top();
    swap_out(m);
    return out;
  }
  void commit(const Move& m) override {
    swap_in(m);
    for (NodeId u : m.nodes) dist_[u] = s_.h.d(u, centers_[m.to]);
  }
  double distance(NodeId u) const { return dist_[u]; }

 private:
  Score top() const {
    if (all_.empty()) return {0.0, 0};
    const double mx = *all_.rbegin();
    const double lo = mx - kValueTolerance * std::max(1.0, mx);
    const auto first = all_.lower_bound(lo);
    return {mx, static_cast<int>(std::distance(first, all_.end()))};
  }
  void swap_in(const Move& m) {
    for (NodeId u : m.nodes) all_.erase(all_.find(dist_[u]));
    for (NodeId u : m.nodes) all_.insert(s_.h.d(u, centers_[m.to]));
  }
  void swap_out(const Move& m) {
    for (NodeId u : m.nodes) all_.erase(all_.find(s_.h.d(u, centers_[m.to])));
    for (NodeId u : m.nodes) all_.insert(dist_[u]);
  }

  Shared& s_;
  const std::vector<NodeId>& centers_;
  std::vector<double> dist_;
  std::multiset<double> all_;
};

class KMedianTracker : public Tracker {
 public:
  KMedianTracker(Shared& s, const std::vector<NodeId>& centers) : s_(s), centers_(centers) {
    recompute();
  }
  Score score() const override { return {sum_, 0}; }
  Score score_after(const Move& m) override {
    double x = sum_;
    for (NodeId u : m.nodes) x += s_.h.d(u, centers_[m.to]) - s_.h.d(u, centers_[m.from]);
    return {x, 0};
  }
  void commit(const Move& m) override {
    (void)m;
    pending_ = true;
  }
  void refresh() {
    if (pending_) recompute();
  }

 private:
  void recompute() {
    sum_ = 0.0;
    for (std::size_t u = 0; u < s_.assign.size(); ++u) {
      sum_ += s_.h.d(static_cast<NodeId>(u), centers_[s_.assign[u]]);
    }
    pending_ = false;
  }
  Shared& s_;
  const std::vector<NodeId>& centers_;
  double sum_ = 0.0;
  bool pending_ = false;
};

class ResourceSharingTracker : public Tracker {
 public:
  ResourceSharingTracker(Shared& s, int gamma)
      : s_(s),
        gamma_(gamma),
        together_(s.assign.size(), 0),
        delta_(s.assign.size(), 0),
        mark_(s.assign.size(), 0) {
    for (std::size_t u = 0; u < together_.size(); ++u) {
      for (NodeId v : s.h.neighbors(static_cast<NodeId>(u))) {
        together_[u] += s.assign[v] == s.assign[u];
      }
      covered_ += together_[u] >= gamma_;
    }
  }
  Score score() const override { return {ratio(covered_), 0}; }
  Score score_after(const Move& m) override {
    const int c = covered_ + collect(m);
    clear();
    return {ratio(c), 0};
  }
  void commit(const Move& m) override {
    covered_ += collect(m);
    for (NodeId v : touched_) together_[v] += delta_[v];
    clear();
  }

 private:
  double ratio(int c) const {
    return together_.empty() ? 0.0 : static_cast<double>(c) / together_.size();
  }
  void bump(NodeId v, int d) {
    if (d == 0) return;
    if (!mark_[v]) {
      mark_[v] = 1;
      touched_.push_back(v);
    }
    delta_[v] += d;
  }
  int collect(const Move& m) {
    for (NodeId w : m.nodes) {
      for (NodeId v : s_.h.neighbors(w)) {
        if (s_.moving[v]) continue;  // pairs inside the move keep their relation
        const int before = s_.assign[v] == m.from;
        const int after = s_.assign[v] == m.to;
        bump(v, after - before);
        bump(w, after - before);
      }
    }
    int change = 0;
    for (NodeId v : touched_) {
      change += (together_[v] + delta_[v] >= gamma_) - (together_[v] >= gamma_);
    }
    return change;
  }
  void clear() {
    for (NodeId v : touched_) delta_[v] = 0, mark_[v] = 0;
    touched_.clear();
  }

  Shared& s_;
  int gamma_;
  std::vector<int> together_;
  std::vector<int> delta_;
  std::vector<char> mark_;
  std::vector<NodeId> touched_;
  int covered_ = 0;
};

class FairnessTracker : public Tracker {
 public:
  FairnessTracker(Shared& s, const PairStructure& pairs) : s_(s) {
    const int n = static_cast<int>(s.assign.size());
    partners_.resize(n);
    owners_.resize(n);
    for (auto [a, b] : pairs.pairs) {
      const NodeId blue = s.h.attrs(a).color == Color::kBlue ? a : b;
      const NodeId other = blue == a ? b : a;
      if (s.h.attrs(blue).color != Color::kBlue || s.h.attrs(other).color != Color::kPurple) {
        continue;
      }
      partners_[blue].push_back(other);
      owners_[other].push_back(blue);
    }
    blue_count_ = static_cast<int>(s.h.blue_nodes().size());
    if (blue_count_ == 0) throw DegenerateError("fairness is undefined without Blue nodes");
    for (NodeId b : s.h.blue_nodes()) good_ += is_good(b, nullptr);
  }
  Score score() const override { return {static_cast<double>(good_) / blue_count_, 0}; }
  Score score_after(const Move& m) override {
    return {static_cast<double>(good_ + change(m)) / blue_count_, 0};
  }
  void commit(const Move& m) override { good_ += change(m); }

 private:
  int is_good(NodeId b, const Move* m) const {
    if (partners_[b].empty()) return 0;
    const int own = m ? s_.block_after(b, *m) : s_.assign[b];
    for (NodeId p : partners_[b]) {
      if ((m ? s_.block_after(p, *m) : s_.assign[p]) != own) return 0;
    }
    return 1;
  }
  int change(const Move& m) {
    affected_.clear();
    for (NodeId u : m.nodes) {
      if (!partners_[u].empty()) affected_.push_back(u);
      for (NodeId b : owners_[u]) affected_.push_back(b);
    }
    std::sort(affected_.begin(), affected_.end());
    affected_.erase(std::unique(affected_.begin(), affected_.end()), affected_.end());
    int d = 0;
    for (NodeId b : affected_) d += is_good(b, &m) - is_good(b, nullptr);
    return d;
  }

  Shared& s_;
  std::vector<std::vector<NodeId>> partners_;
  std::vector<std::vector<NodeId>> owners_;
  std::vector<NodeId> affected_;
  int blue_count_ = 0;
  int good_ = 0;
};

class TeamFormationTracker : public Tracker {
 public:
  TeamFormationTracker(Shared& s, const std::vector<NodeId>& experts, int k)
      : expert_(s.assign.size(), 0), count_(k, 0) {
    if (experts.empty()) throw DegenerateError("team formation needs a non-empty expert set");
    for (NodeId x : experts) {
      expert_[x] = 1;
      ++count_[s.assign[x]];
    }
  }
  Score score() const override { return {ratio(), 0}; }
  Score score_after(const Move& m) override {
    const int moved = experts_in(m);
    count_[m.from] -= moved;
    count_[m.to] += moved;
    const double r = ratio();
    count_[m.from] += moved;
    count_[m.to] -= moved;
    return {r, 0};
  }
  void commit(const Move& m) override {
    const int moved = experts_in(m);
    count_[m.from] -= moved;
    count_[m.to] += moved;
  }

 private:
  int experts_in(const Move& m) const {
    int c = 0;
    for (NodeId u : m.nodes) c += expert_[u];
    return c;
  }
  double ratio() const {
    const auto [lo, hi] = std::minmax_element(count_.begin(), count_.end());
    if (*lo == 0) return ObjectiveValue::kInfinity;
    return static_cast<double>(*hi) / static_cast<double>(*lo);
  }
  std::vector<char> expert_;
  std::vector<int> count_;
};

std::unique_ptr<Tracker> make_tracker(Shared& s, const Clustering& c,
                                      const ProcessedObjective& p) {
  const auto& o = p.spec;
  const bool classical = o.is_classical();
  if (classical && static_cast<int>(c.centers.size()) != c.k) {
    throw ConfigError(o.name() + " local search needs one center per block");
  }
  switch (o.kind) {
    case ObjectiveKind::kKCenter:
      return std::make_unique<KCenterTracker>(s, c.centers);
    case ObjectiveKind::kKMedian:
      return std::make_unique<KMedianTracker>(s, c.centers);
    case ObjectiveKind::kResourceSharing:
      return std::make_unique<ResourceSharingTracker>(s, o.gamma);
    case ObjectiveKind::kFairness:
      if (!p.pairs) throw ConfigError("fairness local search needs the matched pair set");
      return std::make_unique<FairnessTracker>(s, *p.pairs);
    case ObjectiveKind::kTeamFormation:
      return std::make_unique<TeamFormationTracker>(s, resolve_experts(s.h, o), c.k);
  }
  throw ConfigError("unknown objective kind");
}

bool improves(const Score& next, const Score& cur, Direction dir, bool use_count) {
  if (is_better(next.value, cur.value, dir)) return true;
  return use_count && values_equal(next.value, cur.value) && next.count < cur.count;
}

}  // namespace

LocalSearchResult local_search(const GraphInstance& h, const PipelineState& state,
                               std::size_t target, int cap) {
  const Clustering& start = state.clustering;
  const int n = start.size();
  const int k = start.k;
  if (target >= state.processed.size()) throw ConfigError("local search target out of range");

  Shared shared{h, start.assignment, std::vector<char>(n, 0)};
  std::vector<std::unique_ptr<Tracker>> trackers;
  for (std::size_t j = 0; j <= target; ++j) {
    trackers.push_back(make_tracker(shared, start, state.processed[j]));
  }
  const auto& goal = state.processed[target];
  const Direction dir = goal.spec.direction();
  const bool is_kcenter = goal.spec.kind == ObjectiveKind::kKCenter;
  auto* kc = is_kcenter ? static_cast<KCenterTracker*>(trackers[target].get()) : nullptr;

  std::vector<char> is_center(n, 0);
  for (NodeId c : start.centers) {
    if (c >= 0) is_center[c] = 1;
  }
  std::vector<std::vector<NodeId>> atoms = start.atoms;
  if (atoms.empty()) {
    for (int u = 0; u < n; ++u) atoms.push_back({u});
  }
  std::vector<int> atom_of(n);
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    for (NodeId u : atoms[a]) atom_of[u] = static_cast<int>(a);
  }
  std::vector<int> block_size(k, 0);
  for (int u = 0; u < n; ++u) ++block_size[shared.assign[u]];

  // Current value and slack status of the earlier objectives.
  std::vector<Score> earlier(target);
  std::vector<char> earlier_ok(target);
  auto refresh_earlier = [&] {
    for (std::size_t j = 0; j < target; ++j) {
      earlier[j] = trackers[j]->score();
      const auto& p = state.processed[j];
      earlier_ok[j] =
          !slack_violated({earlier[j].value, p.spec.direction()}, p.delta, p.estimate);
    }
  };
  refresh_earlier();

  LocalSearchResult out;
  const auto violated = [&](const Score& s) {
    return slack_violated({s.value, dir}, goal.delta, goal.estimate);
  };

  Move move;
  auto set_moving = [&](const Move& m, char flag) {
    for (NodeId u : m.nodes) shared.moving[u] = flag;
  };

  while (violated(trackers[target]->score())) {
    if (out.moves >= cap) {
      out.cap_reached = true;
      break;
    }
    const Score current = trackers[target]->score();
    std::vector<NodeId> candidates;
    for (int u = 0; u < n; ++u) {
      if (is_center[u]) continue;
      if (kc && !values_equal(kc->distance(u), current.value)) continue;
      candidates.push_back(u);
    }

    bool found = false;
    Move best;
    Score best_score;
    std::vector<char> atom_seen(atoms.size(), 0);
    auto consider = [&](Move m) {
      set_moving(m, 1);
      const Score s = trackers[target]->score_after(m);
      bool ok = improves(s, current, dir, is_kcenter) &&
                (!found || improves(s, best_score, dir, is_kcenter));
      for (std::size_t j = 0; ok && j < target; ++j) {
        const auto& p = state.processed[j];
        const Direction dj = p.spec.direction();
        const Score sj = trackers[j]->score_after(m);
        if (earlier_ok[j]) {
          ok = !slack_violated({sj.value, dj}, p.delta, p.estimate);
        } else {
          ok = !is_better(earlier[j].value, sj.value, dj);
        }
      }
      set_moving(m, 0);
      if (ok) {
        found = true;
        best = std::move(m);
        best_score = s;
      }
    };

    for (NodeId u : candidates) {
      const int from = shared.assign[u];
      const int a = atom_of[u];
      const auto& atom = atoms[a];
      bool atom_movable = false;
      if (atom.size() > 1 && !atom_seen[a]) {
        atom_seen[a] = 1;
        atom_movable = static_cast<int>(atom.size()) < block_size[from] &&
                       std::none_of(atom.begin(), atom.end(),
                                    [&](NodeId x) { return is_center[x] != 0; });
      }
      for (int to = 0; to < k; ++to) {
        if (to == from) continue;
        if (atom_movable) consider(Move{atom, from, to});
        if (block_size[from] > 1) consider(Move{{u}, from, to});
      }
    }
    if (!found) break;

    set_moving(best, 1);
    for (auto& t : trackers) t->commit(best);
    set_moving(best, 0);
    for (NodeId u : best.nodes) shared.assign[u] = best.to;
    for (auto& t : trackers) {
      if (auto* km = dynamic_cast<KMedianTracker*>(t.get())) km->refresh();
    }
    block_size[best.from] -= static_cast<int>(best.nodes.size());
    block_size[best.to] += static_cast<int>(best.nodes.size());
    if (best.nodes.size() == 1 && atoms[atom_of[best.nodes[0]]].size() > 1) {
      const NodeId u = best.nodes[0];
      auto& old = atoms[atom_of[u]];
      old.erase(std::find(old.begin(), old.end(), u));
      atom_of[u] = static_cast<int>(atoms.size());
      atoms.push_back({u});
    }
    refresh_earlier();
    ++out.moves;
    out.values.push_back(trackers[target]->score().value);
  }

  out.clustering = start;
  out.clustering.assignment = shared.assign;
  for (auto& a : atoms) std::sort(a.begin(), a.end());
  std::sort(atoms.begin(), atoms.end());
  out.clustering.atoms = std::move(atoms);
  return out;
}

}  // namespace rlmoc

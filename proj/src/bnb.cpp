#include "agc/bnb.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace agc {

namespace {

constexpr double kTieTol = 1e-12;  // objective ties below this are broken lexically
constexpr double kSizeTol = 1e-12;

// Per-slot saving cache keyed by the placement bits of the services actually
// requested in that slot; the branch-and-bound search revisits these heavily.
struct SlotCache {
  std::vector<int> services;  // distinct, ascending
  std::array<int8_t, 64> bitpos{};
  std::unordered_map<uint64_t, double> saving;
};

class Scorer {
 public:
  Scorer(const TaskTables& tab, const ServerCaps& caps) : tab_(tab), caps_(caps) {
    slots_.resize(tab.num_slots);
    total_local_ = std::accumulate(tab.e_local.begin(), tab.e_local.end(), 0.0);
    for (int t = 0; t < tab.num_slots; ++t) {
      SlotCache& sc = slots_[t];
      sc.bitpos.fill(-1);
      for (int i = 0; i < tab.num_ues; ++i) {
        const int s = tab.service[tab.idx(i, t)];
        if (sc.bitpos[s] < 0) {
          sc.bitpos[s] = 0;  // mark
          sc.services.push_back(s);
        }
      }
      std::sort(sc.services.begin(), sc.services.end());
      for (size_t j = 0; j < sc.services.size(); ++j)
        sc.bitpos[sc.services[j]] = static_cast<int8_t>(j);
      sc.saving.reserve(1024);
    }
  }

  double total_local() const { return total_local_; }
  const std::vector<int>& slot_services(int t) const { return slots_[t].services; }

  double saving(uint64_t um, uint64_t bm) {
    double s = 0.0;
    for (int t = 0; t < tab_.num_slots; ++t) s += slot_saving(t, um, bm);
    return s;
  }

  double slot_saving(int t, uint64_t um, uint64_t bm) {
    SlotCache& sc = slots_[t];
    uint64_t key = 0;
    for (size_t j = 0; j < sc.services.size(); ++j) {
      const int s = sc.services[j];
      key |= (um >> s & 1) << (2 * j);
      key |= (bm >> s & 1) << (2 * j + 1);
    }
    auto it = sc.saving.find(key);
    if (it != sc.saving.end()) return it->second;
    const double v = solve_slot_saving(tab_, t, um, bm, caps_);
    sc.saving.emplace(key, v);
    return v;
  }

  double objective(uint64_t um, uint64_t bm) { return total_local_ - saving(um, bm); }

 private:
  const TaskTables& tab_;
  ServerCaps caps_;
  std::vector<SlotCache> slots_;
  double total_local_ = 0.0;
};

struct Node {
  int depth = 0;
  uint64_t um = 0, bm = 0;
  double rem_uav = 0.0, rem_bs = 0.0;
  double bound = 0.0;
};

struct SearchSetup {
  std::vector<int> order;        // branchable services, strong first
  std::vector<uint64_t> suffix;  // suffix[d] = OR of order[d..] bits
  std::vector<double> value_u;   // standalone cap-aware saving, UAV only
  std::vector<double> value_b;   // standalone cap-aware saving, BS only
  std::vector<int> dens_u;       // branchable services by value_u density desc
  std::vector<int> dens_b;
  std::vector<int> pos;  // position in `order`, INT_MAX if unbranchable
};

// Fixed-bit state used by the lexicographic canonicalization pass.
struct FixState {
  std::vector<int8_t> uav, bs;  // -1 free, 0 excluded, 1 placed
};

// Branch on services in descending total potential saving; services nobody
// requests with profit stay unplaced (the lex-smallest choice). The per-venue
// standalone values score each service alone on one server (exact slot
// solves, so within-service cap competition is priced in); they feed the
// knapsack bound and the density packings.
SearchSetup make_setup(const ScenarioSpec& spec, const TaskTables& tab,
                       Scorer& scorer) {
  const int K = spec.services.num_services();
  std::vector<std::vector<int>> slots_of(K);
  for (int t = 0; t < tab.num_slots; ++t)
    for (int s : scorer.slot_services(t)) slots_of[s].push_back(t);

  SearchSetup setup;
  setup.value_u.assign(K, 0.0);
  setup.value_b.assign(K, 0.0);
  for (int s = 0; s < K; ++s) {
    for (int t : slots_of[s]) {
      setup.value_u[s] += scorer.slot_saving(t, uint64_t{1} << s, 0);
      setup.value_b[s] += scorer.slot_saving(t, 0, uint64_t{1} << s);
    }
  }
  for (int s = 0; s < K; ++s)
    if (setup.value_u[s] > 0.0 || setup.value_b[s] > 0.0) setup.order.push_back(s);
  std::stable_sort(setup.order.begin(), setup.order.end(), [&](int a, int b) {
    return setup.value_u[a] + setup.value_b[a] > setup.value_u[b] + setup.value_b[b];
  });
  setup.suffix.assign(setup.order.size() + 1, 0);
  for (int d = static_cast<int>(setup.order.size()) - 1; d >= 0; --d)
    setup.suffix[d] = setup.suffix[d + 1] | (uint64_t{1} << setup.order[d]);
  setup.pos.assign(K, std::numeric_limits<int>::max());
  for (size_t d = 0; d < setup.order.size(); ++d) setup.pos[setup.order[d]] = d;
  setup.dens_u = setup.order;
  setup.dens_b = setup.order;
  std::stable_sort(setup.dens_u.begin(), setup.dens_u.end(), [&](int a, int b) {
    return setup.value_u[a] * spec.services.sizes[b] >
           setup.value_u[b] * spec.services.sizes[a];
  });
  std::stable_sort(setup.dens_b.begin(), setup.dens_b.end(), [&](int a, int b) {
    return setup.value_b[a] * spec.services.sizes[b] >
           setup.value_b[b] * spec.services.sizes[a];
  });
  return setup;
}

// Fractional-knapsack bound on the extra saving obtainable from the services
// still undecided at `depth`: one knapsack per server over that server's
// remaining storage. Per-slot savings are subadditive, so splitting any
// completion's newly served tasks by venue bounds each venue's extra saving
// by the standalone per-venue values of the services newly placed there —
// and those services fit, counted once, in that server's remaining storage.
// `fix` (optional) marks per-server exclusions from the canonicalization pass.
double knapsack_extra(const SearchSetup& setup, const ScenarioSpec& spec, int depth,
                      double rem_u, double rem_b, const FixState* fix) {
  const auto one = [&](const std::vector<int>& dens, const std::vector<double>& value,
                       const std::vector<int8_t>* excl, double cap) {
    double extra = 0.0;
    for (int s : dens) {
      if (setup.pos[s] < depth) continue;  // already decided by this node
      if (excl && (*excl)[s] == 0) continue;
      if (cap <= 0.0) break;
      const double size = spec.services.sizes[s];
      if (size <= cap) {
        extra += value[s];
        cap -= size;
      } else {
        extra += value[s] * cap / size;
        break;
      }
    }
    return extra;
  };
  return one(setup.dens_u, setup.value_u, fix ? &fix->uav : nullptr, rem_u) +
         one(setup.dens_b, setup.value_b, fix ? &fix->bs : nullptr, rem_b);
}

// Is there a capacity-feasible completion of `fix` whose objective is within
// kTieTol of target? Depth-first, place-everything-first, bound-pruned.
bool achievable(const ScenarioSpec& spec, const SearchSetup& setup, Scorer& scorer,
                const FixState& fix, double target, int64_t* nodes) {
  const int B = static_cast<int>(setup.order.size());
  // optimistic suffix masks honoring fixed-zero bits
  std::vector<uint64_t> opt_u(B + 1, 0), opt_b(B + 1, 0);
  for (int d = B - 1; d >= 0; --d) {
    const int s = setup.order[d];
    opt_u[d] = opt_u[d + 1] | (fix.uav[s] != 0 ? uint64_t{1} << s : 0);
    opt_b[d] = opt_b[d + 1] | (fix.bs[s] != 0 ? uint64_t{1} << s : 0);
  }

  struct Frame {
    int depth;
    uint64_t um, bm;
    double rem_u, rem_b;
  };
  std::vector<Frame> stack;
  stack.push_back({0, 0, 0, spec.uav.storage_capacity, spec.bs.storage_capacity});
  while (!stack.empty()) {
    Frame f = stack.back();
    stack.pop_back();
    ++*nodes;
    const double sv_knap =
        scorer.saving(f.um, f.bm) +
        knapsack_extra(setup, spec, f.depth, f.rem_u, f.rem_b, &fix);
    if (scorer.total_local() - sv_knap > target + kTieTol) continue;
    const double sv_opt = scorer.saving(f.um | opt_u[f.depth], f.bm | opt_b[f.depth]);
    if (scorer.total_local() - sv_opt > target + kTieTol) continue;
    if (f.depth == B) return true;
    const int s = setup.order[f.depth];
    const double size = spec.services.sizes[s];
    // children pushed so that "place on both" pops first
    static constexpr int combos[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (auto& c : combos) {
      const int u = c[0], b = c[1];
      if (fix.uav[s] >= 0 && fix.uav[s] != u) continue;
      if (fix.bs[s] >= 0 && fix.bs[s] != b) continue;
      if (u && size > f.rem_u + kSizeTol) continue;
      if (b && size > f.rem_b + kSizeTol) continue;
      stack.push_back({f.depth + 1, f.um | (u ? uint64_t{1} << s : 0),
                       f.bm | (b ? uint64_t{1} << s : 0), f.rem_u - (u ? size : 0.0),
                       f.rem_b - (b ? size : 0.0)});
    }
  }
  return false;
}

Placement mask_to_placement(int num_services, uint64_t um, uint64_t bm) {
  Placement p = Placement::empty(num_services);
  for (int s = 0; s < num_services; ++s) {
    p.on_uav[s] = um >> s & 1;
    p.on_bs[s] = bm >> s & 1;
  }
  return p;
}

}  // namespace

double score_placement(const TaskTables& tables, const ServerCaps& caps,
                       uint64_t uav_mask, uint64_t bs_mask) {
  double total = std::accumulate(tables.e_local.begin(), tables.e_local.end(), 0.0);
  for (int t = 0; t < tables.num_slots; ++t)
    total -= solve_slot_saving(tables, t, uav_mask, bs_mask, caps);
  return total;
}

PlacementResult bnb_place(const ScenarioSpec& spec, const Trajectory& traj,
                          const BnbOptions& opts) {
  const int K = spec.services.num_services();
  if (K > 64) throw std::invalid_argument("bnb_place: more than 64 services");
  const TaskTables tab = build_task_tables(spec, traj);
  const ServerCaps caps = ServerCaps::of(spec);
  Scorer scorer(tab, caps);
  const SearchSetup setup = make_setup(spec, tab, scorer);
  const int B = static_cast<int>(setup.order.size());
  const double cap_u = spec.uav.storage_capacity;
  const double cap_b = spec.bs.storage_capacity;
  const auto used = [&](uint64_t m) {
    double u = 0.0;
    for (int s = 0; s < K; ++s)
      if (m >> s & 1) u += spec.services.sizes[s];
    return u;
  };

  // incumbent: best of greedy packing, per-venue density packing, an optional
  // warm start, then an add/drop/swap exchange local search from there
  double incumbent = std::numeric_limits<double>::infinity();
  uint64_t inc_um = 0, inc_bm = 0;
  const auto consider = [&](uint64_t um, uint64_t bm) {
    const double obj = scorer.objective(um, bm);
    if (obj < incumbent - kTieTol) {
      incumbent = obj;
      inc_um = um;
      inc_bm = bm;
      return true;
    }
    return false;
  };
  {
    const Placement greedy = greedy_placement(spec);
    consider(placement_mask(greedy.on_uav), placement_mask(greedy.on_bs));

    const auto pack = [&](const std::vector<int>& dens, const std::vector<double>& value,
                          double cap) {
      uint64_t m = 0;
      for (int s : dens) {
        const double size = spec.services.sizes[s];
        if (value[s] > 0.0 && size <= cap + kSizeTol) {
          m |= uint64_t{1} << s;
          cap -= size;
        }
      }
      return m;
    };
    consider(pack(setup.dens_u, setup.value_u, cap_u),
             pack(setup.dens_b, setup.value_b, cap_b));

    if (opts.warm_start && static_cast<int>(opts.warm_start->on_uav.size()) == K) {
      const uint64_t wu = placement_mask(opts.warm_start->on_uav);
      const uint64_t wb = placement_mask(opts.warm_start->on_bs);
      if (used(wu) <= cap_u + kSizeTol && used(wb) <= cap_b + kSizeTol)
        consider(wu, wb);
    }

    bool improved = true;
    for (int pass = 0; improved && pass < 50; ++pass) {
      improved = false;
      for (int side = 0; side < 2; ++side) {
        const double cap = side ? cap_b : cap_u;
        for (int a = -1; a < K; ++a) {
          if (a >= 0 && setup.pos[a] == std::numeric_limits<int>::max()) continue;
          for (int d = -1; d < K; ++d) {
            if (d == a) continue;
            const uint64_t cur = side ? inc_bm : inc_um;
            uint64_t m = cur;
            if (d >= 0) {
              if (!(m >> d & 1)) continue;
              m &= ~(uint64_t{1} << d);
            }
            if (a >= 0) {
              if (m >> a & 1) continue;
              m |= uint64_t{1} << a;
            }
            if (m == cur) continue;
            if (used(m) > cap + kSizeTol) continue;
            if (consider(side ? inc_um : m, side ? m : inc_bm)) improved = true;
          }
        }
      }
    }
  }

  // admissible node bound: energy under the better of two saving upper
  // bounds — everything-undecided-placed (caps exact, storage ignored) and
  // decided saving plus the per-server fractional knapsack (storage exact,
  // cap competition between new services ignored). The cheap knapsack bound
  // is tried first; the optimistic-mask bound only runs when it fails to
  // prune, which keeps the per-node slot-solve traffic down.
  const auto node_bound = [&](uint64_t um, uint64_t bm, int depth, double rem_u,
                              double rem_b) {
    const double sv_knap = scorer.saving(um, bm) +
                           knapsack_extra(setup, spec, depth, rem_u, rem_b, nullptr);
    const double b_knap = scorer.total_local() - sv_knap;
    if (b_knap >= incumbent - kTieTol) return b_knap;
    const double sv_opt =
        scorer.saving(um | setup.suffix[depth], bm | setup.suffix[depth]);
    return std::max(b_knap, scorer.total_local() - sv_opt);
  };

  // depth-first, best child expanded first: dives straight to a strong leaf,
  // then the incumbent prunes the rest of the tree
  int64_t nodes = 0;
  bool complete = true;
  std::vector<Node> stack;
  {
    Node root;
    root.rem_uav = cap_u;
    root.rem_bs = cap_b;
    root.bound = node_bound(0, 0, 0, root.rem_uav, root.rem_bs);
    if (root.bound < incumbent - kTieTol) stack.push_back(root);
  }

  while (!stack.empty()) {
    if (opts.max_nodes > 0 && nodes >= opts.max_nodes) {
      complete = false;  // budget exhausted: keep the best placement found
      break;
    }
    const Node node = stack.back();
    stack.pop_back();
    ++nodes;
    if (node.bound >= incumbent - kTieTol) continue;  // stale since push
    if (opts.trace)
      *opts.trace << "node depth=" << node.depth << " bound=" << node.bound
                  << " um=" << node.um << " bm=" << node.bm << '\n';
    const int s = setup.order[node.depth];
    const double size = spec.services.sizes[s];
    Node children[4];
    int n_children = 0;
    static constexpr int combos[4][2] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    for (auto& c : combos) {
      const int u = c[0], b = c[1];
      if (u && size > node.rem_uav + kSizeTol) continue;
      if (b && size > node.rem_bs + kSizeTol) continue;
      Node child;
      child.depth = node.depth + 1;
      child.um = node.um | (u ? uint64_t{1} << s : 0);
      child.bm = node.bm | (b ? uint64_t{1} << s : 0);
      child.rem_uav = node.rem_uav - (u ? size : 0.0);
      child.rem_bs = node.rem_bs - (b ? size : 0.0);
      child.bound =
          node_bound(child.um, child.bm, child.depth, child.rem_uav, child.rem_bs);
      if (child.bound >= incumbent - kTieTol) continue;
      if (child.depth == B) {
        ++nodes;
        // complete masks: bound is the exact objective
        incumbent = child.bound;
        inc_um = child.um;
        inc_bm = child.bm;
        if (opts.trace)
          *opts.trace << "incumbent obj=" << incumbent << " um=" << child.um
                      << " bm=" << child.bm << '\n';
      } else {
        children[n_children++] = child;
      }
    }
    // push worst-bound first so the most promising child is expanded next
    std::stable_sort(children, children + n_children,
                     [](const Node& a, const Node& b) { return a.bound > b.bound; });
    for (int j = 0; j < n_children; ++j) stack.push_back(children[j]);
  }

  uint64_t um = inc_um, bm = inc_bm;
  if (complete) {
    // lexicographically smallest placement achieving the optimum: fix bits
    // service-major (UAV before BS), preferring "not placed" when achievable
    FixState fix;
    fix.uav.assign(K, -1);
    fix.bs.assign(K, -1);
    for (int s = 0; s < K; ++s) {
      // services outside the branch order never affect the objective
      if (setup.pos[s] == std::numeric_limits<int>::max()) {
        fix.uav[s] = 0;
        fix.bs[s] = 0;
      }
    }
    for (int s = 0; s < K; ++s) {
      for (int side = 0; side < 2; ++side) {
        std::vector<int8_t>& bits = side == 0 ? fix.uav : fix.bs;
        if (bits[s] >= 0) continue;
        bits[s] = 0;
        if (!achievable(spec, setup, scorer, fix, incumbent, &nodes)) bits[s] = 1;
      }
    }
    um = bm = 0;
    for (int s = 0; s < K; ++s) {
      if (fix.uav[s] == 1) um |= uint64_t{1} << s;
      if (fix.bs[s] == 1) bm |= uint64_t{1} << s;
    }
  }

  PlacementResult out;
  out.placement = mask_to_placement(K, um, bm);
  out.objective = scorer.objective(um, bm);
  out.plan = solve_offload_given_placement(spec, out.placement, traj);
  out.nodes_explored = nodes;
  return out;
}

PlacementResult brute_force_place(const ScenarioSpec& spec, const Trajectory& traj) {
  const int K = spec.services.num_services();
  if (K * 2 > 16)
    throw std::invalid_argument("brute_force_place: enumeration budget exceeded");
  const TaskTables tab = build_task_tables(spec, traj);
  const ServerCaps caps = ServerCaps::of(spec);

  PlacementResult out;
  bool have = false;
  const int nbits = 2 * K;
  for (uint32_t c = 0; c < (uint32_t{1} << nbits); ++c) {
    uint64_t um = 0, bm = 0;
    // bit j of the flattened lex string is (c >> (nbits-1-j)) & 1, so
    // ascending c enumerates placements in lexicographic order
    for (int s = 0; s < K; ++s) {
      um |= static_cast<uint64_t>(c >> (nbits - 1 - 2 * s) & 1) << s;
      bm |= static_cast<uint64_t>(c >> (nbits - 2 - 2 * s) & 1) << s;
    }
    Placement p = mask_to_placement(K, um, bm);
    if (p.used_storage_uav(spec.services) > spec.uav.storage_capacity + kSizeTol)
      continue;
    if (p.used_storage_bs(spec.services) > spec.bs.storage_capacity + kSizeTol)
      continue;
    const double obj = score_placement(tab, caps, um, bm);
    if (!have || obj < out.objective) {
      have = true;
      out.objective = obj;
      out.placement = std::move(p);
    }
    ++out.nodes_explored;
  }
  out.plan = solve_offload_given_placement(spec, out.placement, traj);
  return out;
}

Placement greedy_placement(const ScenarioSpec& spec) {
  const int K = spec.services.num_services();
  std::vector<int> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return spec.services.sizes[a] < spec.services.sizes[b];
  });
  Placement p = Placement::empty(K);
  double rem_u = spec.uav.storage_capacity, rem_b = spec.bs.storage_capacity;
  for (int s : order) {
    const double size = spec.services.sizes[s];
    if (size <= rem_u + kSizeTol) {
      p.on_uav[s] = 1;
      rem_u -= size;
    }
    if (size <= rem_b + kSizeTol) {
      p.on_bs[s] = 1;
      rem_b -= size;
    }
  }
  return p;
}

}  // namespace agc
